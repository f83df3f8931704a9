//! Hamilton products, conjugacy spheres and the complex split.

use qschur::quaternion::{equivalent, power_interpolation_check, sphere_representative};
use qschur::Quaternion;

fn main() -> qschur::Result<()> {
    let (i, j) = (Quaternion::I, Quaternion::J);
    println!("i j = {}, j i = {}", i * j, j * i);

    let a = Quaternion::new(1.0, 1.0, 0.0, 0.0);
    let b = Quaternion::new(1.0, 0.0, 1.0, 0.0);
    println!("(1+i)(1+j) = {}", a * b);
    println!("|ab| = {} = |a||b| = {}", (a * b).norm(), a.norm() * b.norm());

    let g = Quaternion::new(0.2, 0.1, -0.3, 0.4);
    let alpha = sphere_representative(g)?;
    println!("slice representative of {g}: {alpha}");
    println!("equivalent: {}", equivalent(Quaternion::from_complex(alpha), g, 1e-14));

    // two points of a sphere determine g^k on the whole sphere
    let a = Quaternion::from_complex(alpha);
    let interpolated = power_interpolation_check(a, a.conj(), g, 5)?;
    println!("g^5 = {}, from the slice pair: {}", g.powi(5), interpolated);

    let (s, h) = g.split();
    println!("{g} = ({s}) + ({h}) j");
    Ok(())
}
