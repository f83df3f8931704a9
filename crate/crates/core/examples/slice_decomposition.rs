//! g = s + h j on the complex slice, and the block form of I - T T*.

use qschur::qlinalg::{psd_check_complex, DEFAULT_PSD_TOL};
use qschur::series::{block_criterion, embedded_contractivity_defect};
use qschur::{Complex, QPowerSeries, Quaternion};

fn main() -> qschur::Result<()> {
    let g = QPowerSeries::polynomial(&[
        Quaternion::new(0.2, 0.1, 0.3, 0.0),
        Quaternion::new(0.0, -0.2, 0.1, 0.25),
        Quaternion::new(0.1, 0.0, 0.0, -0.15),
    ]);
    let (s, h) = g.slice_decompose();
    let show = |c: &[Complex]| c.iter().map(|z| format!("{z}")).collect::<Vec<_>>().join(", ");
    println!("s = [{}]", show(&s.coefficients));
    println!("h = [{}]", show(&h.coefficients));

    let z = Complex::new(0.3, -0.5);
    let direct = g.eval_left(Quaternion::from_complex(z));
    let split = Quaternion::join(s.eval(z), h.eval(z));
    println!("g(z) = {direct}, s(z) + h(z) j = {split}");

    for n in [1, 4, 16] {
        let block = block_criterion(&s, &h, n);
        let diff = (&block - &embedded_contractivity_defect(&g, n)).max_abs();
        let check = psd_check_complex(&block, DEFAULT_PSD_TOL)?;
        println!("n = {n:>2}: block vs embedded defect {diff:.1e}, min eigenvalue {:.4}", check.min_eigenvalue);
    }
    Ok(())
}
