//! Pick matrix of a three-point problem, its Stein residual and positivity.

use qschur::pick::{pick_matrix, pick_stein_residual, PickProblem};
use qschur::qlinalg::{psd_check, DEFAULT_PSD_TOL};
use qschur::{QPowerSeries, Quaternion};

fn main() -> qschur::Result<()> {
    let g = QPowerSeries::polynomial(&[Quaternion::new(0.1, 0.0, 0.2, 0.0), Quaternion::new(0.0, 0.3, 0.0, 0.4)]);
    let points = vec![
        Quaternion::new(0.3, 0.4, 0.0, 0.0),
        Quaternion::new(-0.2, 0.0, 0.5, 0.1),
        Quaternion::new(0.0, 0.1, -0.1, 0.6),
    ];
    let values = points.iter().map(|z| g.eval_left(*z)).collect();
    let problem = PickProblem::standard(points, values)?;
    let p = pick_matrix(&problem)?;
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| format!("{:>42}", p[(i, j)].to_string())).collect();
        println!("{}", row.join(" "));
    }
    println!("Stein residual {:.2e}", pick_stein_residual(&problem, &p)?);
    let check = psd_check(&p, DEFAULT_PSD_TOL)?;
    println!("min eigenvalue of the embedding {:.6}, PSD {}", check.min_eigenvalue, check.psd);
    Ok(())
}
