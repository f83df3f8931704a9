//! Toeplitz contractivity up to a fixed order, for a Schur series and for
//! one that fails at order three.

use qschur::qlinalg::DEFAULT_PSD_TOL;
use qschur::series::certify_schur;
use qschur::{QPowerSeries, Quaternion};

fn main() {
    let good = QPowerSeries::polynomial(&[Quaternion::new(0.3, 0.0, 0.2, 0.0), Quaternion::new(0.0, 0.4, 0.0, -0.3)]);
    let bad = QPowerSeries::polynomial(&[
        Quaternion::real(0.6),
        Quaternion::real(0.6),
        Quaternion::new(0.0, 0.0, 0.6, 0.0),
    ]);
    for (name, g) in [("good", good), ("bad", bad)] {
        let report = certify_schur(&g, 64, DEFAULT_PSD_TOL);
        println!("{name}: {:?}: {}", report.verdict, report.statement);
        if let Some(w) = report.witness {
            println!("  first failing order {:?}, eigenvalue {:.4}", w.order, w.min_eigenvalue.unwrap_or(f64::NAN));
        }
    }
}
