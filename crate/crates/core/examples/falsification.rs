//! Three ways to fail: a constant outside the ball, an off-slice offset, and
//! a non-contractive Toeplitz section.

use qschur::pick::{hindmarsh_certify, FnFunction, HarnessConfig, LeftEvaluation, OffSliceCorruption};
use qschur::qlinalg::DEFAULT_PSD_TOL;
use qschur::series::certify_schur;
use qschur::{CertReport, QPowerSeries, Quaternion};

fn show(name: &str, r: &CertReport) {
    println!("{name}: {:?}: {}", r.verdict, r.statement);
    if let Some(w) = &r.witness {
        println!("  witness {:?} at {} point(s), eigenvalue {:?}", w.kind, w.points.len(), w.min_eigenvalue);
    }
}

fn main() -> qschur::Result<()> {
    let cfg = HarnessConfig { samples: 200, ..Default::default() };
    show("f = 2", &hindmarsh_certify(&FnFunction(|_| Quaternion::real(2.0)), &cfg)?);

    let g = QPowerSeries::polynomial(&[Quaternion::new(0.1, 0.1, 0.0, 0.0), Quaternion::new(0.0, 0.0, 0.3, 0.2)]);
    let corrupted = OffSliceCorruption::new(LeftEvaluation(g), Quaternion::real(0.2));
    show("off-slice offset 0.2", &hindmarsh_certify(&corrupted, &cfg)?);

    show("g = 1.1", &certify_schur(&QPowerSeries::constant(Quaternion::real(1.1)), 64, DEFAULT_PSD_TOL));
    Ok(())
}
