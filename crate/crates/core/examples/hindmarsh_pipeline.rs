//! Samples Pick matrices of a left-regular function, rebuilds its series
//! from slice values and checks agreement off the slice.

use qschur::pick::{hindmarsh_certify, HarnessConfig, LeftEvaluation};
use qschur::{QPowerSeries, Quaternion};

fn main() -> qschur::Result<()> {
    let g = QPowerSeries::polynomial(&[
        Quaternion::new(0.1, 0.05, -0.1, 0.0),
        Quaternion::new(0.0, 0.2, 0.1, -0.1),
        Quaternion::new(-0.1, 0.0, 0.15, 0.05),
        Quaternion::new(0.05, -0.05, 0.0, 0.1),
    ]);
    let cfg = HarnessConfig { samples: 500, seed: 7, ..Default::default() };
    let report = hindmarsh_certify(&LeftEvaluation(g.clone()), &cfg)?;
    println!("{:?}: {}", report.verdict, report.statement);
    for (name, value) in &report.residuals {
        println!("  {name:<24} {value:.2e}  (threshold {:.1e})", report.thresholds[name]);
    }
    if let Some(rec) = &report.reconstructed {
        for k in 0..5 {
            println!("  f_{k} = {}  (true {})", rec.coefficient(k), g.coefficient(k));
        }
    }
    Ok(())
}
