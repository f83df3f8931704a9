//! Right evaluation, the sharp involution and the dual pipeline.

use qschur::pick::{dual_certify, pick_matrix, HarnessConfig, PickProblem, RightEvaluation};
use qschur::{QPowerSeries, Quaternion};

fn main() -> qschur::Result<()> {
    let g = QPowerSeries::polynomial(&[Quaternion::new(0.2, 0.0, 0.1, 0.0), Quaternion::new(0.0, 0.3, 0.0, 0.3)]);
    let a = Quaternion::new(0.1, 0.2, -0.3, 0.4);
    println!("right evaluation      {}", g.eval_right(a));
    println!("conj of sharp at conj {}", g.sharp().eval_left(a.conj()).conj());

    let points = vec![a, Quaternion::new(-0.4, 0.0, 0.2, 0.0)];
    let values: Vec<_> = points.iter().map(|z| g.eval_right(*z)).collect();
    let dual = pick_matrix(&PickProblem::dual(points.clone(), values.clone())?)?;
    let conjugated = pick_matrix(&PickProblem::standard(
        points.iter().map(|z| z.conj()).collect(),
        values.iter().map(|v| v.conj()).collect(),
    )?)?;
    println!("dual Pick matrix equals the standard one at conjugates: {:.1e}", (&dual - &conjugated).max_abs());

    let report = dual_certify(&RightEvaluation(g), &HarnessConfig { samples: 300, ..Default::default() })?;
    println!("{:?}: {}", report.verdict, report.statement);
    if let Some(rec) = report.reconstructed {
        println!("recovered g_1 = {}", rec.coefficient(1));
    }
    Ok(())
}
