mod common;

use common::*;
use qschur::pick::{
    dual_certify, hindmarsh_certify, FnFunction, HarnessConfig, LeftEvaluation, OffSliceCorruption, RightEvaluation,
    SampledFunction,
};
use qschur::quaternion::sphere_representative;
use qschur::sampling::seeded;
use qschur::series::certify_schur;
use qschur::{QPowerSeries, Quaternion, Verdict, WitnessKind};

fn cfg(samples: usize) -> HarnessConfig {
    HarnessConfig { samples, ..Default::default() }
}

fn fixture() -> QPowerSeries {
    l1_fixture(&mut seeded(11), 6, 0.7)
}

/// Structured triples on a grid of off-slice points; returns the most
/// negative eigenvalue found, with the Pick matrix summed from the series.
fn brute_force_structured<F: SampledFunction>(f: &F) -> f64 {
    let mut worst = f64::INFINITY;
    for r in [0.2f64, 0.4, 0.6, 0.8] {
        for theta in [0.3f64, 0.9, 1.5, 2.1, 2.7] {
            for phi in [0.0f64, 1.0, 2.0, 3.0, 4.0, 5.0] {
                let im = r * theta.sin();
                let g = Quaternion::new(r * theta.cos(), im * phi.cos() * 0.5, im * phi.sin(), im * phi.cos() * 0.75f64.sqrt());
                let a = Quaternion::from_complex(sphere_representative(g).unwrap());
                let pts = [a, a.conj(), g];
                let vals: Vec<_> = pts.iter().map(|z| f.eval(*z).unwrap()).collect();
                worst = worst.min(min_eigenvalue(embed_oracle(&series_pick(&pts, &vals))));
            }
        }
    }
    worst
}

#[test]
fn schur_fixture_passes_and_is_recovered() {
    let g = fixture();
    assert!(certify_schur(&g, 64, 1e-9).passed());
    let r = hindmarsh_certify(&LeftEvaluation(g.clone()), &cfg(300)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.statement);
    assert!(r.statement.contains("no violation found"));
    let rec = r.reconstructed.as_ref().unwrap();
    for k in 0..=24 {
        assert!(rec.coefficient(k).max_abs_diff(g.coefficient(k)) < 1e-6, "k = {k}");
    }
    for key in ["psd_violation", "stein", "vvector_agreement", "slice_split", "offslice_agreement"] {
        assert!(r.residuals[key] <= r.thresholds[key], "{key}");
        assert!(r.paper_checks.contains_key(key));
    }
}

#[test]
fn constant_two_has_a_one_point_witness() {
    let r = hindmarsh_certify(&FnFunction(|_| Quaternion::real(2.0)), &cfg(300)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let w = r.witness.unwrap();
    assert_eq!(w.kind, WitnessKind::OnePoint);
    assert_eq!(w.points.len(), 1);
    // 1x1 Pick matrix (1 - 4) / (1 - |z|^2)
    let z = w.points[0].norm_sqr();
    assert!((w.min_eigenvalue.unwrap() + 3.0 / (1.0 - z)).abs() < 1e-12);
}

#[test]
fn off_slice_offset_is_found_by_brute_force_and_by_the_harness() {
    let f = OffSliceCorruption::new(LeftEvaluation(fixture()), Quaternion::real(0.2));
    assert!(brute_force_structured(&f) < -1e-3);
    assert!(brute_force_structured(&LeftEvaluation(fixture())) > -1e-12);

    let r = hindmarsh_certify(&f, &cfg(200)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let w = r.witness.unwrap();
    assert_eq!(w.kind, WitnessKind::StructuredTriple);
    assert!(w.trial.unwrap() < 200);
    let vals: Vec<_> = w.points.iter().map(|z| f.eval(*z).unwrap()).collect();
    let oracle = min_eigenvalue(embed_oracle(&series_pick(&w.points, &vals)));
    assert!(oracle < -1e-6);
    assert!((oracle - w.min_eigenvalue.unwrap()).abs() < 1e-10);
}

#[test]
fn scaled_series_fail_the_one_point_check() {
    let g = l1_fixture(&mut seeded(3), 4, 1.0);
    let f = OffSliceCorruption { base: LeftEvaluation(g), offset: Quaternion::ZERO, scale: 3.0 };
    let r = hindmarsh_certify(&f, &cfg(300)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn dual_pipeline_on_right_evaluations() {
    let g = fixture();
    let r = dual_certify(&RightEvaluation(g.clone()), &cfg(300)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass, "{}", r.statement);
    let rec = r.reconstructed.unwrap();
    for k in 0..=g.degree() {
        assert!(rec.coefficient(k).max_abs_diff(g.coefficient(k)) < 1e-6);
    }

    let bad = OffSliceCorruption::new(RightEvaluation(g), Quaternion::real(0.2));
    let r = dual_certify(&bad, &cfg(200)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
    let w = r.witness.unwrap();
    assert_eq!(w.kind, WitnessKind::StructuredTriple);
    // witness points are those of the dual Pick matrix of f itself
    let vals: Vec<_> = w.points.iter().map(|z| bad.eval(*z).unwrap()).collect();
    assert!(min_eigenvalue(embed_oracle(&series_dual_pick(&w.points, &vals))) < -1e-6);
}

#[test]
fn seeds_change_samples_not_verdicts() {
    let f = LeftEvaluation(fixture());
    let a = hindmarsh_certify(&f, &HarnessConfig { seed: 1, ..cfg(100) }).unwrap();
    let b = hindmarsh_certify(&f, &HarnessConfig { seed: 2, ..cfg(100) }).unwrap();
    assert_eq!(a.verdict, Verdict::Pass);
    assert_eq!(b.verdict, Verdict::Pass);
    assert_ne!(a.residuals, b.residuals);
}
