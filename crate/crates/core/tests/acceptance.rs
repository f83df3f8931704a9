//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//!
//! Run with `cargo test --test acceptance` (add `--release` for timings
//! comparable to the limits below).

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use qschur::pick::{
    dual_certify, hindmarsh_certify, pick_matrix, representation_extend, vvector_extend, FnFunction, HarnessConfig,
    LeftEvaluation, OffSliceCorruption, PickProblem, RightEvaluation,
};
use qschur::qlinalg::{embed, is_psd, psd_check, psd_check_complex, DEFAULT_PSD_TOL};
use qschur::quaternion::sphere_representative;
use qschur::sampling::{ball_point_within, cube_quaternion, off_slice_point, rotate_on_sphere, seeded};
use qschur::series::{block_criterion, certify_schur, contractivity_check, embedded_contractivity_defect};
use qschur::{Complex, ComplexSeries, QMatrix, QPowerSeries, Quaternion, Verdict, WitnessKind};
use rand::RngExt;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// `sum_k a^k c b^k` truncated once the tail bound `2|c| rho^K / (1 - rho)` drops below `1e-12`.
fn truncated_entry(a: Quaternion, b: Quaternion, c: Quaternion) -> Quaternion {
    let rho = a.norm() * b.norm();
    let (mut l, mut r) = (Quaternion::ONE, Quaternion::ONE);
    let mut sum = Quaternion::ZERO;
    let mut k = 0;
    while 2.0 * c.norm() * rho.powi(k) / (1.0 - rho) > 1e-12 {
        sum += l * c * r;
        l *= a;
        r *= b;
        k += 1;
    }
    sum
}

fn oracle_equivalence() -> Outcome {
    let mut rng = seeded(101);
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let n = rng.random_range(1..=4);
        let points = ball_points(&mut rng, n, 0.9);
        let values = ball_points(&mut rng, n, 1.0);
        let dual = trial % 2 == 1;
        let problem = if dual {
            PickProblem::dual(points.clone(), values.clone())
        } else {
            PickProblem::standard(points.clone(), values.clone())
        }
        .unwrap();
        let p = pick_matrix(&problem).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if dual {
                    truncated_entry(points[i].conj(), points[j], Quaternion::ONE - values[i].conj() * values[j])
                } else {
                    truncated_entry(points[i], points[j].conj(), Quaternion::ONE - values[i] * values[j].conj())
                };
                worst = worst.max((p[(i, j)] - want).norm());
            }
        }
    }
    outcome(worst <= 1e-10, format!("max entry difference {worst:.2e} (limit 1e-10) over 100 problems"))
}

fn schur_implies_psd() -> Outcome {
    let mut rng = seeded(202);
    let (mut worst, mut certified, mut matrices) = (f64::INFINITY, 0, 0);
    while certified < 20 {
        let g = toeplitz_fixture(&mut rng, 8);
        if !certify_schur(&g, 64, DEFAULT_PSD_TOL).passed() {
            continue;
        }
        certified += 1;
        for _ in 0..500 {
            let points = ball_points(&mut rng, 3, 0.95);
            let values: Vec<_> = points.iter().map(|z| g.eval_left(*z)).collect();
            let p = pick_matrix(&PickProblem::standard(points, values).unwrap()).unwrap();
            worst = worst.min(psd_check(&p, DEFAULT_PSD_TOL).unwrap().min_eigenvalue);
            matrices += 1;
        }
    }
    outcome(
        worst >= -1e-9,
        format!("min embedding eigenvalue {worst:.2e} (limit -1e-9) over {matrices} Pick matrices of 20 certified series"),
    )
}

fn hindmarsh_round_trip() -> Outcome {
    let mut rng = seeded(303);
    let cfg = HarnessConfig::default();
    let (mut passed, mut worst) = (0, 0.0f64);
    let mut failures = Vec::new();
    for i in 0..10 {
        let g = toeplitz_fixture(&mut rng, 8);
        let r = hindmarsh_certify(&LeftEvaluation(g.clone()), &cfg).unwrap();
        if r.verdict == Verdict::Pass {
            passed += 1;
        } else {
            failures.push(format!("fixture {i}: {}", r.statement));
        }
        if let Some(rec) = &r.reconstructed {
            for k in 0..=cfg.recon_degree {
                worst = worst.max(rec.coefficient(k).max_abs_diff(g.coefficient(k)));
            }
        } else {
            worst = f64::INFINITY;
        }
    }
    outcome(
        passed == 10 && worst <= 1e-6,
        format!("{passed}/10 pass, max coefficient error {worst:.2e} (limit 1e-6)")
            + &failures.iter().map(|f| format!("; {f}")).collect::<String>(),
    )
}

fn falsification() -> Outcome {
    let cfg = HarnessConfig { seed: 0, ..Default::default() };
    let run = || {
        let two = hindmarsh_certify(&FnFunction(|_| Quaternion::real(2.0)), &cfg).unwrap();
        let base = l1_fixture(&mut seeded(404), 8, 0.7);
        let corrupted = OffSliceCorruption::new(LeftEvaluation(base), Quaternion::real(0.2));
        let off = hindmarsh_certify(&corrupted, &HarnessConfig { samples: 200, ..cfg.clone() }).unwrap();
        let big = certify_schur(&QPowerSeries::constant(Quaternion::real(1.1)), 64, DEFAULT_PSD_TOL);
        (two, off, big)
    };
    let (two, off, big) = run();
    let (two2, off2, big2) = run();
    let same = two == two2 && off == off2 && big == big2;

    let a = two.witness.as_ref().is_some_and(|w| w.kind == WitnessKind::OnePoint && w.points.len() == 1);
    let b = off
        .witness
        .as_ref()
        .is_some_and(|w| w.kind == WitnessKind::StructuredTriple && w.trial.is_some_and(|t| t < 200));
    let c = big.verdict == Verdict::Fail && big.witness.as_ref().and_then(|w| w.order) == Some(1);
    outcome(
        a && b && c && same,
        format!(
            "(a) one-point witness {a}, (b) structured witness at trial {:?} {b}, (c) fails at n = {:?} {c}, deterministic {same}",
            off.witness.as_ref().and_then(|w| w.trial),
            big.witness.as_ref().and_then(|w| w.order)
        ),
    )
}

fn representation_identities() -> Outcome {
    let mut rng = seeded(505);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let f = QPowerSeries::polynomial(&(0..5).map(|_| cube_quaternion(&mut rng)).collect::<Vec<_>>());
        let g = off_slice_point(&mut rng, 0.95, 1e-2);
        let a = rotate_on_sphere(&mut rng, g);
        let b = rotate_on_sphere(&mut rng, g);
        let alpha = sphere_representative(g).unwrap();
        let aq = Quaternion::from_complex(alpha);
        let truth = f.eval_left(g);
        let scale = truth.norm().max(f.eval_left(a).norm()).max(f.eval_left(b).norm());
        let rep = representation_extend(a, b, f.eval_left(a), f.eval_left(b), g).unwrap();
        let vv = vvector_extend(alpha, f.eval_left(aq), f.eval_left(aq.conj()), g).unwrap();
        for v in [rep, vv.value, vv.via_representation] {
            worst = worst.max((v - truth).norm() / scale);
        }
    }
    outcome(worst <= 1e-10, format!("max relative residual {worst:.2e} (limit 1e-10) over 1000 points"))
}

fn block_equality() -> Outcome {
    let mut rng = seeded(606);
    let (mut worst, mut agree, mut total, mut psd_count) = (0.0f64, 0, 0, 0);
    for _ in 0..50 {
        let len = rng.random_range(1..=9);
        let scale = rng.random_range(0.05..0.6);
        let mut component = || {
            ComplexSeries::new(
                (0..len)
                    .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale)
                    .collect(),
            )
        };
        let (s, h) = (component(), component());
        let g = QPowerSeries::from_slices(&s, &h);
        for n in [1, 2, 4, 8, 16, 32] {
            let block = block_criterion(&s, &h, n);
            worst = worst.max((&block - &embedded_contractivity_defect(&g, n)).max_abs());
            let lhs = psd_check_complex(&block, DEFAULT_PSD_TOL).unwrap().psd;
            let rhs = contractivity_check(&g.toeplitz(n), DEFAULT_PSD_TOL).psd;
            agree += usize::from(lhs == rhs);
            psd_count += usize::from(lhs);
            total += 1;
        }
    }
    outcome(
        worst <= 1e-12 && agree == total,
        format!("max entry difference {worst:.2e} (limit 1e-12), verdicts agree {agree}/{total} ({psd_count} PSD)"),
    )
}

fn duality() -> Outcome {
    let mut rng = seeded(707);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let degree = rng.random_range(0..=10);
        let g = QPowerSeries::polynomial(&(0..=degree).map(|_| cube_quaternion(&mut rng)).collect::<Vec<_>>());
        let alpha = ball_point_within(&mut rng, 0.95);
        let lhs = g.eval_right(alpha);
        let rhs = g.sharp().eval_left(alpha.conj()).conj();
        worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
    }
    let cfg = HarnessConfig::default();
    let mut passed = 0;
    for seed in 0..3 {
        let g = l1_fixture(&mut seeded(770 + seed), 8, 0.8);
        let r = dual_certify(&RightEvaluation(g.clone()), &cfg).unwrap();
        let recovered = r.reconstructed.as_ref().is_some_and(|rec| {
            (0..=cfg.recon_degree).all(|k| rec.coefficient(k).max_abs_diff(g.coefficient(k)) <= 1e-6)
        });
        passed += usize::from(r.verdict == Verdict::Pass && recovered);
    }
    outcome(
        worst <= 1e-12 && passed == 3,
        format!("max relative duality residual {worst:.2e} (limit 1e-12), dual_certify passes {passed}/3"),
    )
}

fn embedding() -> Outcome {
    let mut rng = seeded(808);
    let random = |rng: &mut _| QMatrix::from_fn(3, 3, |_, _| cube_quaternion(rng));
    let mut worst: f64 = 0.0;
    let mut psd = 0;
    for _ in 0..100 {
        let (a, b) = (random(&mut rng), random(&mut rng));
        worst = worst.max((&embed(&(&a * &b)) - &(&embed(&a) * &embed(&b))).max_abs());
        let m = random(&mut rng);
        psd += usize::from(is_psd(&(&m * &m.adjoint()), DEFAULT_PSD_TOL).unwrap());
    }
    outcome(
        worst <= 1e-12 && psd == 100,
        format!("max homomorphism defect {worst:.2e} (limit 1e-12), M M* PSD {psd}/100"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("oracle equivalence of Pick entries", Duration::from_secs(5), oracle_equivalence),
        ("Schur series give PSD Pick matrices", Duration::from_secs(30), schur_implies_psd),
        ("three-point round trip", Duration::from_secs(60), hindmarsh_round_trip),
        ("falsification", Duration::from_secs(180), falsification),
        ("representation formula identities", Duration::from_secs(180), representation_identities),
        ("block criterion equality", Duration::from_secs(180), block_equality),
        ("duality identity", Duration::from_secs(180), duality),
        ("embedding homomorphism and PSD", Duration::from_secs(180), embedding),
    ];
    let suite = Instant::now();
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed < *limit;
        failed += usize::from(!pass);
        println!(
            "{} [{}] {name}: {} ({:.2}s, limit {}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    let total = suite.elapsed();
    let in_time = total < Duration::from_secs(180);
    println!("{} suite time {:.2}s (limit 180s)", if in_time { "PASS" } else { "FAIL" }, total.as_secs_f64());
    if failed == 0 && in_time {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
