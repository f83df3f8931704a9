//! Quaternionic power series `g(z) = sum z^k g_k` with a commuting formal
//! variable, stored as finite coefficient vectors.
//!
//! A series is in the Schur class when every lower-triangular Toeplitz
//! section `T_n(g)` is a contraction. Only finitely many sections can be
//! checked, so [`certify_schur`] certifies that necessary condition up to a
//! stated order. On the complex slice a series splits as `s(z) + h(z) j`
//! with complex `s`, `h`, and [`block_criterion`] rewrites contractivity in
//! terms of that pair.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{embed, psd_check, ComplexMatrix, PsdCheck, QMatrix};
use crate::quaternion::Quaternion;
use crate::report::{CertReport, CheckKind, RunParameters, Verdict, Witness, WitnessKind};
use crate::Complex;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QPowerSeriesRepr")]
pub struct QPowerSeries {
    coefficients: Vec<Quaternion>,
    truncated: bool,
}

#[derive(Deserialize)]
struct QPowerSeriesRepr {
    coefficients: Vec<Quaternion>,
    #[serde(default)]
    truncated: bool,
}

impl TryFrom<QPowerSeriesRepr> for QPowerSeries {
    type Error = Error;
    fn try_from(r: QPowerSeriesRepr) -> Result<Self> {
        if r.coefficients.is_empty() {
            return Err(Error::Invalid("field `coefficients` must not be empty".into()));
        }
        if let Some(k) = r.coefficients.iter().position(|c| !c.is_finite()) {
            return Err(Error::Invalid(format!("field `coefficients`: entry {k} is not finite")));
        }
        Ok(QPowerSeries { coefficients: r.coefficients, truncated: r.truncated })
    }
}

/// Admissible coefficient growth `|g_k| <= bound * (1 + margin)^k` for
/// externally supplied series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthBound {
    pub bound: f64,
    pub margin: f64,
}

impl Default for GrowthBound {
    fn default() -> Self {
        GrowthBound { bound: 1e6, margin: 0.05 }
    }
}

impl QPowerSeries {
    /// An exact polynomial. An empty slice gives the zero series.
    pub fn polynomial(coefficients: &[Quaternion]) -> Self {
        let coefficients = if coefficients.is_empty() { vec![Quaternion::ZERO] } else { coefficients.to_vec() };
        QPowerSeries { coefficients, truncated: false }
    }

    /// The leading part of an infinite series.
    pub fn truncation(coefficients: &[Quaternion]) -> Self {
        QPowerSeries { truncated: true, ..QPowerSeries::polynomial(coefficients) }
    }

    pub fn constant(c: Quaternion) -> Self {
        QPowerSeries::polynomial(&[c])
    }

    pub fn coefficients(&self) -> &[Quaternion] {
        &self.coefficients
    }

    /// `g_k`, zero past the stored degree.
    pub fn coefficient(&self, k: usize) -> Quaternion {
        self.coefficients.get(k).copied().unwrap_or(Quaternion::ZERO)
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn degree(&self) -> usize {
        self.coefficients.iter().rposition(|c| *c != Quaternion::ZERO).unwrap_or(0)
    }

    pub fn scaled(&self, s: f64) -> QPowerSeries {
        QPowerSeries { coefficients: self.coefficients.iter().map(|c| *c * s).collect(), truncated: self.truncated }
    }

    pub fn check_growth(&self, growth: GrowthBound) -> Result<()> {
        for (k, c) in self.coefficients.iter().enumerate() {
            let limit = growth.bound * (1.0 + growth.margin).powi(k as i32);
            if !(c.norm() <= limit) {
                return Err(Error::Invalid(format!(
                    "coefficient {k} has modulus {} above the growth bound {limit}",
                    c.norm()
                )));
            }
        }
        Ok(())
    }

    /// `sum a^k g_k`, Horner from the left in descending `k`.
    pub fn eval_left(&self, a: Quaternion) -> Quaternion {
        self.coefficients.iter().rev().fold(Quaternion::ZERO, |p, g| a * p + *g)
    }

    /// `sum g_k a^k`, Horner from the right in descending `k`.
    pub fn eval_right(&self, a: Quaternion) -> Quaternion {
        self.coefficients.iter().rev().fold(Quaternion::ZERO, |p, g| p * a + *g)
    }

    /// Coefficientwise conjugation.
    pub fn sharp(&self) -> QPowerSeries {
        QPowerSeries { coefficients: self.coefficients.iter().map(|c| c.conj()).collect(), truncated: self.truncated }
    }

    /// `n x n` lower-triangular Toeplitz matrix with first column `g_0 .. g_{n-1}`.
    pub fn toeplitz(&self, n: usize) -> QMatrix {
        QMatrix::from_fn(n, n, |i, j| if i >= j { self.coefficient(i - j) } else { Quaternion::ZERO })
    }

    /// Coefficientwise split `g_k = s_k + h_k j`.
    pub fn slice_decompose(&self) -> (ComplexSeries, ComplexSeries) {
        let (s, h): (Vec<_>, Vec<_>) = self.coefficients.iter().map(|c| c.split()).unzip();
        (ComplexSeries::new(s), ComplexSeries::new(h))
    }

    /// Rebuilds `s + h j` coefficientwise.
    pub fn from_slices(s: &ComplexSeries, h: &ComplexSeries) -> QPowerSeries {
        let n = s.len().max(h.len());
        let coefficients: Vec<_> = (0..n).map(|k| Quaternion::join(s.coefficient(k), h.coefficient(k))).collect();
        QPowerSeries::polynomial(&coefficients)
    }
}

/// Complex power series, the slice components of a quaternionic one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexSeries {
    pub coefficients: Vec<Complex>,
}

impl ComplexSeries {
    pub fn new(coefficients: Vec<Complex>) -> Self {
        ComplexSeries { coefficients }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, k: usize) -> Complex {
        self.coefficients.get(k).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coefficients.iter().rev().fold(Complex::new(0.0, 0.0), |p, c| p * z + c)
    }

    pub fn toeplitz(&self, n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| if i >= j { self.coefficient(i - j) } else { Complex::new(0.0, 0.0) })
    }
}

/// Eigenvalue data of `I - T T*`. `T` is contractive iff this is PSD.
pub fn contractivity_check(t: &QMatrix, tol: f64) -> PsdCheck {
    let gram = t.checked_mul(&t.adjoint()).expect("T T* always conforms");
    let defect = QMatrix::identity(t.rows()).checked_sub(&gram).expect("square");
    psd_check(&defect, tol).expect("I - T T* is Hermitian by construction")
}

pub fn is_contractive(t: &QMatrix, tol: f64) -> bool {
    contractivity_check(t, tol).psd
}

/// Checks contractivity of `T_n(g)` for `n = 1..=n_max` and reports the
/// first failing order.
///
/// `I - T_n T_n*` is a principal submatrix of `I - T_m T_m*` for `n < m`,
/// so the top order is tried first; only on failure are the lower orders
/// scanned (in parallel, keeping the smallest failing `n`).
pub fn certify_schur(g: &QPowerSeries, n_max: usize, tol: f64) -> CertReport {
    let n_max = n_max.max(1);
    let mut report = CertReport::new(
        CheckKind::ToeplitzContractivity,
        RunParameters { order: Some(n_max), tol: Some(tol), ..Default::default() },
    );
    let top = contractivity_check(&g.toeplitz(n_max), tol);
    let first_failure = if top.psd {
        None
    } else {
        (1..=n_max)
            .into_par_iter()
            .map(|n| (n, contractivity_check(&g.toeplitz(n), tol)))
            .find_first(|(_, c)| !c.psd)
            .or(Some((n_max, top)))
    };

    match first_failure {
        None => {
            report.verdict = Verdict::Pass;
            report.record(
                "contractivity",
                top.violation(),
                tol,
                "I - T_n(g) T_n(g)* >= 0 (lower-triangular Toeplitz section is a contraction)",
            );
            report.statement = format!(
                "no violation found up to order {n_max}: T_n(g) is contractive for n = 1..{n_max}; \
                 this is a necessary condition for Schur-class membership, not a proof of it"
            );
        }
        Some((n, check)) => {
            report.verdict = Verdict::Fail;
            report.record(
                "contractivity",
                check.violation(),
                tol,
                "I - T_n(g) T_n(g)* >= 0 (lower-triangular Toeplitz section is a contraction)",
            );
            let mut w = Witness::new(WitnessKind::Toeplitz, g.coefficients.iter().take(n).copied().collect());
            w.order = Some(n);
            w.min_eigenvalue = Some(check.min_eigenvalue);
            report.witness = Some(w);
            report.statement = format!("T_{n}(g) is not contractive: the series is not in the Schur class");
        }
    }
    if g.is_truncated() {
        report.notes.push(
            "series is truncated: only the supplied coefficients enter the Toeplitz sections".to_string(),
        );
    }
    if n_max < g.degree() + 1 {
        report.notes.push(format!(
            "order {n_max} is below degree + 1 = {}; higher coefficients were not examined",
            g.degree() + 1
        ));
    }
    report
}

/// `[[I - S S* - H H*, S H^T - H S^T], [conj(H) S* - conj(S) H*, I - conj(S) S^T - conj(H) H^T]]`
/// with `S = T_n(s)`, `H = T_n(h)`. Equals the complex embedding of
/// `I - T_n(g) T_n(g)*` for `g = s + h j`.
pub fn block_criterion(s: &ComplexSeries, h: &ComplexSeries, n: usize) -> ComplexMatrix {
    let ts = s.toeplitz(n);
    let th = h.toeplitz(n);
    let id = ComplexMatrix::identity(n);
    let (ts_adj, th_adj) = (ts.adjoint(), th.adjoint());
    let (ts_t, th_t) = (ts.transpose(), th.transpose());
    let (ts_c, th_c) = (ts.conj(), th.conj());

    let a = &(&id - &(&ts * &ts_adj)) - &(&th * &th_adj);
    let b = &(&ts * &th_t) - &(&th * &ts_t);
    let c = &(&th_c * &ts_adj) - &(&ts_c * &th_adj);
    let d = &(&id - &(&ts_c * &ts_t)) - &(&th_c * &th_t);
    ComplexMatrix::from_blocks(&a, &b, &c, &d).expect("blocks are n x n")
}

/// Embedded `I - T_n(g) T_n(g)*`, the right-hand side of the block identity.
pub fn embedded_contractivity_defect(g: &QPowerSeries, n: usize) -> ComplexMatrix {
    let t = g.toeplitz(n);
    let defect = &QMatrix::identity(n) - &(&t * &t.adjoint());
    embed(&defect)
}
