//! Quaternionic Pick matrices and the three-point certification harness.
//!
//! For points `z_i` in the unit ball and values `f(z_i)` the Pick matrix is
//! the unique solution of the Stein equation `P - T P T* = E E* - N N*`
//! with `T = diag(z_i)`, `E` a column of ones and `N = (f(z_i))`; entrywise
//! `P_ij = sum_k z_i^k (1 - f(z_i) conj f(z_j)) conj(z_j)^k`. The dual
//! matrix swaps the roles of points and values with their conjugates and
//! belongs to right evaluation.

mod extend;
mod function;
mod harness;
mod reconstruct;

pub use extend::{representation_extend, vvector_extend, VVectorExtension};
pub use function::{Conjugated, FnFunction, LeftEvaluation, OffSliceCorruption, RightEvaluation, SampledFunction};
pub use harness::{dual_certify, hindmarsh_certify, HarnessConfig};
pub use reconstruct::{reconstruct_slice_series, reconstruction_tail_bound};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{solve_stein_entry, stein_residual, ComplexMatrix, QMatrix};
use crate::quaternion::Quaternion;
use crate::Complex;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PickSide {
    /// Left evaluation, `1 - f(z_i) conj f(z_j)` between powers of `z_i`, `conj z_j`.
    #[default]
    Standard,
    /// Right evaluation, `1 - conj f(z_i) f(z_j)` between powers of `conj z_i`, `z_j`.
    Dual,
}

/// Interpolation data `(z_i, f(z_i))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PickProblemRepr")]
pub struct PickProblem {
    points: Vec<Quaternion>,
    values: Vec<Quaternion>,
    side: PickSide,
}

#[derive(Deserialize)]
struct PickProblemRepr {
    points: Vec<Quaternion>,
    values: Vec<Quaternion>,
    #[serde(default)]
    side: PickSide,
}

impl TryFrom<PickProblemRepr> for PickProblem {
    type Error = Error;
    fn try_from(r: PickProblemRepr) -> Result<Self> {
        PickProblem::new(r.points, r.values, r.side)
    }
}

impl PickProblem {
    pub fn new(points: Vec<Quaternion>, values: Vec<Quaternion>, side: PickSide) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Invalid("field `points` must not be empty".into()));
        }
        if points.len() != values.len() {
            return Err(Error::Invalid(format!(
                "field `values` has {} entries but `points` has {}",
                values.len(),
                points.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Invalid(format!("field `values`: entry {k} is not finite")));
        }
        for (index, z) in points.iter().enumerate() {
            let modulus = z.norm();
            if !(modulus < 1.0) {
                return Err(Error::OutsideBall { index, modulus });
            }
        }
        Ok(PickProblem { points, values, side })
    }

    pub fn standard(points: Vec<Quaternion>, values: Vec<Quaternion>) -> Result<Self> {
        PickProblem::new(points, values, PickSide::Standard)
    }

    pub fn dual(points: Vec<Quaternion>, values: Vec<Quaternion>) -> Result<Self> {
        PickProblem::new(points, values, PickSide::Dual)
    }

    pub fn points(&self) -> &[Quaternion] {
        &self.points
    }

    pub fn values(&self) -> &[Quaternion] {
        &self.values
    }

    pub fn side(&self) -> PickSide {
        self.side
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `(T, E, N)` of the Stein equation the Pick matrix solves.
    pub fn stein_data(&self) -> (QMatrix, QMatrix, QMatrix) {
        let ones = QMatrix::column(&vec![Quaternion::ONE; self.len()]);
        match self.side {
            PickSide::Standard => (QMatrix::diagonal(&self.points), ones, QMatrix::column(&self.values)),
            PickSide::Dual => {
                let t: Vec<_> = self.points.iter().map(|z| z.conj()).collect();
                let n: Vec<_> = self.values.iter().map(|v| v.conj()).collect();
                (QMatrix::diagonal(&t), ones, QMatrix::column(&n))
            }
        }
    }
}

/// The Pick matrix of `p`, one 4x4 real solve per entry.
pub fn pick_matrix(p: &PickProblem) -> Result<QMatrix> {
    let n = p.len();
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (zi, zj, fi, fj) = (p.points[i], p.points[j], p.values[i], p.values[j]);
            m[(i, j)] = match p.side {
                PickSide::Standard => solve_stein_entry(zi, zj.conj(), Quaternion::ONE - fi * fj.conj())?,
                PickSide::Dual => solve_stein_entry(zi.conj(), zj, Quaternion::ONE - fi.conj() * fj)?,
            };
        }
    }
    Ok(m)
}

/// Stein residual of `pick` against the data of `p`.
pub fn pick_stein_residual(p: &PickProblem, pick: &QMatrix) -> Result<f64> {
    let (t, e, n) = p.stein_data();
    stein_residual(pick, &t, &e, &n)
}

/// Classical complex Pick matrix `[(1 - w_i conj w_j) / (1 - z_i conj z_j)]`.
pub fn classical_pick_matrix(points: &[Complex], values: &[Complex]) -> ComplexMatrix {
    let one = Complex::new(1.0, 0.0);
    ComplexMatrix::from_fn(points.len(), points.len(), |i, j| {
        (one - values[i] * values[j].conj()) / (one - points[i] * points[j].conj())
    })
}

/// Complex part of a slice Pick matrix for `f = s + h j` on the slice:
/// `L - G L G* - H L H*` with the Szego kernel `L = [1/(1 - z_i conj z_j)]`
/// and `G = diag(s_i)`, `H = diag(h_i)`.
pub fn slice_pick_complex_part(points: &[Complex], s: &[Complex], h: &[Complex]) -> ComplexMatrix {
    let n = points.len();
    let one = Complex::new(1.0, 0.0);
    let kernel = ComplexMatrix::from_fn(n, n, |i, j| one / (one - points[i] * points[j].conj()));
    let diag = |v: &[Complex]| {
        ComplexMatrix::from_fn(n, n, |i, j| if i == j { v[i] } else { Complex::new(0.0, 0.0) })
    };
    let (g, hm) = (diag(s), diag(h));
    let gk = &(&g * &kernel) * &g.adjoint();
    let hk = &(&hm * &kernel) * &hm.adjoint();
    &(&kernel - &gk) - &hk
}
