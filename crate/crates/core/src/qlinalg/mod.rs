//! Linear algebra over the quaternions.
//!
//! Positivity of a quaternionic Hermitian matrix `A = A1 + A2 j` is decided
//! on its complex adjoint embedding `[[A1, A2], [-conj A2, conj A1]]`, which
//! is a *-homomorphism and preserves positivity. Pick-matrix entries come
//! from the scalar Stein equation `p - a p b = c`, solved as a 4x4 real
//! linear system.

mod eigen;
mod matrix;

pub use eigen::hermitian_eigenvalues;
pub use matrix::{ComplexMatrix, QMatrix};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Default relative tolerance for PSD decisions.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Relative asymmetry accepted before a matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Complex adjoint embedding of a quaternionic matrix.
pub fn embed(a: &QMatrix) -> ComplexMatrix {
    let (a1, a2) = a.split();
    let lower_left = a2.conj().scale(crate::Complex::new(-1.0, 0.0));
    ComplexMatrix::from_blocks(&a1, &a2, &lower_left, &a1.conj()).expect("split parts share a shape")
}

/// Outcome of a positivity test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
    /// `max(1, spectral norm)`, the scale the tolerance is relative to.
    pub scale: f64,
}

impl PsdCheck {
    /// `max(0, -min_eigenvalue / scale)`: zero for PSD matrices.
    pub fn violation(&self) -> f64 {
        (-self.min_eigenvalue / self.scale).max(0.0)
    }
}

fn check_hermitian(defect: f64, max_abs: f64) -> Result<()> {
    let allowed = HERMITIAN_TOL * max_abs.max(1.0);
    if !(defect <= allowed) {
        return Err(Error::NotHermitian { asymmetry: defect, allowed });
    }
    Ok(())
}

/// Positivity test of a complex Hermitian matrix.
pub fn psd_check_complex(a: &ComplexMatrix, tol: f64) -> Result<PsdCheck> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    check_hermitian(a.hermitian_defect()?, a.max_abs())?;
    let ev = hermitian_eigenvalues(a);
    let min_eigenvalue = ev[0];
    let scale = ev.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    Ok(PsdCheck { psd: min_eigenvalue >= -tol * scale, min_eigenvalue, scale })
}

/// Positivity test of a quaternionic Hermitian matrix through its embedding.
pub fn psd_check(a: &QMatrix, tol: f64) -> Result<PsdCheck> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    check_hermitian(a.hermitian_defect()?, a.max_abs())?;
    psd_check_complex(&embed(a), tol)
}

pub fn is_psd(a: &QMatrix, tol: f64) -> Result<bool> {
    psd_check(a, tol).map(|c| c.psd)
}

pub fn is_psd_complex(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    psd_check_complex(a, tol).map(|c| c.psd)
}

/// Largest singular value, computed from `A A*` on the embedding.
pub fn spectral_norm(a: &QMatrix) -> f64 {
    let e = embed(a);
    let gram = &e * &e.adjoint();
    hermitian_eigenvalues(&gram).last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Unique solution `p` of `p - a p b = c` for `|a||b| < 1`.
pub fn solve_stein_entry(a: Quaternion, b: Quaternion, c: Quaternion) -> Result<Quaternion> {
    let rho = a.norm() * b.norm();
    if !(rho < 1.0) {
        return Err(Error::SteinDomain(rho));
    }
    let la = a.left_matrix();
    let rb = b.right_matrix();
    // system matrix I - L_a R_b, augmented with the right-hand side
    let mut m = [[0.0f64; 5]; 4];
    for r in 0..4 {
        for col in 0..4 {
            let prod: f64 = (0..4).map(|k| la[r][k] * rb[k][col]).sum();
            m[r][col] = if r == col { 1.0 - prod } else { -prod };
        }
    }
    let rhs = c.to_array();
    for r in 0..4 {
        m[r][4] = rhs[r];
    }
    Ok(Quaternion::from_array(gauss_solve4(m)))
}

fn gauss_solve4(mut m: [[f64; 5]; 4]) -> [f64; 4] {
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let d = m[col][col];
        for r in col + 1..4 {
            let f = m[r][col] / d;
            if f != 0.0 {
                for k in col..5 {
                    m[r][k] -= f * m[col][k];
                }
            }
        }
    }
    let mut x = [0.0; 4];
    for r in (0..4).rev() {
        let s: f64 = (r + 1..4).map(|k| m[r][k] * x[k]).sum();
        x[r] = (m[r][4] - s) / m[r][r];
    }
    x
}

/// `max |P - T P T* - E E* + N N*|` entrywise.
pub fn stein_residual(p: &QMatrix, t: &QMatrix, e: &QMatrix, n: &QMatrix) -> Result<f64> {
    if !p.is_square() || !t.is_square() || t.rows() != p.rows() || e.rows() != p.rows() || n.rows() != p.rows() {
        return Err(Error::Dimension(format!(
            "Stein data do not conform: P {}x{}, T {}x{}, E {}x{}, N {}x{}",
            p.rows(),
            p.cols(),
            t.rows(),
            t.cols(),
            e.rows(),
            e.cols(),
            n.rows(),
            n.cols()
        )));
    }
    let tpt = t.checked_mul(p)?.checked_mul(&t.adjoint())?;
    let ee = e.checked_mul(&e.adjoint())?;
    let nn = n.checked_mul(&n.adjoint())?;
    Ok(p.checked_sub(&tpt)?.checked_sub(&ee)?.checked_add(&nn)?.max_abs())
}
