//! Oracles shared by the integration tests. None of them goes through the
//! solver or eigenvalue code under test.

#![allow(dead_code)]

use nalgebra::DMatrix;
use qschur::sampling::{ball_point_within, normalize_to_l1, normalize_to_toeplitz_norm, random_polynomial};
use qschur::{Complex, ComplexMatrix, QMatrix, QPowerSeries, Quaternion};
use rand::{Rng, RngExt};

/// Pick entry by direct summation of `sum_k a^k c b^k`, stopping once the
/// geometric tail is below `1e-18 |c|`.
pub fn series_entry(a: Quaternion, b: Quaternion, c: Quaternion) -> Quaternion {
    let rho = a.norm() * b.norm();
    assert!(rho < 1.0);
    let (mut left, mut right) = (Quaternion::ONE, Quaternion::ONE);
    let mut total = Quaternion::ZERO;
    let mut k = 0;
    loop {
        total += left * c * right;
        k += 1;
        if rho.powi(k) / (1.0 - rho) < 1e-18 {
            return total;
        }
        left *= a;
        right *= b;
    }
}

/// Standard-side Pick matrix from the series.
pub fn series_pick(points: &[Quaternion], values: &[Quaternion]) -> QMatrix {
    let n = points.len();
    QMatrix::from_fn(n, n, |i, j| {
        series_entry(points[i], points[j].conj(), Quaternion::ONE - values[i] * values[j].conj())
    })
}

/// Dual-side Pick matrix from the series.
pub fn series_dual_pick(points: &[Quaternion], values: &[Quaternion]) -> QMatrix {
    let n = points.len();
    QMatrix::from_fn(n, n, |i, j| {
        series_entry(points[i].conj(), points[j], Quaternion::ONE - values[i].conj() * values[j])
    })
}

/// `[[A1, A2], [-conj A2, conj A1]]` built entry by entry.
pub fn embed_oracle(a: &QMatrix) -> DMatrix<Complex> {
    let (r, c) = (a.rows(), a.cols());
    DMatrix::from_fn(2 * r, 2 * c, |i, j| {
        let q = a[(i % r, j % c)];
        let (a1, a2) = (Complex::new(q.w, q.x), Complex::new(q.y, q.z));
        match (i < r, j < c) {
            (true, true) => a1,
            (true, false) => a2,
            (false, true) => -a2.conj(),
            (false, false) => a1.conj(),
        }
    })
}

pub fn to_nalgebra(a: &ComplexMatrix) -> DMatrix<Complex> {
    DMatrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)])
}

/// Smallest eigenvalue of a Hermitian matrix through nalgebra.
pub fn min_eigenvalue(h: DMatrix<Complex>) -> f64 {
    let sym = (&h + h.adjoint()) * Complex::new(0.5, 0.0);
    sym.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn max_abs_diff(a: &DMatrix<Complex>, b: &DMatrix<Complex>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn qmatrix_diff(a: &QMatrix, b: &QMatrix) -> f64 {
    a.entries().iter().zip(b.entries()).map(|(x, y)| (*x - *y).norm()).fold(0.0, f64::max)
}

/// Random polynomial scaled so that `T_64` has spectral norm one.
pub fn toeplitz_fixture<R: Rng>(rng: &mut R, max_degree: usize) -> QPowerSeries {
    let degree = rng.random_range(0..=max_degree);
    normalize_to_toeplitz_norm(&random_polynomial(rng, degree), 64)
}

/// Random polynomial with `sum |g_k| = target`; Schur for `target <= 1`.
pub fn l1_fixture<R: Rng>(rng: &mut R, max_degree: usize, target: f64) -> QPowerSeries {
    let degree = rng.random_range(0..=max_degree);
    normalize_to_l1(&random_polynomial(rng, degree), target)
}

pub fn ball_points<R: Rng>(rng: &mut R, n: usize, radius: f64) -> Vec<Quaternion> {
    (0..n).map(|_| ball_point_within(rng, radius)).collect()
}

pub fn quaternion_from(a: [f64; 4]) -> Quaternion {
    Quaternion::from_array(a)
}
