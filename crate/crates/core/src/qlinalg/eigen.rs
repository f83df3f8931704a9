//! Cyclic Jacobi iteration for complex Hermitian matrices.

use super::matrix::ComplexMatrix;
use crate::Complex;

const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues of the Hermitian part `(A + A*)/2`, sorted ascending.
///
/// Panics if `a` is not square.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    let n = a.rows();
    let mut m: Vec<Complex> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            (a[(i, j)] + a[(j, i)].conj()) * 0.5
        })
        .collect();

    let frob = m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if frob > 0.0 {
        for _ in 0..MAX_SWEEPS {
            let off = off_diagonal_norm(&m, n);
            if off <= OFF_DIAGONAL_TOL * frob {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut m, n, p, q);
                }
            }
        }
    }

    let mut ev: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

fn off_diagonal_norm(m: &[Complex], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += 2.0 * m[p * n + q].norm_sqr();
        }
    }
    s.sqrt()
}

/// Annihilates entry `(p, q)` with `G = diag(1, e^{-i phi}) R(theta)`,
/// `m <- G* m G`, where `phi = arg m[p][q]`.
fn rotate(m: &mut [Complex], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    if r <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[p * n + q] = Complex::new(0.0, 0.0);
        m[q * n + p] = Complex::new(0.0, 0.0);
        return;
    }
    let phase = (apq / r).conj();
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let gpp = Complex::new(c, 0.0);
    let gpq = Complex::new(s, 0.0);
    let gqp = phase * (-s);
    let gqq = phase * c;

    for k in 0..n {
        let (kp, kq) = (m[k * n + p], m[k * n + q]);
        m[k * n + p] = kp * gpp + kq * gqp;
        m[k * n + q] = kp * gpq + kq * gqq;
    }
    for k in 0..n {
        let (pk, qk) = (m[p * n + k], m[q * n + k]);
        m[p * n + k] = gpp.conj() * pk + gqp.conj() * qk;
        m[q * n + k] = gpq.conj() * pk + gqq.conj() * qk;
    }
    m[p * n + q] = Complex::new(0.0, 0.0);
    m[q * n + p] = Complex::new(0.0, 0.0);
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let b = ComplexMatrix::from_fn(n, n, |_, _| {
            Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        &b + &b.adjoint()
    }

    fn nalgebra_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
        let n = a.rows();
        let m = DMatrix::from_fn(n, n, |i, j| a[(i, j)]);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    #[test]
    fn diagonal_input_is_returned_sorted() {
        let mut a = ComplexMatrix::zeros(3, 3);
        a[(0, 0)] = Complex::new(3.0, 0.0);
        a[(1, 1)] = Complex::new(-1.0, 0.0);
        a[(2, 2)] = Complex::new(2.0, 0.0);
        assert_eq!(hermitian_eigenvalues(&a), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_with_complex_coupling() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let a = ComplexMatrix::from_row_major(
            2,
            2,
            vec![Complex::new(1.0, 0.0), Complex::new(0.0, 1.0), Complex::new(0.0, -1.0), Complex::new(1.0, 0.0)],
        )
        .unwrap();
        let ev = hermitian_eigenvalues(&a);
        assert!(ev[0].abs() < 1e-15 && (ev[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_nalgebra_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1, 2, 3, 6, 12, 40] {
            for _ in 0..5 {
                let a = random_hermitian(n, &mut rng);
                let ours = hermitian_eigenvalues(&a);
                let theirs = nalgebra_eigenvalues(&a);
                for (x, y) in ours.iter().zip(&theirs) {
                    assert!((x - y).abs() <= 1e-12 * (1.0 + y.abs()), "n={n}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(hermitian_eigenvalues(&ComplexMatrix::zeros(4, 4)), vec![0.0; 4]);
    }
}
