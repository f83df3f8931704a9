//! Recovery of power-series coefficients from values on a slice circle.

use std::f64::consts::PI;

use super::function::SampledFunction;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::series::QPowerSeries;
use crate::Complex;

/// Coefficients `f_0 .. f_{d_max}` of a left-regular `f` from `m` samples on
/// the circle `|zeta| = radius` of the complex slice.
///
/// On the slice `f(zeta) = s(zeta) + h(zeta) j` with complex `s`, `h`; each
/// component is recovered by the discrete Fourier average
/// `(1/m) sum_t f(zeta_t) zeta_t^-k` and the two are rejoined as
/// `s_k + h_k j`.
pub fn reconstruct_slice_series<F: SampledFunction + ?Sized>(
    f: &F,
    radius: f64,
    m: usize,
    d_max: usize,
) -> Result<QPowerSeries> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Config(format!("reconstruction radius {radius} must lie in (0, 1)")));
    }
    if m <= 2 * d_max {
        return Err(Error::Config(format!("need more than {} sample points for degree {d_max}, got {m}", 2 * d_max)));
    }
    let roots: Vec<Complex> = (0..m).map(|t| Complex::from_polar(1.0, 2.0 * PI * t as f64 / m as f64)).collect();
    let mut samples = Vec::with_capacity(m);
    for root in &roots {
        let zeta = Quaternion::from_complex(root * radius);
        samples.push(f.eval_checked(zeta)?.split());
    }

    let coefficients: Vec<Quaternion> = (0..=d_max)
        .map(|k| {
            let (mut s, mut h) = (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));
            for (t, (a, b)) in samples.iter().enumerate() {
                let w = roots[(k * t) % m].conj();
                s += a * w;
                h += b * w;
            }
            let scale = 1.0 / (m as f64 * radius.powi(k as i32));
            Quaternion::join(s * scale, h * scale)
        })
        .collect();
    Ok(QPowerSeries::truncation(&coefficients))
}

/// Bound on `|F(z) - f(z)|` at `|z| = rho` for a Schur-class `f` (all
/// `|f_k| <= 1`) and its reconstruction `F` of degree `d_max`: the
/// truncated tail plus the aliasing from the sampling circle.
pub fn reconstruction_tail_bound(rho: f64, radius: f64, m: usize, d_max: usize) -> f64 {
    let rm = radius.powi(m as i32);
    let aliasing = rm / (1.0 - rm);
    (rho.powi(d_max as i32 + 1) + aliasing) / (1.0 - rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pick::function::{FnFunction, LeftEvaluation};

    #[test]
    fn identity_series() {
        let g = QPowerSeries::polynomial(&[Quaternion::ZERO, Quaternion::ONE]);
        let r = reconstruct_slice_series(&LeftEvaluation(g), 0.5, 64, 8).unwrap();
        assert!(r.is_truncated());
        for (k, c) in r.coefficients().iter().enumerate() {
            let want = if k == 1 { Quaternion::ONE } else { Quaternion::ZERO };
            assert!(c.max_abs_diff(want) < 1e-14, "k={k}: {c}");
        }
    }

    #[test]
    fn constant_series() {
        let c = Quaternion::new(0.2, -0.1, 0.4, 0.3);
        let r = reconstruct_slice_series(&FnFunction(move |_| c), 0.5, 64, 8).unwrap();
        assert!(r.coefficient(0).max_abs_diff(c) < 1e-15);
        assert!(r.coefficients()[1..].iter().all(|q| q.norm() < 1e-13));
    }

    #[test]
    fn parameter_checks() {
        let f = FnFunction(|_| Quaternion::ZERO);
        assert!(reconstruct_slice_series(&f, 1.0, 64, 8).is_err());
        assert!(reconstruct_slice_series(&f, 0.0, 64, 8).is_err());
        assert!(reconstruct_slice_series(&f, 0.5, 16, 8).is_err());
    }

    #[test]
    fn tail_bound_shrinks_with_degree() {
        assert!(reconstruction_tail_bound(0.5, 0.5, 256, 24) < 1e-7);
        assert!(reconstruction_tail_bound(0.5, 0.5, 256, 16) > 1e-7);
    }
}
