//! Seeded sampling of points, values and test series.
//!
//! Harness trials draw from independent ChaCha streams keyed by
//! `(seed, stage, trial)`, so results do not depend on execution order.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qlinalg::spectral_norm;
use crate::quaternion::Quaternion;
use crate::series::QPowerSeries;
use crate::Complex;

/// Default distance kept from the unit sphere when sampling the ball.
pub const DEFAULT_MARGIN: f64 = 0.05;

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Independent generator for one trial of one harness stage.
pub fn trial_rng(seed: u64, stage: u64, trial: u64) -> ChaCha8Rng {
    let key = splitmix64(splitmix64(splitmix64(seed) ^ stage) ^ trial);
    ChaCha8Rng::seed_from_u64(key)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the ball `|q| < 1 - margin`, by rejection from the cube.
pub fn ball_point<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> Quaternion {
    let r = 1.0 - margin;
    loop {
        let q = Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if q.norm() < r {
            return q;
        }
    }
}

/// Ball point scaled into `|q| < radius`.
pub fn ball_point_within<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Quaternion {
    ball_point(rng, 0.0) * radius
}

/// Ball point off the complex slice with `|im| >= min_im`.
pub fn off_slice_point<R: Rng + ?Sized>(rng: &mut R, radius: f64, min_im: f64) -> Quaternion {
    loop {
        let q = ball_point_within(rng, radius);
        if !q.is_on_slice() && q.im_norm() >= min_im {
            return q;
        }
    }
}

/// Uniform point of the disc `|z| < radius` in the complex slice.
pub fn disc_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex {
    loop {
        let z = Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if z.norm() < 1.0 {
            return z * radius;
        }
    }
}

/// Quaternion with components uniform in `[-1, 1]`.
pub fn cube_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    )
}

/// Polynomial of the given degree with coefficients uniform in the cube.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> QPowerSeries {
    let c: Vec<_> = (0..=degree).map(|_| cube_quaternion(rng)).collect();
    QPowerSeries::polynomial(&c)
}

/// Rescales `g` so that `T_order(g)` has spectral norm one.
pub fn normalize_to_toeplitz_norm(g: &QPowerSeries, order: usize) -> QPowerSeries {
    let norm = spectral_norm(&g.toeplitz(order));
    if norm == 0.0 {
        g.clone()
    } else {
        g.scaled(1.0 / norm)
    }
}

/// Rescales `g` so that `sum |g_k| = target`, which bounds `|g|` by
/// `target` on the whole ball.
pub fn normalize_to_l1(g: &QPowerSeries, target: f64) -> QPowerSeries {
    let l1: f64 = g.coefficients().iter().map(|c| c.norm()).sum();
    if l1 == 0.0 {
        g.clone()
    } else {
        g.scaled(target / l1)
    }
}

/// Random point on the conjugacy sphere of `g`, obtained by rotating its
/// imaginary part to a uniformly drawn direction.
pub fn rotate_on_sphere<R: Rng + ?Sized>(rng: &mut R, g: Quaternion) -> Quaternion {
    let r = g.im_norm();
    loop {
        let v = cube_quaternion(rng).im();
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return Quaternion::real(g.re()) + v * (r / n);
        }
    }
}
