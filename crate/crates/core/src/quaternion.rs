//! Real quaternions `w + x i + y j + z k` in double precision.
//!
//! Besides the ring operations this module carries the conjugacy-class
//! utilities: two quaternions are equivalent exactly when they share the
//! real part and the modulus, so every non-real class is a 2-sphere that
//! meets the complex slice `span{1, i}` in a conjugate pair.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Complex;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Quaternion::new(w, 0.0, 0.0, 0.0)
    }

    /// Embeds a complex number into the slice spanned by `1` and `i`.
    pub fn from_complex(c: Complex) -> Self {
        Quaternion::new(c.re, c.im, 0.0, 0.0)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn re(self) -> f64 {
        self.w
    }

    pub fn im(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn conj(self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Modulus of the imaginary part, the radius of the conjugacy sphere.
    pub fn im_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_real(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    /// True when the point lies in the complex slice `span{1, i}`.
    pub fn is_on_slice(self) -> bool {
        self.y == 0.0 && self.z == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(self) -> Option<Quaternion> {
        let n = self.norm_sqr();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() / n)
        }
    }

    pub fn powi(self, k: u32) -> Quaternion {
        let mut acc = Quaternion::ONE;
        let mut base = self;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Writes `self = a + b j` with complex `a = w + x i` and `b = y + z i`.
    pub fn split(self) -> (Complex, Complex) {
        (Complex::new(self.w, self.x), Complex::new(self.y, self.z))
    }

    /// Inverse of [`Quaternion::split`]: returns `a + b j`.
    pub fn join(a: Complex, b: Complex) -> Quaternion {
        Quaternion::new(a.re, a.im, b.re, b.im)
    }

    /// Real 4x4 matrix of `p -> self * p` acting on `[w, x, y, z]`.
    pub fn left_matrix(self) -> [[f64; 4]; 4] {
        let Quaternion { w, x, y, z } = self;
        [[w, -x, -y, -z], [x, w, -z, y], [y, z, w, -x], [z, -y, x, w]]
    }

    /// Real 4x4 matrix of `p -> p * self` acting on `[w, x, y, z]`.
    pub fn right_matrix(self) -> [[f64; 4]; 4] {
        let Quaternion { w, x, y, z } = self;
        [[w, -x, -y, -z], [x, w, z, -y], [y, -z, w, x], [z, y, -x, w]]
    }

    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.w, self.x, self.y, self.z)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Quaternion {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

impl From<Complex> for Quaternion {
    fn from(c: Complex) -> Self {
        Quaternion::from_complex(c)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        <[f64; 4]>::deserialize(deserializer).map(Quaternion::from_array)
    }
}

/// Conjugacy test: `a ~ b` iff they share real part and modulus.
pub fn equivalent(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    (a.re() - b.re()).abs() <= tol && (a.norm() - b.norm()).abs() <= tol
}

/// The point `re(g) + |im(g)| i` of the conjugacy sphere of `g` in the
/// upper half of the complex slice. Its conjugate is the other slice point.
pub fn sphere_representative(g: Quaternion) -> Result<Complex> {
    let r = g.im_norm();
    if r == 0.0 {
        return Err(Error::DegenerateClass(g));
    }
    Ok(Complex::new(g.re(), r))
}

/// `(g - b)(a - b)^-1 a^k + (a - g)(a - b)^-1 b^k`, which equals `g^k` for
/// three distinct points of one conjugacy sphere.
pub fn power_interpolation_check(
    a: Quaternion,
    b: Quaternion,
    g: Quaternion,
    k: u32,
) -> Result<Quaternion> {
    let inv = two_point_weights_inverse(a, b, g, 1e-10)?;
    Ok((g - b) * inv * a.powi(k) + (a - g) * inv * b.powi(k))
}

/// Validates that `a, b, g` are pairwise distinct and equivalent, and
/// returns `(a - b)^-1`.
pub(crate) fn two_point_weights_inverse(
    a: Quaternion,
    b: Quaternion,
    g: Quaternion,
    tol: f64,
) -> Result<Quaternion> {
    if a == b || a == g || b == g {
        return Err(Error::NotEquivalent(format!("coincident points among {a}, {b}, {g}")));
    }
    if !equivalent(a, b, tol) || !equivalent(a, g, tol) || !equivalent(b, g, tol) {
        return Err(Error::NotEquivalent(format!("{a}, {b}, {g} do not share real part and modulus")));
    }
    (a - b)
        .inverse()
        .ok_or_else(|| Error::NotEquivalent("coincident points".into()))
}
