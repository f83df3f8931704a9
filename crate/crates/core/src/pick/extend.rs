//! Two-point extension of a regular function across a conjugacy sphere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{equivalent, sphere_representative, two_point_weights_inverse, Quaternion};
use crate::Complex;

const EQUIVALENCE_TOL: f64 = 1e-10;

/// `f(g) = (g - b)(a - b)^-1 f(a) + (a - g)(a - b)^-1 f(b)` for distinct
/// equivalent `a, b, g`.
pub fn representation_extend(
    a: Quaternion,
    b: Quaternion,
    fa: Quaternion,
    fb: Quaternion,
    g: Quaternion,
) -> Result<Quaternion> {
    let inv = two_point_weights_inverse(a, b, g, EQUIVALENCE_TOL)?;
    Ok((g - b) * inv * fa + (a - g) * inv * fb)
}

/// Value at an off-slice point forced by the slice pair `alpha`, `conj alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VVectorExtension {
    /// `(g - conj g)^-1 (g - conj a) f(a) + (g - conj g)^-1 (g - a) f(conj a)`.
    pub value: Quaternion,
    /// The same point through [`representation_extend`].
    pub via_representation: Quaternion,
    /// `|value - via_representation|`.
    pub residual: f64,
}

/// Extends `f` from `alpha = re(g) + |im(g)| i` and its conjugate to `g`.
///
/// `fa = f(alpha)`, `fab = f(conj alpha)`. The left-factored weights come
/// from annihilating the third component of `V = (g - conj a, g - a,
/// conj g - g)` against the values; they coincide algebraically with the
/// right-factored weights of [`representation_extend`].
pub fn vvector_extend(alpha: Complex, fa: Quaternion, fab: Quaternion, g: Quaternion) -> Result<VVectorExtension> {
    if g.is_real() {
        return Err(Error::DegenerateClass(g));
    }
    let a = Quaternion::from_complex(alpha);
    if !equivalent(a, g, EQUIVALENCE_TOL) || alpha.im == 0.0 {
        return Err(Error::NotEquivalent(format!(
            "{a} is not a slice representative of {g}; expected {:?}",
            sphere_representative(g).ok()
        )));
    }
    let ab = a.conj();
    let inv = (g - g.conj()).inverse().ok_or(Error::DegenerateClass(g))?;
    let value = inv * (g - ab) * fa + inv * (g - a) * fab;
    let via_representation = if g == a || g == ab {
        // g already on the slice: the two-point formula degenerates to f(g)
        if g == a {
            fa
        } else {
            fab
        }
    } else {
        representation_extend(a, ab, fa, fab, g)?
    };
    Ok(VVectorExtension { value, via_representation, residual: (value - via_representation).norm() })
}
