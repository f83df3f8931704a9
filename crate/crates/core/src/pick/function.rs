use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::series::QPowerSeries;

/// A function on the unit ball known only through its values.
///
/// Implementations must be deterministic and safe to call from several
/// threads at once.
pub trait SampledFunction: Sync {
    fn eval(&self, z: Quaternion) -> Result<Quaternion>;

    /// [`SampledFunction::eval`] with non-finite values turned into errors.
    fn eval_checked(&self, z: Quaternion) -> Result<Quaternion> {
        let v = self.eval(z)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { point: z, message: format!("non-finite value {v}") })
        }
    }
}

impl<F: SampledFunction + ?Sized> SampledFunction for &F {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        (**self).eval(z)
    }
}

impl<F: SampledFunction + ?Sized> SampledFunction for Box<F> {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        (**self).eval(z)
    }
}

/// `z -> sum z^k g_k`.
#[derive(Clone, Debug)]
pub struct LeftEvaluation(pub QPowerSeries);

impl SampledFunction for LeftEvaluation {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        Ok(self.0.eval_left(z))
    }
}

/// `z -> sum g_k z^k`.
#[derive(Clone, Debug)]
pub struct RightEvaluation(pub QPowerSeries);

impl SampledFunction for RightEvaluation {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        Ok(self.0.eval_right(z))
    }
}

/// Wraps an infallible closure.
pub struct FnFunction<F>(pub F);

impl<F: Fn(Quaternion) -> Quaternion + Sync> SampledFunction for FnFunction<F> {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        Ok((self.0)(z))
    }
}

/// `z -> scale * base(z) + offset`, the offset applied only off the
/// complex slice.
#[derive(Clone, Debug)]
pub struct OffSliceCorruption<F> {
    pub base: F,
    pub offset: Quaternion,
    pub scale: f64,
}

impl<F> OffSliceCorruption<F> {
    pub fn new(base: F, offset: Quaternion) -> Self {
        OffSliceCorruption { base, offset, scale: 1.0 }
    }
}

impl<F: SampledFunction> SampledFunction for OffSliceCorruption<F> {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        let v = self.base.eval(z)? * self.scale;
        Ok(if z.is_on_slice() { v } else { v + self.offset })
    }
}

/// `z -> conj f(conj z)`, turning right-evaluation data into left-evaluation data.
#[derive(Clone, Debug)]
pub struct Conjugated<F>(pub F);

impl<F: SampledFunction> SampledFunction for Conjugated<F> {
    fn eval(&self, z: Quaternion) -> Result<Quaternion> {
        Ok(self.0.eval(z.conj())?.conj())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corruption_only_off_slice() {
        let f = OffSliceCorruption::new(FnFunction(|_| Quaternion::ZERO), Quaternion::real(0.2));
        assert_eq!(f.eval(Quaternion::new(0.1, 0.3, 0.0, 0.0)).unwrap(), Quaternion::ZERO);
        assert_eq!(f.eval(Quaternion::new(0.1, 0.0, 0.3, 0.0)).unwrap(), Quaternion::real(0.2));
    }

    #[test]
    fn conjugated_right_evaluation_is_left_evaluation_of_sharp() {
        let g = QPowerSeries::polynomial(&[Quaternion::new(0.1, 0.2, 0.3, 0.4), Quaternion::new(0.0, -0.3, 0.2, 0.1)]);
        let f = Conjugated(RightEvaluation(g.clone()));
        let z = Quaternion::new(0.2, 0.1, -0.4, 0.3);
        assert!(f.eval(z).unwrap().max_abs_diff(g.sharp().eval_left(z)) < 1e-15);
    }

    #[test]
    fn non_finite_values_are_errors() {
        let f = FnFunction(|_| Quaternion::real(f64::NAN));
        assert!(matches!(f.eval_checked(Quaternion::ZERO), Err(Error::Evaluation { .. })));
    }
}
