//! Scalar traits the numerical core is generic over.
//!
//! [`Real`] covers the real floating point types (`f32`, `f64`). [`Field`]
//! additionally covers their complex counterparts so that the Pfaffian and
//! the exterior algebra can run over the complexified form pair.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Real floating point scalar.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` constant. Panics only for values outside the range of `Self`.
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    /// A tolerance of `base`, widened to what the precision of `Self` can resolve.
    fn tol(base: f64) -> Self {
        let floor = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) * 1e3;
        Self::c(base.max(floor))
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A field element with a real modulus, used for pivot selection.
pub trait Field:
    Clone + Num + NumAssign + std::ops::Neg<Output = Self> + Debug + Send + Sync
{
    type Real: Real;

    fn modulus(&self) -> Self::Real;
    fn from_real(x: Self::Real) -> Self;
}

impl<R: Real> Field for R {
    type Real = R;

    fn modulus(&self) -> R {
        self.abs()
    }

    fn from_real(x: R) -> Self {
        x
    }
}

impl<R: Real> Field for Complex<R> {
    type Real = R;

    fn modulus(&self) -> R {
        self.norm()
    }

    fn from_real(x: R) -> Self {
        Complex::new(x, R::zero())
    }
}

/// `n!` as a real scalar.
pub fn factorial<R: Real>(n: usize) -> R {
    (1..=n).fold(R::one(), |acc, k| acc * R::c(k as f64))
}

/// Binomial coefficient as a real scalar.
pub fn binomial<R: Real>(n: usize, k: usize) -> R {
    if k > n {
        return R::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(R::one(), |acc, i| {
        acc * R::c((n - i) as f64) / R::c((i + 1) as f64)
    })
}

/// Relative closeness `|a - b| <= tol * (1 + max(|a|, |b|))`.
pub fn close<R: Real>(a: R, b: R, tol: R) -> bool {
    (a - b).abs() <= tol * (R::one() + a.abs().max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial::<f64>(0), 1.0);
        assert_eq!(factorial::<f64>(5), 120.0);
        assert_eq!(binomial::<f64>(4, 2), 6.0);
        assert_eq!(binomial::<f64>(6, 3), 20.0);
        assert_eq!(binomial::<f64>(2, 3), 0.0);
    }

    #[test]
    fn tolerance_widens_for_single_precision() {
        assert_eq!(<f64 as Real>::tol(1e-12), 1e-12);
        assert!(<f32 as Real>::tol(1e-12) > 1e-5);
    }
}
