//! Numeric abstractions.
//!
//! Vote-share arithmetic only needs a field with ordering, so the models are
//! written against [`Scalar`]. Routines that need `exp`, `ln` or `sqrt`
//! (Naive Bayes, quartiles, correlation) use [`Real`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Ordered field element used for vote-share computations.
pub trait Scalar: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync {}

impl<T> Scalar for T where T: Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync {}

/// Floating-point scalar.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Send + Sync {}

/// Arbitrary-precision rational.
pub type Exact = Ratio<BigInt>;

/// Converts a count into the scalar type.
#[inline]
pub fn count<T: Scalar>(n: u64) -> T {
    T::from_u64(n).expect("count is representable in the scalar type")
}

/// Converts an `f64` constant into the scalar type (exactly, for rationals).
#[inline]
pub fn constant<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("finite constant")
}

/// Lossy conversion for reporting.
#[inline]
pub fn to_f64<T: Scalar>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub(crate) fn real<F: Real>(x: f64) -> F {
    F::from_f64(x).expect("finite constant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_constants_are_exact_binary_values() {
        let x: Exact = constant(0.5);
        assert_eq!(x, Ratio::new(BigInt::from(1), BigInt::from(2)));
        let c: Exact = count(7);
        assert_eq!(to_f64(&c), 7.0);
    }
}
