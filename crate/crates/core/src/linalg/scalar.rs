//! Scalar abstractions shared by the exact and floating-point paths.
//!
//! [`Ring`] is all that matrix products and polynomial matrices need.
//! [`Scalar`] adds division and ordering, which elimination needs. It is
//! implemented for [`Rational`] (exact, arbitrary precision) and for the
//! IEEE types `f64`/`f32`.

use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// `num_rational` keeps every value reduced with a positive denominator.
pub type Rational = BigRational;

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// An ordered field usable as matrix entries in elimination.
pub trait Scalar: Ring + Div<Output = Self> + PartialOrd {
    /// `true` when the type represents values exactly.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether an elimination pivot should be treated as zero.
    fn is_negligible(&self) -> bool;

    /// Equality up to the type's working precision (exact for rationals).
    fn approx_eq(&self, other: &Self) -> bool;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

macro_rules! float_scalar {
    ($t:ty, $pivot:expr, $rel:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_rational(r: &Rational) -> Self {
                ToPrimitive::to_f64(r).unwrap_or(f64::NAN) as $t
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_negligible(&self) -> bool {
                self.abs() < $pivot
            }

            fn approx_eq(&self, other: &Self) -> bool {
                let scale = 1.0_f64.max(self.abs() as f64).max(other.abs() as f64);
                ((*self - *other).abs() as f64) <= $rel * scale
            }

            fn abs_val(&self) -> Self {
                self.abs()
            }
        }
    };
}

float_scalar!(f64, 1e-12, 1e-9);
float_scalar!(f32, 1e-6, 1e-4);

/// Shorthand for building exact rationals in tests and fixed data.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}
