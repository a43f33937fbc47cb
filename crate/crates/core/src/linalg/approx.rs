//! Complex values carrying a first-order absolute error bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

/// A complex number `re + i·im` known to within `abs_err` (in modulus).
///
/// Sums add errors; products use `|a|·err_b + |b|·err_a` (the second-order
/// term is dropped).
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxComplex<F = f64> {
    pub re: F,
    pub im: F,
    pub abs_err: F,
}

impl<F: Float> ApproxComplex<F> {
    pub fn new(value: Complex<F>, abs_err: F) -> Self {
        Self {
            re: value.re,
            im: value.im,
            abs_err: abs_err.abs(),
        }
    }

    pub fn exact(value: Complex<F>) -> Self {
        Self::new(value, F::zero())
    }

    pub fn zero() -> Self {
        Self::exact(Complex::new(F::zero(), F::zero()))
    }

    pub fn real(v: F) -> Self {
        Self::exact(Complex::new(v, F::zero()))
    }

    pub fn value(&self) -> Complex<F> {
        Complex::new(self.re, self.im)
    }

    pub fn norm(&self) -> F {
        self.value().norm()
    }

    /// Relative error `abs_err / |value|` (infinite for a zero value with error).
    pub fn rel_err(&self) -> F {
        let m = self.norm();
        if m > F::zero() {
            self.abs_err / m
        } else if self.abs_err > F::zero() {
            F::infinity()
        } else {
            F::zero()
        }
    }

    /// `|self - other| ≤ err_self + err_other + slack`.
    pub fn consistent_with(&self, other: &Self, slack: F) -> bool {
        (self.value() - other.value()).norm() <= self.abs_err + other.abs_err + slack
    }

    pub fn scale(&self, s: Complex<F>) -> Self {
        Self::new(self.value() * s, self.abs_err * s.norm())
    }

    pub fn with_err(mut self, abs_err: F) -> Self {
        self.abs_err = abs_err.abs();
        self
    }
}

impl<F: Float> Add for ApproxComplex<F> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.value() + rhs.value(), self.abs_err + rhs.abs_err)
    }
}

impl<F: Float> Sub for ApproxComplex<F> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value() - rhs.value(), self.abs_err + rhs.abs_err)
    }
}

impl<F: Float> Neg for ApproxComplex<F> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value(), self.abs_err)
    }
}

impl<F: Float> Mul for ApproxComplex<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let err = self.norm() * rhs.abs_err + rhs.norm() * self.abs_err;
        Self::new(self.value() * rhs.value(), err)
    }
}

impl<F: Float + fmt::Display> fmt::Debug for ApproxComplex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i ± {})", self.re, self.im, self.abs_err)
    }
}

impl<F: Float + fmt::Display> fmt::Display for ApproxComplex<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
