//! Univariate polynomials and polynomial matrices.
//!
//! One-parameter subgroups such as `t ↦ exp(t·X)` for nilpotent `X` have
//! polynomial entries, so identities between them can be checked
//! coefficientwise instead of at sample points.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::{Rational, Ring, Scalar};

/// Polynomial with coefficients stored lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

pub type PolyMatrix = Matrix<Polynomial<Rational>>;

impl<T: Ring> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The formal variable `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn map_coeffs<U: Ring>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }
}

impl<T: Scalar> Polynomial<T> {
    /// Monic version (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let l = l.clone();
                self.map_coeffs(|c| c.clone() / l.clone())
            }
        }
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let f = rem.last().cloned().unwrap_or_else(T::zero) / lead.clone();
            quot[shift] = f.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - f.clone() * c.clone();
            }
            rem.pop();
            while rem.last().is_some_and(Scalar::is_negligible) {
                rem.pop();
            }
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Polynomial<Rational> {
    /// Evaluate rational coefficients at a point of any scalar type.
    pub fn eval_as<S: Scalar>(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + S::from_rational(c))
    }
}

impl<T: Ring> Zero for Polynomial<T> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Polynomial<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Ring> Add for Polynomial<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<T: Ring> Neg for Polynomial<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Ring> Sub for Polynomial<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Ring> Mul for Polynomial<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<T: fmt::Debug> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}·x")?,
                _ => write!(f, "{c:?}·x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Constant polynomial matrix.
pub fn constant_poly_matrix(m: &Matrix<Rational>) -> PolyMatrix {
    m.map(|v| Polynomial::constant(v.clone()))
}

/// Entrywise evaluation of a polynomial matrix.
pub fn poly_eval<S: Scalar>(p: &PolyMatrix, x: &S) -> Matrix<S> {
    p.map(|e| e.eval_as(x))
}

/// The one-parameter family `x ↦ exp(x·X)` of a nilpotent `X`, as an exact
/// polynomial matrix. Returns `None` if `X` is not nilpotent within its size.
pub fn one_parameter_family(generator: &Matrix<Rational>) -> Option<PolyMatrix> {
    let n = generator.rows();
    let mut out = constant_poly_matrix(&Matrix::identity(n));
    let mut power = Matrix::<Rational>::identity(n);
    let mut factorial = Rational::one();
    for k in 1..=n {
        power = power.mat_mul(generator).ok()?;
        if power.is_zero_matrix() {
            return Some(out);
        }
        factorial *= Rational::from_i64(k as i64);
        let mut monomial = vec![Rational::zero(); k + 1];
        monomial[k] = Rational::one() / factorial.clone();
        let xk = Polynomial::new(monomial);
        let term = power.map(|v| xk.clone() * Polynomial::constant(v.clone()));
        out = out.add(&term).ok()?;
    }
    power = power.mat_mul(generator).ok()?;
    power.is_zero_matrix().then_some(out)
}

/// Largest entry degree (`None` for the zero matrix).
pub fn poly_degree(p: &PolyMatrix) -> Option<usize> {
    p.entries().iter().filter_map(Polynomial::degree).max()
}
