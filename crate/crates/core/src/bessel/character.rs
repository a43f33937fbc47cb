//! The degenerate character `χ_𝐚` of `U₁` and coordinates on `U₁`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::Zero;

use super::BesselError;
use crate::group::{
    assemble_unipotent, GroupContext, GroupElement, GroupError, Root, UnipotentCoords,
};
use crate::linalg::{Matrix, Rational, Scalar};

/// Coordinates on `U₁`: every positive root except the short simple root
/// `e_n`, in the fixed root order (so `n² − 1` of them).
#[derive(Clone, Debug, PartialEq)]
pub struct U1Coords<T> {
    coords: Vec<T>,
}

impl<T: Scalar> U1Coords<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zero(ctx: &GroupContext) -> Self {
        Self::new(vec![T::zero(); u1_dim(ctx)])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<T> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Full `U` coordinates with `t_{e_n} = 0`.
    pub fn to_unipotent(&self) -> UnipotentCoords<T> {
        let mut v = self.coords.clone();
        v.push(T::zero());
        UnipotentCoords::new(v)
    }

    /// Restriction of `U` coordinates, failing when `t_{e_n} ≠ 0`.
    pub fn from_unipotent(u: &UnipotentCoords<T>) -> Result<Self, GroupError> {
        let (last, rest) = u.as_slice().split_last().ok_or(GroupError::NotUnipotent)?;
        if !last.approx_eq(&T::zero()) {
            return Err(GroupError::NotUnipotent);
        }
        Ok(Self::new(rest.to_vec()))
    }

    pub fn assemble(&self, ctx: &GroupContext) -> Result<GroupElement<T>, GroupError> {
        if self.len() != u1_dim(ctx) {
            return Err(GroupError::CoordinateCount {
                expected: u1_dim(ctx),
                got: self.len(),
            });
        }
        assemble_unipotent(ctx, &self.to_unipotent())
    }

    pub fn to_f64(&self) -> U1Coords<f64> {
        U1Coords::new(self.coords.iter().map(Scalar::to_f64).collect())
    }
}

pub fn u1_dim(ctx: &GroupContext) -> usize {
    ctx.n() * ctx.n() - 1
}

/// `χ(u) = ψ(u₁₂ + … + u_{n−2,n−1} + a·u_{n−1,n} + b·u_{n−1,n+1} + c·u_{n−1,n+2})`
/// with `ψ(t) = e^{2πit}`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentCharacter {
    n: usize,
    abc: [Rational; 3],
}

impl UnipotentCharacter {
    pub fn new(ctx: &GroupContext, abc: [Rational; 3]) -> Result<Self, BesselError> {
        if ctx.n() < 2 {
            return Err(BesselError::RankTooSmall(ctx.n()));
        }
        if abc.iter().all(Zero::is_zero) {
            return Err(BesselError::ZeroCharacter);
        }
        Ok(Self { n: ctx.n(), abc })
    }

    pub fn abc(&self) -> &[Rational; 3] {
        &self.abc
    }

    /// The linear form `L` read off the matrix entries.
    pub fn phase<T: Scalar>(&self, u: &Matrix<T>) -> T {
        let n = self.n;
        let r = n - 2;
        let mut s = T::zero();
        for i in 0..r {
            s = s + u[(i, i + 1)].clone();
        }
        for (k, coef) in self.abc.iter().enumerate() {
            s = s + T::from_rational(coef) * u[(r, n - 1 + k)].clone();
        }
        s
    }

    /// Coefficient vector `ξ` with `L(assemble(t)) = ⟨ξ, t⟩` on `U₁`
    /// coordinates; the entries `L` reads are primary positions of roots whose
    /// lower-height contributions all pass through `e_n`.
    pub fn frequency(&self, ctx: &GroupContext) -> Vec<Rational> {
        let n = self.n;
        let r = n - 2;
        let roots = ctx.roots().positive_roots();
        let mut xi = vec![Rational::zero(); u1_dim(ctx)];
        for (k, root) in roots.iter().take(u1_dim(ctx)).enumerate() {
            xi[k] = match *root {
                Root::Difference(i, j) if j == i + 1 && i < r => Rational::from_i64(1),
                Root::Difference(i, j) if i == r && j == n - 1 => self.abc[0].clone(),
                Root::Short(i) if i == r => self.abc[1].clone(),
                Root::Sum(i, j) if i == r && j == n - 1 => self.abc[2].clone(),
                _ => Rational::zero(),
            };
        }
        xi
    }

    pub fn frequency_f64(&self, ctx: &GroupContext) -> Vec<f64> {
        self.frequency(ctx).iter().map(Scalar::to_f64).collect()
    }
}

/// `e^{2πit}` for rational `t`, reducing modulo 1 exactly before rounding.
pub fn psi_rational(t: &Rational) -> Complex64 {
    let frac = t - t.floor();
    Complex64::from_polar(1.0, TAU * frac.to_f64())
}

pub fn psi(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (t - t.floor()))
}

/// `χ(u)` for an exact element of `U₁`.
pub fn chi_value(chi: &UnipotentCharacter, u: &Matrix<Rational>) -> Complex64 {
    psi_rational(&chi.phase(u))
}
