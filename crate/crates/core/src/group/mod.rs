//! The split group `G = SO(n, n+1)` preserving the antidiagonal form
//! `J_{2n+1}`, its Borel subgroup `B = M₀A₀U`, root subgroups, the long Weyl
//! element and the open Bruhat cell.

mod borel;
mod bruhat;
mod roots;
mod unipotent;

pub use borel::{borel_assemble, borel_from_matrix, borel_log, BorelElement};
pub use bruhat::{
    antidiagonal_with_middle, bruhat_decompose, bruhat_split, cell_membership_bw0p,
    long_weyl_element,
};
pub use roots::{Root, RootDatum};
pub use unipotent::{
    apply_root_right, assemble_unipotent, extract_unipotent_coords, root_subgroup_element,
    UnipotentCoords,
};

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GroupError {
    #[error("rank must be at least 1, got {0}")]
    BadRank(usize),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    SizeMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix does not preserve the form or has determinant ≠ 1")]
    NotMember,
    #[error("root {0} is not a positive root of this group")]
    UnknownRoot(String),
    #[error("torus coordinate {0} is not strictly positive")]
    NonPositiveScale(usize),
    #[error("matrix is not in the unipotent radical U")]
    NotUnipotent,
    #[error("matrix is not in the Borel subgroup")]
    NotBorel,
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The rank `n`, the form `J_{2n+1}` and the root data of `SO(n, n+1)`.
#[derive(Clone, Debug)]
pub struct GroupContext {
    n: usize,
    form: Matrix<Rational>,
    roots: RootDatum,
}

impl GroupContext {
    pub fn new(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadRank(n));
        }
        Ok(Self {
            n,
            form: antidiagonal_form(2 * n + 1),
            roots: RootDatum::new(n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix size `2n + 1`.
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Index of the middle basis vector.
    pub fn middle(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &Matrix<Rational> {
        &self.form
    }

    pub fn form_as<T: Scalar>(&self) -> Matrix<T> {
        antidiagonal_form(self.dim())
    }

    pub fn roots(&self) -> &RootDatum {
        &self.roots
    }

    fn check_size<T: crate::linalg::Ring>(&self, m: &Matrix<T>) -> Result<(), GroupError> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(GroupError::SizeMismatch {
                expected: self.dim(),
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(())
    }

    /// `m^T J m = J` and `det m = 1`; exact for rationals, to working
    /// precision for floats.
    pub fn is_member<T: Scalar>(&self, m: &Matrix<T>) -> Result<bool, GroupError> {
        self.check_size(m)?;
        let j = self.form_as::<T>();
        let preserved = (&(&m.transpose() * &j) * m).approx_eq(&j);
        Ok(preserved && m.determinant()?.approx_eq(&T::one()))
    }

    /// Certifies membership and wraps the matrix.
    pub fn element<T: Scalar>(&self, m: Matrix<T>) -> Result<GroupElement<T>, GroupError> {
        if !self.is_member(&m)? {
            return Err(GroupError::NotMember);
        }
        Ok(GroupElement { n: self.n, mat: m })
    }

    pub fn identity<T: Scalar>(&self) -> GroupElement<T> {
        GroupElement {
            n: self.n,
            mat: Matrix::identity(self.dim()),
        }
    }

    /// Embeds a 3x3 block into the middle of the identity.
    pub fn embed_middle<T: Scalar>(&self, block: &Matrix<T>) -> Result<Matrix<T>, GroupError> {
        Ok(Matrix::identity(self.dim()).with_block(self.n - 1, self.n - 1, block)?)
    }
}

/// A matrix certified to lie in `G`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement<T> {
    n: usize,
    mat: Matrix<T>,
}

impl<T: Scalar> GroupElement<T> {
    /// Wraps a matrix that is in `G` by construction.
    pub(crate) fn trusted(n: usize, mat: Matrix<T>) -> Self {
        Self { n, mat }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.mat
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self::trusted(self.n, &self.mat * &other.mat)
    }

    /// `g⁻¹ = J gᵀ J`, valid for every form-preserving matrix.
    pub fn inverse(&self) -> Self {
        Self::trusted(self.n, form_inverse(&self.mat))
    }

    pub fn to_f64(&self) -> GroupElement<f64> {
        GroupElement {
            n: self.n,
            mat: self.mat.to_f64(),
        }
    }
}

/// `J mᵀ J`: the inverse of any matrix preserving the antidiagonal form.
pub fn form_inverse<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let d = m.rows();
    Matrix::from_fn(d, d, |r, c| m[(d - 1 - c, d - 1 - r)].clone())
}

pub(crate) fn antidiagonal_form<T: Scalar>(dim: usize) -> Matrix<T> {
    Matrix::from_fn(dim, dim, |r, c| {
        if r + c == dim - 1 {
            T::one()
        } else {
            T::zero()
        }
    })
}
