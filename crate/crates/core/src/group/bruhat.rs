//! The long Weyl element and decomposition along the open Bruhat cell.

use super::{
    borel_from_matrix, extract_unipotent_coords, form_inverse, BorelElement, GroupContext,
    GroupElement, UnipotentCoords,
};
use crate::linalg::{Matrix, Scalar};

/// Antidiagonal matrix with ones everywhere except `middle` at the centre.
pub fn antidiagonal_with_middle<T: Scalar>(dim: usize, middle: T) -> Matrix<T> {
    let mid = dim / 2;
    Matrix::from_fn(dim, dim, |r, c| {
        if r + c != dim - 1 {
            T::zero()
        } else if r == mid {
            middle.clone()
        } else {
            T::one()
        }
    })
}

/// Representative of the longest Weyl element: antidiagonal with middle
/// entry `(−1)ⁿ`, which makes the determinant 1 for every rank.
pub fn long_weyl_element<T: Scalar>(ctx: &GroupContext) -> GroupElement<T> {
    let middle = if ctx.n().is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    GroupElement::trusted(ctx.n(), antidiagonal_with_middle(ctx.dim(), middle))
}

/// Writes `g = b·w₀·u'` with `b` upper triangular and `u'` upper unipotent,
/// returning the matrices `(b, u')`, or `None` off the open cell.
///
/// `g·w₀⁻¹ = b·(w₀u'w₀⁻¹)` is an upper times lower-unipotent product; column
/// operations from the bottom row upward strip the lower factor.
pub fn bruhat_split<T: Scalar>(
    ctx: &GroupContext,
    g: &Matrix<T>,
) -> Option<(Matrix<T>, Matrix<T>)> {
    if g.rows() != ctx.dim() || g.cols() != ctx.dim() {
        return None;
    }
    let w0 = long_weyl_element::<T>(ctx).into_matrix();
    let mut h = g * &w0;
    let dim = ctx.dim();
    for k in (0..dim).rev() {
        let pivot = h[(k, k)].clone();
        if pivot.is_negligible() {
            return None;
        }
        for j in 0..k {
            let f = h[(k, j)].clone() / pivot.clone();
            if f.is_zero() {
                continue;
            }
            for r in 0..=k {
                let v = h[(r, j)].clone() - f.clone() * h[(r, k)].clone();
                h[(r, j)] = v;
            }
        }
    }
    for r in 0..dim {
        for c in 0..r {
            h[(r, c)] = T::zero();
        }
    }
    // w₀ is self-inverse.
    let mut u = &(&w0 * &form_inverse(&h)) * g;
    for r in 0..dim {
        u[(r, r)] = T::one();
        for c in 0..r {
            u[(r, c)] = T::zero();
        }
    }
    Some((h, u))
}

/// `g = b·w₀·u'` in coordinates; `None` when `g ∉ Bw₀U`.
pub fn bruhat_decompose<T: Scalar>(
    ctx: &GroupContext,
    g: &Matrix<T>,
) -> Option<(BorelElement<T>, UnipotentCoords<T>)> {
    let (b, u) = bruhat_split(ctx, g)?;
    let b = borel_from_matrix(ctx, &b).ok()?;
    let u = extract_unipotent_coords(ctx, &u).ok()?;
    Some((b, u))
}

/// Whether `g ∈ Bw₀P` with `P` the stabilizer of `span(e₁, …, e_{n−1})`.
///
/// `gP ↦ g·span(e₁, …, e_{n−1})` identifies `G/P` with isotropic
/// `(n−1)`-planes; the open `B`-orbit consists of the planes projecting
/// isomorphically onto the last `n−1` coordinates. So the test is that the
/// bottom-left `(n−1)×(n−1)` block of `g` is nonsingular.
pub fn cell_membership_bw0p<T: Scalar>(ctx: &GroupContext, g: &Matrix<T>) -> bool {
    let k = ctx.n() - 1;
    if k == 0 {
        return true;
    }
    let minor = g.block(ctx.dim() - k, 0, k, k);
    minor
        .determinant()
        .map(|d| !d.is_negligible())
        .unwrap_or(false)
}
