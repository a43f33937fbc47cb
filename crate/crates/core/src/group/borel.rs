//! Langlands coordinates `b = m₀ a₀ u` on the Borel subgroup.

use super::{
    assemble_unipotent, extract_unipotent_coords, GroupContext, GroupElement, GroupError,
    UnipotentCoords,
};
use crate::linalg::{Matrix, Scalar};

/// `m₀ = diag(δ, 1, δ reversed)`, `a₀ = diag(x, 1, x⁻¹ reversed)`, `u ∈ U`.
#[derive(Clone, Debug, PartialEq)]
pub struct BorelElement<T> {
    pub signs: Vec<i8>,
    pub scales: Vec<T>,
    pub unipotent: UnipotentCoords<T>,
}

impl<T: Scalar> BorelElement<T> {
    pub fn identity(ctx: &GroupContext) -> Self {
        Self {
            signs: vec![1; ctx.n()],
            scales: vec![T::one(); ctx.n()],
            unipotent: UnipotentCoords::zero(ctx),
        }
    }

    /// Diagonal of `m₀a₀`.
    pub fn diagonal(&self) -> Vec<T> {
        torus_diagonal(&self.signs, &self.scales)
    }

    pub fn to_f64(&self) -> BorelElement<f64> {
        BorelElement {
            signs: self.signs.clone(),
            scales: self.scales.iter().map(Scalar::to_f64).collect(),
            unipotent: self.unipotent.to_f64(),
        }
    }
}

fn torus_diagonal<T: Scalar>(signs: &[i8], scales: &[T]) -> Vec<T> {
    let n = scales.len();
    let mut d = vec![T::one(); 2 * n + 1];
    for i in 0..n {
        let s = if signs[i] < 0 { -T::one() } else { T::one() };
        d[i] = s.clone() * scales[i].clone();
        d[2 * n - i] = s / scales[i].clone();
    }
    d
}

/// Assembles `m₀ a₀ u`.
pub fn borel_assemble<T: Scalar>(
    ctx: &GroupContext,
    b: &BorelElement<T>,
) -> Result<GroupElement<T>, GroupError> {
    let n = ctx.n();
    if b.signs.len() != n || b.scales.len() != n {
        return Err(GroupError::CoordinateCount {
            expected: n,
            got: b.signs.len().min(b.scales.len()),
        });
    }
    if let Some(i) = b.scales.iter().position(|x| *x <= T::zero()) {
        return Err(GroupError::NonPositiveScale(i));
    }
    let u = assemble_unipotent(ctx, &b.unipotent)?.into_matrix();
    let d = b.diagonal();
    let m = Matrix::from_fn(ctx.dim(), ctx.dim(), |r, c| {
        d[r].clone() * u[(r, c)].clone()
    });
    Ok(GroupElement::trusted(n, m))
}

/// Splits an upper triangular element of `G` into Langlands coordinates.
pub fn borel_from_matrix<T: Scalar>(
    ctx: &GroupContext,
    b: &Matrix<T>,
) -> Result<BorelElement<T>, GroupError> {
    ctx.check_size(b)?;
    let dim = ctx.dim();
    let n = ctx.n();
    for r in 0..dim {
        for c in 0..r {
            if !b[(r, c)].approx_eq(&T::zero()) {
                return Err(GroupError::NotBorel);
            }
        }
    }
    if !b[(n, n)].approx_eq(&T::one()) {
        return Err(GroupError::NotBorel);
    }
    let mut signs = Vec::with_capacity(n);
    let mut scales = Vec::with_capacity(n);
    for i in 0..n {
        let d = b[(i, i)].clone();
        if d.is_negligible() {
            return Err(GroupError::NotBorel);
        }
        signs.push(if d < T::zero() { -1 } else { 1 });
        scales.push(d.abs_val());
    }
    let diag = torus_diagonal(&signs, &scales);
    let mut u = Matrix::from_fn(dim, dim, |r, c| b[(r, c)].clone() / diag[r].clone());
    for r in 0..dim {
        for c in 0..r {
            u[(r, c)] = T::zero();
        }
    }
    let unipotent = extract_unipotent_coords(ctx, &u).map_err(|_| GroupError::NotBorel)?;
    Ok(BorelElement {
        signs,
        scales,
        unipotent,
    })
}

/// `(δ, log a₀)`: the arguments of `η` and of `e^{−(ν+ρ) log a₀}`.
pub fn borel_log<T: Scalar>(b: &BorelElement<T>) -> (Vec<i8>, Vec<f64>) {
    (
        b.signs.clone(),
        b.scales.iter().map(|x| x.to_f64().ln()).collect(),
    )
}
