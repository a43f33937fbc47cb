//! Root subgroups and ordered-product coordinates on the unipotent radical `U`.

use super::{GroupContext, GroupElement, GroupError, Root};
use crate::linalg::{Matrix, Scalar};

/// Coordinates `t_α`, one per positive root in the context's fixed order;
/// they name the element `Π_α exp(t_α X_α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnipotentCoords<T> {
    coords: Vec<T>,
}

impl<T: Scalar> UnipotentCoords<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn zero(ctx: &GroupContext) -> Self {
        Self::new(vec![T::zero(); ctx.n() * ctx.n()])
    }

    /// Single nonzero coordinate.
    pub fn single(ctx: &GroupContext, root: &Root, t: T) -> Result<Self, GroupError> {
        let idx = ctx
            .roots()
            .index_of(root)
            .ok_or_else(|| GroupError::UnknownRoot(root.to_string()))?;
        let mut c = Self::zero(ctx);
        c.coords[idx] = t;
        Ok(c)
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

    pub fn to_f64(&self) -> UnipotentCoords<f64> {
        UnipotentCoords::new(self.coords.iter().map(Scalar::to_f64).collect())
    }
}

/// Right-multiplies `m` in place by `exp(t·X_α)` using column operations.
///
/// `exp(t X_α) = I + t X_α` for long roots; for the short root `e_i` the
/// extra term is `−t²/2` at position `(i, i')`.
pub fn apply_root_right<T: Scalar>(m: &mut Matrix<T>, n: usize, root: &Root, t: &T) {
    if t.is_zero() {
        return;
    }
    let ((a, b), (c, d)) = root.generator_positions(n);
    let rows = m.rows();
    if root.is_short() {
        // a = i, b = c = middle, d = i'. Column d reads the old middle column.
        let half_sq = t.clone() * t.clone() / T::from_i64(2);
        for r in 0..rows {
            let v = m[(r, d)].clone()
                - t.clone() * m[(r, c)].clone()
                - half_sq.clone() * m[(r, a)].clone();
            m[(r, d)] = v;
        }
        for r in 0..rows {
            let v = m[(r, b)].clone() + t.clone() * m[(r, a)].clone();
            m[(r, b)] = v;
        }
    } else {
        for r in 0..rows {
            let v = m[(r, b)].clone() + t.clone() * m[(r, a)].clone();
            m[(r, b)] = v;
            let w = m[(r, d)].clone() - t.clone() * m[(r, c)].clone();
            m[(r, d)] = w;
        }
    }
}

/// `exp(t·X_α)`.
pub fn root_subgroup_element<T: Scalar>(
    ctx: &GroupContext,
    root: &Root,
    t: T,
) -> Result<GroupElement<T>, GroupError> {
    if ctx.roots().index_of(root).is_none() {
        return Err(GroupError::UnknownRoot(root.to_string()));
    }
    let mut m = Matrix::identity(ctx.dim());
    apply_root_right(&mut m, ctx.n(), root, &t);
    Ok(GroupElement::trusted(ctx.n(), m))
}

/// Ordered product `Π_α exp(t_α X_α)` over the fixed root order.
pub fn assemble_unipotent<T: Scalar>(
    ctx: &GroupContext,
    coords: &UnipotentCoords<T>,
) -> Result<GroupElement<T>, GroupError> {
    let roots = ctx.roots().positive_roots();
    if coords.len() != roots.len() {
        return Err(GroupError::CoordinateCount {
            expected: roots.len(),
            got: coords.len(),
        });
    }
    let mut m = Matrix::identity(ctx.dim());
    for (root, t) in roots.iter().zip(coords.as_slice()) {
        apply_root_right(&mut m, ctx.n(), root, t);
    }
    Ok(GroupElement::trusted(ctx.n(), m))
}

/// Inverse of [`assemble_unipotent`].
///
/// The entry of `Π exp(t_α X_α)` at the primary position of `α` is `t_α` plus
/// a polynomial in coordinates of strictly lower height, so one correction
/// sweep per height level recovers every coordinate.
pub fn extract_unipotent_coords<T: Scalar>(
    ctx: &GroupContext,
    u: &Matrix<T>,
) -> Result<UnipotentCoords<T>, GroupError> {
    ctx.check_size(u)?;
    if !is_upper_unitriangular_approx(u) {
        return Err(GroupError::NotUnipotent);
    }
    let n = ctx.n();
    let roots = ctx.roots().positive_roots();
    let mut coords = UnipotentCoords::<T>::zero(ctx);
    for _ in 0..ctx.roots().max_height() {
        let trial = assemble_unipotent(ctx, &coords)?;
        let mut changed = false;
        for (k, root) in roots.iter().enumerate() {
            let p = root.primary_position(n);
            let delta = u[p].clone() - trial.matrix()[p].clone();
            if !delta.is_zero() {
                changed = true;
                coords.coords[k] = coords.coords[k].clone() + delta;
            }
        }
        if !changed {
            break;
        }
    }
    let check = assemble_unipotent(ctx, &coords)?;
    if !check.matrix().approx_eq(u) {
        return Err(GroupError::NotUnipotent);
    }
    Ok(coords)
}

fn is_upper_unitriangular_approx<T: Scalar>(u: &Matrix<T>) -> bool {
    if T::EXACT {
        return u.is_upper_unitriangular();
    }
    let d = u.rows();
    (0..d).all(|r| {
        (0..d).all(|c| {
            let v = &u[(r, c)];
            if r == c {
                v.approx_eq(&T::one())
            } else if r > c {
                v.approx_eq(&T::zero())
            } else {
                true
            }
        })
    })
}
