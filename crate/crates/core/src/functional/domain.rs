//! Effective integration domains and node sets over `R_χ`.

use super::{FunctionalError, QuadSettings};
use crate::bessel::{m_of, BesselDatum, U1Coords};
use crate::group::{
    assemble_unipotent, bruhat_split, extract_unipotent_coords, form_inverse, long_weyl_element,
    UnipotentCoords,
};
use crate::linalg::Matrix;
use crate::quadrature::{QuadBox, TensorRule};

/// Lattice with `per_axis` points on each axis of `bx`, faces included.
pub fn lattice(bx: &QuadBox, per_axis: usize) -> impl Iterator<Item = Vec<f64>> + '_ {
    let per_axis = per_axis.max(2);
    let total = per_axis.pow(bx.dim() as u32);
    (0..total).map(move |mut i| {
        (0..bx.dim())
            .map(|a| {
                let k = i % per_axis;
                i /= per_axis;
                bx.lo[a] + (bx.hi[a] - bx.lo[a]) * k as f64 / (per_axis - 1) as f64
            })
            .collect()
    })
}

fn unipotent_f64(datum: &BesselDatum, t: &[f64]) -> Matrix<f64> {
    assemble_unipotent(datum.ctx(), &UnipotentCoords::new(t.to_vec()))
        .expect("lattice points have dim U coordinates")
        .into_matrix()
}

/// Box in `(x, u₁)` containing the support of `r ↦ f(w₀·r·h)` when `f` is
/// supported in `B·w₀·supp_{u'}`: the lattice image of
/// `u' ↦ w₀·u'·h⁻¹` under the `Bw₀R_χ` coordinates, bounding-boxed and
/// widened by `settings.margin`.
pub fn scan_rchi_domain(
    datum: &BesselDatum,
    support: &QuadBox,
    h: Option<&Matrix<f64>>,
    settings: &QuadSettings,
) -> Result<QuadBox, FunctionalError> {
    let w0 = long_weyl_element::<f64>(datum.ctx()).into_matrix();
    let h_inv = h.map(form_inverse);
    let mut points = Vec::new();
    for t in lattice(support, settings.scan_points) {
        let mut g = &w0 * &unipotent_f64(datum, &t);
        if let Some(hi) = &h_inv {
            g = &g * hi;
        }
        let parts =
            crate::bessel::lemma_decompose(datum, &g).ok_or(FunctionalError::SupportNotBounded)?;
        let mut p = vec![parts.x];
        p.extend_from_slice(parts.u1.as_slice());
        points.push(p);
    }
    let bx = QuadBox::bounding(&points, 1e-3).ok_or(FunctionalError::SupportNotBounded)?;
    Ok(bx.expanded(settings.margin))
}

/// Box in `U` containing the support of `u ↦ f(w₀·u·g₀⁻¹)`.
pub fn scan_u_domain(
    datum: &BesselDatum,
    support: &QuadBox,
    settings: &QuadSettings,
) -> Result<QuadBox, FunctionalError> {
    let ctx = datum.ctx();
    let w0 = long_weyl_element::<f64>(ctx).into_matrix();
    let g0 = datum.g0().to_f64();
    let mut points = Vec::new();
    for t in lattice(support, settings.scan_points) {
        let g = &(&w0 * &unipotent_f64(datum, &t)) * &g0;
        let (_, u) = bruhat_split(ctx, &g).ok_or(FunctionalError::SupportNotBounded)?;
        let coords =
            extract_unipotent_coords(ctx, &u).map_err(|_| FunctionalError::SupportNotBounded)?;
        points.push(coords.into_vec());
    }
    let bx = QuadBox::bounding(&points, 1e-3).ok_or(FunctionalError::SupportNotBounded)?;
    Ok(bx.expanded(settings.margin))
}

/// Change of variables applied to the nodes of a rule over `R_χ`.
#[derive(Clone, Debug)]
pub enum NodeTransform {
    Identity,
    /// `(x, u) ↦ (x, u·u₁⁻¹)`; carries the data `u₁⁻¹`.
    U1Translate {
        u1_inv: Matrix<f64>,
    },
    /// `(x, u) ↦ (x − x₁, m₁·u·m₁⁻¹)`.
    MTranslate {
        x1: f64,
        m1: Matrix<f64>,
        m1_inv: Matrix<f64>,
    },
}

/// A tensor rule over `(x, u₁)` whose nodes are mapped through a
/// transform before evaluation. Weights are unchanged: both transforms
/// preserve `dx du₁`.
#[derive(Clone, Debug)]
pub struct RChiRule {
    pub rule: TensorRule,
    pub transform: NodeTransform,
}

impl RChiRule {
    pub fn new(rule: TensorRule) -> Self {
        Self {
            rule,
            transform: NodeTransform::Identity,
        }
    }

    /// Nodes of this rule moved by `u ↦ u·u₁⁻¹`.
    pub fn u1_translated(&self, datum: &BesselDatum, u1: &U1Coords<f64>) -> Self {
        let u = u1
            .assemble(datum.ctx())
            .expect("U₁ coordinates")
            .into_matrix();
        Self {
            rule: self.rule.clone(),
            transform: NodeTransform::U1Translate {
                u1_inv: form_inverse(&u),
            },
        }
    }

    /// Nodes of this rule moved by `m(x)u ↦ m(x − x₁)·m₁u m₁⁻¹`.
    pub fn m_translated(&self, datum: &BesselDatum, x1: f64) -> Self {
        let m1 = m_of(datum, &x1).into_matrix();
        Self {
            rule: self.rule.clone(),
            transform: NodeTransform::MTranslate {
                x1,
                m1_inv: form_inverse(&m1),
                m1,
            },
        }
    }

    /// `(x, u₁)` at a node `p = (x, t)`, after the transform.
    pub fn element(&self, datum: &BesselDatum, p: &[f64]) -> (f64, Matrix<f64>) {
        let u = U1Coords::new(p[1..].to_vec())
            .assemble(datum.ctx())
            .expect("rule dimension is 1 + dim U₁")
            .into_matrix();
        match &self.transform {
            NodeTransform::Identity => (p[0], u),
            NodeTransform::U1Translate { u1_inv } => (p[0], &u * u1_inv),
            NodeTransform::MTranslate { x1, m1, m1_inv } => (p[0] - x1, &(m1 * &u) * m1_inv),
        }
    }
}
