//! The Bessel functional
//! `Λ_{χ,ω}(f) = ∫_{R_χ} f(w₀⁻¹·m·u) χ(u)⁻¹ ω(m)⁻¹ dm du`, the Bessel
//! function `B(g) = Λ(π(g)f)`, the intertwining-operator bound and the
//! factorized value on averaged sections.

mod cell;
mod domain;
mod factored;
mod lambda;
mod monte_carlo;

pub use cell::{
    abs_on_cell_rule, bessel_cell, bessel_on_cell_rule, bump_rule, mollifier_gauss, CellKernel,
};
pub use domain::{lattice, scan_rchi_domain, scan_u_domain, NodeTransform, RChiRule};
pub use factored::{borel_factor, lambda_factored, FactoredLambda};
pub use lambda::{
    bessel_on_rule, bessel_rchi_grid, bessel_value, intertwining_bound, lambda_eval,
    lambda_on_rule, m_equivariance, m_equivariance_cell, u1_equivariance, u1_equivariance_cell,
    EquivariancePair, IntertwiningBound,
};
pub use monte_carlo::{
    lambda_direct_mc, lambda_direct_mc_on, mc_moments_on, sign_matrices, McDomain, McMoments,
    OffCellBump, TestFunction, MC_CHUNK,
};

pub use crate::bessel::lemma_uniqueness_check;

use num_complex::Complex64;
use thiserror::Error;

use crate::bessel::BesselError;
use crate::group::GroupContext;
use crate::linalg::ApproxComplex;
use crate::quadrature::{QuadError, RuleFamily};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionalError {
    #[error("Re<nu, {root}> = {value} is not positive")]
    NotInHalfSpace { root: String, value: f64 },
    #[error("the integrand support is not bounded inside the scanned box")]
    SupportNotBounded,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Bessel(#[from] BesselError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    DeterministicGrid,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FunctionalResult {
    pub value: ApproxComplex,
    pub nodes_used: usize,
    pub method: Method,
    pub seed: Option<u64>,
}

impl FunctionalResult {
    pub(crate) fn grid(value: ApproxComplex, nodes_used: usize) -> Self {
        Self {
            value,
            nodes_used,
            method: Method::DeterministicGrid,
            seed: None,
        }
    }
}

/// `ν` with `Re⟨ν, α⟩ > 0` for every positive root `α`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpaceParam {
    nu: Vec<Complex64>,
}

impl HalfSpaceParam {
    pub fn new(ctx: &GroupContext, nu: Vec<Complex64>) -> Result<Self, FunctionalError> {
        assert_eq!(nu.len(), ctx.n());
        let re: Vec<f64> = nu.iter().map(|z| z.re).collect();
        for root in ctx.roots().positive_roots() {
            let value = root.pair(&re);
            if value <= 0.0 {
                return Err(FunctionalError::NotInHalfSpace {
                    root: root.to_string(),
                    value,
                });
            }
        }
        Ok(Self { nu })
    }

    pub fn nu(&self) -> &[Complex64] {
        &self.nu
    }
}

/// Resolution of the deterministic rules: Gauss nodes per axis in cell
/// coordinates, and grid levels over `R_χ` and `U`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadSettings {
    /// First Gauss node count per axis; doubled up to `max_nodes`.
    pub nodes: usize,
    pub max_nodes: usize,
    pub family: RuleFamily,
    /// First level tried.
    pub level: u32,
    pub max_level: u32,
    /// Factor applied to the half-widths of the scanned bounding box.
    pub margin: f64,
    /// Lattice points per axis in the support scan.
    pub scan_points: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        Self {
            nodes: 8,
            max_nodes: 32,
            family: RuleFamily::Trapezoid,
            level: 4,
            max_level: 5,
            margin: 2.0,
            scan_points: 9,
        }
    }
}
