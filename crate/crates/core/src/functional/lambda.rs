//! `Λ_{χ,ω}` on cell sections: the default evaluation in cell coordinates,
//! and tensor grids over the scanned `R_χ` box.

use num_complex::Complex64;

use super::cell::{abs_on_cell_rule, bessel_cell, bessel_on_cell_rule, refine_nodes};
use super::domain::{scan_rchi_domain, scan_u_domain, RChiRule};
use super::{FunctionalError, FunctionalResult, HalfSpaceParam, QuadSettings};
use crate::bessel::{m_of, modular_delta, psi, BesselDatum, StabilizerCharacter, U1Coords};
use crate::group::{assemble_unipotent, long_weyl_element, UnipotentCoords};
use crate::linalg::{ApproxComplex, Matrix, Rational, Scalar};
use crate::quadrature::{QuadBox, QuadError, QuadResult, TensorRule};
use crate::sections::{CellSupported, Section};

/// `∫ f(w₀·r·g) χ(u)⁻¹ ω(m)⁻¹` over the nodes of `rule`, with `g = 1` when
/// absent.
pub fn bessel_on_rule(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn Section,
    rule: &RChiRule,
    g: Option<&Matrix<f64>>,
) -> QuadResult {
    let w0 = long_weyl_element::<f64>(datum.ctx()).into_matrix();
    rule.rule.integrate(|p| {
        let (x, u) = rule.element(datum, p);
        let mut arg = &(&w0 * m_of(datum, &x).matrix()) * &u;
        if let Some(g) = g {
            arg = &arg * g;
        }
        let v = f.eval(&arg);
        if v == Complex64::new(0.0, 0.0) {
            return v;
        }
        let chi = psi(datum.chi().phase(&u));
        v * (chi * omega.value(x)).conj()
    })
}

pub fn lambda_on_rule(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn Section,
    rule: &RChiRule,
) -> QuadResult {
    bessel_on_rule(datum, omega, f, rule, None)
}

/// Refines the level until the nested error is at most `tol·|value|`. A
/// nonzero integrand on a face of the box means the scan missed part of
/// the support.
fn refine<F>(
    bx: &QuadBox,
    settings: &QuadSettings,
    tol: f64,
    mut at_level: F,
) -> Result<QuadResult, FunctionalError>
where
    F: FnMut(TensorRule) -> QuadResult,
{
    let mut last = None;
    for level in settings.level..=settings.max_level.max(settings.level) {
        let res = at_level(TensorRule::with_family(bx, level, settings.family));
        if res.boundary_max > 0.0 {
            return Err(FunctionalError::SupportNotBounded);
        }
        if res.abs_err <= tol * res.value.norm() || (res.abs_err == 0.0 && res.value.norm() == 0.0)
        {
            return Ok(res);
        }
        last = Some(res);
    }
    let last = last.expect("at least one level");
    Err(QuadError::ToleranceNotReached {
        tol,
        err: last.abs_err / last.value.norm().max(f64::MIN_POSITIVE),
        level: settings.max_level,
    }
    .into())
}

/// `B(g)` by tensor grids over the scanned `R_χ` box, refined in level.
pub fn bessel_rchi_grid(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    g: Option<&Matrix<f64>>,
    tol: f64,
    settings: &QuadSettings,
) -> Result<FunctionalResult, FunctionalError> {
    HalfSpaceParam::new(datum.ctx(), f.params().nu.clone())?;
    let bx = scan_rchi_domain(datum, &f.cell_support(), g, settings)?;
    let res = refine(&bx, settings, tol, |rule| {
        bessel_on_rule(datum, omega, f, &RChiRule::new(rule), g)
    })?;
    Ok(FunctionalResult::grid(
        ApproxComplex::new(res.value, res.abs_err),
        res.nodes,
    ))
}

/// `Λ_{χ,ω}(f)` to relative tolerance `tol`.
pub fn lambda_eval(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    tol: f64,
    settings: &QuadSettings,
) -> Result<FunctionalResult, FunctionalError> {
    bessel_cell(datum, omega, f, None, tol, settings)
}

/// `B(g) = Λ(π(g)f)`.
pub fn bessel_value(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    g: &Matrix<f64>,
    tol: f64,
    settings: &QuadSettings,
) -> Result<FunctionalResult, FunctionalError> {
    bessel_cell(datum, omega, f, Some(g), tol, settings)
}

/// `B(h)` on moved nodes against `factor·Λ(f)` on the base nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivariancePair {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub lambda: QuadResult,
}

impl EquivariancePair {
    pub fn relative_gap(&self) -> f64 {
        (self.lhs - self.rhs).norm() / self.lambda.value.norm()
    }
}

/// `B(u₁)` versus `χ(u₁)·Λ(f)`.
pub fn u1_equivariance(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn Section,
    base: &RChiRule,
    u1: &U1Coords<f64>,
) -> EquivariancePair {
    let lambda = lambda_on_rule(datum, omega, f, base);
    let g = u1
        .assemble(datum.ctx())
        .expect("U₁ coordinates")
        .into_matrix();
    let lhs = bessel_on_rule(datum, omega, f, &base.u1_translated(datum, u1), Some(&g)).value;
    let chi = psi(datum.chi().phase(&g));
    EquivariancePair {
        lhs,
        rhs: chi * lambda.value,
        lambda,
    }
}

/// `B(m(x₁))` versus `δ(m(x₁))^{1/2}·ω(m(x₁))·Λ(f)`, with `δ` exact.
pub fn m_equivariance(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn Section,
    base: &RChiRule,
    x1: &Rational,
) -> Result<EquivariancePair, FunctionalError> {
    let delta = modular_delta(datum, x1)?.to_f64();
    let x = x1.to_f64();
    let lambda = lambda_on_rule(datum, omega, f, base);
    let g = m_of(datum, x1).into_matrix().to_f64();
    let lhs = bessel_on_rule(datum, omega, f, &base.m_translated(datum, x), Some(&g)).value;
    Ok(EquivariancePair {
        lhs,
        rhs: omega.value(x) * delta.sqrt() * lambda.value,
        lambda,
    })
}

/// `B(u₁)` versus `χ(u₁)·Λ(f)`, both by the cell rule with `k` nodes per
/// axis.
pub fn u1_equivariance_cell(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    k: usize,
    u1: &U1Coords<f64>,
) -> EquivariancePair {
    let (lambda, nodes) = bessel_on_cell_rule(datum, omega, f, k, None);
    let g = u1
        .assemble(datum.ctx())
        .expect("U₁ coordinates")
        .into_matrix();
    let (lhs, _) = bessel_on_cell_rule(datum, omega, f, k, Some(&g));
    EquivariancePair {
        lhs,
        rhs: psi(datum.chi().phase(&g)) * lambda,
        lambda: cell_result(lambda, nodes),
    }
}

/// `B(m(x₁))` versus `δ(m(x₁))^{1/2}·ω(m(x₁))·Λ(f)` by the cell rule.
pub fn m_equivariance_cell(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    k: usize,
    x1: &Rational,
) -> Result<EquivariancePair, FunctionalError> {
    let delta = modular_delta(datum, x1)?.to_f64();
    let x = x1.to_f64();
    let (lambda, nodes) = bessel_on_cell_rule(datum, omega, f, k, None);
    let g = m_of(datum, x1).into_matrix().to_f64();
    let (lhs, _) = bessel_on_cell_rule(datum, omega, f, k, Some(&g));
    Ok(EquivariancePair {
        lhs,
        rhs: omega.value(x) * delta.sqrt() * lambda,
        lambda: cell_result(lambda, nodes),
    })
}

fn cell_result(value: Complex64, nodes: usize) -> QuadResult {
    QuadResult {
        value,
        abs_err: 0.0,
        nodes,
        boundary_max: 0.0,
    }
}

/// `|Λ(f)|`, `∫_{R_χ}|f(w₀mu)|` and `∫_U |f(w₀ug₀⁻¹)| du`, each with its
/// error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntertwiningBound {
    pub lhs: f64,
    pub lhs_err: f64,
    pub middle: f64,
    pub middle_err: f64,
    pub rhs: f64,
    pub rhs_err: f64,
}

impl IntertwiningBound {
    /// `rhs − lhs` exceeds the combined error.
    pub fn dominated(&self) -> bool {
        self.rhs - self.lhs > self.lhs_err + self.rhs_err
    }

    /// `|middle − rhs| / rhs`.
    pub fn chain_gap(&self) -> f64 {
        if self.rhs == 0.0 {
            return self.middle.abs();
        }
        (self.middle - self.rhs).abs() / self.rhs
    }
}

/// `lhs` and `middle` by the cell rule; `rhs` by the tensor grid over the
/// scanned `U` box at `settings.max_level`, with the nested error estimate.
pub fn intertwining_bound(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    tol: f64,
    settings: &QuadSettings,
) -> Result<IntertwiningBound, FunctionalError> {
    let lambda = lambda_eval(datum, omega, f, tol, settings)?;
    let middle = refine_nodes(settings, tol, |k| {
        let (v, n) = abs_on_cell_rule(datum, f, k);
        (Complex64::new(v, 0.0), n)
    })?;

    let ctx = datum.ctx();
    let w0 = long_weyl_element::<f64>(ctx).into_matrix();
    let g0_inv = datum.g0_inv().to_f64();
    let u_box = scan_u_domain(datum, &f.cell_support(), settings)?;
    let rhs = TensorRule::with_family(&u_box, settings.max_level, settings.family).integrate(|p| {
        let u = assemble_unipotent(ctx, &UnipotentCoords::new(p.to_vec()))
            .expect("dim U coordinates")
            .into_matrix();
        Complex64::new(f.eval(&(&(&w0 * &u) * &g0_inv)).norm(), 0.0)
    });
    if rhs.boundary_max > 0.0 {
        return Err(FunctionalError::SupportNotBounded);
    }

    Ok(IntertwiningBound {
        lhs: lambda.value.norm(),
        lhs_err: lambda.value.abs_err,
        middle: middle.value.value().re,
        middle_err: middle.value.abs_err,
        rhs: rhs.value.re,
        rhs_err: rhs.abs_err,
    })
}
