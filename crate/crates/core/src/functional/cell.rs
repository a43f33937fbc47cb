//! `Λ_{χ,ω}` in the coordinates `u'` of the cell `B·w₀·U`.
//!
//! For `w₀·u'·h⁻¹ = c·w₀·m(x)·u₁` the map `u' ↦ (x, u₁)` has Jacobian
//! `e^{2ρ·log a(c)}`, and `f(w₀m(x)u₁h) = η(c)e^{(ν+ρ)·log a(c)}f(w₀u')`.
//! Hence
//! `Λ(π(h)f) = ∫_U f(w₀u') η(c) e^{(ν+3ρ)·log a(c)} χ(u₁)⁻¹ω(x)⁻¹ du'`,
//! an integral over the compact support of `u' ↦ f(w₀u')`. Each bump of a
//! cell section is integrated by a product Gauss rule for the mollifier
//! weight, so the remaining factor is smooth.

use num_complex::Complex64;

use super::{FunctionalError, FunctionalResult, HalfSpaceParam, QuadSettings};
use crate::bessel::{lemma_decompose, psi, BesselDatum, StabilizerCharacter};
use crate::group::{
    assemble_unipotent, borel_log, form_inverse, long_weyl_element, UnipotentCoords,
};
use crate::linalg::{ApproxComplex, Matrix};
use crate::quadrature::{gauss_for_weight, ProductRule, QuadError};
use crate::sections::{mollifier, BumpFunction, CellSupported, PrincipalSeriesParam};

/// Discretization points of the weight per Gauss node.
const STIELTJES_OVERSAMPLING: usize = 128;

/// `k`-node Gauss rule on `[−1, 1]` for the weight `mollifier`.
pub fn mollifier_gauss(k: usize) -> (Vec<f64>, Vec<f64>) {
    gauss_for_weight(mollifier, k, (STIELTJES_OVERSAMPLING * k).max(4096))
}

/// `Π_k mollifier((v_k − c_k)/r_k) dv` as a product rule with `k` nodes per
/// axis.
pub fn bump_rule(phi: &BumpFunction, k: usize) -> ProductRule {
    let (t, w) = mollifier_gauss(k);
    let axes = phi
        .center
        .iter()
        .zip(&phi.radius)
        .map(|(c, r)| {
            let p = t.iter().map(|t| c + r * t).collect();
            let q = w.iter().map(|w| w * r).collect();
            (p, q)
        })
        .collect();
    ProductRule::new(axes)
}

/// Everything but `f(w₀u')` in the integrand, at `u'` with coordinates
/// `v`; zero off `Bw₀R_χ`, a null set.
pub struct CellKernel<'a> {
    datum: &'a BesselDatum,
    omega: &'a StabilizerCharacter,
    params: &'a PrincipalSeriesParam,
    w0: Matrix<f64>,
    h_inv: Option<Matrix<f64>>,
}

impl<'a> CellKernel<'a> {
    pub fn new(
        datum: &'a BesselDatum,
        omega: &'a StabilizerCharacter,
        params: &'a PrincipalSeriesParam,
        h: Option<&Matrix<f64>>,
    ) -> Self {
        Self {
            datum,
            omega,
            params,
            w0: long_weyl_element::<f64>(datum.ctx()).into_matrix(),
            h_inv: h.map(form_inverse),
        }
    }

    /// `η(c) e^{(ν+3ρ)·log a(c)}` and `χ(u₁)⁻¹ω(x)⁻¹`, or `None` off the
    /// cell.
    fn parts(&self, v: &[f64]) -> Option<(Complex64, Complex64)> {
        let ctx = self.datum.ctx();
        let u = assemble_unipotent(ctx, &UnipotentCoords::new(v.to_vec()))
            .expect("dim U coordinates")
            .into_matrix();
        let mut g = &self.w0 * &u;
        if let Some(hi) = &self.h_inv {
            g = &g * hi;
        }
        let parts = lemma_decompose(self.datum, &g)?;
        let (signs, logs) = borel_log(&parts.b);
        let mut e = Complex64::new(0.0, 0.0);
        for ((nu, rho), s) in self.params.nu.iter().zip(self.params.rho()).zip(&logs) {
            e += (nu + 3.0 * rho) * s;
        }
        let weight = e.exp() * self.params.eta(&signs);
        let u1 = parts
            .u1
            .assemble(ctx)
            .expect("U₁ coordinates")
            .into_matrix();
        let character = (psi(self.datum.chi().phase(&u1)) * self.omega.value(parts.x)).conj();
        Some((weight, character))
    }

    pub fn value(&self, v: &[f64]) -> Complex64 {
        self.parts(v)
            .map_or(Complex64::new(0.0, 0.0), |(w, c)| w * c)
    }

    /// `|value|`, for the absolute integral `∫_{R_χ}|f(w₀r h)| dr`.
    pub fn modulus(&self, v: &[f64]) -> f64 {
        self.parts(v).map_or(0.0, |(w, _)| w.norm())
    }
}

/// `Λ(π(h)f)` with `k` Gauss nodes per axis for every bump of `f`, and the
/// number of nodes.
pub fn bessel_on_cell_rule(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    k: usize,
    h: Option<&Matrix<f64>>,
) -> (Complex64, usize) {
    let kernel = CellKernel::new(datum, omega, f.params(), h);
    let mut total = Complex64::new(0.0, 0.0);
    let mut nodes = 0;
    for (coef, phi) in f.cell_terms() {
        let rule = bump_rule(&phi, k);
        nodes += rule.len();
        total += coef
            * rule.integrate(|v| {
                let phase: f64 = v.iter().zip(&phi.modulation).map(|(x, m)| x * m).sum();
                psi(phase) * kernel.value(v)
            });
    }
    (total, nodes)
}

/// `∫_{R_χ} |f(w₀r)| dr` with `k` nodes per axis; exact for sections given
/// by a single bump, an upper bound otherwise.
pub fn abs_on_cell_rule(datum: &BesselDatum, f: &dyn CellSupported, k: usize) -> (f64, usize) {
    let omega = StabilizerCharacter::new(0.0);
    let kernel = CellKernel::new(datum, &omega, f.params(), None);
    let mut total = 0.0;
    let mut nodes = 0;
    for (coef, phi) in f.cell_terms() {
        let rule = bump_rule(&phi, k);
        nodes += rule.len();
        total += coef.norm()
            * rule
                .integrate(|v| Complex64::new(kernel.modulus(v), 0.0))
                .re;
    }
    (total, nodes)
}

/// Doubles the nodes per axis from `settings.nodes` until consecutive
/// values agree to `tol·|value|`; the error estimate is that difference.
pub(crate) fn refine_nodes<F>(
    settings: &QuadSettings,
    tol: f64,
    mut at: F,
) -> Result<FunctionalResult, FunctionalError>
where
    F: FnMut(usize) -> (Complex64, usize),
{
    let first = settings.nodes.max(2);
    let (mut prev, mut used) = at(first / 2);
    let mut k = first;
    loop {
        let (value, n) = at(k);
        used += n;
        let err = (value - prev).norm();
        if err <= tol * value.norm() || (value.norm() == 0.0 && err == 0.0) {
            return Ok(FunctionalResult::grid(ApproxComplex::new(value, err), used));
        }
        if k >= settings.max_nodes {
            return Err(QuadError::ToleranceNotReached {
                tol,
                err: err / value.norm().max(f64::MIN_POSITIVE),
                level: k.trailing_zeros(),
            }
            .into());
        }
        prev = value;
        k *= 2;
    }
}

/// `B(h) = Λ(π(h)f)` to relative tolerance `tol` (`h = 1` when absent).
pub fn bessel_cell(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    f: &dyn CellSupported,
    h: Option<&Matrix<f64>>,
    tol: f64,
    settings: &QuadSettings,
) -> Result<FunctionalResult, FunctionalError> {
    HalfSpaceParam::new(datum.ctx(), f.params().nu.clone())?;
    refine_nodes(settings, tol, |k| {
        bessel_on_cell_rule(datum, omega, f, k, h)
    })
}
