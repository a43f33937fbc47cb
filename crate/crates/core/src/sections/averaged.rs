//! The averaged sections `f_φ(g) = Σ_{M₀} ∫_{A₀U} η(m₀)⁻¹ e^{−(ν+ρ) log a₀} φ(m₀⁻¹a₀⁻¹u₀⁻¹g)`
//! for `φ(b·w₀·m(x)·u₁) = φ_B(b)·φ(w₀)·φ_M(x)·φ_{U₁}(u₁)`.

use num_complex::Complex64;

use super::{torus_part, BumpFunction, PrincipalSeriesParam};
use crate::bessel::{lemma_decompose, BesselDatum, StabilizerCharacter};
use crate::group::{borel_assemble, form_inverse, BorelElement, UnipotentCoords};
use crate::linalg::{ApproxComplex, Matrix};
use crate::quadrature::{RuleFamily, TensorRule};

/// Test vector data for `f_φ`. `φ_B` is a bump in the coordinates
/// `(log a₀, u)` of the Borel elements with signs `borel_signs`.
#[derive(Clone, Debug)]
pub struct AveragedSection {
    datum: BesselDatum,
    pub params: PrincipalSeriesParam,
    pub borel_signs: Vec<i8>,
    pub phi_b: BumpFunction,
    pub phi_w0: Complex64,
    pub phi_m: BumpFunction,
    pub phi_u1: BumpFunction,
}

impl AveragedSection {
    pub fn new(
        datum: &BesselDatum,
        params: PrincipalSeriesParam,
        borel_signs: Vec<i8>,
        phi_b: BumpFunction,
        phi_w0: Complex64,
        phi_m: BumpFunction,
        phi_u1: BumpFunction,
    ) -> Self {
        let n = datum.ctx().n();
        assert_eq!(params.rank(), n);
        assert_eq!(borel_signs.len(), n);
        assert!(borel_signs.iter().all(|s| s.abs() == 1), "signs are ±1");
        assert_eq!(phi_b.dim(), n + n * n, "φ_B lives on (log a₀, u)");
        assert_ne!(phi_w0, Complex64::new(0.0, 0.0), "φ(w₀) must be nonzero");
        assert_eq!(phi_m.dim(), 1);
        assert_eq!(phi_u1.dim(), datum.u1_dim());
        Self {
            datum: datum.clone(),
            params,
            borel_signs,
            phi_b,
            phi_w0,
            phi_m,
            phi_u1,
        }
    }

    /// `φ_M` modulated at `c_ω` and `φ_{U₁}` modulated at the frequency of
    /// `χ`, so both Fourier factors are the positive bump masses.
    pub fn modulated(
        datum: &BesselDatum,
        params: PrincipalSeriesParam,
        omega: &StabilizerCharacter,
        borel_radius: f64,
    ) -> Self {
        let n = datum.ctx().n();
        let xi = datum.chi().frequency_f64(datum.ctx());
        let d1 = datum.u1_dim();
        Self::new(
            datum,
            params,
            vec![1; n],
            BumpFunction::plain(vec![0.0; n + n * n], borel_radius),
            Complex64::new(1.0, 0.0),
            BumpFunction::plain(vec![0.0], 1.0).with_modulation(vec![omega.c_omega]),
            BumpFunction::plain(vec![0.0; d1], 1.0).with_modulation(xi),
        )
    }

    pub fn datum(&self) -> &BesselDatum {
        &self.datum
    }

    /// `φ(g)`, through the decomposition `g = b·w₀·m(x)·u₁`; zero off
    /// `Bw₀R_χ`.
    pub fn phi(&self, g: &Matrix<f64>) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        let Some(parts) = lemma_decompose(&self.datum, g) else {
            return zero;
        };
        if parts.b.signs != self.borel_signs {
            return zero;
        }
        let mut coords: Vec<f64> = parts.b.scales.iter().map(|a| a.ln()).collect();
        coords.extend_from_slice(parts.b.unipotent.as_slice());
        let pb = self.phi_b.value(&coords);
        if pb == zero {
            return zero;
        }
        let pm = self.phi_m.value(&[parts.x]);
        let pu = self.phi_u1.value(parts.u1.as_slice());
        pb * self.phi_w0 * pm * pu
    }

    /// `(δ_B, e^{s}, u)` as a matrix, for `p = (s, u)`.
    pub(crate) fn borel_point(&self, p: &[f64]) -> Matrix<f64> {
        let n = self.params.rank();
        let b = BorelElement {
            signs: self.borel_signs.clone(),
            scales: p[..n].iter().map(|s| s.exp()).collect(),
            unipotent: UnipotentCoords::new(p[n..].to_vec()),
        };
        borel_assemble(self.datum.ctx(), &b)
            .expect("coordinate counts fixed at construction")
            .into_matrix()
    }
}

/// `f_φ(g)` by a tensor trapezoid rule of the given level over `supp φ_B`.
///
/// With `g = b_g·w₀·r`, the substitution `β = b_g·c⁻¹` turns the left Haar
/// measure `dβ` into the right Haar measure `e^{2ρ·s} ds du` in the
/// coordinates of `c`, which ranges over `supp φ_B`.
pub fn averaged_eval(s: &AveragedSection, g: &Matrix<f64>, level: u32) -> ApproxComplex {
    let Some(parts) = lemma_decompose(&s.datum, g) else {
        return ApproxComplex::zero();
    };
    let ctx = s.datum.ctx();
    let n = ctx.n();
    let b_g = borel_assemble(ctx, &parts.b)
        .expect("decomposed Borel part")
        .into_matrix();
    let b_g_inv_g = &form_inverse(&b_g) * g;
    let rho = s.params.rho().to_vec();
    let rule = TensorRule::with_family(&s.phi_b.support(), level, RuleFamily::Trapezoid);
    let res = rule.integrate(|p| {
        let c = s.borel_point(p);
        let phi = s.phi(&(&c * &b_g_inv_g));
        if phi == Complex64::new(0.0, 0.0) {
            return phi;
        }
        let beta = &b_g * &form_inverse(&c);
        let (signs, logs) = torus_part(n, &beta);
        let jac: f64 = p[..n]
            .iter()
            .zip(&rho)
            .map(|(x, r)| 2.0 * r * x)
            .sum::<f64>()
            .exp();
        s.params.borel_factor(&signs, &logs) * jac * phi
    });
    ApproxComplex::new(res.value, res.abs_err)
}
