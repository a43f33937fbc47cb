//! `Λ(f_φ) = φ(w₀)·(∫_B φ_B(b⁻¹) η(b)⁻¹ e^{−(ν+ρ) log b} db)·φ̂_M(ω)·φ̂_{U₁}(χ)`.

use num_complex::Complex64;

use super::{FunctionalError, FunctionalResult};
use crate::bessel::StabilizerCharacter;
use crate::linalg::ApproxComplex;
use crate::sections::{bump_axis_integral, bump_fourier_counted, AveragedSection};

/// The four factors and their product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactoredLambda {
    pub b_factor: ApproxComplex,
    pub phi_w0: Complex64,
    pub m_factor: ApproxComplex,
    pub u1_factor: ApproxComplex,
    pub total: FunctionalResult,
}

/// The `B`-factor. With `c = b⁻¹ = (δ, e^{s}, u)`, `db` becomes the right
/// Haar measure `e^{2ρ·s} ds du` and the weight becomes
/// `η(δ)e^{(ν+ρ)·s}`, so the integral separates over the coordinates of the
/// bump.
pub fn borel_factor(
    s: &AveragedSection,
    tol: f64,
) -> Result<(ApproxComplex, usize), FunctionalError> {
    let n = s.params.rank();
    let mut acc = ApproxComplex::real(s.params.eta(&s.borel_signs));
    let mut nodes = 0;
    for k in 0..s.phi_b.dim() {
        let q = if k < n {
            let e = s.params.nu[k] + 3.0 * s.params.rho()[k];
            bump_axis_integral(&s.phi_b, k, |x| (e * x).exp(), tol)?
        } else {
            bump_axis_integral(&s.phi_b, k, |_| Complex64::new(1.0, 0.0), tol)?
        };
        nodes += q.nodes;
        acc = acc * ApproxComplex::new(q.value, q.abs_err);
    }
    Ok((acc, nodes))
}

pub fn lambda_factored(
    omega: &StabilizerCharacter,
    s: &AveragedSection,
    tol: f64,
) -> Result<FactoredLambda, FunctionalError> {
    let datum = s.datum();
    let (b_factor, nb) = borel_factor(s, tol)?;
    let (m_factor, nm) = bump_fourier_counted(&s.phi_m, &[omega.c_omega], tol)?;
    let xi = datum.chi().frequency_f64(datum.ctx());
    let (u1_factor, nu) = bump_fourier_counted(&s.phi_u1, &xi, tol)?;
    let total = b_factor.scale(s.phi_w0) * m_factor * u1_factor;
    Ok(FactoredLambda {
        b_factor,
        phi_w0: s.phi_w0,
        m_factor,
        u1_factor,
        total: FunctionalResult::grid(total, nb + nm + nu),
    })
}
