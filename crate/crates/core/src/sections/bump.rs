//! Modulated mollifier bumps and their Fourier transforms.

use num_complex::Complex64;

use crate::bessel::psi;
use crate::linalg::ApproxComplex;
use crate::quadrature::{integrate_1d, QuadBox, QuadError, QuadResult};

/// `exp(−1/(1−t²))` on `|t| < 1`, zero elsewhere.
pub fn mollifier(t: f64) -> f64 {
    let q = 1.0 - t * t;
    if q <= 0.0 {
        0.0
    } else {
        (-1.0 / q).exp()
    }
}

/// `φ(p) = ∏ mollifier((p_i − c_i)/r_i) · e^{2πi⟨μ, p⟩}` with modulation `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BumpFunction {
    pub center: Vec<f64>,
    pub radius: Vec<f64>,
    pub modulation: Vec<f64>,
}

impl BumpFunction {
    pub fn new(center: Vec<f64>, radius: Vec<f64>, modulation: Vec<f64>) -> Self {
        assert_eq!(center.len(), radius.len(), "center/radius length");
        assert_eq!(center.len(), modulation.len(), "center/modulation length");
        assert!(radius.iter().all(|r| *r > 0.0), "radii must be positive");
        Self {
            center,
            radius,
            modulation,
        }
    }

    /// Unmodulated bump with a common radius.
    pub fn plain(center: Vec<f64>, radius: f64) -> Self {
        let d = center.len();
        Self::new(center, vec![radius; d], vec![0.0; d])
    }

    pub fn with_modulation(mut self, modulation: Vec<f64>) -> Self {
        assert_eq!(modulation.len(), self.dim());
        self.modulation = modulation;
        self
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// The real profile without the modulation factor.
    pub fn amplitude(&self, p: &[f64]) -> f64 {
        let mut v = 1.0;
        for ((x, c), r) in p.iter().zip(&self.center).zip(&self.radius) {
            let m = mollifier((x - c) / r);
            if m == 0.0 {
                return 0.0;
            }
            v *= m;
        }
        v
    }

    pub fn value(&self, p: &[f64]) -> Complex64 {
        let a = self.amplitude(p);
        if a == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let phase: f64 = p.iter().zip(&self.modulation).map(|(x, m)| x * m).sum();
        psi(phase) * a
    }

    /// The closed support, `∏ [c_i − r_i, c_i + r_i]`.
    pub fn support(&self) -> QuadBox {
        QuadBox::centered(&self.center, &self.radius).expect("positive radii")
    }
}

/// `∫ w(p_k) φ_k(p_k) dp_k` for the `k`-th factor `φ_k` of the separable
/// bump, modulation included, substituting `p_k = c + r·s`.
pub fn bump_axis_integral<W>(
    phi: &BumpFunction,
    k: usize,
    weight: W,
    tol: f64,
) -> Result<QuadResult, QuadError>
where
    W: Fn(f64) -> Complex64,
{
    let (c, r, mu) = (phi.center[k], phi.radius[k], phi.modulation[k]);
    let f = |s: f64| {
        let p = c + r * s;
        weight(p) * psi(mu * p) * mollifier(s)
    };
    let q = integrate_1d(f, -1.0, 1.0, tol / r.max(1.0), 14)?;
    Ok(QuadResult {
        value: q.value * r,
        abs_err: q.abs_err * r,
        ..q
    })
}

/// `φ̂(ξ) = ∫ φ(t) e^{−2πi⟨ξ,t⟩} dt`, as a product of one-dimensional
/// transforms since the bump is separable, with the number of integrand
/// evaluations. `tol` bounds each factor's absolute error.
pub fn bump_fourier_counted(
    phi: &BumpFunction,
    xi: &[f64],
    tol: f64,
) -> Result<(ApproxComplex, usize), QuadError> {
    let mut acc = ApproxComplex::real(1.0);
    let mut nodes = 0;
    for k in 0..phi.dim() {
        let freq = xi.get(k).copied().unwrap_or(0.0);
        let q = bump_axis_integral(phi, k, |p| psi(-freq * p), tol)?;
        nodes += q.nodes;
        acc = acc * ApproxComplex::new(q.value, q.abs_err);
    }
    Ok((acc, nodes))
}

pub fn bump_fourier(phi: &BumpFunction, xi: &[f64], tol: f64) -> Result<ApproxComplex, QuadError> {
    bump_fourier_counted(phi, xi, tol).map(|(v, _)| v)
}

/// `∫ mollifier(s) ds` over `[−1, 1]`, reference value of the profile mass.
pub const MOLLIFIER_MASS: f64 = 0.443_993_816_168_079_4;
