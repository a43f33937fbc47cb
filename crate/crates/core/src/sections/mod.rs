//! Pointwise-evaluable elements of `V(ν, η)`:
//! `f(m₀a₀ug) = η(m₀)⁻¹ e^{−(ν+ρ) log a₀} f(g)`.

mod averaged;
mod bump;

pub use averaged::{averaged_eval, AveragedSection};
pub use bump::{
    bump_axis_integral, bump_fourier, bump_fourier_counted, mollifier, BumpFunction, MOLLIFIER_MASS,
};

use num_complex::Complex64;

use crate::group::{bruhat_split, extract_unipotent_coords, GroupContext, RootDatum};
use crate::linalg::{Matrix, Scalar};
use crate::quadrature::QuadBox;

/// `(ν, η)` with `η(δ) = ∏ δ_i^{ε_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalSeriesParam {
    pub nu: Vec<Complex64>,
    pub eta_bits: Vec<bool>,
    rho: Vec<f64>,
}

impl PrincipalSeriesParam {
    pub fn new(nu: Vec<Complex64>, eta_bits: Vec<bool>) -> Self {
        assert_eq!(nu.len(), eta_bits.len(), "ν and η must have rank n");
        let rho = RootDatum::new(nu.len()).rho_f64();
        Self { nu, eta_bits, rho }
    }

    pub fn trivial_eta(nu: Vec<Complex64>) -> Self {
        let n = nu.len();
        Self::new(nu, vec![false; n])
    }

    pub fn rank(&self) -> usize {
        self.nu.len()
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn eta(&self, signs: &[i8]) -> f64 {
        signs
            .iter()
            .zip(&self.eta_bits)
            .filter(|(s, e)| **e && **s < 0)
            .fold(1.0, |acc, _| -acc)
    }

    /// `η(δ)⁻¹ e^{−(ν+ρ)·s}` for `b` with signs `δ` and `log a₀ = s`.
    pub fn borel_factor(&self, signs: &[i8], logs: &[f64]) -> Complex64 {
        let mut e = Complex64::new(0.0, 0.0);
        for ((nu, rho), s) in self.nu.iter().zip(&self.rho).zip(logs) {
            e -= (nu + rho) * s;
        }
        e.exp() * self.eta(signs)
    }
}

/// A function on `G` (given as a real matrix) in `V(ν, η)`.
pub trait Section: Sync {
    fn params(&self) -> &PrincipalSeriesParam;

    fn eval(&self, g: &Matrix<f64>) -> Complex64;
}

/// A section supported in the open cell `Bw₀U`, with compact support in
/// the `U` coordinate of `g = b·w₀·u'`.
pub trait CellSupported: Section {
    /// `f(w₀·u') = Σ c_k φ_k(u')` as coefficients and bumps.
    fn cell_terms(&self) -> Vec<(Complex64, BumpFunction)>;

    /// Box containing the support in `u'` coordinates.
    fn cell_support(&self) -> QuadBox {
        let corners: Vec<Vec<f64>> = self
            .cell_terms()
            .iter()
            .flat_map(|(_, b)| {
                let bx = b.support();
                [bx.lo, bx.hi]
            })
            .collect();
        QuadBox::bounding(&corners, 0.0).expect("at least one term")
    }
}

/// `f(b·w₀·u') = η(b)⁻¹ e^{−(ν+ρ) log b} φ(u')`, zero off the open cell.
#[derive(Clone, Debug)]
pub struct CellSection {
    ctx: GroupContext,
    params: PrincipalSeriesParam,
    phi: BumpFunction,
}

impl CellSection {
    pub fn new(ctx: &GroupContext, params: PrincipalSeriesParam, phi: BumpFunction) -> Self {
        assert_eq!(params.rank(), ctx.n());
        assert_eq!(phi.dim(), ctx.n() * ctx.n(), "φ lives on U coordinates");
        Self {
            ctx: ctx.clone(),
            params,
            phi,
        }
    }

    pub fn phi(&self) -> &BumpFunction {
        &self.phi
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }
}

/// `(δ, log|d_i|)` from the first `n` diagonal entries of an upper
/// triangular matrix.
pub(crate) fn torus_part<T: Scalar>(n: usize, b: &Matrix<T>) -> (Vec<i8>, Vec<f64>) {
    (0..n)
        .map(|i| {
            let d = b[(i, i)].to_f64();
            (if d < 0.0 { -1 } else { 1 }, d.abs().ln())
        })
        .unzip()
}

/// Evaluates a cell section at a matrix of any scalar type; the
/// decomposition is exact for rationals.
pub fn section_eval<T: Scalar>(s: &CellSection, g: &Matrix<T>) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let Some((b, u)) = bruhat_split(&s.ctx, g) else {
        return zero;
    };
    let Ok(coords) = extract_unipotent_coords(&s.ctx, &u) else {
        return zero;
    };
    let coords: Vec<f64> = coords.as_slice().iter().map(Scalar::to_f64).collect();
    let phi = s.phi.value(&coords);
    if phi == zero {
        return zero;
    }
    let (signs, logs) = torus_part(s.ctx.n(), &b);
    s.params.borel_factor(&signs, &logs) * phi
}

impl Section for CellSection {
    fn params(&self) -> &PrincipalSeriesParam {
        &self.params
    }

    fn eval(&self, g: &Matrix<f64>) -> Complex64 {
        section_eval(self, g)
    }
}

impl CellSupported for CellSection {
    fn cell_terms(&self) -> Vec<(Complex64, BumpFunction)> {
        vec![(Complex64::new(1.0, 0.0), self.phi.clone())]
    }
}

/// `π(h)f = f(· h)`.
pub struct Translated<'a, S: ?Sized> {
    inner: &'a S,
    h: Matrix<f64>,
}

impl<'a, S: Section + ?Sized> Translated<'a, S> {
    pub fn new(inner: &'a S, h: Matrix<f64>) -> Self {
        Self { inner, h }
    }
}

impl<S: Section + ?Sized> Section for Translated<'_, S> {
    fn params(&self) -> &PrincipalSeriesParam {
        self.inner.params()
    }

    fn eval(&self, g: &Matrix<f64>) -> Complex64 {
        self.inner.eval(&(g * &self.h))
    }
}

/// `Σ c_k f_k` for sections sharing `(ν, η)`.
pub struct Combination<'a> {
    terms: Vec<(Complex64, &'a dyn CellSupported)>,
}

impl<'a> Combination<'a> {
    pub fn new(terms: Vec<(Complex64, &'a dyn CellSupported)>) -> Self {
        assert!(!terms.is_empty(), "empty combination");
        let p = terms[0].1.params();
        assert!(terms.iter().all(|(_, s)| s.params() == p), "mixed (ν, η)");
        Self { terms }
    }
}

impl Section for Combination<'_> {
    fn params(&self) -> &PrincipalSeriesParam {
        self.terms[0].1.params()
    }

    fn eval(&self, g: &Matrix<f64>) -> Complex64 {
        self.terms.iter().map(|(c, s)| c * s.eval(g)).sum()
    }
}

impl CellSupported for Combination<'_> {
    fn cell_terms(&self) -> Vec<(Complex64, BumpFunction)> {
        self.terms
            .iter()
            .flat_map(|(c, s)| s.cell_terms().into_iter().map(move |(d, b)| (c * d, b)))
            .collect()
    }
}
