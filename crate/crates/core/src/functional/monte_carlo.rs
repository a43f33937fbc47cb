//! `Λ(f_φ)` straight from the definitions: Monte Carlo over
//! `(a₀, u₀) × x × u₁` with the sum over `M₀` done exactly.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{FunctionalResult, Method};
use crate::bessel::{m_of, psi, BesselDatum, StabilizerCharacter, U1Coords};
use crate::group::{
    borel_assemble, cell_membership_bw0p, long_weyl_element, BorelElement, GroupContext,
    UnipotentCoords,
};
use crate::linalg::{ApproxComplex, Matrix};
use crate::quadrature::QuadBox;
use crate::sections::{mollifier, AveragedSection, PrincipalSeriesParam};

/// Samples per random stream; chunk `k` uses stream `k` of the seed, so a
/// run with more samples extends a shorter one.
pub const MC_CHUNK: usize = 1 << 14;

/// A compactly supported `φ` on `G`.
pub trait TestFunction: Sync {
    fn phi(&self, g: &Matrix<f64>) -> Complex64;
}

impl TestFunction for AveragedSection {
    fn phi(&self, g: &Matrix<f64>) -> Complex64 {
        AveragedSection::phi(self, g)
    }
}

/// A bump in the matrix entries around `center`, multiplied by the
/// indicator of the complement of `Bw₀P`.
#[derive(Clone, Debug)]
pub struct OffCellBump {
    ctx: GroupContext,
    pub center: Matrix<f64>,
    pub radius: f64,
}

impl OffCellBump {
    pub fn new(ctx: &GroupContext, center: Matrix<f64>, radius: f64) -> Self {
        Self {
            ctx: ctx.clone(),
            center,
            radius,
        }
    }
}

impl TestFunction for OffCellBump {
    fn phi(&self, g: &Matrix<f64>) -> Complex64 {
        if cell_membership_bw0p(&self.ctx, g) {
            return Complex64::new(0.0, 0.0);
        }
        let v = g
            .entries()
            .iter()
            .zip(self.center.entries())
            .map(|(a, c)| mollifier((a - c) / self.radius))
            .product();
        Complex64::new(v, 0.0)
    }
}

/// Sampling box with coordinates `(s, u, x, u₁)` of dimension
/// `n + n² + 1 + (n² − 1)`, where `β = m₀·e^{s}·u` runs over `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct McDomain {
    pub bx: QuadBox,
}

impl McDomain {
    pub fn new(bx: QuadBox) -> Self {
        Self { bx }
    }

    /// The support of `φ_B × φ_M × φ_{U₁}`; exact, since the integrand sees
    /// `φ_B` at `β` itself.
    pub fn for_section(s: &AveragedSection) -> Self {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for b in [s.phi_b.support(), s.phi_m.support(), s.phi_u1.support()] {
            lo.extend(&b.lo);
            hi.extend(&b.hi);
        }
        Self::new(QuadBox::new(lo, hi).expect("bump supports are nondegenerate"))
    }
}

/// All `2ⁿ` elements of `M₀` with their sign vectors.
pub fn sign_matrices(ctx: &GroupContext) -> Vec<(Vec<i8>, Matrix<f64>)> {
    let n = ctx.n();
    (0..1usize << n)
        .map(|mask| {
            let signs: Vec<i8> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            let m = BorelElement {
                signs: signs.clone(),
                scales: vec![1.0; n],
                unipotent: UnipotentCoords::zero(ctx),
            };
            (
                signs,
                borel_assemble(ctx, &m).expect("sign matrix").into_matrix(),
            )
        })
        .collect()
}

struct Sampler<'a> {
    datum: &'a BesselDatum,
    omega: &'a StabilizerCharacter,
    params: &'a PrincipalSeriesParam,
    phi: &'a dyn TestFunction,
    bx: &'a QuadBox,
    w0: Matrix<f64>,
    signs: Vec<(Vec<i8>, Matrix<f64>)>,
    rho: Vec<f64>,
}

impl Sampler<'_> {
    /// `Σ_{m₀} η(m₀)⁻¹e^{(ν+3ρ)·s} φ(m₀e^{s}u·w₀m(x)u₁) χ(u₁)⁻¹ω(x)⁻¹`:
    /// the integral over `b` with `β = b⁻¹ = m₀e^{s}u`, whose right Haar
    /// measure is `e^{2ρ·s} ds du`.
    fn integrand(&self, p: &[f64]) -> Complex64 {
        let ctx = self.datum.ctx();
        let n = ctx.n();
        let nn = n * n;
        let (s, rest) = p.split_at(n);
        let (u, rest) = rest.split_at(nn);
        let (x, t) = (rest[0], &rest[1..]);
        let au = borel_assemble(
            ctx,
            &BorelElement {
                signs: vec![1; n],
                scales: s.iter().map(|v| v.exp()).collect(),
                unipotent: UnipotentCoords::new(u.to_vec()),
            },
        )
        .expect("coordinate counts")
        .into_matrix();
        let u1 = U1Coords::new(t.to_vec())
            .assemble(ctx)
            .expect("dim U₁ coordinates")
            .into_matrix();
        let target = &(&(&au * &self.w0) * m_of(self.datum, &x).matrix()) * &u1;
        let log_b: Vec<f64> = s.iter().map(|v| -v).collect();
        let haar: f64 = self
            .rho
            .iter()
            .zip(s)
            .map(|(r, v)| 2.0 * r * v)
            .sum::<f64>()
            .exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for (signs, m0) in &self.signs {
            let v = self.phi.phi(&(m0 * &target));
            if v != Complex64::new(0.0, 0.0) {
                acc += self.params.borel_factor(signs, &log_b) * haar * v;
            }
        }
        if acc == Complex64::new(0.0, 0.0) {
            return acc;
        }
        acc * (psi(self.datum.chi().phase(&u1)) * self.omega.value(x)).conj()
    }

    fn chunk(&self, seed: u64, k: usize, count: usize) -> McMoments {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let d = self.bx.dim();
        let mut p = vec![0.0; d];
        let mut m = McMoments {
            samples: count,
            ..McMoments::default()
        };
        for _ in 0..count {
            for (a, v) in p.iter_mut().enumerate() {
                *v = self.bx.lo[a] + (self.bx.hi[a] - self.bx.lo[a]) * rng.random::<f64>();
            }
            let f = self.integrand(&p);
            if f != Complex64::new(0.0, 0.0) {
                m.hits += 1;
                m.sum += f;
                m.sum_sq += f.norm_sqr();
                m.sum_quad += f.norm_sqr() * f.norm_sqr();
            }
        }
        m
    }
}

/// Raw sums of a Monte Carlo run over the box, before scaling by its
/// volume.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct McMoments {
    pub samples: usize,
    /// Samples with a nonzero integrand.
    pub hits: usize,
    pub sum: Complex64,
    pub sum_sq: f64,
    pub sum_quad: f64,
}

impl McMoments {
    fn merge(self, o: Self) -> Self {
        Self {
            samples: self.samples + o.samples,
            hits: self.hits + o.hits,
            sum: self.sum + o.sum,
            sum_sq: self.sum_sq + o.sum_sq,
            sum_quad: self.sum_quad + o.sum_quad,
        }
    }

    pub fn mean(&self) -> Complex64 {
        self.sum / self.samples.max(1) as f64
    }

    /// Sample variance of the integrand.
    pub fn variance(&self) -> f64 {
        let n = self.samples.max(1) as f64;
        (self.sum_sq / n - self.mean().norm_sqr()).max(0.0)
    }

    /// `E|F|⁴ / (E|F|²)²`; the relative standard deviation of the variance
    /// estimate is about `√((κ − 1)/N)`.
    pub fn kurtosis(&self) -> f64 {
        let n = self.samples.max(1) as f64;
        let m2 = self.sum_sq / n;
        if m2 == 0.0 {
            return 0.0;
        }
        self.sum_quad / n / (m2 * m2)
    }
}

/// Raw moments of the integrand of [`lambda_direct_mc_on`]. Chunks are
/// reduced in index order.
pub fn mc_moments_on(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    params: &PrincipalSeriesParam,
    phi: &dyn TestFunction,
    domain: &McDomain,
    samples: usize,
    seed: u64,
) -> McMoments {
    let sampler = Sampler {
        datum,
        omega,
        params,
        phi,
        bx: &domain.bx,
        w0: long_weyl_element::<f64>(datum.ctx()).into_matrix(),
        signs: sign_matrices(datum.ctx()),
        rho: datum.ctx().roots().rho_f64(),
    };
    let chunks = samples.div_ceil(MC_CHUNK);
    let parts: Vec<McMoments> = (0..chunks)
        .into_par_iter()
        .map(|k| sampler.chunk(seed, k, MC_CHUNK.min(samples - k * MC_CHUNK)))
        .collect();
    parts
        .into_iter()
        .fold(McMoments::default(), McMoments::merge)
}

/// Monte Carlo value of `Λ(f_φ)` for an arbitrary `φ` over `domain`, with
/// standard error `vol·√((E|F|² − |EF|²)/N)` as the error.
#[allow(clippy::too_many_arguments)]
pub fn lambda_direct_mc_on(
    datum: &BesselDatum,
    omega: &StabilizerCharacter,
    params: &PrincipalSeriesParam,
    phi: &dyn TestFunction,
    domain: &McDomain,
    samples: usize,
    seed: u64,
) -> FunctionalResult {
    let m = mc_moments_on(datum, omega, params, phi, domain, samples, seed);
    let n = samples.max(1) as f64;
    let vol = domain.bx.volume();
    FunctionalResult {
        value: ApproxComplex::new(m.mean() * vol, vol * (m.variance() / n).sqrt()),
        nodes_used: samples,
        method: Method::MonteCarlo,
        seed: Some(seed),
    }
}

/// Monte Carlo value of `Λ(f_φ)` for an averaged section.
pub fn lambda_direct_mc(
    omega: &StabilizerCharacter,
    s: &AveragedSection,
    samples: usize,
    seed: u64,
) -> FunctionalResult {
    let domain = McDomain::for_section(s);
    lambda_direct_mc_on(s.datum(), omega, &s.params, s, &domain, samples, seed)
}
