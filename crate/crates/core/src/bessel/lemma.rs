//! Coordinates on `Bw₀R_χ`: every `g` in it is uniquely `b·w₀·m(x)·u₁`.

use rand::Rng;

use super::character::U1Coords;
use super::datum::{m_of, BesselDatum};
use crate::group::{
    apply_root_right, borel_assemble, borel_from_matrix, bruhat_split, extract_unipotent_coords,
    form_inverse, long_weyl_element, BorelElement, Root, UnipotentCoords,
};
use crate::linalg::{Matrix, Rational, Scalar};
use crate::sampling::{random_positive_rational, random_rationals, random_signs, seeded_rng};

/// `g = b·w₀·m(x)·u₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct RChiDecomposition<T> {
    pub b: BorelElement<T>,
    pub x: T,
    pub u1: U1Coords<T>,
}

/// `R_χ ∋ m(x)·u₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct RChiElement<T> {
    pub x: T,
    pub u1: U1Coords<T>,
}

impl<T: Scalar> RChiElement<T> {
    pub fn assemble(&self, datum: &BesselDatum) -> Matrix<T> {
        let u = self
            .u1
            .assemble(datum.ctx())
            .expect("coordinate count checked by caller")
            .into_matrix();
        m_of(datum, &self.x).matrix() * &u
    }
}

/// Recovers `(b, x, u₁)` from `g`, or `None` when `g ∉ Bw₀R_χ`.
///
/// Since `R_χ = g₀(U_{e_n}U₁)g₀⁻¹ = g₀Ug₀⁻¹`, the Bruhat split of `g·g₀`
/// gives `b'·w₀·v` with `v = X_{e_n}(x)·u₁'`, and then `b = b'·(w₀g₀w₀⁻¹)⁻¹`,
/// `u₁ = g₀u₁'g₀⁻¹`.
pub fn lemma_decompose<T: Scalar>(
    datum: &BesselDatum,
    g: &Matrix<T>,
) -> Option<RChiDecomposition<T>> {
    let ctx = datum.ctx();
    let n = ctx.n();
    let g0 = datum.g0().map(T::from_rational);
    let g0_inv = datum.g0_inv().map(T::from_rational);
    let (b_prime, v) = bruhat_split(ctx, &(g * &g0))?;
    let x = v[(n - 1, n)].clone();
    let mut u1_prime = v;
    // X_{e_n}(−x)·v, as a left multiplication: conjugate the column routine.
    u1_prime = form_inverse(&u1_prime);
    apply_root_right(&mut u1_prime, n, &Root::Short(n - 1), &x);
    let u1_prime = form_inverse(&u1_prime);
    let u1 = &(&g0 * &u1_prime) * &g0_inv;
    let u1 = U1Coords::from_unipotent(&extract_unipotent_coords(ctx, &u1).ok()?).ok()?;
    let w0 = long_weyl_element::<T>(ctx).into_matrix();
    let u0_inv = &(&w0 * &g0_inv) * &w0;
    let b = borel_from_matrix(ctx, &(&b_prime * &u0_inv)).ok()?;
    Some(RChiDecomposition { b, x, u1 })
}

/// `b·w₀·m(x)·u₁`.
pub fn lemma_compose<T: Scalar>(datum: &BesselDatum, parts: &RChiDecomposition<T>) -> Matrix<T> {
    let ctx = datum.ctx();
    let b = borel_assemble(ctx, &parts.b)
        .expect("valid Borel coordinates")
        .into_matrix();
    let w0 = long_weyl_element::<T>(ctx).into_matrix();
    let r = RChiElement {
        x: parts.x.clone(),
        u1: parts.u1.clone(),
    }
    .assemble(datum);
    &(&b * &w0) * &r
}

/// Random exact triple for round-trip tests.
pub fn random_decomposition<R: Rng + ?Sized>(
    datum: &BesselDatum,
    rng: &mut R,
) -> RChiDecomposition<Rational> {
    let ctx = datum.ctx();
    let n = ctx.n();
    RChiDecomposition {
        b: BorelElement {
            signs: random_signs(rng, n),
            scales: (0..n)
                .map(|_| random_positive_rational(rng, 9, 5))
                .collect(),
            unipotent: UnipotentCoords::new(random_rationals(rng, n * n, 9, 5)),
        },
        x: random_rationals(rng, 1, 9, 5).remove(0),
        u1: U1Coords::new(random_rationals(rng, datum.u1_dim(), 9, 5)),
    }
}

/// Draws `trials` random triples, composes and decomposes each, and checks
/// exact recovery; also checks `M_χ ∩ B̄ = {1}` symbolically.
pub fn lemma_uniqueness_check(datum: &BesselDatum, trials: usize, seed: u64) -> bool {
    let mut rng = seeded_rng(seed);
    let round_trips = (0..trials).all(|_| {
        let parts = random_decomposition(datum, &mut rng);
        let g = lemma_compose(datum, &parts);
        lemma_decompose(datum, &g).as_ref() == Some(&parts)
    });
    round_trips && super::datum::m_chi_meets_opposite_borel_trivially(datum)
}
