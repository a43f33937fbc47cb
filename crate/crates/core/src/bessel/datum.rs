//! The isotropic datum `v = (1, −1, −1/2)ᵀ`, the conjugator `g₀`, the
//! stabilizer `M_χ = {m(x)}` and the characters `ω`.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::character::{psi, u1_dim, U1Coords, UnipotentCharacter};
use super::BesselError;
use crate::group::{form_inverse, GroupContext, GroupElement, Root};
use crate::linalg::{
    constant_poly_matrix, one_parameter_family, poly_eval, rat, Matrix, PolyMatrix, Polynomial,
    Rational, Scalar,
};

/// `ω(m(x)) = e^{2πi c_ω x}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilizerCharacter {
    pub c_omega: f64,
}

impl StabilizerCharacter {
    pub fn new(c_omega: f64) -> Self {
        Self { c_omega }
    }

    pub fn value(&self, x: f64) -> Complex64 {
        omega_value(self, x)
    }
}

pub fn omega_value(w: &StabilizerCharacter, x: f64) -> Complex64 {
    psi(w.c_omega * x)
}

/// `(χ_v, M_χ, g₀)` for the isotropic vector `v`.
#[derive(Clone, Debug)]
pub struct BesselDatum {
    ctx: GroupContext,
    chi: UnipotentCharacter,
    v: Matrix<Rational>,
    v0: Matrix<Rational>,
    g0_block: Matrix<Rational>,
    g0: Matrix<Rational>,
    g0_inv: Matrix<Rational>,
    m_family: PolyMatrix,
}

/// `v = (1, −1, −1/2)ᵀ`.
pub fn isotropic_vector() -> [Rational; 3] {
    [rat(1, 1), rat(-1, 1), rat(-1, 2)]
}

/// The 3×3 matrix with `g₀·(1,0,0)ᵀ = v`.
pub fn g0_block() -> Matrix<Rational> {
    Matrix::from_rows(vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(-1, 1), rat(1, 1), rat(0, 1)],
        vec![rat(-1, 2), rat(1, 1), rat(1, 1)],
    ])
    .expect("3x3")
}

impl BesselDatum {
    /// The datum for `𝐚 = v`.
    pub fn isotropic(ctx: &GroupContext) -> Result<Self, BesselError> {
        Self::new(ctx, isotropic_vector())
    }

    /// Accepts `𝐚 = λv` for `λ ≠ 0`; these share `g₀` and `M_χ`.
    pub fn new(ctx: &GroupContext, abc: [Rational; 3]) -> Result<Self, BesselError> {
        let chi = UnipotentCharacter::new(ctx, abc.clone())?;
        let v = isotropic_vector();
        let lambda = &abc[0] / &v[0];
        if abc.iter().zip(&v).any(|(a, b)| *a != &lambda * b) {
            return Err(BesselError::UnsupportedVector(
                abc.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            ));
        }
        let block = g0_block();
        let g0 = ctx.embed_middle(&block)?;
        let g0_inv = form_inverse(&g0);
        let gen = Root::Short(ctx.n() - 1).generator::<Rational>(ctx.n());
        let u_family = one_parameter_family(&gen).expect("root generators are nilpotent");
        let m_family = &(&constant_poly_matrix(&g0) * &u_family) * &constant_poly_matrix(&g0_inv);
        Ok(Self {
            ctx: ctx.clone(),
            chi,
            v: Matrix::column(v.to_vec()),
            v0: Matrix::column(vec![rat(1, 1), rat(0, 1), rat(0, 1)]),
            g0_block: block,
            g0,
            g0_inv,
            m_family,
        })
    }

    pub fn ctx(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn chi(&self) -> &UnipotentCharacter {
        &self.chi
    }

    pub fn v(&self) -> &Matrix<Rational> {
        &self.v
    }

    pub fn v0(&self) -> &Matrix<Rational> {
        &self.v0
    }

    pub fn g0_block(&self) -> &Matrix<Rational> {
        &self.g0_block
    }

    /// `g₀` embedded in the middle block of `G`.
    pub fn g0(&self) -> &Matrix<Rational> {
        &self.g0
    }

    pub fn g0_inv(&self) -> &Matrix<Rational> {
        &self.g0_inv
    }

    /// `m(x) = g₀ U_{e_n}(x) g₀⁻¹` as a polynomial matrix.
    pub fn m_family(&self) -> &PolyMatrix {
        &self.m_family
    }

    pub fn u1_dim(&self) -> usize {
        u1_dim(&self.ctx)
    }
}

/// `m(x)`.
pub fn m_of<T: Scalar>(datum: &BesselDatum, x: &T) -> GroupElement<T> {
    GroupElement::trusted(datum.ctx.n(), poly_eval(&datum.m_family, x))
}

/// `X_{e_n}(x) = g₀⁻¹ m(x) g₀`, which is `U_{e_n}(x)`.
pub fn x_en_of<T: Scalar>(datum: &BesselDatum, x: &T) -> GroupElement<T> {
    let g0 = datum.g0.map(T::from_rational);
    let g0_inv = datum.g0_inv.map(T::from_rational);
    let m = m_of(datum, x).into_matrix();
    GroupElement::trusted(datum.ctx.n(), &(&g0_inv * &m) * &g0)
}

/// Whether conjugation by `h` preserves the phase of `χ` at `u`.
pub fn stabilizes(datum: &BesselDatum, h: &Matrix<Rational>, u: &U1Coords<Rational>) -> bool {
    let Ok(u) = u.assemble(&datum.ctx) else {
        return false;
    };
    let Ok(h_inv) = h.inverse() else {
        return false;
    };
    let conj = &(h * u.matrix()) * &h_inv;
    datum.chi.phase(&conj) == datum.chi.phase(u.matrix())
}

/// `χ(m(x) u m(x)⁻¹) = χ(u)`, exactly.
pub fn stabilizer_check(datum: &BesselDatum, x: &Rational, u: &U1Coords<Rational>) -> bool {
    stabilizes(datum, m_of(datum, x).matrix(), u)
}

/// Basis of `Lie(R_χ)`: `g₀X_{e_n}g₀⁻¹` followed by `X_α` for `α ≠ e_n`.
fn r_chi_lie_basis(datum: &BesselDatum) -> Vec<Matrix<Rational>> {
    let n = datum.ctx.n();
    let roots = datum.ctx.roots().positive_roots();
    let (short, rest) = roots.split_last().expect("n ≥ 1");
    let mut basis = vec![&(&datum.g0 * &short.generator::<Rational>(n)) * &datum.g0_inv];
    basis.extend(rest.iter().map(|r| r.generator::<Rational>(n)));
    basis
}

/// `|det Ad(m(x))|` on `Lie(R_χ)`, exactly.
pub fn modular_delta(datum: &BesselDatum, x: &Rational) -> Result<Rational, BesselError> {
    let m = m_of(datum, x).into_matrix();
    let m_inv = form_inverse(&m);
    let basis = r_chi_lie_basis(datum);
    let d = basis.len();
    let mut ad = Matrix::<Rational>::zeros(d, d);
    for (j, y) in basis.iter().enumerate() {
        let image = &(&m * y) * &m_inv;
        let coords =
            Matrix::solve_in_span(&basis, &image).ok_or(BesselError::AdjointNotInvariant)?;
        for (i, c) in coords.into_iter().enumerate() {
            ad[(i, j)] = c;
        }
    }
    let det = ad.determinant().map_err(|e| BesselError::Group(e.into()))?;
    Ok(det.abs_val())
}

/// Solves `m(x) ∈ B̄` symbolically: the strictly upper entries of `m(x)`
/// must all vanish, so `x` is a common root. Returns the monic gcd of those
/// entries (the polynomial whose roots are the admissible `x`).
pub fn opposite_borel_constraint(datum: &BesselDatum) -> Polynomial<Rational> {
    let m = &datum.m_family;
    let mut g = Polynomial::zero();
    for r in 0..m.rows() {
        for c in (r + 1)..m.cols() {
            g = g.gcd(&m[(r, c)]);
        }
    }
    g
}

/// `M_χ ∩ B̄ = {1}`: the constraint is exactly `x = 0` and `m(0) = 1`.
pub fn m_chi_meets_opposite_borel_trivially(datum: &BesselDatum) -> bool {
    let g = opposite_borel_constraint(datum);
    g == Polynomial::x() && m_of(datum, &Rational::zero()).matrix().is_identity()
}

/// Whether `m(x) = 1` forces `x = 0`, i.e. `x ↦ m(x)` is injective.
pub fn m_family_injective(datum: &BesselDatum) -> bool {
    let m = &datum.m_family;
    let mut g = Polynomial::zero();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let e = if r == c {
                m[(r, c)].clone() - Polynomial::one()
            } else {
                m[(r, c)].clone()
            };
            g = g.gcd(&e);
        }
    }
    g == Polynomial::x()
}
