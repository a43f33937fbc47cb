//! The Bessel datum: `χ_𝐚` on `U₁`, the isotropic specialization, the
//! stabilizer `M_χ`, its characters `ω`, and coordinates on `Bw₀R_χ`.

mod character;
mod datum;
mod lemma;

pub use character::{chi_value, psi, psi_rational, u1_dim, U1Coords, UnipotentCharacter};
pub use datum::{
    g0_block, isotropic_vector, m_chi_meets_opposite_borel_trivially, m_family_injective, m_of,
    modular_delta, omega_value, opposite_borel_constraint, stabilizer_check, stabilizes, x_en_of,
    BesselDatum, StabilizerCharacter,
};
pub use lemma::{
    lemma_compose, lemma_decompose, lemma_uniqueness_check, random_decomposition,
    RChiDecomposition, RChiElement,
};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BesselError {
    #[error("the character needs rank at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("the vector (a, b, c) must be nonzero")]
    ZeroCharacter,
    #[error("only multiples of the isotropic vector (1, -1, -1/2) are supported, got ({0})")]
    UnsupportedVector(String),
    #[error("Ad(m) does not preserve Lie(R_chi)")]
    AdjointNotInvariant,
    #[error(transparent)]
    Group(#[from] GroupError),
}
