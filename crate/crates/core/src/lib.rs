//! Exact and numerical tools for the Bessel functional on `SO(2n+1)` with
//! the isotropic unipotent character.
//!
//! The matrix, group and section layers are generic over the scalar
//! ([`linalg::Scalar`]): exact rationals for the algebra, `f64` or `f32`
//! for numerics.

pub mod bessel;
pub mod functional;
pub mod group;
pub mod harness;
pub mod linalg;
pub mod quadrature;
pub mod sampling;
pub mod sections;

pub use linalg::{ApproxComplex, Rational};

pub type RatMatrix = linalg::Matrix<Rational>;
pub type RealMatrix = linalg::Matrix<f64>;
pub type Matrix32 = linalg::Matrix<f32>;
pub type PolyMatrix = linalg::PolyMatrix;
pub type ApproxComplex64 = ApproxComplex;
