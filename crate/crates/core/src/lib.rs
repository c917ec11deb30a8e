//! Computational tools for right-angled Artin groups and the subgroups of
//! mapping class groups and rank-one Lie groups they describe.
//!
//! The modules cover simple graphs and their cliques and joins, the word
//! problem and normal forms in `A(Γ)`, ping-pong on reduced words, the
//! cohomology ring and its reconstruction of Γ, free group foldings,
//! integer lattices, configurations of mapping classes, and exact ping-pong
//! certificates for Möbius maps.
//!
//! Linear algebra and the Möbius code are generic over a scalar field (see
//! [`scalar::Field`]); the aliases below fix the exact rational instances.

pub mod classify;
pub mod cohomology;
pub mod coincidence;
pub mod error;
pub mod free_group;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod mobius;
pub mod pingpong;
pub mod scalar;
pub mod whitehead;
pub mod word;

pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use word::Word;

/// Arbitrary-precision rationals, the default exact scalar.
pub type Rational = num_rational::BigRational;
/// Cup-product algebra over `ℚ`.
pub type CupAlgebraQ = cohomology::CupAlgebra<Rational>;
/// Cup-product algebra over `f64`, for exploratory use.
pub type CupAlgebraF64 = cohomology::CupAlgebra<f64>;
/// Rational Möbius map.
pub type Mobius = mobius::MobiusMap<Rational>;
/// Floating point Möbius map, for exploratory use.
pub type MobiusF64 = mobius::MobiusMap<f64>;
/// Rational matrix.
pub type MatrixQ = linalg::Matrix<Rational>;
