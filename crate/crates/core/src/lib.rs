//! Exact, machine-checked certification of positive-law machinery on finite
//! p-groups: annihilator polynomials, lower-central generating sets with width
//! bounds, Engel-type actions on abelian sections and the nilpotency pipelines
//! built from them.

pub mod budget;
pub mod catalog;
pub mod certifier;
pub mod exactpoly;
pub mod instance;
pub mod lawkit;
pub mod pcgroup;
pub mod scalar;
pub mod sections;

mod error;

use num_bigint::BigInt;

pub use error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients.
pub type IntPoly = exactpoly::Poly<BigInt>;
/// Multivariate polynomial with arbitrary-precision integer coefficients.
pub type IntMultiPoly = exactpoly::MultiPoly<BigInt>;
/// Integer lattice used by the membership search.
pub type IntLattice = exactpoly::EchelonLattice<BigInt>;
