//! Finite p-groups given by power-commutator presentations.
//!
//! Conventions: `[x, y] = x^-1 y^-1 x y`, `x^g = g^-1 x g`, and iterated
//! commutators are left-normed.

mod group;
pub mod oracle;
mod presentation;
mod quotient;
mod subgroup;

pub use group::{AssociativityWitness, PcGroup};
pub use presentation::{is_prime, Element, PcPresentation};
pub use quotient::Quotient;
pub use subgroup::Subgroup;
