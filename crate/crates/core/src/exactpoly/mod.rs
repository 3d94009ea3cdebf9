//! Exact polynomial arithmetic over Z and F_p, ideal reduction, integral
//! dependence, Bezout certificates and the bounded membership search.

mod annihilator;
pub mod lattice;
mod modpoly;
mod multipoly;
mod poly;
mod semple;

pub use annihilator::{
    engel_exponent, from_power_sums, p_part, power_annihilator, power_sums, product_annihilator,
    EngelExponent,
};
pub use lattice::{smith_diagonalize, EchelonLattice, LatticeWitness, SmithForm};
pub use modpoly::{gcd_bezout, ModPoly};
pub use multipoly::MultiPoly;
pub use poly::Poly;
pub use semple::{
    semple_search, semple_target, MembershipCertificate, SempleBounds, SempleOutcome, SempleWitness,
};

/// Normal form of `p` modulo `(f(X_1), ..., f(X_m))`.
pub fn reduce_mod_powers<T: crate::scalar::Scalar>(p: &MultiPoly<T>, f: &Poly<T>) -> crate::Result<MultiPoly<T>> {
    p.reduce_mod_powers(f)
}
