//! Abelian normal sections `K/L` as modules for the conjugation action.
//!
//! Module notation: `a . g = a^g`, so `[a, g]` is `a . (g - 1)` and
//! `[A, _r g]` is the image of `(g - 1)^r`.

mod endo;
mod enumerate;
mod section;

pub use endo::{in_power, SectionEndomorphism};
pub use enumerate::{enumerate_abelian_normal_sections, SectionCoverage, SectionMode};
pub use section::{AbelianSection, SectionWitness, StratifiedFailure};

use crate::pcgroup::{PcGroup, Subgroup};
use crate::Result;

pub fn make_section(g: &PcGroup, k: &Subgroup, l: &Subgroup) -> Result<AbelianSection> {
    AbelianSection::new(g, k, l)
}
