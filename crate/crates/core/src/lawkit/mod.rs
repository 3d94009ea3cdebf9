//! Words, laws, word values, width and the lower-central generating sets `T_k`.

mod derive;
mod eval;
mod law;
mod width;
mod word;

pub use derive::{compose_law, derive_annihilator_f, DerivedAnnihilator};
pub use eval::{check_law_on_subset, evaluate_word, verbal_subgroup, word_values, Coverage, LawCheck, WordValues};
pub use law::{Law, PositiveLaw};
pub use width::{build_tk, express_gamma_k, width, GammaFactorization, SignedFactor, WidthBfs};
pub use word::Word;
