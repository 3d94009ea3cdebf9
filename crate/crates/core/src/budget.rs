use serde::{Deserialize, Serialize};

use crate::exactpoly::SempleBounds;

/// Work limits shared by the pipelines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest set that is enumerated element by element.
    pub enumeration: u64,
    /// Largest number of substitution tuples tested exhaustively.
    pub substitutions: u64,
    pub semple: SempleBounds,
    /// Largest group order for which every abelian normal section is examined.
    pub full_sections_order: u64,
    /// Cap on the number of normal subgroups enumerated.
    pub normal_subgroups: usize,
    /// Random samples drawn when a substitution space is too large.
    pub samples: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: 1_000_000,
            substitutions: 10_000_000,
            semple: SempleBounds::default(),
            full_sections_order: 243,
            normal_subgroups: 4096,
            samples: 100_000,
        }
    }
}

impl Budget {
    /// Defaults, with `NILCERT_BUDGET` (if set to an integer) replacing both
    /// the enumeration and the substitution limits.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(v) = std::env::var("NILCERT_BUDGET").ok().and_then(|s| s.trim().parse().ok()) {
            b.set_count(v);
        }
        b
    }

    pub fn set_count(&mut self, v: u64) {
        self.enumeration = v;
        self.substitutions = v;
    }
}
