//! Pipelines that verify every step of the nilpotency arguments on an
//! explicit group and record the outcome as a [`Certificate`].

mod general;
mod lemmas;
mod record;
mod replay;
mod verbal;

pub use general::certify_general;
pub use lemmas::{black_check, black_values, hall_check, hall_values, nbf_powerful_check, nbf_values, BlackRecord, HallRecord, NbfRecord};
pub use record::{poly_from_json, poly_json, CheckRecord, CheckVerdict, Certificate, Verdict};
pub use replay::{replay, ReplayOutcome};
pub use verbal::certify_verbal;

use crate::budget::Budget;
use crate::sections::SectionMode;
use crate::IntPoly;

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub budget: Budget,
    pub sections: SectionMode,
    /// Replaces the annihilator derived from the law; still verified.
    pub annihilator: Option<IntPoly>,
    /// Cross-check the collector against the rewriting oracle and test
    /// associativity on all triples.
    pub oracle: bool,
    /// Largest degree `D^m` for which the product annihilator over a whole
    /// generating set is formed.
    pub product_degree_cap: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            budget: Budget::default(),
            sections: SectionMode::Full,
            annihilator: None,
            oracle: false,
            product_degree_cap: 64,
        }
    }
}

/// Marker for a halted pipeline; the reason is the last recorded check.
pub(crate) struct Stop;

pub(crate) type Step<T = ()> = std::result::Result<T, Stop>;

/// Records a library error as a failed (or exhausted) check and halts.
pub(crate) fn guard<T>(cert: &mut Certificate, name: &str, claim: &str, r: crate::Result<T>) -> Step<T> {
    match r {
        Ok(v) => Ok(v),
        Err(e) => {
            let verdict = match e {
                crate::Error::Budget { .. } | crate::Error::Exhausted(_) => CheckVerdict::Exhausted,
                _ => CheckVerdict::Failed,
            };
            cert.record(name, claim, serde_json::Value::Null, verdict, serde_json::json!({ "error": e.to_string() }));
            Err(Stop)
        }
    }
}
