use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::pcgroup::{PcGroup, Quotient, Subgroup};
use crate::sections::AbelianSection;
use crate::Result;

/// Which abelian normal sections were examined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionCoverage {
    /// Every pair `L <= K` of normal subgroups with `K/L` abelian.
    Full,
    /// Consecutive-or-abelian pairs from the lower central and derived series,
    /// and `gamma_{k+1} / gamma_{k+1}'` for each `k`.
    StandardFamily,
}

/// Requested section family; `Full` falls back to the standard family above
/// the budgeted group order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionMode {
    Full,
    Standard,
}

fn standard_pairs(g: &PcGroup) -> Vec<(Subgroup, Subgroup)> {
    let whole = g.whole();
    let mut pairs = Vec::new();
    let mut lcs = g.lower_central_series(&whole);
    lcs.push(Subgroup::trivial());
    let mut ds = g.derived_series(&whole);
    ds.push(Subgroup::trivial());
    for series in [&lcs, &ds] {
        for i in 0..series.len() {
            for j in i + 1..series.len() {
                let (k, l) = (&series[i], &series[j]);
                if g.derived_subgroup(k).is_subgroup_of(g, l) {
                    pairs.push((k.clone(), l.clone()));
                }
            }
        }
    }
    for k in lcs.iter().skip(1) {
        pairs.push((k.clone(), g.derived_subgroup(k)));
    }
    pairs
}

/// Abelian normal sections of `G`, each `(K, L)` once, nontrivial only.
pub fn enumerate_abelian_normal_sections(
    g: &PcGroup,
    budget: &Budget,
    mode: SectionMode,
) -> Result<(Vec<AbelianSection>, SectionCoverage)> {
    let full = mode == SectionMode::Full && g.order_u64().is_some_and(|o| o <= budget.full_sections_order);
    let pairs: Vec<(Subgroup, Subgroup)> = if full {
        let normals = g.normal_subgroups(budget.normal_subgroups)?;
        let mut out = Vec::new();
        for l in &normals {
            for k in &normals {
                if k.rank_log() > l.rank_log()
                    && l.is_subgroup_of(g, k)
                    && g.derived_subgroup(k).is_subgroup_of(g, l)
                {
                    out.push((k.clone(), l.clone()));
                }
            }
        }
        out
    } else {
        standard_pairs(g)
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut quotients: BTreeMap<Vec<crate::pcgroup::Element>, Arc<Quotient>> = BTreeMap::new();
    let mut out = Vec::new();
    for (k, l) in pairs {
        if k.rank_log() == l.rank_log() || !seen.insert((k.basis().to_vec(), l.basis().to_vec())) {
            continue;
        }
        let q = match quotients.get(l.basis()) {
            Some(q) => q.clone(),
            None => {
                let q = Arc::new(Quotient::new(g, &l)?);
                quotients.insert(l.basis().to_vec(), q.clone());
                q
            }
        };
        out.push(AbelianSection::in_quotient(g, &k, q)?);
    }
    let coverage = if full { SectionCoverage::Full } else { SectionCoverage::StandardFamily };
    Ok((out, coverage))
}
