use crate::pcgroup::{Element, PcGroup, PcPresentation, Subgroup};
use crate::{Error, Result};

/// `G/N` for a normal subgroup `N`, presented on the pc generators of `G`
/// whose positions are not depths of `N`.
#[derive(Debug)]
pub struct Quotient {
    group: PcGroup,
    kernel: Subgroup,
    kept: Vec<usize>,
}

impl Quotient {
    pub fn new(g: &PcGroup, n: &Subgroup) -> Result<Self> {
        if !g.is_normal(n) {
            return Err(Error::Precondition("quotient by a subgroup that is not normal".into()));
        }
        let depths = n.depths();
        let kept: Vec<usize> = (0..g.ngens()).filter(|i| !depths.contains(i)).collect();
        let names = kept.iter().map(|&i| g.names()[i].clone()).collect();
        let mut pres = PcPresentation::new(g.prime(), names)?;
        let project = |x: &Element| -> Element {
            let r = n.sift(g, x);
            Element(kept.iter().map(|&i| r.0[i]).collect())
        };
        for (a, &i) in kept.iter().enumerate() {
            pres.set_power(a, project(g.presentation().power(i)))?;
            for (b, &j) in kept.iter().enumerate().skip(a + 1) {
                pres.set_commutator(b, a, project(g.presentation().commutator(j, i)))?;
            }
        }
        Ok(Quotient { group: PcGroup::new(pres)?, kernel: n.clone(), kept })
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Positions of `G` carried by the quotient generators.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Image of `x` under `G -> G/N`.
    pub fn project(&self, g: &PcGroup, x: &Element) -> Element {
        let r = self.kernel.sift(g, x);
        Element(self.kept.iter().map(|&i| r.0[i]).collect())
    }

    /// Canonical coset representative of `y`.
    pub fn lift(&self, g: &PcGroup, y: &Element) -> Element {
        let mut v = vec![0u32; g.ngens()];
        for (a, &i) in self.kept.iter().enumerate() {
            v[i] = y.0[a];
        }
        Element(v)
    }

    /// Image of a subgroup of `G`.
    pub fn project_subgroup(&self, g: &PcGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = h.basis().iter().map(|b| self.project(g, b)).collect();
        self.group.closure(&gens)
    }

    /// Full preimage of a subgroup of `G/N`.
    pub fn preimage(&self, g: &PcGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = h
            .basis()
            .iter()
            .map(|b| self.lift(g, b))
            .chain(self.kernel.basis().iter().cloned())
            .collect();
        g.closure(&gens)
    }
}
