use crate::{Error, Result};

/// Normal-form element of a pc group: exponent vector, entry `i` in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

impl Element {
    pub fn identity(n: usize) -> Self {
        Element(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Element(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent; `None` for the identity.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn leading_exponent(&self) -> Option<u32> {
        self.depth().map(|d| self.0[d])
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Power-commutator presentation of a finite p-group.
///
/// Generators `g_0..g_{n-1}`; `g_i^p` is a normal form over generators of index
/// greater than `i`, and `[g_j, g_i] = g_j^{-1} g_i^{-1} g_j g_i` (for `j > i`)
/// is a normal form over generators of index greater than `j`. Relations that
/// are never set are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    prime: u32,
    names: Vec<String>,
    powers: Vec<Element>,
    /// `comms[j][i]` for `i < j`
    comms: Vec<Vec<Element>>,
}

impl PcPresentation {
    pub fn new(prime: u32, names: Vec<String>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::MalformedPresentation(format!("{prime} is not prime")));
        }
        let n = names.len();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::MalformedPresentation(format!("duplicate generator name {name}")));
            }
        }
        Ok(Self {
            prime,
            names,
            powers: vec![Element::identity(n); n],
            comms: (0..n).map(|j| vec![Element::identity(n); j]).collect(),
        })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn power(&self, i: usize) -> &Element {
        &self.powers[i]
    }

    /// `[g_j, g_i]` for `j > i`.
    pub fn commutator(&self, j: usize, i: usize) -> &Element {
        &self.comms[j][i]
    }

    fn check_rhs(&self, rhs: &Element, above: usize, what: &str) -> Result<()> {
        if rhs.0.len() != self.ngens() {
            return Err(Error::MalformedPresentation(format!("{what}: wrong exponent vector length")));
        }
        if let Some(k) = rhs.0.iter().position(|&e| e >= self.prime) {
            return Err(Error::MalformedPresentation(format!(
                "{what}: exponent of {} not reduced mod {}",
                self.names[k], self.prime
            )));
        }
        if let Some(d) = rhs.depth().filter(|&d| d <= above) {
            return Err(Error::MalformedPresentation(format!(
                "{what}: right-hand side involves {} but only generators after {} are allowed",
                self.names[d], self.names[above]
            )));
        }
        Ok(())
    }

    pub fn set_power(&mut self, i: usize, rhs: Element) -> Result<()> {
        if i >= self.ngens() {
            return Err(Error::MalformedPresentation(format!("no generator {i}")));
        }
        self.check_rhs(&rhs, i, &format!("power relation of {}", self.names[i]))?;
        self.powers[i] = rhs;
        Ok(())
    }

    pub fn set_commutator(&mut self, j: usize, i: usize, rhs: Element) -> Result<()> {
        if j >= self.ngens() || i >= j {
            return Err(Error::MalformedPresentation(format!(
                "commutator relations are [g_j, g_i] with j > i, got ({j}, {i})"
            )));
        }
        self.check_rhs(&rhs, j, &format!("commutator [{}, {}]", self.names[j], self.names[i]))?;
        self.comms[j][i] = rhs;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_index_violation() {
        let mut p = PcPresentation::new(3, names(&["a", "b", "c"])).unwrap();
        assert!(p.set_commutator(1, 0, Element(vec![0, 0, 1])).is_ok());
        // [b, a] = a is not over generators after b
        assert!(p.set_commutator(1, 0, Element(vec![1, 0, 0])).is_err());
        assert!(p.set_power(2, Element(vec![0, 0, 1])).is_err());
        assert!(p.set_power(0, Element(vec![0, 3, 0])).is_err());
    }

    #[test]
    fn rejects_bad_prime_and_names() {
        assert!(PcPresentation::new(4, names(&["a"])).is_err());
        assert!(PcPresentation::new(3, names(&["a", "a"])).is_err());
    }
}
