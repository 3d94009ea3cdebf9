use std::fmt;

use crate::lawkit::Word;
use crate::{Error, Result};

/// Identity `lhs == rhs`; `v == 1` is stored with the empty word on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law {
    pub lhs: Word,
    pub rhs: Word,
}

impl Law {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        let a = lhs.arity().max(rhs.arity());
        Law { lhs: lhs.with_arity(a), rhs: rhs.with_arity(a) }
    }

    /// `v == 1`
    pub fn trivial_value(v: Word) -> Self {
        let a = v.arity();
        Law::new(v, Word::identity(a))
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity()
    }

    /// `lhs = rhs`, or a single word meaning `word = 1`.
    pub fn parse(text: &str) -> Result<Law> {
        let parts: Vec<&str> = text.split('=').collect();
        match parts.as_slice() {
            [v] => Ok(Law::trivial_value(Word::parse(v)?)),
            [l, r] => {
                let lhs = Word::parse(l)?;
                let rhs = Word::parse(r).map_err(|e| shift_column(e, l.chars().count() + 1))?;
                Ok(Law::new(lhs, rhs))
            }
            _ => Err(Error::Parse { line: 1, column: 1, message: "more than one '=' in law".into() }),
        }
    }

    /// The word `lhs rhs^-1`.
    pub fn as_word(&self) -> Word {
        self.lhs.mul(&self.rhs.inverse())
    }

    pub fn as_positive(&self) -> Option<PositiveLaw> {
        PositiveLaw::new(self.lhs.clone(), self.rhs.clone()).ok()
    }
}

fn shift_column(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse { line, column: column + by, message },
        other => other,
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// `alpha == beta` with both sides positive and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveLaw {
    alpha: Word,
    beta: Word,
}

impl PositiveLaw {
    pub fn new(alpha: Word, beta: Word) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::Precondition("positive law sides must not contain inverses".into()));
        }
        let a = alpha.arity().max(beta.arity());
        let (alpha, beta) = (alpha.with_arity(a), beta.with_arity(a));
        if alpha == beta {
            return Err(Error::DegenerateLaw(format!("both sides equal {alpha}")));
        }
        Ok(PositiveLaw { alpha, beta })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let law = Law::parse(text)?;
        PositiveLaw::new(law.lhs, law.rhs)
    }

    pub fn alpha(&self) -> &Word {
        &self.alpha
    }

    pub fn beta(&self) -> &Word {
        &self.beta
    }

    pub fn arity(&self) -> usize {
        self.alpha.arity()
    }

    /// Length of the longer side.
    pub fn degree(&self) -> usize {
        self.alpha.len().max(self.beta.len())
    }

    pub fn to_law(&self) -> Law {
        Law::new(self.alpha.clone(), self.beta.clone())
    }
}

impl fmt::Display for PositiveLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_arity() {
        let l = PositiveLaw::parse("x1 x2 x2 x1 = x2 x1 x1 x2").unwrap();
        assert_eq!(l.degree(), 4);
        assert_eq!(l.arity(), 2);
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(PositiveLaw::parse("x1 x2 = x1 x2"), Err(Error::DegenerateLaw(_))));
        assert!(PositiveLaw::parse("x1^-1 = x1").is_err());
    }

    #[test]
    fn general_law_parses() {
        let l = Law::parse("[x1,x2]").unwrap();
        assert!(l.rhs.is_empty());
        assert!(l.as_positive().is_none());
        match Law::parse("x1 = x2 y") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 9),
            other => panic!("unexpected {other:?}"),
        }
    }
}
