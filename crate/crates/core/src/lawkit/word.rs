use std::fmt;

use crate::{Error, Result};

/// Freely reduced word in the variables `x1 .. x{arity}`.
///
/// Letters are `(variable index from 0, +1 or -1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    arity: usize,
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn identity(arity: usize) -> Self {
        Word { arity, letters: Vec::new() }
    }

    pub fn var(i: usize, arity: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        Word { arity, letters: vec![(i, 1)] }
    }

    /// Freely reduces `letters`; arity grows to cover every variable used.
    pub fn from_letters(arity: usize, letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        let mut arity = arity;
        for (v, e) in letters {
            assert!(e == 1 || e == -1, "letter exponent must be +1 or -1");
            arity = arity.max(v + 1);
            match out.last() {
                Some(&(w, f)) if w == v && f == -e => {
                    out.pop();
                }
                _ => out.push((v, e)),
            }
        }
        Word { arity, letters: out }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// No inverted letters.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&(_, e)| e == 1)
    }

    pub fn with_arity(mut self, arity: usize) -> Self {
        self.arity = self.arity.max(arity);
        self
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(
            self.arity.max(other.arity),
            self.letters.iter().chain(&other.letters).copied(),
        )
    }

    pub fn inverse(&self) -> Word {
        Word {
            arity: self.arity,
            letters: self.letters.iter().rev().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.arity);
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    /// Replace variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        if images.len() < self.arity {
            return Err(Error::Arity { expected: self.arity, got: images.len() });
        }
        let arity = images.iter().map(Word::arity).max().unwrap_or(0);
        let mut out = Word::identity(arity);
        for &(v, e) in &self.letters {
            let img = if e == 1 { images[v].clone() } else { images[v].inverse() };
            out = out.mul(&img);
        }
        Ok(out)
    }

    /// Parse the word syntax: `x1 .. xN`, juxtaposition, `^k` with integer
    /// `k`, `[u, v, ...]` left-normed commutators, parentheses and `1`.
    pub fn parse(text: &str) -> Result<Word> {
        let mut p = Parser { chars: text.char_indices().collect(), pos: 0, text };
        let w = p.product()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    /// Letters grouped into powers, e.g. `x1^2 x2^-1`; `1` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let (v, e) = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == (v, e) {
                j += 1;
            }
            let k = (j - i) as i64 * e as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if k == 1 {
                write!(f, "x{}", v + 1)?;
            } else {
                write!(f, "x{}^{}", v + 1, k)?;
            }
            i = j;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        let column = self.chars.get(self.pos).map(|&(b, _)| self.text[..b].chars().count() + 1);
        Error::Parse {
            line: 1,
            column: column.unwrap_or(self.text.chars().count() + 1),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<Word> {
        let mut acc = Word::identity(0);
        loop {
            self.skip_ws();
            match self.peek() {
                Some('x') | Some('[') | Some('(') | Some('1') => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            if k.unsigned_abs() > 1 << 16 {
                return Err(self.error("exponent too large"));
            }
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Word> {
        self.skip_ws();
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
                match s.parse::<usize>() {
                    Ok(i) if i >= 1 => Ok(Word::var(i - 1, i)),
                    _ => {
                        self.pos = start;
                        Err(self.error("variables are x1, x2, ..."))
                    }
                }
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity(0))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut acc = self.product()?;
                let mut parts = 1;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            let next = self.product()?;
                            acc = Word::commutator(&acc, &next);
                            parts += 1;
                        }
                        Some(']') if parts >= 2 => {
                            self.pos += 1;
                            return Ok(acc);
                        }
                        _ => return Err(self.error("expected ',' or ']' in commutator")),
                    }
                }
            }
            _ => Err(self.error("expected a variable, '[', '(' or '1'")),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_commutator_expands() {
        let w = Word::parse("[x1,x2]").unwrap();
        assert_eq!(w.to_string(), "x1^-1 x2^-1 x1 x2");
        assert_eq!(w.arity(), 2);
    }

    #[test]
    fn parse_powers_and_reduction() {
        assert_eq!(Word::parse("x1^3").unwrap().len(), 3);
        assert!(Word::parse("x1 x1^-1").unwrap().is_empty());
        assert_eq!(Word::parse("x2^-2").unwrap().to_string(), "x2^-2");
    }

    #[test]
    fn left_normed_triple() {
        let a = Word::parse("[x1,x2,x3]").unwrap();
        let b = Word::parse("[[x1,x2],x3]").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_have_columns() {
        match Word::parse("x1 y2") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Word::parse("[x1]").is_err());
        assert!(Word::parse("x0").is_err());
    }

    #[test]
    fn display_roundtrip() {
        let w = Word::parse("x1 x2^-1 x2^-1 [x3,x1]").unwrap();
        assert_eq!(Word::parse(&w.to_string()).unwrap(), w);
    }
}
