use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::IntPoly;

/// Endomorphism of `Z/d_1 x ... x Z/d_r` acting on row vectors:
/// row `j` is the image of the `j`-th basis element, column `c` is read mod `d_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionEndomorphism {
    moduli: Vec<u64>,
    rows: Vec<Vec<u64>>,
}

impl SectionEndomorphism {
    /// Reduces entries; `None` if the matrix does not define a homomorphism
    /// (`d_j * m[j][c]` must vanish mod `d_c`).
    pub fn new(moduli: Vec<u64>, rows: Vec<Vec<u64>>) -> Option<Self> {
        let r = moduli.len();
        if rows.len() != r || rows.iter().any(|row| row.len() != r) {
            return None;
        }
        let rows: Vec<Vec<u64>> =
            rows.into_iter().map(|row| row.iter().zip(&moduli).map(|(x, d)| x % d).collect()).collect();
        for (j, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if !(moduli[j] as u128 * x as u128).is_multiple_of(moduli[c] as u128) {
                    return None;
                }
            }
        }
        Some(SectionEndomorphism { moduli, rows })
    }

    pub fn zero(moduli: &[u64]) -> Self {
        let r = moduli.len();
        SectionEndomorphism { moduli: moduli.to_vec(), rows: vec![vec![0; r]; r] }
    }

    pub fn identity(moduli: &[u64]) -> Self {
        let mut e = Self::zero(moduli);
        for j in 0..moduli.len() {
            e.rows[j][j] = 1 % moduli[j];
        }
        e
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&x| x == 0))
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, y: &[u64]) -> Vec<u64> {
        (0..self.moduli.len())
            .map(|c| {
                let d = self.moduli[c] as u128;
                y.iter().zip(&self.rows).fold(0u128, |acc, (&yj, row)| (acc + yj as u128 * row[c] as u128) % d)
                    as u64
            })
            .collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        SectionEndomorphism {
            moduli: self.moduli.clone(),
            rows: self.rows.iter().map(|row| other.apply(row)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b, d| (a + b) % d)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b, d| (a + d - b) % d)
    }

    fn combine(&self, other: &Self, op: impl Fn(u64, u64, u64) -> u64) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(r1, r2)| (0..r1.len()).map(|c| op(r1[c], r2[c], self.moduli[c])).collect())
            .collect();
        SectionEndomorphism { moduli: self.moduli.clone(), rows }
    }

    /// Multiplication by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.moduli)
                    .map(|(&x, &d)| {
                        let km = k.mod_floor(&BigInt::from(d)).to_u64().expect("reduced");
                        ((x as u128 * km as u128) % d as u128) as u64
                    })
                    .collect()
            })
            .collect();
        SectionEndomorphism { moduli: self.moduli.clone(), rows }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(&self.moduli);
        for _ in 0..e {
            acc = acc.then(self);
        }
        acc
    }

    /// `P(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        let mut acc = Self::zero(&self.moduli);
        let id = Self::identity(&self.moduli);
        for c in p.coeffs().iter().rev() {
            acc = acc.then(self).add(&id.scale(c));
        }
        acc
    }

    /// First basis index whose image is not divisible by `p^e` (componentwise
    /// `min(p^e, d_c)` divides the entry), scaled by `p^pre` first.
    pub fn first_outside_power(&self, p: u64, pre: u32, e: u32) -> Option<usize> {
        let scale = BigInt::from(p).pow(pre);
        let scaled = self.scale(&scale);
        (0..self.rows.len()).find(|&j| !in_power(&scaled.rows[j], &self.moduli, p, e))
    }
}

/// `y in p^e A` for `A = Z/d_1 x ... x Z/d_r`.
pub fn in_power(y: &[u64], moduli: &[u64], p: u64, e: u32) -> bool {
    y.iter().zip(moduli).all(|(&x, &d)| {
        let pe = p.checked_pow(e).unwrap_or(u64::MAX);
        x % pe.min(d) == 0
    })
}
