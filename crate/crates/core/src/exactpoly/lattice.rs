//! Integer lattices: incremental Hermite-style echelon form with transforms,
//! and Smith diagonalization. Everything is fraction-free.

use crate::scalar::{ext_gcd, IntegerScalar};

#[derive(Clone, Debug)]
struct Row<T> {
    pivot: usize,
    vec: Vec<T>,
    /// coefficients of this row in terms of the inserted generators
    combo: Vec<T>,
}

/// Echelon basis of the Z-span of inserted vectors, each basis row carrying
/// its expression as an integer combination of the inserted generators.
#[derive(Clone, Debug)]
pub struct EchelonLattice<T> {
    dim: usize,
    ngens: usize,
    rows: Vec<Row<T>>,
}

/// Result of [`EchelonLattice::min_multiple`]: `q * target = sum combo[i] * gen[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeWitness<T> {
    pub q: T,
    pub combo: Vec<T>,
}

fn first_nonzero<T: IntegerScalar>(v: &[T]) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

fn axpy<T: IntegerScalar>(dst: &mut [T], a: &T, src: &[T]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.clone() + a.clone() * s.clone();
        }
    }
}

impl<T: IntegerScalar> EchelonLattice<T> {
    /// Lattice in `Z^dim` spanned by `ngens` generators, inserted in order.
    pub fn new(dim: usize, ngens: usize) -> Self {
        Self { dim, ngens, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<(usize, T)> {
        self.rows.iter().map(|r| (r.pivot, r.vec[r.pivot].clone())).collect()
    }

    /// Insert generator number `index`.
    pub fn insert(&mut self, index: usize, vec: Vec<T>) {
        assert_eq!(vec.len(), self.dim);
        assert!(index < self.ngens);
        let mut combo = vec![T::zero(); self.ngens];
        combo[index] = T::one();
        let mut v = vec;
        loop {
            let Some(col) = first_nonzero(&v) else { return };
            match self.rows.binary_search_by_key(&col, |r| r.pivot) {
                Err(pos) => {
                    if v[col].is_negative() {
                        v.iter_mut().for_each(|c| *c = -c.clone());
                        combo.iter_mut().for_each(|c| *c = -c.clone());
                    }
                    self.rows.insert(pos, Row { pivot: col, vec: v, combo });
                    return;
                }
                Ok(pos) => {
                    let row = &mut self.rows[pos];
                    let a = row.vec[col].clone();
                    let b = v[col].clone();
                    if b.is_multiple_of(&a) {
                        let q = -(b / a);
                        axpy(&mut v, &q, &row.vec);
                        axpy(&mut combo, &q, &row.combo);
                        continue;
                    }
                    // [row'; v'] = [[x, y], [b/g, -a/g]] [row; v], determinant -1
                    let (g, x, y) = ext_gcd(&a, &b);
                    let (bg, ag) = (b / g.clone(), a / g);
                    let new_vec: Vec<T> = row
                        .vec
                        .iter()
                        .zip(&v)
                        .map(|(r, s)| x.clone() * r.clone() + y.clone() * s.clone())
                        .collect();
                    let new_combo: Vec<T> = row
                        .combo
                        .iter()
                        .zip(&combo)
                        .map(|(r, s)| x.clone() * r.clone() + y.clone() * s.clone())
                        .collect();
                    let rest_vec: Vec<T> = row
                        .vec
                        .iter()
                        .zip(&v)
                        .map(|(r, s)| bg.clone() * r.clone() - ag.clone() * s.clone())
                        .collect();
                    let rest_combo: Vec<T> = row
                        .combo
                        .iter()
                        .zip(&combo)
                        .map(|(r, s)| bg.clone() * r.clone() - ag.clone() * s.clone())
                        .collect();
                    row.vec = new_vec;
                    row.combo = new_combo;
                    v = rest_vec;
                    combo = rest_combo;
                }
            }
        }
    }

    /// Least `q > 0` with `q * target` in the lattice, together with the
    /// generator combination. `None` when `target` is outside the rational span.
    pub fn min_multiple(&self, target: &[T]) -> Option<LatticeWitness<T>> {
        assert_eq!(target.len(), self.dim);
        let mut t = target.to_vec();
        let mut q = T::one();
        let mut combo = vec![T::zero(); self.ngens];
        let mut next_row = 0;
        while let Some(col) = first_nonzero(&t) {
            while next_row < self.rows.len() && self.rows[next_row].pivot < col {
                next_row += 1;
            }
            let row = self.rows.get(next_row).filter(|r| r.pivot == col)?;
            let piv = row.vec[col].clone();
            let val = t[col].clone();
            let scale = piv.clone() / val.gcd(&piv);
            if !scale.is_one() {
                t.iter_mut().for_each(|c| *c = c.clone() * scale.clone());
                combo.iter_mut().for_each(|c| *c = c.clone() * scale.clone());
                q = q * scale;
            }
            let coef = t[col].clone() / piv;
            axpy(&mut t, &-coef.clone(), &row.vec);
            axpy(&mut combo, &coef, &row.combo);
        }
        Some(LatticeWitness { q, combo })
    }
}

/// Diagonal form `U * R * V = D` of an integer matrix (rows of `R` span a lattice).
///
/// Returns the diagonal entries (nonnegative), `V` and `V^{-1}`; `U` is not
/// needed by callers. Square input only.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub diagonal: Vec<T>,
    pub v: Vec<Vec<T>>,
    pub v_inv: Vec<Vec<T>>,
}

pub fn smith_diagonalize<T: IntegerScalar>(mat: &[Vec<T>]) -> SmithForm<T> {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "square matrix expected");
    let mut a: Vec<Vec<T>> = mat.to_vec();
    let ident = |n: usize| -> Vec<Vec<T>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect()
    };
    let mut v = ident(n);
    let mut v_inv = ident(n);

    // column op: col_j += k * col_i  (V := V * E, V^{-1} := E^{-1} * V^{-1})
    fn col_add<T: IntegerScalar>(
        a: &mut [Vec<T>],
        v: &mut [Vec<T>],
        v_inv: &mut [Vec<T>],
        j: usize,
        i: usize,
        k: &T,
    ) {
        for row in a.iter_mut().chain(v.iter_mut()) {
            let add = row[i].clone() * k.clone();
            row[j] = row[j].clone() + add;
        }
        // inverse: row_i -= k * row_j
        let rj = v_inv[j].clone();
        for (c, x) in v_inv[i].iter_mut().zip(rj) {
            *c = c.clone() - k.clone() * x;
        }
    }
    fn col_swap<T: IntegerScalar>(a: &mut [Vec<T>], v: &mut [Vec<T>], v_inv: &mut [Vec<T>], i: usize, j: usize) {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }
    fn col_neg<T: IntegerScalar>(a: &mut [Vec<T>], v: &mut [Vec<T>], v_inv: &mut [Vec<T>], i: usize) {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row[i] = -row[i].clone();
        }
        v_inv[i].iter_mut().for_each(|c| *c = -c.clone());
    }

    for t in 0..n {
        loop {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if !a[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            col_swap(&mut a, &mut v, &mut v_inv, t, bj);
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_floor(&piv);
                if !q.is_zero() {
                    let rt = a[t].clone();
                    for (c, x) in a[i].iter_mut().zip(rt) {
                        *c = c.clone() - q.clone() * x;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n {
                let q = a[t][j].div_floor(&piv);
                if !q.is_zero() {
                    col_add(&mut a, &mut v, &mut v_inv, j, t, &-q);
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[t][t].is_negative() {
            col_neg(&mut a, &mut v, &mut v_inv, t);
        }
    }
    SmithForm { diagonal: (0..n).map(|i| a[i][i].clone()).collect(), v, v_inv }
}
