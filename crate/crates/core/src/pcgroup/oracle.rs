//! Independent multiplication by naive rewriting of words in the pc generators.
//!
//! Shares nothing with the collector except the presentation itself, so it is
//! used to cross-check collected products.

use crate::pcgroup::{Element, PcPresentation};

fn letters(x: &Element) -> Vec<usize> {
    x.0.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

/// Normal form of the word `x y` obtained by rewriting `g_j g_i -> g_i g_j [g_j, g_i]`
/// for `j > i` and `g_i^p -> (power word)`.
pub fn rewrite_product(pres: &PcPresentation, x: &Element, y: &Element) -> Element {
    let p = pres.prime() as usize;
    let mut todo: Vec<usize> = letters(x).into_iter().chain(letters(y)).rev().collect();
    let mut out: Vec<usize> = Vec::new();
    while let Some(g) = todo.pop() {
        match out.last() {
            Some(&j) if j > g => {
                out.pop();
                todo.extend(letters(pres.commutator(j, g)).into_iter().rev());
                todo.push(j);
                todo.push(g);
            }
            _ => {
                out.push(g);
                if out.len() >= p && out[out.len() - p..].iter().all(|&l| l == g) {
                    out.truncate(out.len() - p);
                    todo.extend(letters(pres.power(g)).into_iter().rev());
                }
            }
        }
    }
    let mut v = vec![0u32; pres.ngens()];
    for l in out {
        v[l] += 1;
    }
    Element(v)
}
