//! Minimal centralizer witnesses for the iterated central quotients.

use serde::Serialize;

use super::{center, centralizer_of, quotient, upper_central_series, Group};
use crate::error::{Error, Result};

/// Cap on subsets examined per quotient.
pub const MC_SEARCH_CAP: u64 = 2_000_000;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct McWitness {
    pub class_bound: usize,
    /// Entry `i` lists elements of `G/Z_i(G)` (quotient indices).
    pub witness_sets: Vec<Vec<usize>>,
    /// Largest witness size.
    pub s: usize,
}

/// For each `i < k`, a minimum-size `A_i ⊆ G/Z_i(G)` whose centralizer is
/// the center of `G/Z_i(G)`.
pub fn mc_witness(g: &Group, k: usize) -> Result<McWitness> {
    if k == 0 {
        return Err(Error::Invalid("mc_witness needs k ≥ 1".into()));
    }
    let upper = upper_central_series(g);
    let mut witness_sets = vec![];
    for i in 0..k {
        let zi = &upper[i.min(upper.len() - 1)];
        let (q, _) = quotient(g, zi)?;
        witness_sets.push(minimal_witness(&q, MC_SEARCH_CAP)?);
    }
    let s = witness_sets.iter().map(Vec::len).max().unwrap_or(0);
    Ok(McWitness { class_bound: k, witness_sets, s })
}

/// Minimum-cardinality `A` with `C(A) = Z(G)`, searched in size order then
/// lexicographically. Central elements never help, so only non-central
/// elements are tried.
pub fn minimal_witness(g: &Group, cap: u64) -> Result<Vec<usize>> {
    let z = center(g);
    let candidates: Vec<usize> = (0..g.order()).filter(|&x| !z.contains(x)).collect();
    let cents: Vec<_> = candidates.iter().map(|&x| centralizer_of(g, x)).collect();
    let mut examined = 0u64;
    for size in 0..=candidates.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            examined += 1;
            if examined > cap {
                return Err(Error::OrderBound { what: "Mc witness subsets", needed: examined as u128, limit: cap as u128 });
            }
            let mut c = g.full();
            for &i in &idx {
                c.intersect_with(&cents[i]);
            }
            if c == z {
                return Ok(idx.iter().map(|&i| candidates[i]).collect());
            }
            // next combination
            let n = candidates.len();
            let mut pos = size;
            while pos > 0 && idx[pos - 1] == n - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for j in pos..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("all non-central elements together centralize only the center")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::group::{centralizer, quotient, upper_central_series};
    use crate::subset::Subset;

    #[test]
    fn abelian_has_empty_witness() {
        let w = mc_witness(&catalog("C6").unwrap(), 1).unwrap();
        assert_eq!(w.s, 0);
        assert_eq!(w.witness_sets, vec![Vec::<usize>::new()]);
    }

    #[test]
    fn s3_needs_two() {
        assert_eq!(mc_witness(&catalog("S3").unwrap(), 1).unwrap().s, 2);
    }

    #[test]
    fn d4_witnesses_verify() {
        let d4 = catalog("D4").unwrap();
        let w = mc_witness(&d4, 2).unwrap();
        assert!(w.s <= 2);
        let upper = upper_central_series(&d4);
        for (i, a) in w.witness_sets.iter().enumerate() {
            let (q, _) = quotient(&d4, &upper[i]).unwrap();
            let set = Subset::from_indices(q.order(), a.iter().copied());
            assert_eq!(centralizer(&q, &set), center(&q));
        }
        // G/Z(D4) is abelian, so the second witness is empty.
        assert!(w.witness_sets[1].is_empty());
    }

    #[test]
    fn minimality_is_exhaustive() {
        for spec in ["S3", "D4", "Q8", "A4", "D6", "S4"] {
            let g = catalog(spec).unwrap();
            let a = minimal_witness(&g, MC_SEARCH_CAP).unwrap();
            if a.is_empty() {
                continue;
            }
            let z = center(&g);
            // no smaller subset of non-central elements works
            let non_central: Vec<usize> = (0..g.order()).filter(|&x| !z.contains(x)).collect();
            let smaller = a.len() - 1;
            let mut ok = true;
            let mut stack = vec![(0usize, vec![])];
            while let Some((start, cur)) = stack.pop() {
                if cur.len() == smaller {
                    let s = Subset::from_indices(g.order(), cur.iter().copied());
                    if centralizer(&g, &s) == z {
                        ok = false;
                    }
                    continue;
                }
                for i in start..non_central.len() {
                    let mut next = cur.clone();
                    next.push(non_central[i]);
                    stack.push((i + 1, next));
                }
            }
            assert!(ok, "{spec}");
        }
    }
}
