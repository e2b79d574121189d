//! Supercommutators and their variable bookkeeping.
//!
//! A supercommutator is built from variables and constants using only
//! inversion and commutator brackets. Engel brackets are sugar for nested
//! commutators and are unfolded before any analysis here.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ast::Word;

/// Whether `w` (with Engel nodes unfolded) is a supercommutator.
pub fn is_supercommutator(w: &Word) -> bool {
    fn go(w: &Word) -> bool {
        match w {
            Word::Var(_) | Word::Const(_) | Word::Identity => true,
            Word::Inv(a) => go(a),
            Word::Comm(a, b) => go(a) && go(b),
            Word::Prod(..) | Word::Pow(..) | Word::Conj(..) | Word::Engel(..) => false,
        }
    }
    go(&w.expand_engel())
}

/// Variable sets and counts of a word relative to a designated tuple `x̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarProfile {
    pub all_vars: BTreeSet<usize>,
    pub vars_in_xbar: BTreeSet<usize>,
    pub vars_outside_xbar: BTreeSet<usize>,
    /// `var(v)`
    pub var: usize,
    /// `var_x̄(v)`
    pub var_x: usize,
    /// `var′_x̄(v)`
    pub var_prime_x: usize,
}

pub fn var_profile(w: &Word, xbar: &BTreeSet<usize>) -> VarProfile {
    let all_vars = w.vars();
    let vars_in_xbar: BTreeSet<usize> = all_vars.intersection(xbar).copied().collect();
    let vars_outside_xbar: BTreeSet<usize> = all_vars.difference(xbar).copied().collect();
    VarProfile {
        var: all_vars.len(),
        var_x: vars_in_xbar.len(),
        var_prime_x: vars_outside_xbar.len(),
        all_vars,
        vars_in_xbar,
        vars_outside_xbar,
    }
}

/// Structurally trivial words: `1`, `[u,u]`, `[u,u⁻¹]`, and words built
/// from those by inversion and bracketing.
pub fn is_trivially_identity(w: &Word) -> bool {
    match w {
        Word::Identity => true,
        Word::Inv(a) => is_trivially_identity(a),
        Word::Comm(a, b) => {
            is_trivially_identity(a) || is_trivially_identity(b) || a == b || **a == b.inverse()
        }
        Word::Pow(a, k) => *k == 0 || is_trivially_identity(a),
        _ => false,
    }
}

/// The (†) condition for a factor `w` of the linearization of `v`:
/// `Var_z̄(w) = Var_z̄(v)`, every `x_i ∈ Var(v)` is represented in `w` by
/// `x_i` or `y_i`, and `w` contains at least one `x_i` and one `y_j`.
pub fn satisfies_dagger(w: &Word, v: &Word, xs: &[usize], ys: &[usize], zs: &[usize]) -> bool {
    let wv = w.vars();
    let vv = v.vars();
    let z: BTreeSet<usize> = zs.iter().copied().collect();
    let wz: BTreeSet<_> = wv.intersection(&z).collect();
    let vz: BTreeSet<_> = vv.intersection(&z).collect();
    if wz != vz {
        return false;
    }
    let mut has_x = false;
    let mut has_y = false;
    for (&x, &y) in xs.iter().zip(ys) {
        let (wx, wy) = (wv.contains(&x), wv.contains(&y));
        if vv.contains(&x) && !(wx || wy) {
            return false;
        }
        has_x |= wx;
        has_y |= wy;
    }
    has_x && has_y && wv.iter().all(|i| xs.contains(i) || ys.contains(i) || z.contains(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn xbar(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn recognition() {
        assert!(is_supercommutator(&parse_word("[x1,[g,x2]]").unwrap()));
        assert!(is_supercommutator(&parse_word("[x1^-1,x2]^-1").unwrap()));
        assert!(is_supercommutator(&parse_word("[x1,x2;3]").unwrap()));
        assert!(!is_supercommutator(&parse_word("x1*x2").unwrap()));
        assert!(!is_supercommutator(&parse_word("x1^2").unwrap()));
        assert!(!is_supercommutator(&parse_word("x1^x2").unwrap()));
    }

    #[test]
    fn profiles() {
        let p = var_profile(&parse_word("[x1,[g,x2]]").unwrap(), &BTreeSet::new());
        assert_eq!(p.var, 2);
        let p = var_profile(&parse_word("[x1,[x2,x3]]").unwrap(), &xbar(&[0]));
        assert_eq!((p.var_x, p.var_prime_x), (1, 2));
        assert_eq!(p.vars_outside_xbar, xbar(&[1, 2]));
        let p = var_profile(&parse_word("[x1^-1,x1]").unwrap(), &xbar(&[0]));
        assert_eq!((p.var, p.var_x, p.var_prime_x), (1, 1, 0));
    }

    #[test]
    fn dagger() {
        let v = parse_word("[x1,x3]").unwrap();
        // x̄ = (x1), ȳ = (x2), z̄ = (x3)
        let ok = parse_word("[[x2,x3],x1]").unwrap();
        assert!(satisfies_dagger(&ok, &v, &[0], &[1], &[2]));
        let no_z = parse_word("[x2,x1]").unwrap();
        assert!(!satisfies_dagger(&no_z, &v, &[0], &[1], &[2]));
        let no_y = parse_word("[x1,x3]").unwrap();
        assert!(!satisfies_dagger(&no_y, &v, &[0], &[1], &[2]));
    }

    #[test]
    fn trivial_words() {
        assert!(is_trivially_identity(&parse_word("[x1,x1]").unwrap()));
        assert!(is_trivially_identity(&parse_word("[x1,x1^-1]").unwrap()));
        assert!(is_trivially_identity(&parse_word("[[x1,x1],x2]").unwrap()));
        assert!(!is_trivially_identity(&parse_word("[x1,x2]").unwrap()));
    }
}
