//! Linearization of supercommutators under the substitution `x_i ↦ y_i x_i`.
//!
//! `v(ȳ·x̄, z̄)` is expanded into a product of supercommutators by pushing
//! the substitution to the leaves (`y_i x_i` becomes the two factors
//! `y_i, x_i`) and distributing brackets over products with
//!
//! ```text
//! [a·A, B] = [a,B]^A · [A,B]        [a, b·B] = [a,B] · [a,b]^B
//! u^c = u·[u,c]
//! ```
//!
//! The factors `v(x̄)` and `v(ȳ)` then appear verbatim in the expansion and
//! are moved to the front with `P·a = a·Πp[p,a]`. Every other factor
//! mixes `x̄` and `ȳ` variables. Only free-group identities are used, so the
//! result holds in every group.

use std::collections::BTreeSet;

use super::ast::Word;
use super::supercomm::{is_supercommutator, is_trivially_identity, satisfies_dagger, var_profile};
use crate::error::{Error, Result};

/// Upper bound on the number of factors materialized during expansion.
pub const LINEARIZE_FACTOR_CAP: usize = 1 << 18;

/// `v(ȳ·x̄, z̄) = v_x · v_y · Π phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linearization {
    pub v_x: Word,
    pub v_y: Word,
    pub phi: Vec<Word>,
}

/// `Π w(ȳ·x̄, z̄) = Π w_x · Π w_y · Π phi` for a product of supercommutators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductLinearization {
    pub w_x: Vec<Word>,
    pub w_y: Vec<Word>,
    pub phi: Vec<Word>,
}

struct Expander<'a> {
    xs: &'a [usize],
    ys: &'a [usize],
    size: usize,
}

impl Expander<'_> {
    fn grow(&mut self, by: usize) -> Result<()> {
        self.size += by;
        self.check(self.size)
    }

    fn check(&self, len: usize) -> Result<()> {
        if len > LINEARIZE_FACTOR_CAP {
            return Err(Error::Budget(LINEARIZE_FACTOR_CAP as u64));
        }
        Ok(())
    }

    fn expand(&mut self, v: &Word) -> Result<Vec<Word>> {
        Ok(match v {
            Word::Identity => vec![],
            Word::Var(i) => match self.xs.iter().position(|x| x == i) {
                Some(k) => vec![Word::Var(self.ys[k]), v.clone()],
                None => vec![v.clone()],
            },
            Word::Const(_) => vec![v.clone()],
            Word::Inv(a) => self.expand(a)?.iter().rev().map(Word::inverse).collect(),
            Word::Comm(a, b) => {
                let (a, b) = (self.expand(a)?, self.expand(b)?);
                self.bracket(&a, &b)?
            }
            _ => return Err(Error::NotASupercommutator(v.to_string())),
        })
    }

    /// `[ΠA, ΠB]` as a list of supercommutators.
    fn bracket(&mut self, a: &[Word], b: &[Word]) -> Result<Vec<Word>> {
        let mut out = vec![];
        // [a_0 a_1 …, B] = Π_i [a_i, B]^{a_{i+1} …}
        for (i, ai) in a.iter().enumerate() {
            let inner = self.bracket_left_atom(ai, b)?;
            out.extend(self.conj_by(inner, &a[i + 1..])?);
            self.check(out.len())?;
        }
        Ok(out)
    }

    /// `[a, b_0 b_1 … b_m] = Π_{j=m..0} [a, b_j]^{b_{j+1} …}`
    fn bracket_left_atom(&mut self, a: &Word, b: &[Word]) -> Result<Vec<Word>> {
        let mut out = vec![];
        for j in (0..b.len()).rev() {
            let c = simple_comm(a, &b[j]).into_iter().collect();
            out.extend(self.conj_by(c, &b[j + 1..])?);
            self.check(out.len())?;
        }
        Ok(out)
    }

    /// `(Πu)^{Πc}` through `u^c = u[u,c]`, one conjugator at a time.
    fn conj_by(&mut self, mut u: Vec<Word>, by: &[Word]) -> Result<Vec<Word>> {
        for c in by {
            let mut next = Vec::with_capacity(u.len() * 2);
            for w in u {
                let extra = simple_comm(&w, c);
                next.push(w);
                next.extend(extra);
            }
            self.grow(next.len())?;
            u = next;
        }
        Ok(u)
    }
}

/// `[a,b]`, or nothing when it is structurally trivial.
fn simple_comm(a: &Word, b: &Word) -> Option<Word> {
    let c = Word::comm(a.clone(), b.clone());
    (!is_trivially_identity(&c)).then_some(c)
}

/// Move the first occurrence of `target` at or after `from` to position
/// `from`, using `P·a = a·Πp[p,a]`.
fn move_to(list: &mut Vec<Word>, target: &Word, from: usize) -> Result<()> {
    if is_trivially_identity(target) {
        return Ok(());
    }
    let k = list[from..]
        .iter()
        .position(|w| w == target)
        .map(|k| k + from)
        .ok_or_else(|| Error::Invalid(format!("factor {target} missing from expansion")))?;
    if list.len() + (k - from) > LINEARIZE_FACTOR_CAP {
        return Err(Error::Budget(LINEARIZE_FACTOR_CAP as u64));
    }
    let moved: Vec<Word> = list.drain(from..k).collect();
    let a = list.remove(from);
    let mut tail = vec![a.clone()];
    for p in moved {
        let extra = simple_comm(&p, &a);
        tail.push(p);
        tail.extend(extra);
    }
    list.splice(from..from, tail);
    Ok(())
}

/// Cancel adjacent `w·w⁻¹` pairs.
fn free_reduce(list: Vec<Word>) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::with_capacity(list.len());
    for w in list {
        if out.last().is_some_and(|l| *l == w.inverse()) {
            out.pop();
        } else {
            out.push(w);
        }
    }
    out
}

fn check_tuples(xs: &[usize], ys: &[usize], zs: &[usize]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::PreconditionViolated("x̄ and ȳ differ in length".into()));
    }
    let mut seen = BTreeSet::new();
    for &i in xs.iter().chain(ys).chain(zs) {
        if !seen.insert(i) {
            return Err(Error::PreconditionViolated(format!("variable x{} occurs in two tuples", i + 1)));
        }
    }
    Ok(())
}

fn check_vars(v: &Word, xs: &[usize], zs: &[usize]) -> Result<()> {
    if let Some(i) = v.vars().into_iter().find(|i| !xs.contains(i) && !zs.contains(i)) {
        return Err(Error::PreconditionViolated(format!("x{} is in neither x̄ nor z̄", i + 1)));
    }
    if !v.vars().iter().any(|i| xs.contains(i)) {
        return Err(Error::NoXVariable);
    }
    Ok(())
}

fn to_y(v: &Word, xs: &[usize], ys: &[usize]) -> Word {
    v.rename(&|i| xs.iter().position(|&x| x == i).map_or(i, |k| ys[k]))
}

/// Linearize a single supercommutator. `xs[i]` is paired with `ys[i]`.
pub fn linearize(v: &Word, xs: &[usize], ys: &[usize], zs: &[usize]) -> Result<Linearization> {
    if !is_supercommutator(v) {
        return Err(Error::NotASupercommutator(v.to_string()));
    }
    check_tuples(xs, ys, zs)?;
    let v = v.expand_engel();
    check_vars(&v, xs, zs)?;
    let mut ex = Expander { xs, ys, size: 0 };
    let mut list = ex.expand(&v)?;
    let v_y = to_y(&v, xs, ys);
    move_to(&mut list, &v, 0)?;
    let second = usize::from(!is_trivially_identity(&v));
    move_to(&mut list, &v_y, second)?;
    let skip = second + usize::from(!is_trivially_identity(&v_y));
    let phi = free_reduce(list.split_off(skip));
    Ok(Linearization { v_x: v, v_y, phi })
}

/// Linearize a product of supercommutators, each with `var_x̄ > 0` and
/// `var′_x̄ ≥ n`. Every returned `Φ` factor has `var′_x̄ > n`.
pub fn linearize_product(
    factors: &[Word],
    xs: &[usize],
    ys: &[usize],
    zs: &[usize],
    n: usize,
) -> Result<ProductLinearization> {
    check_tuples(xs, ys, zs)?;
    let xbar: BTreeSet<usize> = xs.iter().copied().collect();
    for w in factors {
        let p = var_profile(w, &xbar);
        if p.var_x == 0 || p.var_prime_x < n {
            return Err(Error::PreconditionViolated(format!(
                "factor {w} has var_x̄ = {}, var′_x̄ = {} (need > 0 and ≥ {n})",
                p.var_x, p.var_prime_x
            )));
        }
    }
    let parts: Vec<Linearization> = factors.iter().map(|w| linearize(w, xs, ys, zs)).collect::<Result<_>>()?;
    let mut list = vec![];
    for l in &parts {
        list.push(l.v_x.clone());
        list.push(l.v_y.clone());
        list.extend(l.phi.iter().cloned());
    }
    let mut pos = 0;
    let targets = parts.iter().map(|l| &l.v_x).chain(parts.iter().map(|l| &l.v_y));
    for t in targets {
        if !is_trivially_identity(t) {
            move_to(&mut list, t, pos)?;
            pos += 1;
        }
    }
    let phi = free_reduce(list.split_off(pos));
    for w in &phi {
        let p = var_profile(w, &xbar);
        debug_assert!(p.var_x > 0 && p.var_prime_x > n, "{w}");
        if !(p.var_x > 0 && p.var_prime_x > n) {
            return Err(Error::Invalid(format!("factor {w} breaks the variable bound")));
        }
    }
    let keep = |v: &Word| !is_trivially_identity(v);
    Ok(ProductLinearization {
        w_x: parts.iter().map(|l| l.v_x.clone()).filter(keep).collect(),
        w_y: parts.iter().map(|l| l.v_y.clone()).filter(keep).collect(),
        phi,
    })
}

impl Linearization {
    /// Right-hand side `v_x · v_y · Π phi` as a factor list.
    pub fn rhs_factors(&self) -> Vec<Word> {
        let mut out = vec![self.v_x.clone(), self.v_y.clone()];
        out.extend(self.phi.iter().cloned());
        out
    }

    /// Every `Φ` factor satisfies (†) relative to `v`.
    pub fn check_dagger(&self, xs: &[usize], ys: &[usize], zs: &[usize]) -> bool {
        self.phi.iter().all(|w| is_supercommutator(w) && satisfies_dagger(w, &self.v_x, xs, ys, zs))
    }
}

/// `v` with every `x_i` replaced by `y_i x_i`.
pub fn substituted(v: &Word, xs: &[usize], ys: &[usize]) -> Word {
    v.substitute(&|i| match xs.iter().position(|&x| x == i) {
        Some(k) => Word::Var(ys[k]).mul(Word::Var(i)),
        None => Word::Var(i),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::group::Group;
    use crate::word::{parse_word, Bindings, Compiled};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn product_value(g: &Group, ws: &[Word], a: &[usize]) -> usize {
        let none = Bindings::new();
        ws.iter().fold(g.identity(), |acc, f| g.mul(acc, Compiled::new(g, f, &none).unwrap().eval(g, a)))
    }

    fn check_identity(g: &Group, lhs: &Word, rhs: &[Word], arity: usize, trials: usize, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let none = Bindings::new();
        let l = Compiled::new(g, lhs, &none).unwrap();
        let r: Vec<Compiled> = rhs.iter().map(|f| Compiled::new(g, f, &none).unwrap()).collect();
        for _ in 0..trials {
            let a: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..g.order())).collect();
            let right = r.iter().fold(g.identity(), |acc, c| g.mul(acc, c.eval(g, &a)));
            assert_eq!(l.eval(g, &a), right, "{lhs} in {}", g.label());
        }
    }

    #[test]
    fn single_variable() {
        let l = linearize(&w("x1"), &[0], &[1], &[]).unwrap();
        assert_eq!(l.phi, vec![w("[x2,x1]")]);
        let l = linearize(&w("x1^-1"), &[0], &[1], &[]).unwrap();
        assert!(l.phi.is_empty());
        assert_eq!((l.v_x, l.v_y), (w("x1^-1"), w("x2^-1")));
    }

    #[test]
    fn errors() {
        assert!(matches!(linearize(&w("x1*x2"), &[0], &[2], &[1]), Err(Error::NotASupercommutator(_))));
        assert!(matches!(linearize(&w("[x2,g]"), &[0], &[2], &[1]), Err(Error::NoXVariable)));
        assert!(linearize(&w("[x1,x2]"), &[0], &[1], &[]).is_err());
    }

    #[test]
    fn commutator_identity_in_small_groups() {
        let v = w("[x1,x2]");
        let (xs, ys) = ([0, 1], [2, 3]);
        let l = linearize(&v, &xs, &ys, &[]).unwrap();
        assert!(l.check_dagger(&xs, &ys, &[]));
        for spec in ["D4", "S3"] {
            let g = catalog(spec).unwrap();
            check_identity(&g, &substituted(&v, &xs, &ys), &l.rhs_factors(), 4, 200, 1);
        }
    }

    #[test]
    fn mixed_tuples_and_constants() {
        let g = catalog("H3").unwrap();
        let cases = [("[[x1,g],x2]", vec![0], vec![3], vec![1]), ("[x1^-1,[x2,x3]]", vec![0, 2], vec![3, 4], vec![1])];
        let b = Bindings::from([("g".to_string(), 5)]);
        for (text, xs, ys, zs) in cases {
            let v = w(text);
            let l = linearize(&v, &xs, &ys, &zs).unwrap();
            assert!(l.check_dagger(&xs, &ys, &zs), "{text}");
            let lhs = Compiled::new(&g, &substituted(&v, &xs, &ys), &b).unwrap();
            let rhs: Vec<_> = l.rhs_factors().iter().map(|f| Compiled::new(&g, f, &b).unwrap()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..200 {
                let a: Vec<usize> = (0..5).map(|_| rng.gen_range(0..27)).collect();
                let r = rhs.iter().fold(g.identity(), |acc, c| g.mul(acc, c.eval(&g, &a)));
                assert_eq!(lhs.eval(&g, &a), r, "{text}");
            }
        }
    }

    #[test]
    fn product_two_factors() {
        // factors ([x1,z1],[x2,z1]) with x̄ = (x1,x2), z̄ = (z1), n = 1
        let (xs, ys, zs) = ([0, 1], [3, 4], [2]);
        let factors = [w("[x1,x3]"), w("[x2,x3]")];
        let p = linearize_product(&factors, &xs, &ys, &zs, 1).unwrap();
        let xbar: BTreeSet<usize> = xs.iter().copied().collect();
        assert!(!p.phi.is_empty());
        for f in &p.phi {
            assert!(var_profile(f, &xbar).var_prime_x >= 2, "{f}");
        }
        let g = catalog("H3").unwrap();
        let lhs = Word::product(factors.iter().map(|f| substituted(f, &xs, &ys)));
        let mut rhs = p.w_x.clone();
        rhs.extend(p.w_y.iter().cloned());
        rhs.extend(p.phi.iter().cloned());
        check_identity(&g, &lhs, &rhs, 5, 200, 9);
        assert!(linearize_product(&factors, &xs, &ys, &zs, 2).is_err());
    }

    #[test]
    fn product_of_one_matches_single() {
        let v = w("[x1,[x2,x3]]");
        let (xs, ys, zs) = ([0], [3], [1, 2]);
        let single = linearize(&v, &xs, &ys, &zs).unwrap();
        let p = linearize_product(std::slice::from_ref(&v), &xs, &ys, &zs, 2).unwrap();
        assert_eq!(p.w_x, vec![single.v_x.clone()]);
        assert_eq!(p.w_y, vec![single.v_y.clone()]);
        assert_eq!(p.phi, single.phi);
        let g = catalog("S4").unwrap();
        let rhs = single.rhs_factors();
        assert_eq!(
            product_value(&g, &rhs, &[5, 7, 11, 13]),
            Compiled::new(&g, &substituted(&v, &xs, &ys), &Bindings::new()).unwrap().eval(&g, &[5, 7, 11, 13])
        );
    }
}
