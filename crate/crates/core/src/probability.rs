//! Exact solution sets and equational probabilities under counting measure.
//!
//! On a finite group every subset is measurable, so inner measure, outer
//! measure and plain proportion coincide and all probabilities are exact
//! rationals.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::group::{class_count, direct_product, power, subgroup_as_group, ActionGroup, Group};
use crate::largeness::{largeness_report_with, LargenessReport, SearchOptions};
use crate::subset::Subset;
use crate::word::{parse_equation, Bindings, CompiledEquation, Equation};

pub type Rational = Ratio<i64>;

/// Default cap on `|G|^n`.
pub const INDEX_BOUND: u128 = 1 << 26;
/// Default cap on the number of variables.
pub const MAX_ARITY: usize = 4;

/// An exact probability `p/q` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(Rational);

impl Probability {
    pub fn new(num: u64, den: u64) -> Probability {
        assert!(den > 0 && num <= den, "probability {num}/{den} out of range");
        Probability(Rational::new(num as i64, den as i64))
    }

    pub fn one() -> Probability {
        Probability(Rational::from_integer(1))
    }

    pub fn ratio(self) -> Rational {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} (~{})", self.numer(), self.denom(), self.to_f64())
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", self.numer(), self.denom()))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub index_bound: u128,
    pub max_arity: usize,
    pub strategy: Strategy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { index_bound: INDEX_BOUND, max_arity: MAX_ARITY, strategy: Strategy::default() }
    }
}

/// Solutions of an equation in `G^n`, indexed in mixed radix with `x1`
/// most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub group: String,
    pub order: usize,
    pub arity: usize,
    pub bits: Subset,
    pub count: usize,
}

impl SolutionSet {
    pub fn tuples(&self) -> usize {
        self.bits.universe()
    }

    pub fn probability(&self) -> Probability {
        Probability::new(self.count as u64, self.tuples() as u64)
    }

    /// Mixed-radix digits of tuple `i`.
    pub fn tuple(&self, i: usize) -> Vec<usize> {
        decode(i, self.order, self.arity)
    }

    /// JSON export; indices are listed only up to `max_indices` solutions.
    pub fn to_json(&self, max_indices: usize) -> serde_json::Value {
        let mut v = serde_json::json!({
            "group": self.group,
            "arity": self.arity,
            "count": self.count,
            "tuples": self.tuples(),
            "probability": self.probability(),
        });
        if self.count <= max_indices {
            v["indices"] = serde_json::json!(self.bits.to_vec());
        }
        v
    }
}

fn decode(mut i: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = i % n;
        i /= n;
    }
    out
}

pub fn tuple_count(g: &Group, arity: usize, bound: u128) -> Result<usize> {
    let needed = (g.order() as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
    if needed > bound {
        return Err(Error::IndexBound { needed, limit: bound });
    }
    Ok(needed as usize)
}

pub fn solution_set(g: &Group, eq: &Equation, bindings: &Bindings) -> Result<SolutionSet> {
    solution_set_with(g, eq, bindings, SolveOptions::default())
}

/// Exhaustive evaluation over `G^n`, parallel over the `x1` coordinate.
pub fn solution_set_with(g: &Group, eq: &Equation, bindings: &Bindings, opts: SolveOptions) -> Result<SolutionSet> {
    let arity = eq.arity();
    if arity > opts.max_arity {
        return Err(Error::IndexBound { needed: arity as u128, limit: opts.max_arity as u128 });
    }
    let total = tuple_count(g, arity, opts.index_bound)?;
    let compiled = CompiledEquation::new(g, eq, bindings)?;
    let n = g.order();
    let mut bits = Subset::empty(total);
    if arity == 0 {
        if compiled.holds_with(g, &[], &mut vec![]) {
            bits.insert(0);
        }
    } else {
        let block = total / n;
        let chunks = exec::map_range(opts.strategy, n, |first| {
            let mut a = vec![0usize; arity];
            a[0] = first;
            let mut stack = Vec::with_capacity(16);
            let mut hits = vec![];
            for j in 0..block {
                // the last variable varies fastest
                let mut r = j;
                for slot in a[1..].iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                if compiled.holds_with(g, &a, &mut stack) {
                    hits.push(first * block + j);
                }
            }
            hits
        });
        for i in chunks.into_iter().flatten() {
            bits.insert(i);
        }
    }
    let count = bits.count();
    Ok(SolutionSet { group: g.label().to_string(), order: n, arity, bits, count })
}

/// `μ(lhs = rhs)` as an exact rational.
pub fn probability(g: &Group, eq: &Equation, bindings: &Bindings) -> Result<Probability> {
    Ok(solution_set(g, eq, bindings)?.probability())
}

/// Convenience: parse and evaluate with no named constants.
pub fn probability_of(g: &Group, equation: &str) -> Result<Probability> {
    probability(g, &parse_equation(equation)?, &Bindings::new())
}

/// `k(G)/|G|`.
pub fn commuting_probability(g: &Group) -> Probability {
    Probability::new(class_count(g) as u64, g.order() as u64)
}

/// Probability for every value of the constant `name`, in element order.
pub fn constant_sweep(g: &Group, eq: &Equation, name: &str, bindings: &Bindings) -> Result<Vec<(usize, Probability)>> {
    (0..g.order())
        .map(|c| {
            let mut b = bindings.clone();
            b.insert(name.to_string(), c);
            Ok((c, probability(g, eq, &b)?))
        })
        .collect()
}

/// Largeness of the solution set viewed as a subset of `G^n`.
pub fn equation_largeness(g: &Group, eq: &Equation, bindings: &Bindings) -> Result<LargenessReport> {
    equation_largeness_with(g, eq, bindings, SolveOptions::default(), SearchOptions::default())
}

pub fn equation_largeness_with(
    g: &Group,
    eq: &Equation,
    bindings: &Bindings,
    solve: SolveOptions,
    search: SearchOptions,
) -> Result<LargenessReport> {
    let sols = solution_set_with(g, eq, bindings, solve)?;
    let gn = solution_group(g, sols.arity)?;
    largeness_report_with(&gn, &sols.bits, search)
}

/// `G^n` with the same indexing as a solution set of arity `n`.
pub fn solution_group(g: &Group, arity: usize) -> Result<Group> {
    match arity {
        0 => Ok(Group::trivial()),
        1 => Ok(g.clone()),
        n => power(g, n),
    }
}

/// `{g : σ(g) = g for all σ ∈ Σ}`
pub fn fixed_subgroup(sigma: &ActionGroup) -> Subset {
    let n = sigma.action.first().map_or(0, Vec::len);
    Subset::from_fn(n, |x| sigma.action.iter().all(|m| m[x] == x))
}

#[derive(Clone, Debug)]
pub struct Autocommutativity {
    pub degree: Probability,
    /// `Σ × H`, Σ-coordinate most significant.
    pub product: Group,
    /// `{(σ, h) : σ(h) = h}` inside `product`.
    pub fixed_pairs: Subset,
}

fn check_action(g: &Group, sigma: &ActionGroup) -> Result<()> {
    let n = g.order();
    for m in &sigma.action {
        let mut seen = vec![false; n];
        if m.len() != n || m.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::ActionNotClosed);
        }
    }
    if sigma.action.len() != sigma.group.order() {
        return Err(Error::ActionNotClosed);
    }
    Ok(())
}

/// `ac(H; Σ) = |{(σ,h) ∈ Σ×H : σ(h) = h}| / (|Σ|·|H|)`.
pub fn autocommutativity_degree(g: &Group, h: &Subset, sigma: &ActionGroup) -> Result<Autocommutativity> {
    check_action(g, sigma)?;
    let sub = subgroup_as_group(g, h).ok_or_else(|| Error::NotASubgroup(format!("{:?}", h.to_vec())))?;
    let hn = sub.embed.len();
    let product = direct_product(&sigma.group, &sub.group)?;
    let fixed_pairs = Subset::from_fn(product.order(), |i| {
        let (s, x) = (i / hn, sub.embed[i % hn]);
        sigma.action[s][x] == x
    });
    let degree = Probability::new(fixed_pairs.count() as u64, product.order() as u64);
    Ok(Autocommutativity { degree, product, fixed_pairs })
}
