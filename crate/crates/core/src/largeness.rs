//! k-largeness and k-genericity of subsets.
//!
//! Everything reduces to one question: how many left translates of `Y` are
//! needed to cover `G`? `X` is k-large exactly when `G∖X` is not k-generic,
//! so `largeness(X) = cover(G∖X) − 1`.
//!
//! The exact cover search fixes the first translator to the identity (any
//! cover can be left-translated to contain `Y` itself), then repeatedly
//! branches on the smallest uncovered element `h` over the `|Y|` translators
//! `g = h·y⁻¹` that cover it, most new elements first. Every element has the
//! same number of candidate translators, so fail-first branching reduces to
//! smallest index. Subtrees are cut with the bound `⌈uncovered/|Y|⌉`.

use std::borrow::Cow;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::group::{subgroup_as_group, Group};
use crate::subset::Subset;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
/// Tuples the naive oracle may enumerate.
pub const NAIVE_BUDGET: u128 = 1_000_000;
/// Translates are tabulated up front for groups up to this order.
const TRANSLATE_TABLE_BOUND: usize = 8192;

static BUDGET_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Override the default node cap for the whole process. Zero clears it.
pub fn set_node_budget(nodes: u64) {
    BUDGET_OVERRIDE.store(nodes, Ordering::SeqCst);
}

/// Node cap for cover searches: the process override if set, else
/// `EQLARGE_BUDGET_NODES`, else 10⁷.
pub fn node_budget() -> u64 {
    let forced = BUDGET_OVERRIDE.load(Ordering::SeqCst);
    if forced > 0 {
        return forced;
    }
    std::env::var("EQLARGE_BUDGET_NODES").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_NODE_BUDGET)
}

/// `g·X`
pub fn left_translate(g: &Group, a: usize, x: &Subset) -> Subset {
    let mut out = Subset::empty(g.order());
    for e in x.iter() {
        out.insert(g.mul(a, e));
    }
    out
}

/// `X·g`
pub fn right_translate(g: &Group, x: &Subset, a: usize) -> Subset {
    let mut out = Subset::empty(g.order());
    for e in x.iter() {
        out.insert(g.mul(e, a));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCertificate {
    pub translators: Vec<usize>,
    pub covered: bool,
}

impl CoverCertificate {
    /// Recheck the cover against the group table.
    pub fn verify(&self, g: &Group, y: &Subset) -> bool {
        let mut u = Subset::empty(g.order());
        for &t in &self.translators {
            u.union_with(&left_translate(g, t, y));
        }
        u.is_full() == self.covered
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    pub strategy: Strategy,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: node_budget(), strategy: Strategy::default() }
    }
}

struct Cover<'a> {
    g: &'a Group,
    y: &'a Subset,
    m: usize,
    y_inv: Vec<usize>,
    table: Option<Vec<Subset>>,
    nodes: AtomicU64,
    budget: u64,
}

impl<'a> Cover<'a> {
    fn new(g: &'a Group, y: &'a Subset, budget: u64) -> Self {
        let n = g.order();
        let table = (n <= TRANSLATE_TABLE_BOUND).then(|| (0..n).map(|a| left_translate(g, a, y)).collect());
        Cover {
            g,
            y,
            m: y.count(),
            y_inv: y.iter().map(|e| g.inv(e)).collect(),
            table,
            nodes: AtomicU64::new(0),
            budget,
        }
    }

    fn translate(&self, a: usize) -> Cow<'_, Subset> {
        match &self.table {
            Some(t) => Cow::Borrowed(&t[a]),
            None => Cow::Owned(left_translate(self.g, a, self.y)),
        }
    }

    /// Translators covering `h`, by decreasing gain then index.
    fn candidates(&self, covered: &Subset, h: usize) -> Vec<(usize, usize)> {
        let mut c: Vec<(usize, usize)> = self
            .y_inv
            .iter()
            .map(|&yi| {
                let a = self.g.mul(h, yi);
                (a, covered.gain(&self.translate(a)))
            })
            .collect();
        c.sort_by(|p, q| q.1.cmp(&p.1).then(p.0.cmp(&q.0)));
        c
    }

    fn start(&self) -> Subset {
        self.translate(self.g.identity()).into_owned()
    }

    fn greedy(&self) -> Vec<usize> {
        let mut covered = self.start();
        let mut chosen = vec![self.g.identity()];
        while let Some(h) = covered.first_missing() {
            let (a, _) = self.candidates(&covered, h)[0];
            covered.union_with(&self.translate(a));
            chosen.push(a);
        }
        chosen
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(Error::Budget(self.budget));
        }
        Ok(())
    }

    fn dfs(&self, covered: &Subset, chosen: &mut Vec<usize>, limit: usize) -> Result<bool> {
        let Some(h) = covered.first_missing() else { return Ok(true) };
        let left = limit - chosen.len();
        let uncovered = self.g.order() - covered.count();
        if left == 0 || uncovered > left * self.m {
            return Ok(false);
        }
        self.tick()?;
        let cands = self.candidates(covered, h);
        if left == 1 {
            // one translate must finish the job
            return Ok(match cands.first() {
                Some(&(a, gain)) if gain == uncovered => {
                    chosen.push(a);
                    true
                }
                _ => false,
            });
        }
        for (a, gain) in cands {
            // later candidates gain no more than this one
            if uncovered - gain > (left - 1) * self.m {
                break;
            }
            let mut next = covered.clone();
            next.union_with(&self.translate(a));
            chosen.push(a);
            if self.dfs(&next, chosen, limit)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }

    /// A cover by at most `limit` translates (first translator = identity).
    fn search(&self, limit: usize, strategy: Strategy) -> Result<Option<Vec<usize>>> {
        let root = self.start();
        let e = self.g.identity();
        let Some(h) = root.first_missing() else { return Ok(Some(vec![e])) };
        if limit < 2 {
            return Ok(None);
        }
        self.tick()?;
        let cands = self.candidates(&root, h);
        let found = exec::find_first(strategy, cands.len(), |i| {
            let (a, _) = cands[i];
            let mut next = root.clone();
            next.union_with(&self.translate(a));
            let mut chosen = vec![e, a];
            match self.dfs(&next, &mut chosen, limit) {
                Ok(true) => Some(Ok(chosen)),
                Ok(false) => None,
                Err(err) => Some(Err(err)),
            }
        });
        found.transpose()
    }
}

fn check_universe(g: &Group, x: &Subset) -> Result<()> {
    if x.universe() != g.order() {
        return Err(Error::Invalid(format!("subset over {} elements used in a group of order {}", x.universe(), g.order())));
    }
    Ok(())
}

/// Minimum number of left translates of `Y` covering `G`, with a witness.
pub fn cover_number(g: &Group, y: &Subset) -> Result<(usize, CoverCertificate)> {
    cover_number_with(g, y, SearchOptions::default()).map(|(k, c, _)| (k, c))
}

/// As [`cover_number`], also returning the number of search nodes used.
pub fn cover_number_with(g: &Group, y: &Subset, opts: SearchOptions) -> Result<(usize, CoverCertificate, u64)> {
    check_universe(g, y)?;
    if y.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = g.order();
    let cover = Cover::new(g, y, opts.budget);
    let greedy = cover.greedy();
    let lower = n.div_ceil(cover.m).max(if y.is_full() { 1 } else { 2 });
    for limit in lower..greedy.len() {
        if let Some(t) = cover.search(limit, opts.strategy)? {
            let nodes = cover.nodes.load(Ordering::Relaxed);
            return Ok((t.len(), CoverCertificate { translators: t, covered: true }, nodes));
        }
    }
    let nodes = cover.nodes.load(Ordering::Relaxed);
    Ok((greedy.len(), CoverCertificate { translators: greedy, covered: true }, nodes))
}

/// Whether `k` left translates of `X` cover `G`. On success the certificate
/// lists at most `k` translators; otherwise the search was exhausted.
pub fn is_k_generic(g: &Group, x: &Subset, k: usize) -> Result<(bool, CoverCertificate)> {
    is_k_generic_with(g, x, k, SearchOptions::default())
}

pub fn is_k_generic_with(g: &Group, x: &Subset, k: usize, opts: SearchOptions) -> Result<(bool, CoverCertificate)> {
    check_universe(g, x)?;
    let refuted = CoverCertificate { translators: vec![], covered: false };
    if k == 0 || x.is_empty() || k * x.count() < g.order() {
        return Ok((false, refuted));
    }
    let cover = Cover::new(g, x, opts.budget);
    let greedy = cover.greedy();
    if greedy.len() <= k {
        return Ok((true, CoverCertificate { translators: greedy, covered: true }));
    }
    Ok(match cover.search(k, opts.strategy)? {
        Some(t) => (true, CoverCertificate { translators: t, covered: true }),
        None => (false, refuted),
    })
}

/// Whether any `k` left translates of `X` intersect. When not, the second
/// component holds `k` translators whose translates of `X` are disjoint.
pub fn is_k_large(g: &Group, x: &Subset, k: usize) -> Result<(bool, Option<Vec<usize>>)> {
    is_k_large_with(g, x, k, SearchOptions::default())
}

pub fn is_k_large_with(g: &Group, x: &Subset, k: usize, opts: SearchOptions) -> Result<(bool, Option<Vec<usize>>)> {
    check_universe(g, x)?;
    let e = g.identity();
    if k == 0 {
        return Ok((true, None));
    }
    if x.is_empty() {
        return Ok((false, Some(vec![e; k])));
    }
    let y = x.complement();
    if y.is_empty() || y.count() * k < g.order() {
        return Ok((true, None));
    }
    if k == 2 {
        // X ∩ aX ≠ ∅ exactly when a ∈ XX⁻¹
        let xs = x.to_vec();
        let mut diff = Subset::empty(g.order());
        for &a in &xs {
            for &b in &xs {
                diff.insert(g.mul(a, g.inv(b)));
            }
            if diff.is_full() {
                return Ok((true, None));
            }
        }
        let a = diff.first_missing().expect("not full");
        return Ok((false, Some(vec![e, a])));
    }
    let (generic, cert) = is_k_generic_with(g, &y, k, opts)?;
    if !generic {
        return Ok((true, None));
    }
    let mut t = cert.translators;
    let pad = t[0];
    t.resize(k, pad);
    Ok((false, Some(t)))
}

/// Largeness number: the largest `k` with `X` k-large.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Largeness {
    Finite(usize),
    /// `X = G`
    Unbounded,
}

/// Genericity number: the least `k` with `X` k-generic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Genericity {
    Finite(usize),
    /// `X = ∅`
    Infinite,
}

impl Largeness {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Largeness::Finite(l) => l >= k,
            Largeness::Unbounded => true,
        }
    }
}

impl Genericity {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Genericity::Finite(c) if c <= k)
    }
}

impl fmt::Display for Largeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Largeness::Finite(k) => write!(f, "{k}"),
            Largeness::Unbounded => write!(f, "unbounded"),
        }
    }
}

impl fmt::Display for Genericity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genericity::Finite(k) => write!(f, "{k}"),
            Genericity::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Largeness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Largeness::Finite(k) => s.serialize_u64(*k as u64),
            Largeness::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl Serialize for Genericity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Genericity::Finite(k) => s.serialize_u64(*k as u64),
            Genericity::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub fn largeness_number(g: &Group, x: &Subset) -> Result<Largeness> {
    check_universe(g, x)?;
    if x.is_full() {
        return Ok(Largeness::Unbounded);
    }
    Ok(Largeness::Finite(cover_number(g, &x.complement())?.0 - 1))
}

pub fn genericity_number(g: &Group, x: &Subset) -> Result<Genericity> {
    check_universe(g, x)?;
    if x.is_empty() {
        return Ok(Genericity::Infinite);
    }
    Ok(Genericity::Finite(cover_number(g, x)?.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct LargenessReport {
    pub group: String,
    pub order: usize,
    pub size: usize,
    pub genericity_number: Genericity,
    pub largeness_number: Largeness,
    /// Cover of `G` by translates of `X`.
    pub genericity_certificate: Option<CoverCertificate>,
    /// `largeness + 1` translators whose translates of `X` have empty
    /// intersection (a cover of `G` by translates of `G∖X`).
    pub largeness_certificate: Option<CoverCertificate>,
    pub nodes: u64,
    /// Wall time; left out of serialized output so reports are reproducible.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

pub fn largeness_report(g: &Group, x: &Subset) -> Result<LargenessReport> {
    largeness_report_with(g, x, SearchOptions::default())
}

pub fn largeness_report_with(g: &Group, x: &Subset, opts: SearchOptions) -> Result<LargenessReport> {
    check_universe(g, x)?;
    let start = Instant::now();
    let mut nodes = 0;
    let (genericity_number, genericity_certificate) = if x.is_empty() {
        (Genericity::Infinite, None)
    } else {
        let (k, c, used) = cover_number_with(g, x, opts)?;
        nodes += used;
        (Genericity::Finite(k), Some(c))
    };
    let (largeness_number, largeness_certificate) = if x.is_full() {
        (Largeness::Unbounded, None)
    } else {
        let (k, c, used) = cover_number_with(g, &x.complement(), opts)?;
        nodes += used;
        (Largeness::Finite(k - 1), Some(c))
    };
    Ok(LargenessReport {
        group: g.label().to_string(),
        order: g.order(),
        size: x.count(),
        genericity_number,
        largeness_number,
        genericity_certificate,
        largeness_certificate,
        nodes,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Definition-level check: every `k` left translates of `X` intersect.
/// The first translator is the identity by translation invariance.
pub fn naive_is_k_large(g: &Group, x: &Subset, k: usize) -> Result<bool> {
    check_universe(g, x)?;
    let n = g.order();
    let tuples = (n as u128).checked_pow(k.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if tuples > NAIVE_BUDGET {
        return Err(Error::Budget(NAIVE_BUDGET as u64));
    }
    if k == 0 {
        return Ok(true);
    }
    if x.is_empty() {
        return Ok(false);
    }
    let translates: Vec<Subset> = (0..n).map(|a| left_translate(g, a, x)).collect();
    fn go(cur: &Subset, depth: usize, translates: &[Subset]) -> bool {
        if depth == 0 {
            return !cur.is_empty();
        }
        translates.iter().all(|t| go(&cur.intersection(t), depth - 1, translates))
    }
    Ok(go(x, k - 1, &translates))
}

/// Largeness of `X ∩ H` inside the subgroup `H`, re-indexed as a group.
pub fn restrict_largeness(g: &Group, x: &Subset, h: &Subset) -> Result<LargenessReport> {
    check_universe(g, x)?;
    let sub = subgroup_as_group(g, h).ok_or_else(|| Error::NotASubgroup(format!("{:?}", h.to_vec())))?;
    largeness_report(&sub.group, &sub.restrict(x))
}
