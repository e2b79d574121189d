//! Machine checks of largeness theorems on concrete finite groups.
//!
//! Each registry entry evaluates a hypothesis and a conclusion exactly over
//! a family of instances (constants, words, subsets) on one group. A check
//! passes when every instance with a true hypothesis has a true conclusion.
//! Instances whose hypothesis fails are vacuous and never count as evidence.

mod checks;
mod search;

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::group::Group;
use crate::probability::Rational;

pub use checks::{
    min_outside_count, sweep_constants, BFC_WORDS, CENTER_GCD_EXPONENTS, COMM_PRODUCT_WORDS, NILPOTENT_WORDS,
    SUPERCOMMUTATOR_WORDS, SWEEP_ALL_BOUND, WORD_COMM_WORDS,
};
pub use search::{search_counterexample, Counterexample, SearchBudget, QUESTIONS};

/// Knobs shared by all checks. Everything random is seeded, so a run is a
/// pure function of the group and these parameters.
#[derive(Clone, Copy, Debug)]
pub struct CheckParams {
    pub seed: u64,
    /// Random subsets drawn per group by subset-based checks.
    pub random_subsets: usize,
    /// Exponents `ℓ = 1..=max_exponent` for power-word checks.
    pub max_exponent: usize,
    /// Largest `k` in `[x₀,…,x_k] = c` sweeps.
    pub max_commutator_length: usize,
    pub strategy: Strategy,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { seed: 0x5eed, random_subsets: 24, max_exponent: 12, max_commutator_length: 3, strategy: Strategy::Parallel }
    }
}

/// Registry entry.
#[derive(Clone, Copy, Debug)]
pub struct CheckSpec {
    pub id: &'static str,
    /// Hypothesis ⇒ conclusion, in words.
    pub statement: &'static str,
    /// Instance family swept on each group.
    pub parameters: &'static str,
    /// Largest group order the check accepts.
    pub max_order: usize,
    run: fn(&Group, &CheckParams, &mut Tally) -> Result<()>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub group: String,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub vacuous: bool,
    /// Smallest `bound − attained` over non-vacuous instances of an
    /// inequality check.
    #[serde(serialize_with = "ser_ratio")]
    pub margin: Option<Rational>,
    pub witness: Option<Value>,
    pub passed: bool,
}

fn ser_ratio<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(&format_args!("{}/{}", r.numer(), r.denom())),
        None => s.serialize_none(),
    }
}

/// Accumulates instance outcomes for one (check, group) pair.
#[derive(Default)]
pub(crate) struct Tally {
    instances: usize,
    nonvacuous: usize,
    margin: Option<Rational>,
    tightest: Option<Value>,
    example: Option<Value>,
    failure: Option<Value>,
    keep_all: bool,
    all: Vec<Value>,
    extra: serde_json::Map<String, Value>,
}

impl Tally {
    pub(crate) fn record(&mut self, hyp: bool, concl: bool, margin: Option<Rational>, detail: impl FnOnce() -> Value) {
        self.instances += 1;
        if !hyp {
            return;
        }
        self.nonvacuous += 1;
        let want_detail = self.keep_all
            || self.example.is_none()
            || (!concl && self.failure.is_none())
            || margin.is_some_and(|m| self.margin.is_none_or(|cur| m < cur));
        if !want_detail {
            return;
        }
        let d = detail();
        if self.keep_all {
            self.all.push(d.clone());
        }
        if !concl && self.failure.is_none() {
            self.failure = Some(d.clone());
        }
        if let Some(m) = margin {
            if self.margin.is_none_or(|cur| m < cur) {
                self.margin = Some(m);
                self.tightest = Some(d.clone());
            }
        }
        if self.example.is_none() {
            self.example = Some(d);
        }
    }

    pub(crate) fn keep_all(&mut self) {
        self.keep_all = true;
    }

    pub(crate) fn note(&mut self, key: &str, value: Value) {
        self.extra.insert(key.to_string(), value);
    }

    fn finish(self, id: &str, group: &str) -> CheckResult {
        let hyp = self.nonvacuous > 0;
        let concl = self.failure.is_none();
        let mut w = self.extra;
        w.insert("instances".into(), json!(self.instances));
        w.insert("nonvacuous".into(), json!(self.nonvacuous));
        for (k, v) in [("failure", self.failure), ("tightest", self.tightest), ("example", self.example)] {
            if let Some(v) = v {
                w.insert(k.into(), v);
            }
        }
        if self.keep_all {
            w.insert("all".into(), Value::Array(self.all));
        }
        CheckResult {
            id: id.to_string(),
            group: group.to_string(),
            hypothesis_holds: hyp,
            conclusion_holds: !hyp || concl,
            vacuous: !hyp,
            margin: if hyp { self.margin } else { None },
            witness: Some(Value::Object(w)),
            passed: concl,
        }
    }
}

pub fn registry() -> &'static [CheckSpec] {
    checks::REGISTRY
}

pub fn check_spec(id: &str) -> Result<&'static CheckSpec> {
    registry().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Evaluate one registry check on one group.
pub fn run_check(id: &str, g: &Group, params: &CheckParams) -> Result<CheckResult> {
    let spec = check_spec(id)?;
    if g.order() > spec.max_order {
        return Err(Error::OrderBound { what: "check group order", needed: g.order() as u128, limit: spec.max_order as u128 });
    }
    let mut tally = Tally::default();
    (spec.run)(g, params, &mut tally)?;
    Ok(tally.finish(spec.id, g.label()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckStats {
    pub runs: usize,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    /// Groups above the check's order bound.
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub vacuous: usize,
    pub skipped: usize,
    pub per_check: BTreeMap<String, CheckStats>,
}

impl Summary {
    /// Checks with at least one non-vacuous run.
    pub fn exercised(&self) -> usize {
        self.per_check.values().filter(|s| s.runs > s.vacuous).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.results)?)
    }

    /// `id,group,passed,vacuous,margin`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,group,passed,vacuous,margin\n");
        for r in &self.results {
            let margin = r.margin.map(|m| format!("{}/{}", m.numer(), m.denom())).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{}\n", r.id, r.group, r.passed, r.vacuous, margin));
        }
        out
    }
}

/// Run `ids × groups`. Pairs where the group exceeds a check's order bound
/// are counted as skipped. Any other error aborts the suite.
pub fn run_suite(groups: &[Group], ids: &[&str], params: &CheckParams) -> Result<SuiteReport> {
    let specs: Vec<&CheckSpec> = ids.iter().map(|id| check_spec(id)).collect::<Result<_>>()?;
    let pairs: Vec<(&CheckSpec, &Group)> = specs.iter().flat_map(|s| groups.iter().map(move |g| (*s, g))).collect();
    let outcomes = exec::map_slice(params.strategy, &pairs, |(spec, g)| {
        if g.order() > spec.max_order {
            return Ok(None);
        }
        run_check(spec.id, g, params).map(Some)
    });
    let mut summary = Summary::default();
    let mut results = vec![];
    for ((spec, _), outcome) in pairs.iter().zip(outcomes) {
        let stats = summary.per_check.entry(spec.id.to_string()).or_default();
        match outcome? {
            None => {
                stats.skipped += 1;
                summary.skipped += 1;
            }
            Some(r) => {
                stats.runs += 1;
                summary.total += 1;
                if r.passed {
                    stats.passed += 1;
                    summary.passed += 1;
                } else {
                    stats.failed += 1;
                    summary.failed += 1;
                }
                if r.vacuous {
                    stats.vacuous += 1;
                    summary.vacuous += 1;
                }
                results.push(r);
            }
        }
    }
    results.sort_by(|a, b| (&a.id, &a.group).cmp(&(&b.id, &b.group)));
    Ok(SuiteReport { results, summary })
}

/// Every registered id, in registry order.
pub fn all_check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}
