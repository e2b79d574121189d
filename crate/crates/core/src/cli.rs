//! Command-line front end.
//!
//! `run` parses arguments and returns everything the process should print
//! plus its exit code, so the binary is a thin wrapper and the whole
//! interface can be driven from tests. Output is rendered in full before
//! anything is written, so a failing command never leaves partial JSON on
//! standard output.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or input
//! error, 3 a search or size budget was exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::group::catalog::{catalog, catalog_specs, spec_order};
use crate::group::{
    automorphism_group, center, class_count, derived_subgroup, inner_automorphisms, is_2_engel, is_subgroup,
    max_centralizer_index, nilpotency_class, ActionGroup, Group,
};
use crate::largeness::{self, cover_number_with, largeness_report_with, SearchOptions};
use crate::probability::{autocommutativity_degree, commuting_probability, solution_group, solution_set};
use crate::subset::Subset;
use crate::verifier::{self, CheckParams, SearchBudget};
use crate::word::{parse_equation, Bindings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "eqlarge", version, about = "Largeness, genericity and equational probability in finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (1 runs sequentially).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Node budget for each cover search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural summary of a group.
    Info { group: String },
    /// List catalog groups.
    Catalog {
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
    /// Solution set of an equation.
    Solve {
        group: String,
        equation: String,
        #[arg(long = "const", value_name = "NAME=ELEMENT")]
        consts: Vec<String>,
        /// List solution indices only when there are at most this many.
        #[arg(long, default_value_t = 256)]
        max_indices: usize,
    },
    /// Probability that a random tuple satisfies an equation.
    Prob {
        group: String,
        equation: String,
        #[arg(long = "const", value_name = "NAME=ELEMENT")]
        consts: Vec<String>,
    },
    /// Largeness and genericity numbers of a subset.
    Largeness {
        group: String,
        /// `{"elements":[…]}`, `@file.json` or `solutions:<equation>`.
        #[arg(long)]
        subset: String,
        #[arg(long = "const", value_name = "NAME=ELEMENT")]
        consts: Vec<String>,
    },
    /// Fewest left translates of a subset covering the group.
    Cover {
        group: String,
        #[arg(long)]
        subset: String,
        #[arg(long = "const", value_name = "NAME=ELEMENT")]
        consts: Vec<String>,
    },
    /// Run verifier checks (`all` or a comma-separated list of ids).
    Verify {
        checks: String,
        #[arg(long, default_value = "catalog<=16")]
        groups: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Random subsets per group for subset-based checks.
        #[arg(long)]
        subsets: Option<usize>,
    },
    /// Look for a counterexample to an open question (`all` for every one).
    Search {
        question: String,
        #[arg(long, default_value = "catalog<=24")]
        groups: String,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
    /// Autocommutativity degree of a subgroup under inner or all automorphisms.
    Ac {
        group: String,
        /// Subgroup as `{"elements":[…]}`; the whole group by default.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum, default_value_t = Sigma::Inn)]
        sigma: Sigma,
        /// Also compute the largeness number of the fixed pairs.
        #[arg(long)]
        largeness: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Sigma {
    Inn,
    Aut,
}

/// What the process should print and return.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Budget(_) | Error::OrderBound { .. } | Error::IndexBound { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Parse and execute one command line (the first item is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stderr: text, ..Outcome::default() }
            } else {
                Outcome { code: EXIT_OK, stdout: text, ..Outcome::default() }
            };
        }
    };
    if let Some(n) = cli.jobs {
        exec::set_jobs(n);
    }
    if let Some(b) = cli.budget {
        largeness::set_node_budget(b);
    }
    match execute(&cli) {
        Ok((code, stdout, stderr)) => Outcome { code, stdout, stderr },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// One entry of a group list, validated but not yet built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupPlan {
    /// Catalog family or direct product of families, e.g. `C2xC4`.
    Family { spec: String, order: usize },
    /// Cayley table loaded from a JSON file.
    Table(String),
    /// Permutation group from generators.
    Perm(String),
}

impl GroupPlan {
    pub fn spec(&self) -> &str {
        match self {
            GroupPlan::Family { spec, .. } => spec,
            GroupPlan::Table(path) => path,
            GroupPlan::Perm(spec) => spec,
        }
    }

    /// Known in advance for families only.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupPlan::Family { order, .. } => Some(*order),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<Group> {
        match self {
            GroupPlan::Table(path) => catalog(&format!("@{path}")),
            other => catalog(other.spec()),
        }
    }
}

/// Split on commas outside parentheses, so cycles like `(1,2)` survive.
fn split_top_level(text: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, vec![]);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Parse a comma-separated list of group specs. `catalog<=N` expands to the
/// catalog up to order `N`.
pub fn parse_group_specs(text: &str) -> Result<Vec<GroupPlan>> {
    let mut plans = vec![];
    for item in split_top_level(text).into_iter().map(str::trim) {
        if let Some(bound) = item.strip_prefix("catalog<=") {
            let n: usize = bound.trim().parse().map_err(|_| Error::Invalid(format!("bad catalog bound {bound:?}")))?;
            for s in catalog_specs(n) {
                plans.push(GroupPlan::Family { spec: s.to_string(), order: spec_order(s).unwrap_or(0) });
            }
        } else if let Some(path) = item.strip_prefix('@') {
            plans.push(GroupPlan::Table(path.to_string()));
        } else if item.starts_with("perm:") {
            plans.push(GroupPlan::Perm(item.to_string()));
        } else {
            match spec_order(item) {
                Some(order) => plans.push(GroupPlan::Family { spec: item.to_string(), order }),
                None => return Err(catalog(item).err().unwrap_or_else(|| Error::Invalid(item.to_string()))),
            }
        }
    }
    Ok(plans)
}

fn one_group(text: &str) -> Result<Group> {
    let plans = parse_group_specs(text)?;
    match plans.as_slice() {
        [p] => p.build(),
        _ => Err(Error::Invalid(format!("expected exactly one group, got {:?}", text))),
    }
}

/// `name=element` pairs. Elements use the same forms as `#` literals.
fn parse_consts(g: &Group, items: &[String]) -> Result<Bindings> {
    let mut b = Bindings::new();
    for item in items {
        let (name, elt) =
            item.split_once('=').ok_or_else(|| Error::Invalid(format!("--const expects NAME=ELEMENT, got {item:?}")))?;
        let e = g.element(elt.trim()).ok_or_else(|| Error::Invalid(format!("no element {elt:?} in {}", g.label())))?;
        b.insert(name.trim().to_string(), e);
    }
    Ok(b)
}

/// Elements of `{"elements":[…]}`, given as indices or element names.
fn parse_elements(g: &Group, text: &str) -> Result<Subset> {
    let v: Value = serde_json::from_str(text)?;
    let items = v
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Invalid("subset JSON needs an \"elements\" array".into()))?;
    let mut out = Subset::empty(g.order());
    for item in items {
        let e = match item {
            Value::Number(n) => n.as_u64().map(|i| i as usize).filter(|&i| i < g.order()),
            Value::String(s) => g.element(s),
            _ => None,
        };
        out.insert(e.ok_or_else(|| Error::Invalid(format!("no element {item} in {}", g.label())))?);
    }
    Ok(out)
}

/// Resolve `--subset`. `solutions:<eq>` moves to `G^n`, so the ambient
/// group is returned along with the subset.
fn parse_subset(g: &Group, text: &str, consts: &[String]) -> Result<(Group, Subset)> {
    if let Some(eq) = text.strip_prefix("solutions:") {
        let eq = parse_equation(eq)?;
        let sols = solution_set(g, &eq, &parse_consts(g, consts)?)?;
        let gn = solution_group(g, sols.arity)?;
        return Ok((gn, sols.bits));
    }
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => text.to_string(),
    };
    Ok((g.clone(), parse_elements(g, &body)?))
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn no_csv(format: Format, command: &str) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::Invalid(format!("csv output is not available for {command}")));
    }
    Ok(())
}

fn join(items: &[usize]) -> String {
    items.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

type Rendered = (i32, String, String);

fn ok(stdout: String) -> Result<Rendered> {
    Ok((EXIT_OK, stdout, String::new()))
}

fn execute(cli: &Cli) -> Result<Rendered> {
    let fmt = cli.format;
    let opts = SearchOptions::default();
    match &cli.command {
        Command::Info { group } => {
            no_csv(fmt, "info")?;
            info(&one_group(group)?, fmt)
        }
        Command::Catalog { max_order } => {
            let specs = catalog_specs(*max_order);
            let rows: Vec<(&str, usize)> = specs.iter().map(|s| (*s, spec_order(s).unwrap_or(0))).collect();
            ok(match fmt {
                Format::Json => pretty(&rows.iter().map(|(s, o)| json!({"spec": s, "order": o})).collect::<Vec<_>>())?,
                Format::Csv => rows.iter().fold("spec,order\n".to_string(), |acc, (s, o)| acc + &format!("{s},{o}\n")),
                Format::Text => rows.iter().map(|(s, o)| format!("{s:<10} {o}\n")).collect(),
            })
        }
        Command::Solve { group, equation, consts, max_indices } => {
            no_csv(fmt, "solve")?;
            let g = one_group(group)?;
            let sols = solution_set(&g, &parse_equation(equation)?, &parse_consts(&g, consts)?)?;
            ok(match fmt {
                Format::Json => pretty(&sols.to_json(*max_indices))?,
                _ => {
                    let mut s = format!("{} of {} tuples in {}^{}\n", sols.count, sols.tuples(), g.label(), sols.arity);
                    if sols.count <= *max_indices {
                        for i in sols.bits.iter() {
                            let names: Vec<String> = sols.tuple(i).into_iter().map(|e| g.name(e)).collect();
                            let _ = writeln!(s, "{}", names.join(", "));
                        }
                    }
                    s
                }
            })
        }
        Command::Prob { group, equation, consts } => {
            no_csv(fmt, "prob")?;
            let g = one_group(group)?;
            let p = solution_set(&g, &parse_equation(equation)?, &parse_consts(&g, consts)?)?.probability();
            ok(match fmt {
                Format::Json => pretty(&json!({"group": g.label(), "equation": equation, "probability": p, "approx": p.to_f64()}))?,
                _ => format!("{p}\n"),
            })
        }
        Command::Largeness { group, subset, consts } => {
            no_csv(fmt, "largeness")?;
            let (g, x) = parse_subset(&one_group(group)?, subset, consts)?;
            let rep = largeness_report_with(&g, &x, opts)?;
            ok(match fmt {
                Format::Json => pretty(&rep)?,
                _ => {
                    let mut s = format!("group {} (order {}), |X| = {}\n", rep.group, rep.order, rep.size);
                    let _ = writeln!(s, "largeness: {}", rep.largeness_number);
                    let _ = writeln!(s, "genericity: {}", rep.genericity_number);
                    if let Some(c) = &rep.largeness_certificate {
                        let _ = writeln!(s, "translates with empty intersection: {}", join(&c.translators));
                    }
                    if let Some(c) = &rep.genericity_certificate {
                        let _ = writeln!(s, "covering translators: {}", join(&c.translators));
                    }
                    s
                }
            })
        }
        Command::Cover { group, subset, consts } => {
            no_csv(fmt, "cover")?;
            let (g, y) = parse_subset(&one_group(group)?, subset, consts)?;
            if y.universe() != g.order() {
                return Err(Error::Invalid("subset does not match the group".into()));
            }
            let (k, cert, nodes) = cover_number_with(&g, &y, opts)?;
            ok(match fmt {
                Format::Json => pretty(&json!({"group": g.label(), "cover_number": k, "translators": cert.translators, "nodes": nodes}))?,
                _ => format!("{k}\ntranslators: {}\n", join(&cert.translators)),
            })
        }
        Command::Verify { checks, groups, seed, subsets } => verify(fmt, checks, groups, *seed, *subsets),
        Command::Search { question, groups, max_order } => {
            no_csv(fmt, "search")?;
            let plans = parse_group_specs(groups)?;
            let built: Vec<Group> = plans
                .iter()
                .filter(|p| p.order().is_none_or(|o| o <= *max_order))
                .map(GroupPlan::build)
                .collect::<Result<_>>()?;
            let budget = SearchBudget { max_order: *max_order, ..SearchBudget::default() };
            let questions: Vec<&str> =
                if question == "all" { verifier::QUESTIONS.to_vec() } else { vec![question.as_str()] };
            let mut found = vec![];
            for q in questions {
                found.push((q, verifier::search_counterexample(q, built.iter().cloned(), &budget)?));
            }
            ok(match fmt {
                Format::Json => {
                    pretty(&found.iter().map(|(q, c)| json!({"question": q, "counterexample": c})).collect::<Vec<_>>())?
                }
                _ => found
                    .iter()
                    .map(|(q, c)| match c {
                        None => format!("{q}: no counterexample among {} groups\n", built.len()),
                        Some(c) => format!("{q}: counterexample in {}: {}\n", c.group, c.data),
                    })
                    .collect(),
            })
        }
        Command::Ac { group, subgroup, sigma, largeness } => {
            no_csv(fmt, "ac")?;
            let g = one_group(group)?;
            let h = match subgroup {
                Some(text) => parse_elements(&g, text)?,
                None => g.full(),
            };
            if !is_subgroup(&g, &h) {
                return Err(Error::NotASubgroup(format!("{:?}", h.to_vec())));
            }
            let action: ActionGroup = match sigma {
                Sigma::Inn => inner_automorphisms(&g)?,
                Sigma::Aut => automorphism_group(&g)?,
            };
            let ac = autocommutativity_degree(&g, &h, &action)?;
            let large = if *largeness { Some(largeness_report_with(&ac.product, &ac.fixed_pairs, opts)?) } else { None };
            ok(match fmt {
                Format::Json => pretty(&json!({
                    "group": g.label(),
                    "sigma": format!("{sigma:?}"),
                    "sigma_order": action.group.order(),
                    "subgroup": h.to_vec(),
                    "degree": ac.degree,
                    "fixed_pairs": ac.fixed_pairs.count(),
                    "largeness": large.as_ref().map(|r| r.largeness_number),
                }))?,
                _ => {
                    let mut s = format!("{}\n", ac.degree);
                    let _ = writeln!(s, "|Sigma| = {}, |H| = {}, fixed pairs = {}", action.group.order(), h.count(), ac.fixed_pairs.count());
                    if let Some(r) = large {
                        let _ = writeln!(s, "largeness of fixed pairs: {}", r.largeness_number);
                    }
                    s
                }
            })
        }
    }
}

fn info(g: &Group, fmt: Format) -> Result<Rendered> {
    let n = g.order();
    let v = json!({
        "group": g.label(),
        "order": n,
        "exponent": g.exponent(),
        "abelian": g.is_abelian(),
        "center_order": center(g).count(),
        "classes": class_count(g),
        "derived_order": derived_subgroup(g).count(),
        "nilpotency_class": nilpotency_class(g),
        "two_engel": is_2_engel(g),
        "max_centralizer_index": max_centralizer_index(g),
        "commuting_probability": commuting_probability(g),
    });
    if fmt == Format::Json {
        return ok(pretty(&v)?);
    }
    let mut s = String::new();
    for (k, val) in v.as_object().into_iter().flatten() {
        let shown = match val {
            Value::String(t) => t.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        let _ = writeln!(s, "{k:<22} {shown}");
    }
    if n <= 32 {
        let names: Vec<String> = (0..n).map(|e| format!("{e}:{}", g.name(e))).collect();
        let _ = writeln!(s, "{:<22} {}", "elements", names.join(" "));
    }
    ok(s)
}

fn verify(fmt: Format, checks: &str, groups: &str, seed: Option<u64>, subsets: Option<usize>) -> Result<Rendered> {
    let ids: Vec<&str> =
        if checks == "all" { verifier::all_check_ids() } else { checks.split(',').map(str::trim).collect() };
    for id in &ids {
        verifier::check_spec(id)?;
    }
    let built: Vec<Group> = parse_group_specs(groups)?.iter().map(GroupPlan::build).collect::<Result<_>>()?;
    let mut params = CheckParams { strategy: Strategy::Parallel, ..CheckParams::default() };
    if let Some(s) = seed {
        params.seed = s;
    }
    if let Some(k) = subsets {
        params.random_subsets = k;
    }
    let report = verifier::run_suite(&built, &ids, &params)?;
    let sum = &report.summary;
    let summary = format!(
        "{} runs: {} passed, {} failed, {} vacuous, {} skipped; {} of {} checks exercised\n",
        sum.total,
        sum.passed,
        sum.failed,
        sum.vacuous,
        sum.skipped,
        sum.exercised(),
        ids.len()
    );
    let stdout = match fmt {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut s = String::new();
            for r in &report.results {
                let tag = if !r.passed {
                    "FAIL"
                } else if r.vacuous {
                    "vac "
                } else {
                    "ok  "
                };
                let margin = r.margin.map(|m| format!("  margin {m}")).unwrap_or_default();
                let _ = writeln!(s, "{tag} {:<24} {}{margin}", r.id, r.group);
            }
            s + &summary
        }
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_FAILED };
    let stderr = if fmt == Format::Text { String::new() } else { summary };
    Ok((code, stdout, stderr))
}
