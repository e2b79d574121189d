//! Release acceptance run. Prints one line per criterion and exits non-zero
//! if any criterion fails, except a failure listed in `KNOWN_FINDINGS`
//! whose witness matches exactly.

use std::collections::BTreeSet;
use std::time::Instant;

use eqlarge::group::catalog::{catalog, catalog_upto};
use eqlarge::group::{class_count, Group};
use eqlarge::largeness::{is_k_generic, is_k_large, naive_is_k_large};
use eqlarge::probability::{commuting_probability, probability_of, Rational};
use eqlarge::verifier::{all_check_ids, run_check, run_suite, search_counterexample, CheckParams, SearchBudget};
use eqlarge::word::{linearize, substituted, Bindings, Compiled, Word};
use eqlarge::Subset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Searches that return a re-verified counterexample: (question, group).
const KNOWN_FINDINGS: &[(&str, &str)] = &[("oq_cube_5large", "A4"), ("oq_comm_2large_c", "D4")];

struct Outcome {
    pass: bool,
    known: bool,
    detail: String,
    report: Option<String>,
}

fn pass(detail: String) -> Outcome {
    Outcome { pass: true, known: false, detail, report: None }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    Outcome { pass: ok, known: false, detail, report: None }
}

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a, b)
}

fn power_count(g: &Group, l: i64) -> usize {
    (0..g.order()).filter(|&x| g.pow(x, l) == g.identity()).count()
}

fn c1() -> Outcome {
    let mut slow = vec![];
    let mut timed = |spec: &str, eq: &str| {
        let t = Instant::now();
        let p = probability_of(&catalog(spec).unwrap(), eq).unwrap().ratio();
        if t.elapsed().as_secs_f64() >= 1.0 {
            slow.push(format!("{spec} {eq}"));
        }
        p
    };
    let s3 = timed("S3", "[x1,x2] = 1");
    let q8 = timed("Q8", "[x1,x2] = 1");
    let d4 = timed("D4", "x1^2 = 1");
    let miller = run_check("miller_bound", &catalog("D4").unwrap(), &CheckParams::default()).unwrap();
    let ok = s3 == r(1, 2) && q8 == r(5, 8) && d4 == r(3, 4) && miller.margin == Some(r(0, 1)) && slow.is_empty();
    verdict(ok, format!("S3 {s3}, Q8 {q8}, D4 x^2: {d4}, Miller margin on D4 {:?}", miller.margin.map(|m| m.to_string())))
}

fn c2() -> Outcome {
    let groups = catalog_upto(24);
    let mut rows = vec![];
    let mut bad = 0;
    for g in &groups {
        let mu = commuting_probability(g).ratio();
        let kg = r(class_count(g) as i64, g.order() as i64);
        bad += usize::from(mu != kg);
        rows.push(json!({"group": g.label(), "classes": class_count(g), "mu": mu.to_string()}));
    }
    let rep = run_suite(&groups, &["erdos_turan"], &CheckParams::default()).unwrap();
    let ok = bad == 0 && groups.len() >= 20 && rep.all_passed();
    let mut o = verdict(ok, format!("{} groups, {bad} mismatches", groups.len()));
    o.report = Some(serde_json::to_string_pretty(&json!({"direct": rows, "suite": rep.results})).unwrap());
    o
}

fn c3() -> Outcome {
    let groups = catalog_upto(24);
    let mut bad = vec![];
    for g in &groups {
        let n = g.order();
        for d in (1..=n).filter(|d| n % d == 0) {
            if !power_count(g, d as i64).is_multiple_of(d) {
                bad.push(format!("{} d={d}", g.label()));
            }
        }
    }
    let rep = run_suite(&groups, &["frobenius", "iiyori_yamaki"], &CheckParams::default()).unwrap();
    let iy = rep.summary.per_check["iiyori_yamaki"].clone();
    verdict(
        bad.is_empty() && rep.all_passed(),
        format!("{} groups, {} divisibility failures; Iiyori-Yamaki non-vacuous on {} groups", groups.len(), bad.len(), iy.runs - iy.vacuous),
    )
}

fn c4() -> Outcome {
    let mut rows = vec![];
    let mut disagreements = 0;
    for g in catalog_upto(8).into_iter().filter(|g| g.order() == 8) {
        let mut bad = 0;
        for bits in 0u32..256 {
            let x = Subset::from_fn(8, |i| bits >> i & 1 == 1);
            for k in 1..=3 {
                bad += usize::from(is_k_large(&g, &x, k).unwrap().0 != naive_is_k_large(&g, &x, k).unwrap());
            }
        }
        disagreements += bad;
        rows.push(json!({"group": g.label(), "subsets": 256, "disagreements": bad}));
    }
    let mut o = verdict(disagreements == 0 && rows.len() >= 5, format!("{} groups of order 8, {disagreements} disagreements", rows.len()));
    o.report = Some(serde_json::to_string_pretty(&rows).unwrap());
    o
}

fn c5() -> Outcome {
    let groups = catalog_upto(24);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    for i in 0..1000 {
        let g = &groups[i % groups.len()];
        let n = g.order();
        let density = rng.gen_range(0.05..1.0);
        let x = Subset::from_fn(n, |_| rng.gen_bool(density));
        let m = x.count() as i64;
        for k in 1..=4i64 {
            if !x.is_empty() && is_k_generic(g, &x, k as usize).unwrap().0 && r(m, n as i64) < r(1, k) {
                violations += 1;
            }
            if r(m, n as i64) > r(1, 1) - r(1, k) && !is_k_large(g, &x, k as usize).unwrap().0 {
                violations += 1;
            }
        }
    }
    verdict(violations == 0, format!("1000 subsets, k ≤ 4, {violations} violations"))
}

fn c6() -> Outcome {
    let t = Instant::now();
    let mut bad = 0;
    let mut hit = 0;
    for g in catalog_upto(8) {
        let n = g.order();
        for bits in 1u32..(1 << n) - 1 {
            let x = Subset::from_fn(n, |i| bits >> i & 1 == 1);
            let d = n - x.count();
            if d * (d + 1) < n - 1 {
                hit += 1;
                bad += usize::from(!is_k_generic(&g, &x, 2).unwrap().0);
            }
        }
    }
    let sweep1 = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let groups = catalog_upto(24);
    let mut eq_hits = 0;
    for g in &groups {
        let n = g.order();
        for l in 1..=12i64 {
            if !(l as usize).is_multiple_of(g.exponent()) {
                eq_hits += 1;
                let free = n - power_count(g, l);
                bad += usize::from(2 * free * free < n);
            }
        }
    }
    let rep = run_suite(&groups, &["two_generic_threshold", "sqrt2n_bound"], &CheckParams::default()).unwrap();
    let sweep2 = t.elapsed().as_secs_f64();
    verdict(
        bad == 0 && rep.all_passed() && sweep1 < 60.0 && sweep2 < 60.0,
        format!("{hit} subsets above the 2-generic threshold, {eq_hits} (group, ℓ) pairs, {bad} violations"),
    )
}

/// Bracket templates over leaf slots.
#[derive(Clone, Copy)]
enum Tpl {
    Leaf,
    Comm(&'static Tpl, &'static Tpl),
}

const L: Tpl = Tpl::Leaf;
const AB: Tpl = Tpl::Comm(&L, &L);
const TEMPLATES: [Tpl; 4] = [AB, Tpl::Comm(&AB, &L), Tpl::Comm(&L, &AB), Tpl::Comm(&AB, &AB)];

fn leaves(t: &Tpl) -> usize {
    match t {
        Tpl::Leaf => 1,
        Tpl::Comm(a, b) => leaves(a) + leaves(b),
    }
}

fn build(t: &Tpl, labels: &mut impl Iterator<Item = Word>) -> Word {
    match t {
        Tpl::Leaf => labels.next().unwrap(),
        Tpl::Comm(a, b) => {
            let a = build(a, labels);
            Word::comm(a, build(b, labels))
        }
    }
}

/// Restricted-growth strings of length `len` using at most 3 labels.
fn rgs(len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                let top = s.iter().max().unwrap() + 1;
                (0..=top.min(2)).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn shapes() -> Vec<Word> {
    let mut out = vec![];
    for t in &TEMPLATES {
        for labels in rgs(leaves(t)) {
            for invert_first in [false, true] {
                let mut it = labels.iter().enumerate().map(|(i, &v)| {
                    let w = Word::var(v);
                    if invert_first && i == 0 {
                        w.inv()
                    } else {
                        w
                    }
                });
                out.push(build(t, &mut it));
            }
        }
    }
    out
}

fn product_value(g: &Group, ws: &[Compiled], a: &[usize], stack: &mut Vec<usize>) -> usize {
    ws.iter().fold(g.identity(), |acc, c| g.mul(acc, c.eval_with(g, a, stack)))
}

fn c7() -> Outcome {
    let groups: Vec<Group> = ["S3", "D4", "Q8", "H3"].iter().map(|s| catalog(s).unwrap()).collect();
    let none = Bindings::new();
    let shapes = shapes();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut cases, mut skipped, mut bad_identity, mut bad_dagger, mut singleton_skips) = (0, 0, 0, 0, 0);
    for v in &shapes {
        let vars: Vec<usize> = v.vars().into_iter().collect();
        for mask in 1..(1u32 << vars.len()) {
            let xs: Vec<usize> = vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            let zs: Vec<usize> = vars.iter().copied().filter(|x| !xs.contains(x)).collect();
            let ys: Vec<usize> = (0..xs.len()).map(|i| 3 + i).collect();
            let lin = match linearize(v, &xs, &ys, &zs) {
                Ok(l) => l,
                Err(eqlarge::Error::Budget(_)) => {
                    skipped += 1;
                    singleton_skips += usize::from(xs.len() == 1);
                    continue;
                }
                Err(e) => panic!("{v} {xs:?}: {e}"),
            };
            cases += 1;
            bad_dagger += usize::from(!lin.check_dagger(&xs, &ys, &zs));
            let lhs = substituted(v, &xs, &ys);
            for g in &groups {
                let left = Compiled::new(g, &lhs, &none).unwrap();
                let right: Vec<Compiled> = lin.rhs_factors().iter().map(|w| Compiled::new(g, w, &none).unwrap()).collect();
                let mut stack = Vec::with_capacity(64);
                for _ in 0..100 {
                    let a: Vec<usize> = (0..6).map(|_| rng.gen_range(0..g.order())).collect();
                    bad_identity += usize::from(left.eval(g, &a) != product_value(g, &right, &a, &mut stack));
                }
            }
        }
    }
    verdict(
        shapes.len() >= 50 && bad_identity == 0 && bad_dagger == 0 && singleton_skips == 0,
        format!(
            "{} shapes, {cases} (shape, x̄) cases × 4 groups × 100 assignments, {skipped} skipped over the factor cap, {bad_identity} identity and {bad_dagger} (†) failures",
            shapes.len()
        ),
    )
}

fn c8() -> Outcome {
    let groups = catalog_upto(16);
    let p = CheckParams::default();
    let rep = run_suite(&groups, &all_check_ids(), &p).unwrap();
    let find = |id: &str, g: &str| rep.results.iter().find(|x| x.id == id && x.group == g).unwrap();
    let mut notes = vec![];
    let cube = find("cube_67", "S3");
    let cube_ok = cube.passed && !cube.vacuous && cube.margin == Some(r(6, 7) - r(1, 2));
    notes.push(format!("cube_67 S3 margin {}", cube.margin.unwrap()));
    let comm_ok = groups.iter().filter(|g| !g.is_abelian()).all(|g| {
        let x = find("comm_abelian", g.label());
        x.passed && !x.vacuous
    });
    let nilp_ok = ["D4", "Q8"].iter().all(|g| {
        let x = find("nilp_mc", g);
        !x.vacuous && x.witness.as_ref().unwrap()["example"]["k"] == 1
    });
    let ac = find("autocomm", "S3");
    let full: Value = (0..6).collect::<Vec<usize>>().into();
    let ac_ok = !ac.vacuous
        && ac.witness.as_ref().unwrap()["all"]
            .as_array()
            .unwrap()
            .iter()
            .any(|v| v["sigma"] == "Inn" && v["H"] == full && v["ac"] == "1/2");
    let s = &rep.summary;
    let ok = rep.all_passed() && s.exercised() >= 20 && cube_ok && comm_ok && nilp_ok && ac_ok;
    let mut o = verdict(
        ok,
        format!(
            "{} checks × {} groups: {} runs, {} failed, {} vacuous, {} exercised; {}",
            all_check_ids().len(),
            groups.len(),
            s.total,
            s.failed,
            s.vacuous,
            s.exercised(),
            notes.join(", ")
        ),
    );
    o.report = Some(rep.to_json().unwrap());
    o
}

fn c9() -> Outcome {
    let budget = SearchBudget::default();
    let mut found = vec![];
    for q in ["oq_cube_5large", "oq_comm_2large_c"] {
        if let Some(c) = search_counterexample(q, catalog_upto(24), &budget).unwrap() {
            found.push((q, c));
        }
    }
    if found.is_empty() {
        return pass("no counterexample over catalog ≤ 24".into());
    }
    let known = found.iter().all(|(q, c)| KNOWN_FINDINGS.contains(&(*q, c.group.as_str())));
    let detail = found.iter().map(|(q, c)| format!("{q}: {} {}", c.group, c.data)).collect::<Vec<_>>().join("; ");
    Outcome { pass: false, known, detail: format!("re-verified counterexamples found: {detail}"), report: None }
}

fn main() {
    let mut failures = 0;
    let mut reports: Vec<(usize, String)> = vec![];
    let criteria: [(usize, fn() -> Outcome); 9] = [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9)];
    for (n, f) in criteria {
        let t = Instant::now();
        let o = f();
        let tag = match (o.pass, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known finding)",
            (false, false) => "FAIL",
        };
        println!("criterion {n}: {tag} [{:.2}s] {}", t.elapsed().as_secs_f64(), o.detail);
        failures += usize::from(!o.pass && !o.known);
        if let Some(rep) = o.report {
            reports.push((n, rep));
        }
    }
    let t = Instant::now();
    let again: Vec<(usize, String)> =
        [(2, c2 as fn() -> Outcome), (4, c4), (8, c8)].iter().map(|(n, f)| (*n, f().report.unwrap())).collect();
    let same = again.iter().all(|(n, rep)| reports.iter().any(|(m, first)| m == n && first == rep));
    let ids: BTreeSet<usize> = again.iter().map(|x| x.0).collect();
    println!(
        "criterion 10: {} [{:.2}s] JSON reports of criteria {ids:?} byte-identical across two runs",
        if same { "PASS" } else { "FAIL" },
        t.elapsed().as_secs_f64()
    );
    failures += usize::from(!same);
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
