//! Registry entries. Each check sweeps a documented instance family and
//! records hypothesis, conclusion and margin per instance.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{CheckParams, CheckSpec, Tally};
use crate::error::Result;
use crate::exec::{self, Strategy};
use crate::group::{
    automorphism_group, center, class_count, conjugacy_classes, inner_automorphisms, is_2_engel, is_subgroup,
    max_centralizer_index, mc_witness, nilpotency_class, subgroup_as_group, subgroups, ActionGroup, Group,
};
use crate::largeness::{is_k_generic, is_k_large};
use crate::probability::{autocommutativity_degree, fixed_subgroup, solution_group, tuple_count, Rational, INDEX_BOUND};
use crate::subset::Subset;
use crate::word::{parse_word, Bindings, Compiled, Word};

/// Constant sweeps cover the whole group up to this order.
pub const SWEEP_ALL_BOUND: usize = 24;
/// Tuple budget for sweeps whose arity grows with a parameter.
const SWEEP_TUPLES: usize = 1 << 20;
/// Largest `|Σ|·|H|` on which the fixed-pair set gets a largeness test.
const AC_LARGENESS_BOUND: usize = 1024;
/// Larger automorphism groups are left out of the autocommutativity sweep.
const AC_AUT_BOUND: usize = 512;

pub(super) static REGISTRY: &[CheckSpec] = &[
    spec("frobenius", "d | |G| ⇒ d divides #{x : x^d = 1}", "every divisor d of |G|", 4096, frobenius),
    spec("miller_bound", "G non-abelian ⇒ μ(x²=1) ≤ 3/4", "single instance", 4096, miller_bound),
    spec("laffey_p", "p | |G| prime, G not a p-group ⇒ μ(x^p=1) ≤ p/(p+1)", "every prime divisor p", 4096, laffey_p),
    spec("iiyori_yamaki", "#{x : x^d = 1} = d ⇒ that set is a subgroup", "every divisor d of |G|", 4096, iiyori_yamaki),
    spec("erdos_turan", "μ([x,y]=1) = k(G)/|G|", "single instance", 64, erdos_turan),
    spec("gustafson_58", "G non-abelian ⇒ μ([x,y]=1) ≤ 5/8", "single instance", 64, gustafson_58),
    spec(
        "two_generic_threshold",
        "m > n−½−√(n−¾) ⇒ X 2-generic; m < ½+√(n−¾) ⇒ X not 2-large",
        "prefix, suffix and random subsets of every size",
        64,
        two_generic_threshold,
    ),
    spec("sqrt2n_bound", "exponent ∤ ℓ ⇒ μ(x^ℓ=1) ≤ 1−1/√(2n)", "ℓ = 1..=max_exponent", 4096, sqrt2n_bound),
    spec(
        "measure_lemma",
        "|X|/|G| > 1−1/k ⇒ X k-large; X k-generic ⇒ |X|/|G| ≥ 1/k",
        "random subsets, k = 1..=4",
        64,
        measure_lemma,
    ),
    spec(
        "subgroup_lemma",
        "X kℓ-large, |G:H| = k ⇒ X∩H ℓ-large in H",
        "every subgroup H, random dense X, ℓ = 1..=3",
        32,
        subgroup_lemma,
    ),
    spec(
        "bfc_bound",
        "w(x̄,ḡ)=c not an identity ⇒ μ ≤ 1−1/(2k^{n²+mn}), k = largest class size",
        "fixed word family with n ≤ 2, m ≤ 1; all g, c",
        64,
        bfc_bound,
    ),
    spec(
        "center_by_finite",
        "w(x̄,ḡ)=c not an identity ⇒ μ ≤ 1−1/(2k^n), k = |G:Z(G)|",
        "fixed word family; all g, c",
        64,
        center_by_finite,
    ),
    spec(
        "central_identity",
        "w(x̄,ḡ)=c 2-large ⇒ w(z̄,1)=1 on Z(G)^n",
        "fixed word family; all g, c",
        24,
        central_identity,
    ),
    spec(
        "center_gcd",
        "x₁^{k₁}…x_n^{k_n}=c 2-large ⇒ exponent of Z(G) divides gcd(k_i)",
        "fixed exponent vectors; all c",
        24,
        center_gcd,
    ),
    spec(
        "square_eq",
        "not (abelian of exponent 2 and c=1) ⇒ μ(x²=c) ≤ 3/4",
        "all c",
        4096,
        square_eq,
    ),
    spec(
        "xaxb",
        "{x : xax=b} = {x : (ax)²=ab}; not (exponent 2 and a=b) ⇒ μ(xax=b) ≤ 3/4",
        "all a, b",
        256,
        xaxb,
    ),
    spec("cube_7large_engel", "x³=1 7-large ⇒ G 2-Engel", "single instance", 256, cube_7large_engel),
    spec("cube_2large_exp3", "G 2-Engel and x³=1 2-large ⇒ exponent divides 3", "single instance", 256, cube_2large_exp3),
    spec(
        "cube_67",
        "exponent ∤ 3 ⇒ μ(x³=1) ≤ 6/7, and ≤ 1/2 when G is 2-Engel",
        "single instance",
        4096,
        cube_67,
    ),
    spec(
        "comm_product",
        "Π[x_i,g_i]=c 2-large ⇒ every g_i central and c=1",
        "one and two factors, either bracket order; all g_i, c",
        24,
        comm_product,
    ),
    spec("comm_abelian", "not (abelian and c=1) ⇒ μ([x,y]=c) ≤ 3/4", "all c", 64, comm_abelian),
    spec(
        "word_comm_abelian",
        "w(x̄,ḡ)[x,y]=c 4-large ⇒ G abelian and w(x̄,ḡ)=c identically",
        "fixed word family; all g, c",
        24,
        word_comm_abelian,
    ),
    spec(
        "conj_comm",
        "[g,h^x]=1 k-large, k = min(|G:C(g)|,|G:C(h)|) ⇒ g^G and h^G commute",
        "all g, h",
        64,
        conj_comm,
    ),
    spec(
        "triple_comm",
        "[x,g,h]=c 2k-large, k = |G:C(h)| ⇒ [G,g,h]=1; [g,x,h]=c 2k-large with c central ⇒ [g,G,h]=1",
        "all g, h, c",
        32,
        triple_comm,
    ),
    spec(
        "nilp_mc",
        "not (class ≤ k and c=1) ⇒ μ([x₀,…,x_k]=c) ≤ 1−½(s+1)^{−k}, s from minimal centralizer witnesses",
        "k = 1..=max_commutator_length within the tuple budget; all c",
        64,
        nilp_mc,
    ),
    spec(
        "supercomm_const",
        "G nilpotent of class k, factors with var′ ≥ n, v(x̄,ḡ)=c max(2^{k−n},1)-large ⇒ c=1",
        "fixed supercommutator family; all constants, c",
        24,
        supercomm_const,
    ),
    spec(
        "nilpotent_identity",
        "G nilpotent of class k, v(x̄,ḡ)=c 2^k-large ⇒ v(x̄,ḡ)=c identically",
        "fixed product family; all constants, c",
        24,
        nilpotent_identity,
    ),
    spec(
        "nilpotent_exponent",
        "G nilpotent of class k, x^ℓ=c 2^k-large ⇒ c=1 and exponent divides ℓ",
        "ℓ = 1..=max_exponent; all c",
        64,
        nilpotent_exponent,
    ),
    spec(
        "autocomm",
        "H ≰ Fix(Σ) ⇒ ac(H;Σ) ≤ 3/4; fixed pairs 4-large in Σ×H ⇒ H ≤ Fix(Σ)",
        "every subgroup H; Σ = Inn(G), and Aut(G) when small",
        32,
        autocomm,
    ),
];

const fn spec(
    id: &'static str,
    statement: &'static str,
    parameters: &'static str,
    max_order: usize,
    run: fn(&Group, &CheckParams, &mut Tally) -> Result<()>,
) -> CheckSpec {
    CheckSpec { id, statement, parameters, max_order, run }
}

// ---------------------------------------------------------------- helpers

fn ratio(a: usize, b: usize) -> Rational {
    Rational::new(a as i64, b as i64)
}

fn ratio_json(r: Rational) -> Value {
    json!(format!("{}/{}", r.numer(), r.denom()))
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Group exponent divides `l`.
fn exponent_divides(g: &Group, l: usize) -> bool {
    l.is_multiple_of(g.exponent())
}

fn rng_for(g: &Group, params: &CheckParams, salt: u64) -> ChaCha8Rng {
    // FNV-1a over the label keeps streams distinct per group.
    let h = g.label().bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(params.seed ^ h ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// All of `G` when small, else `{1, an element of largest order, the first
/// non-central element}`.
pub fn sweep_constants(g: &Group) -> Vec<usize> {
    let n = g.order();
    if n <= SWEEP_ALL_BOUND {
        return (0..n).collect();
    }
    let e = g.identity();
    let big = (0..n).max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x))).unwrap_or(e);
    let z = center(g);
    let mut out = vec![e, big];
    out.extend((0..n).find(|&x| !z.contains(x)));
    out.sort_unstable();
    out.dedup();
    out
}

/// Values of `w` on every tuple of `G^arity`, last variable fastest.
fn values(g: &Group, w: &Word, arity: usize, b: &Bindings, strategy: Strategy) -> Result<Vec<usize>> {
    let total = tuple_count(g, arity, INDEX_BOUND)?;
    let c = Compiled::new(g, w, b)?;
    let n = g.order();
    if arity == 0 {
        return Ok(vec![c.eval(g, &[])]);
    }
    let block = total / n;
    let chunks = exec::map_range(strategy, n, |first| {
        let mut a = vec![0usize; arity];
        a[0] = first;
        let mut stack = Vec::with_capacity(16);
        (0..block)
            .map(|j| {
                let mut r = j;
                for slot in a[1..].iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                c.eval_with(g, &a, &mut stack)
            })
            .collect::<Vec<_>>()
    });
    Ok(chunks.concat())
}

fn histogram(vals: &[usize], n: usize) -> Vec<usize> {
    let mut h = vec![0; n];
    for &v in vals {
        h[v] += 1;
    }
    h
}

fn level(vals: &[usize], c: usize) -> Subset {
    Subset::from_fn(vals.len(), |i| vals[i] == c)
}

/// k-largeness with cheap exits: `k ≥ |G|` forces `X = G`; 2-large means
/// `XX⁻¹ = G`, which needs `m(m−1)+1 ≥ |G|`; k-large implies 2-large.
fn large(g: &Group, x: &Subset, k: usize) -> Result<bool> {
    if k >= g.order() {
        return Ok(x.is_full());
    }
    let m = x.count();
    if k >= 2 && m * m.saturating_sub(1) + 1 < g.order() {
        return Ok(false);
    }
    if k > 2 && !is_k_large(g, x, 2)?.0 {
        return Ok(false);
    }
    Ok(is_k_large(g, x, k)?.0)
}

fn word(text: &str) -> Result<Word> {
    parse_word(text)
}

fn bind(pairs: &[(&str, usize)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Every assignment of `values` to `names`, first name slowest.
fn assignments(names: &[String], values: &[usize]) -> Vec<Bindings> {
    let mut out = vec![Bindings::new()];
    for name in names {
        out = out
            .into_iter()
            .flat_map(|b| {
                values.iter().map(move |&v| {
                    let mut b = b.clone();
                    b.insert(name.clone(), v);
                    b
                })
            })
            .collect();
    }
    out
}

fn binding_json(g: &Group, b: &Bindings) -> Value {
    Value::Object(b.iter().map(|(k, &v)| (k.clone(), json!(g.name(v)))).collect())
}

fn count_power(g: &Group, l: usize, params: &CheckParams) -> Result<Vec<usize>> {
    Ok(histogram(&values(g, &word(&format!("x1^{l}"))?, 1, &Bindings::new(), params.strategy)?, g.order()))
}

// ---------------------------------------------------- counting and bounds

fn frobenius(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    t.keep_all();
    let e = g.identity();
    for d in divisors(g.order()) {
        let count = count_power(g, d, params)?[e];
        t.record(true, count % d == 0, None, || json!({"d": d, "count": count}));
    }
    Ok(())
}

fn miller_bound(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let mu = ratio(count_power(g, 2, params)?[g.identity()], n);
    let margin = ratio(3, 4) - mu;
    t.record(!g.is_abelian(), margin >= ratio(0, 1), Some(margin), || json!({"mu": ratio_json(mu)}));
    Ok(())
}

fn laffey_p(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    for p in divisors(n).into_iter().filter(|&p| is_prime(p)) {
        let mut rest = n;
        while rest.is_multiple_of(p) {
            rest /= p;
        }
        let mu = ratio(count_power(g, p, params)?[g.identity()], n);
        let margin = ratio(p, p + 1) - mu;
        t.record(rest > 1, margin >= ratio(0, 1), Some(margin), || json!({"p": p, "mu": ratio_json(mu)}));
    }
    Ok(())
}

fn iiyori_yamaki(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let e = g.identity();
    for d in divisors(g.order()) {
        let vals = values(g, &word(&format!("x1^{d}"))?, 1, &Bindings::new(), params.strategy)?;
        let x = level(&vals, e);
        let count = x.count();
        t.record(count == d, is_subgroup(g, &x), None, || json!({"d": d, "solutions": x.to_vec()}));
    }
    Ok(())
}

fn commutator_values(g: &Group, params: &CheckParams) -> Result<Vec<usize>> {
    values(g, &word("[x1,x2]")?, 2, &Bindings::new(), params.strategy)
}

fn erdos_turan(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let count = histogram(&commutator_values(g, params)?, n)[g.identity()];
    let mu = ratio(count, n * n);
    let classes = class_count(g);
    let margin = ratio(classes, n) - mu;
    t.record(true, margin == ratio(0, 1), Some(margin), || json!({"mu": ratio_json(mu), "classes": classes}));
    Ok(())
}

fn gustafson_58(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let mu = ratio(histogram(&commutator_values(g, params)?, n)[g.identity()], n * n);
    let margin = ratio(5, 8) - mu;
    t.record(!g.is_abelian(), margin >= ratio(0, 1), Some(margin), || json!({"mu": ratio_json(mu)}));
    Ok(())
}

fn two_generic_threshold(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let mut rng = rng_for(g, params, 1);
    for m in 1..n {
        let mut family = vec![Subset::from_indices(n, 0..m), Subset::from_indices(n, n - m..n)];
        for _ in 0..2 {
            let mut idx: Vec<usize> = (0..n).collect();
            for i in 0..m {
                let j = rng.gen_range(i..n);
                idx.swap(i, j);
            }
            family.push(Subset::from_indices(n, idx[..m].iter().copied()));
        }
        let d = n - m;
        for x in family {
            // m > n − ½ − √(n − ¾)  ⇔  d(d+1) < n − 1
            let generic = is_k_generic(g, &x, 2)?.0;
            t.record(d * (d + 1) < n - 1, generic, None, || json!({"kind": "2-generic", "subset": x.to_vec()}));
            // m < ½ + √(n − ¾)  ⇔  m(m−1) < n − 1
            let large2 = is_k_large(g, &x, 2)?.0;
            t.record(m * (m - 1) < n - 1, !large2, None, || json!({"kind": "not 2-large", "subset": x.to_vec()}));
        }
    }
    Ok(())
}

fn sqrt2n_bound(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    for l in 1..=params.max_exponent {
        let m = count_power(g, l, params)?[g.identity()];
        // m/n ≤ 1 − 1/√(2n)  ⇔  2(n−m)² ≥ n
        let slack = 2 * (n - m) * (n - m);
        t.record(!exponent_divides(g, l), slack >= n, None, || {
            json!({"l": l, "mu": ratio_json(ratio(m, n)), "slack": slack as i64 - n as i64})
        });
    }
    Ok(())
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Subset {
    Subset::from_fn(n, |_| rng.gen_bool(density))
}

fn measure_lemma(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let mut rng = rng_for(g, params, 2);
    for _ in 0..params.random_subsets {
        let density = rng.gen_range(0.3..1.0);
        let x = random_subset(&mut rng, n, density);
        let m = x.count();
        for k in 1..=4 {
            let large_k = is_k_large(g, &x, k)?.0;
            t.record(m * k > n * (k - 1), large_k, None, || json!({"k": k, "direction": "dense ⇒ large", "subset": x.to_vec()}));
            let generic = is_k_generic(g, &x, k)?.0;
            let margin = ratio(m, n) - ratio(1, k);
            t.record(generic, m * k >= n, Some(margin), || {
                json!({"k": k, "direction": "generic ⇒ dense", "subset": x.to_vec()})
            });
        }
    }
    Ok(())
}

fn subgroup_lemma(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let mut rng = rng_for(g, params, 3);
    for h in subgroups(g) {
        let sub = subgroup_as_group(g, &h).expect("listed subgroups are subgroups");
        let k = n / h.count();
        for _ in 0..4 {
            let density = 1.0 - rng.gen_range(0.0..0.5) / k as f64;
            let x = random_subset(&mut rng, n, density);
            for l in 1..=3 {
                let hyp = large(g, &x, k * l)?;
                let concl = !hyp || large(&sub.group, &sub.restrict(&x), l)?;
                t.record(hyp, concl, None, || json!({"H": h.to_vec(), "l": l, "subset": x.to_vec()}));
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------ word families

/// `(word, variables n, parameters m)`; the parameter is named `g` and the
/// right-hand side `c` is swept separately.
pub const BFC_WORDS: &[(&str, usize, usize)] = &[
    ("x1^2", 1, 0),
    ("x1^3", 1, 0),
    ("[x1,g]", 1, 1),
    ("x1*g*x1", 1, 1),
    ("x1*g*x2", 2, 1),
    ("[x1,x2]", 2, 0),
    ("[x1,x2]*x1^3", 2, 0),
];

/// `(w(x̄,g)·[x1,x2], w)` with `x̄ = (x1)` and `x2` outside `x̄`.
pub const WORD_COMM_WORDS: &[(&str, &str)] = &[
    ("x1*[x1,x2]", "x1"),
    ("x1^2*[x1,x2]", "x1^2"),
    ("[x1,g]*[x1,x2]", "[x1,g]"),
    ("x1*g*x1*[x1,x2]", "x1*g*x1"),
    ("[x1,x2]", "1"),
];

/// Exponent vectors for `x₁^{k₁}…x_n^{k_n} = c`.
pub const CENTER_GCD_EXPONENTS: &[&[usize]] = &[&[2], &[3], &[4], &[6], &[2, 4], &[3, 6], &[2, 3], &[4, 6]];

/// `(word, arity)` with parameters `g_i`.
pub const COMM_PRODUCT_WORDS: &[(&str, usize)] =
    &[("[x1,g1]", 1), ("[g1,x1]", 1), ("[x1,g1]*[x2,g2]", 2), ("[x1,g1]*[g2,x2]", 2)];

/// Products of supercommutators whose factors all contain a variable. The
/// named constants stand for the outside tuple, so a factor's `var′` is the
/// number of distinct constants in it.
pub const SUPERCOMMUTATOR_WORDS: &[&str] =
    &["[x1,g]", "[x1,g,h]", "[x1,g]*[x2,h]", "[[x1,x2],g]", "[x1,g]*[x1,h]", "[x1,x2]", "x1*[x2,g]", "x1*x1"];

/// Products of supercommutators, constants allowed as factors.
pub const NILPOTENT_WORDS: &[&str] =
    &["x1*x1", "x1*x1*x1", "[x1,g]", "x1*g*x2", "[x1,x2]*x1*x1*x1", "[x1,x2]", "[x1,g,x2]", "x1*g"];

/// Smallest number of distinct constants over the factors of `w`.
pub fn min_outside_count(w: &Word) -> usize {
    w.factors().iter().map(|f| f.constants().len()).min().unwrap_or(0)
}

fn names_of(w: &Word) -> Vec<String> {
    w.constants().into_iter().collect()
}

fn tuple_coords(mut i: usize, n: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = i % n;
        i /= n;
    }
    out
}

fn zero() -> Rational {
    Rational::from_integer(0)
}

fn word_bounds(g: &Group, params: &CheckParams, t: &mut Tally, kind: &str, bound: impl Fn(usize, usize) -> Rational) -> Result<()> {
    let n = g.order();
    let cs = sweep_constants(g);
    for &(text, nv, m) in BFC_WORDS {
        let w = word(text)?;
        let b = bound(nv, m);
        let params_g = if m == 0 { vec![g.identity()] } else { cs.clone() };
        for &gv in &params_g {
            let vals = values(g, &w, nv, &bind(&[("g", gv)]), params.strategy)?;
            let hist = histogram(&vals, n);
            for &c in &cs {
                let mu = ratio(hist[c], vals.len());
                let margin = b - mu;
                t.record(hist[c] < vals.len(), margin >= zero(), Some(margin), || {
                    json!({"word": text, "g": g.name(gv), "c": g.name(c), "mu": ratio_json(mu), kind: ratio_json(b)})
                });
            }
        }
    }
    Ok(())
}

fn bfc_bound(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let k = max_centralizer_index(g) as i64;
    t.note("k", json!(k));
    word_bounds(g, params, t, "bound", |nv, m| {
        let e = (nv * nv + m * nv) as u32;
        Rational::from_integer(1) - Rational::new(1, 2 * k.pow(e))
    })
}

fn center_by_finite(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let k = (g.order() / center(g).count()) as i64;
    t.note("k", json!(k));
    word_bounds(g, params, t, "bound", |nv, _| Rational::from_integer(1) - Rational::new(1, 2 * k.pow(nv as u32)))
}

fn central_identity(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let (n, e) = (g.order(), g.identity());
    let z = center(g);
    let cs = sweep_constants(g);
    for &(text, nv, m) in BFC_WORDS {
        let w = word(text)?;
        let gn = solution_group(g, nv)?;
        let at_one = values(g, &w, nv, &bind(&[("g", e)]), params.strategy)?;
        let concl = (0..at_one.len()).all(|i| at_one[i] == e || !tuple_coords(i, n, nv).iter().all(|&x| z.contains(x)));
        let params_g = if m == 0 { vec![e] } else { cs.clone() };
        for &gv in &params_g {
            let vals = values(g, &w, nv, &bind(&[("g", gv)]), params.strategy)?;
            for &c in &cs {
                let hyp = large(&gn, &level(&vals, c), 2)?;
                t.record(hyp, concl, None, || json!({"word": text, "g": g.name(gv), "c": g.name(c)}));
            }
        }
    }
    Ok(())
}

fn center_gcd(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let z = center(g);
    let exp_z = z.iter().map(|x| g.element_order(x)).fold(1, |a, b| a.lcm(&b));
    t.note("center_exponent", json!(exp_z));
    for ks in CENTER_GCD_EXPONENTS {
        let text = ks.iter().enumerate().map(|(i, k)| format!("x{}^{k}", i + 1)).collect::<Vec<_>>().join("*");
        let gcd = ks.iter().fold(0, |a, b| a.gcd(b));
        let gn = solution_group(g, ks.len())?;
        let vals = values(g, &word(&text)?, ks.len(), &Bindings::new(), params.strategy)?;
        for c in sweep_constants(g) {
            let hyp = large(&gn, &level(&vals, c), 2)?;
            t.record(hyp, gcd % exp_z == 0, None, || json!({"word": text, "c": g.name(c), "gcd": gcd}));
        }
    }
    Ok(())
}

// ------------------------------------------------- squares, cubes, Engel

fn square_eq(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let hist = count_power(g, 2, params)?;
    let elementary = g.is_abelian() && exponent_divides(g, 2);
    for c in sweep_constants(g) {
        let mu = ratio(hist[c], n);
        let margin = ratio(3, 4) - mu;
        let hyp = !(elementary && c == g.identity());
        t.record(hyp, margin >= zero(), Some(margin), || json!({"c": g.name(c), "mu": ratio_json(mu)}));
    }
    Ok(())
}

fn xaxb(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let (w1, w2) = (word("x1*a*x1")?, word("(a*x1)^2")?);
    let cs = sweep_constants(g);
    for &a in &cs {
        let b_a = bind(&[("a", a)]);
        let v1 = values(g, &w1, 1, &b_a, params.strategy)?;
        let v2 = values(g, &w2, 1, &b_a, params.strategy)?;
        for &b in &cs {
            let ab = g.mul(a, b);
            let same = (0..n).all(|x| (v1[x] == b) == (v2[x] == ab));
            t.record(true, same, None, || json!({"kind": "substitution", "a": g.name(a), "b": g.name(b)}));
            let mu = ratio(v1.iter().filter(|&&v| v == b).count(), n);
            let margin = ratio(3, 4) - mu;
            let hyp = !(exponent_divides(g, 2) && a == b);
            t.record(hyp, margin >= zero(), Some(margin), || {
                json!({"kind": "bound", "a": g.name(a), "b": g.name(b), "mu": ratio_json(mu)})
            });
        }
    }
    Ok(())
}

fn cubes(g: &Group, params: &CheckParams) -> Result<Subset> {
    let vals = values(g, &word("x1^3")?, 1, &Bindings::new(), params.strategy)?;
    Ok(level(&vals, g.identity()))
}

fn cube_7large_engel(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let x = cubes(g, params)?;
    let hyp = large(g, &x, 7)?;
    t.record(hyp, is_2_engel(g), None, || json!({"solutions": x.count()}));
    Ok(())
}

fn cube_2large_exp3(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let x = cubes(g, params)?;
    let engel = is_2_engel(g);
    let hyp = engel && large(g, &x, 2)?;
    t.record(hyp, exponent_divides(g, 3), None, || json!({"solutions": x.count(), "exponent": g.exponent()}));
    Ok(())
}

fn cube_67(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let mu = ratio(cubes(g, params)?.count(), g.order());
    let hyp = !exponent_divides(g, 3);
    let margin = ratio(6, 7) - mu;
    t.record(hyp, margin >= zero(), Some(margin), || json!({"bound": "6/7", "mu": ratio_json(mu)}));
    let margin = ratio(1, 2) - mu;
    t.record(hyp && is_2_engel(g), margin >= zero(), Some(margin), || json!({"bound": "1/2", "mu": ratio_json(mu)}));
    Ok(())
}

// ----------------------------------------------------------- commutators

fn comm_product(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let z = center(g);
    let cs = sweep_constants(g);
    for &(text, arity) in COMM_PRODUCT_WORDS {
        let w = word(text)?;
        let gn = solution_group(g, arity)?;
        for b in assignments(&names_of(&w), &cs) {
            let central = b.values().all(|&v| z.contains(v));
            let vals = values(g, &w, arity, &b, params.strategy)?;
            for &c in &cs {
                let hyp = large(&gn, &level(&vals, c), 2)?;
                t.record(hyp, central && c == g.identity(), None, || {
                    json!({"word": text, "constants": binding_json(g, &b), "c": g.name(c)})
                });
            }
        }
    }
    Ok(())
}

fn comm_abelian(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let hist = histogram(&commutator_values(g, params)?, n);
    for c in sweep_constants(g) {
        let mu = ratio(hist[c], n * n);
        let margin = ratio(3, 4) - mu;
        let hyp = !(g.is_abelian() && c == g.identity());
        t.record(hyp, margin >= zero(), Some(margin), || json!({"c": g.name(c), "mu": ratio_json(mu)}));
    }
    Ok(())
}

fn word_comm_abelian(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let cs = sweep_constants(g);
    let g2 = solution_group(g, 2)?;
    for &(full, inner) in WORD_COMM_WORDS {
        let (wf, wi) = (word(full)?, word(inner)?);
        let params_g = if wf.constants().is_empty() { vec![g.identity()] } else { cs.clone() };
        for &gv in &params_g {
            let b = bind(&[("g", gv)]);
            let vals = values(g, &wf, 2, &b, params.strategy)?;
            let inner_vals = values(g, &wi, 1, &b, params.strategy)?;
            for &c in &cs {
                let hyp = large(&g2, &level(&vals, c), 4)?;
                let concl = g.is_abelian() && inner_vals.iter().all(|&v| v == c);
                t.record(hyp, concl, None, || json!({"word": full, "g": g.name(gv), "c": g.name(c)}));
            }
        }
    }
    Ok(())
}

/// `|G : C_G(x)|` for every element.
fn class_sizes(g: &Group) -> Vec<usize> {
    let mut out = vec![1; g.order()];
    for class in conjugacy_classes(g) {
        for &x in &class {
            out[x] = class.len();
        }
    }
    out
}

fn conj_comm(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let sizes = class_sizes(g);
    let w = word("[g,h^x1]")?;
    let cs = sweep_constants(g);
    for &gv in &cs {
        for &hv in &cs {
            let vals = values(g, &w, 1, &bind(&[("g", gv), ("h", hv)]), params.strategy)?;
            let x = level(&vals, g.identity());
            let k = sizes[gv].min(sizes[hv]);
            let hyp = large(g, &x, k)?;
            t.record(hyp, x.is_full(), None, || json!({"g": g.name(gv), "h": g.name(hv), "k": k}));
        }
    }
    Ok(())
}

fn triple_comm(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let (e, sizes, z) = (g.identity(), class_sizes(g), center(g));
    let (wa, wb) = (word("[x1,g,h]")?, word("[g,x1,h]")?);
    let cs = sweep_constants(g);
    for &gv in &cs {
        for &hv in &cs {
            let b = bind(&[("g", gv), ("h", hv)]);
            let va = values(g, &wa, 1, &b, params.strategy)?;
            let vb = values(g, &wb, 1, &b, params.strategy)?;
            let k2 = 2 * sizes[hv];
            let (ca, cb) = (va.iter().all(|&v| v == e), vb.iter().all(|&v| v == e));
            for &c in &cs {
                let hyp = large(g, &level(&va, c), k2)?;
                t.record(hyp, ca, None, || json!({"form": "[x,g,h]", "g": g.name(gv), "h": g.name(hv), "c": g.name(c)}));
                if z.contains(c) {
                    let hyp = large(g, &level(&vb, c), k2)?;
                    t.record(hyp, cb, None, || json!({"form": "[g,x,h]", "g": g.name(gv), "h": g.name(hv), "c": g.name(c)}));
                }
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------- nilpotent

fn nilp_mc(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let n = g.order();
    let class = nilpotency_class(g);
    let mut attained = vec![];
    for k in 1..=params.max_commutator_length {
        if (n as u128).pow(k as u32 + 1) > SWEEP_TUPLES as u128 {
            break;
        }
        let s = mc_witness(g, k)?.s;
        attained.push(json!({"k": k, "s": s}));
        let w = Word::left_normed((0..=k).map(Word::var));
        let vals = values(g, &w, k + 1, &Bindings::new(), params.strategy)?;
        let hist = histogram(&vals, n);
        let bound = Rational::from_integer(1) - Rational::new(1, 2 * (s as i64 + 1).pow(k as u32));
        for c in sweep_constants(g) {
            let mu = ratio(hist[c], vals.len());
            let margin = bound - mu;
            let hyp = !(class.is_some_and(|cl| cl <= k) && c == g.identity());
            t.record(hyp, margin >= zero(), Some(margin), || {
                json!({"k": k, "s": s, "c": g.name(c), "mu": ratio_json(mu), "bound": ratio_json(bound)})
            });
        }
    }
    t.note("mc_s", Value::Array(attained));
    Ok(())
}

fn supercomm_const(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let cs = sweep_constants(g);
    let class = nilpotency_class(g);
    for &text in SUPERCOMMUTATOR_WORDS {
        let w = word(text)?;
        let Some(k) = class else {
            t.record(false, true, None, || json!({}));
            continue;
        };
        let outside = min_outside_count(&w);
        let threshold = if k > outside { 1 << (k - outside) } else { 1 };
        let arity = w.arity();
        let gn = solution_group(g, arity)?;
        for b in assignments(&names_of(&w), &cs) {
            let vals = values(g, &w, arity, &b, params.strategy)?;
            for &c in &cs {
                let hyp = large(&gn, &level(&vals, c), threshold)?;
                t.record(hyp, c == g.identity(), None, || {
                    json!({"word": text, "constants": binding_json(g, &b), "c": g.name(c), "threshold": threshold})
                });
            }
        }
    }
    Ok(())
}

fn nilpotent_identity(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let cs = sweep_constants(g);
    let Some(k) = nilpotency_class(g) else {
        t.record(false, true, None, || json!({}));
        return Ok(());
    };
    for &text in NILPOTENT_WORDS {
        let w = word(text)?;
        let arity = w.arity();
        let gn = solution_group(g, arity)?;
        for b in assignments(&names_of(&w), &cs) {
            let vals = values(g, &w, arity, &b, params.strategy)?;
            for &c in &cs {
                let x = level(&vals, c);
                let hyp = large(&gn, &x, 1 << k)?;
                t.record(hyp, x.is_full(), None, || json!({"word": text, "constants": binding_json(g, &b), "c": g.name(c)}));
            }
        }
    }
    Ok(())
}

fn nilpotent_exponent(g: &Group, params: &CheckParams, t: &mut Tally) -> Result<()> {
    let Some(k) = nilpotency_class(g) else {
        t.record(false, true, None, || json!({}));
        return Ok(());
    };
    for l in 1..=params.max_exponent {
        let vals = values(g, &word(&format!("x1^{l}"))?, 1, &Bindings::new(), params.strategy)?;
        for c in sweep_constants(g) {
            let hyp = large(g, &level(&vals, c), 1 << k)?;
            let concl = c == g.identity() && exponent_divides(g, l);
            t.record(hyp, concl, None, || json!({"l": l, "c": g.name(c)}));
        }
    }
    Ok(())
}

// ---------------------------------------------------- autocommutativity

fn autocomm(g: &Group, _params: &CheckParams, t: &mut Tally) -> Result<()> {
    t.keep_all();
    let inn = inner_automorphisms(g)?;
    let mut sigmas: Vec<(&str, ActionGroup)> = vec![];
    match automorphism_group(g) {
        Ok(aut) if aut.group.order() > inn.group.order() && aut.group.order() <= AC_AUT_BOUND => sigmas.push(("Aut", aut)),
        Ok(aut) if aut.group.order() > AC_AUT_BOUND => t.note("aut_skipped", json!(aut.group.order())),
        Ok(_) => {}
        Err(e) => t.note("aut_skipped", json!(e.to_string())),
    }
    sigmas.insert(0, ("Inn", inn));
    let subs = subgroups(g);
    for (label, sigma) in &sigmas {
        let fix = fixed_subgroup(sigma);
        for h in &subs {
            let ac = autocommutativity_degree(g, h, sigma)?;
            let inside = h.is_subset_of(&fix);
            let degree = ac.degree.ratio();
            let margin = ratio(3, 4) - degree;
            let detail = || json!({"sigma": label, "H": h.to_vec(), "ac": ratio_json(degree)});
            t.record(!inside, margin >= zero(), Some(margin), detail);
            if ac.product.order() <= AC_LARGENESS_BOUND {
                let hyp = large(&ac.product, &ac.fixed_pairs, 4)?;
                t.record(hyp, inside, None, || json!({"sigma": label, "H": h.to_vec(), "form": "4-large"}));
            }
        }
    }
    Ok(())
}
