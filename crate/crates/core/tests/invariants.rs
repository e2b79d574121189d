use eqlarge::group::catalog::{catalog, catalog_upto};
use eqlarge::group::{derived_subgroup, lower_central_series, subgroup_as_group, Group};
use eqlarge::largeness::{is_k_generic, is_k_large, left_translate};
use eqlarge::probability::{solution_group, solution_set, Rational};
use eqlarge::word::{linearize, parse_equation, parse_word, substituted, var_profile, Bindings, Compiled, Equation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUPERCOMMUTATORS: &[&str] = &[
    "x1",
    "[x1,x2]",
    "[x1^-1,x2]",
    "[x1,x2,x3]",
    "[x1,x2,x1]",
    "[x1,[x2,x3]]",
    "[x1,[x1,x2]^-1]",
    "[x1,x2;2]",
    "[[x1,x2],[x3,x1]]",
    "[[x1,x2],[x1,x3]]",
    "[[x1^-1,x2],[x2,x3]]",
    "[x1,x2,x3,x1]",
];

const THREE_VAR_EQUATIONS: &[&str] =
    &["x1*x2*x3 = 1", "[x1,x2] = x3", "x1^2*x2 = x3^-1", "[x1,x2,x3] = 1", "x1*x2 = x2*x3", "x1^x2 = x3"];

fn none() -> Bindings {
    Bindings::new()
}

/// All tuples when there are few, else a seeded sample.
fn assignments(n: usize, arity: usize, seed: u64) -> Vec<Vec<usize>> {
    let total = (n as u64).pow(arity as u32);
    if total <= 20_000 {
        (0..total as usize)
            .map(|mut i| {
                let mut t = vec![0; arity];
                for s in t.iter_mut().rev() {
                    *s = i % n;
                    i /= n;
                }
                t
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..2000).map(|_| (0..arity).map(|_| rng.gen_range(0..n)).collect()).collect()
    }
}

fn range_lands_in_gamma(h: &Group) {
    let lower = lower_central_series(h);
    for text in SUPERCOMMUTATORS {
        let v = parse_word(text).unwrap();
        let k = var_profile(&v, &Default::default()).var;
        let gamma = &lower[(k - 1).min(lower.len() - 1)];
        let c = Compiled::new(h, &v, &none()).unwrap();
        for a in assignments(h.order(), v.arity(), 3) {
            let val = c.eval(h, &a);
            assert!(gamma.contains(val), "{text} on {} at {a:?}", h.label());
        }
    }
}

#[test]
fn supercommutator_values_lie_in_lower_central_term() {
    for g in catalog_upto(24) {
        range_lands_in_gamma(&g);
        let sub = subgroup_as_group(&g, &derived_subgroup(&g)).unwrap();
        range_lands_in_gamma(&sub.group);
    }
}

#[test]
fn linearization_identity_over_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let groups = catalog_upto(24);
    for text in SUPERCOMMUTATORS {
        let v = parse_word(text).unwrap();
        let vars: Vec<usize> = v.vars().into_iter().collect();
        // every single designated variable, plus all of them for short words
        let mut designations: Vec<Vec<usize>> = vars.iter().map(|&x| vec![x]).collect();
        if v.size() <= 7 && vars.len() > 1 {
            designations.push(vars.clone());
        }
        for xs in designations {
            let zs: Vec<usize> = vars.iter().copied().filter(|x| !xs.contains(x)).collect();
            let ys: Vec<usize> = (0..xs.len()).map(|i| 3 + i).collect();
            let lin = match linearize(&v, &xs, &ys, &zs) {
                Err(eqlarge::Error::Budget(_)) if xs.len() > 1 => continue,
                other => other.unwrap(),
            };
            assert!(lin.check_dagger(&xs, &ys, &zs), "{text} {xs:?}");
            let lhs = substituted(&v, &xs, &ys);
            for g in &groups {
                let left = Compiled::new(g, &lhs, &none()).unwrap();
                let right: Vec<Compiled> = lin.rhs_factors().iter().map(|w| Compiled::new(g, w, &none()).unwrap()).collect();
                for _ in 0..100 {
                    let a: Vec<usize> = (0..6).map(|_| rng.gen_range(0..g.order())).collect();
                    let r = right.iter().fold(g.identity(), |acc, c| g.mul(acc, c.eval(g, &a)));
                    assert_eq!(left.eval(g, &a), r, "{text} {xs:?} on {}", g.label());
                }
            }
        }
    }
}

#[test]
fn equation_measure_bridge() {
    let eqs = ["x1^2 = 1", "x1^3 = 1", "[x1,x2] = 1", "x1*x2 = x2*x1^-1", "[x1,x2,x2] = 1", "x1^2 = x2^2"];
    for g in catalog_upto(8) {
        for text in eqs {
            let eq = parse_equation(text).unwrap();
            let sols = solution_set(&g, &eq, &none()).unwrap();
            let gn = solution_group(&g, sols.arity).unwrap();
            let p = sols.probability().ratio();
            for k in 1..=6i64 {
                if p > Rational::from(1) - Rational::new(1, k) {
                    assert!(is_k_large(&gn, &sols.bits, k as usize).unwrap().0, "{text} on {}", g.label());
                }
                if p < Rational::new(1, k) && !sols.bits.is_empty() {
                    assert!(!is_k_generic(&gn, &sols.bits, k as usize).unwrap().0, "{text} on {}", g.label());
                }
            }
        }
    }
}

#[test]
fn translates_of_solution_sets_keep_their_size() {
    for spec in ["S3", "D4", "Q8", "C2xC4"] {
        let g = catalog(spec).unwrap();
        let sols = solution_set(&g, &parse_equation("[x1,x2] = 1").unwrap(), &none()).unwrap();
        let g2 = solution_group(&g, 2).unwrap();
        for a in 0..g2.order() {
            assert_eq!(left_translate(&g2, a, &sols.bits).count(), sols.count);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn renaming_variables_permutes_solution_axes(
        gi in 0usize..12,
        ei in 0..THREE_VAR_EQUATIONS.len(),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let groups = catalog_upto(8);
        let g = &groups[gi % groups.len()];
        let eq = parse_equation(THREE_VAR_EQUATIONS[ei]).unwrap();
        let renamed = Equation::new(eq.lhs.rename(&|i| perm[i]), eq.rhs.rename(&|i| perm[i]));
        let a = solution_set(g, &eq, &none()).unwrap();
        let b = solution_set(g, &renamed, &none()).unwrap();
        prop_assert_eq!(a.count, b.count);
        for i in 0..b.tuples() {
            let y = b.tuple(i);
            let x: Vec<usize> = (0..3).map(|j| y[perm[j]]).collect();
            let n = g.order();
            let xi = x.iter().fold(0, |acc, &d| acc * n + d);
            prop_assert_eq!(b.bits.contains(i), a.bits.contains(xi));
        }
    }
}
