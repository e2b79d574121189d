//! Counterexample searches for three open questions.
//!
//! The search side works straight from the multiplication table with cheap
//! necessary conditions first. A candidate is then re-verified through the
//! equation solver and exact largeness numbers, sharing no code with the
//! search, and only reported if that confirms it.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{centralizer_of, is_2_engel, lower_central_series, power, Group};
use crate::largeness::{is_k_large, largeness_report};
use crate::probability::{probability, solution_group, solution_set};
use crate::subset::Subset;
use crate::word::{parse_equation, Bindings};

/// `oq_cube_5large`: x³=1 5-large but not 2-Engel.
/// `oq_comm_2large_c`: [x,y]=c 2-large with c ≠ 1.
/// `oq_gamma_k`: `{x̄ : [x₁,…,x_k] ∈ C(g)}` 2^k-large in G^k but γ_k(G) ≰ C(g).
pub const QUESTIONS: &[&str] = &["oq_cube_5large", "oq_comm_2large_c", "oq_gamma_k"];

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    /// Groups above this order are skipped.
    pub max_order: usize,
    /// Largest `k` tried for `oq_gamma_k`.
    pub max_k: usize,
    /// Largest `|G|^k` tried for `oq_gamma_k`.
    pub max_tuples: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_order: 24, max_k: 3, max_tuples: 4096 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub question: String,
    pub group: String,
    pub data: Value,
}

/// First re-verified witness over `groups`, or `None`.
pub fn search_counterexample(
    question: &str,
    groups: impl IntoIterator<Item = Group>,
    budget: &SearchBudget,
) -> Result<Option<Counterexample>> {
    if !QUESTIONS.contains(&question) {
        return Err(Error::UnknownQuestion(question.to_string()));
    }
    for g in groups {
        if g.order() > budget.max_order {
            continue;
        }
        let candidate = match question {
            "oq_cube_5large" => cube_candidate(&g)?,
            "oq_comm_2large_c" => comm_candidate(&g)?,
            _ => gamma_candidate(&g, budget)?,
        };
        if let Some(data) = candidate {
            if !reverify(question, &g, &data)? {
                return Err(Error::Invalid(format!("{question} candidate on {} failed re-verification: {data}", g.label())));
            }
            return Ok(Some(Counterexample { question: question.to_string(), group: g.label().to_string(), data }));
        }
    }
    Ok(None)
}

/// `XX⁻¹ = G` needs `m(m−1)+1 ≥ |G|`.
fn may_be_2_large(x: &Subset) -> bool {
    let m = x.count();
    m * m.saturating_sub(1) + 1 >= x.universe()
}

fn cube_candidate(g: &Group) -> Result<Option<Value>> {
    if is_2_engel(g) {
        return Ok(None);
    }
    let x = Subset::from_fn(g.order(), |a| g.pow(a, 3) == g.identity());
    if !may_be_2_large(&x) || !is_k_large(g, &x, 2)?.0 || !is_k_large(g, &x, 5)?.0 {
        return Ok(None);
    }
    Ok(Some(json!({"solutions": x.to_vec()})))
}

fn comm_candidate(g: &Group) -> Result<Option<Value>> {
    if g.is_abelian() {
        return Ok(None);
    }
    let n = g.order();
    let g2 = power(g, 2)?;
    for c in (0..n).filter(|&c| c != g.identity()) {
        let x = Subset::from_fn(n * n, |i| g.comm(i / n, i % n) == c);
        if may_be_2_large(&x) && is_k_large(&g2, &x, 2)?.0 {
            return Ok(Some(json!({"c": c})));
        }
    }
    Ok(None)
}

fn gamma_candidate(g: &Group, budget: &SearchBudget) -> Result<Option<Value>> {
    let n = g.order();
    let lower = lower_central_series(g);
    for k in 1..=budget.max_k {
        let tuples = (n as u128).pow(k as u32);
        if tuples > budget.max_tuples as u128 {
            break;
        }
        let gamma = &lower[(k - 1).min(lower.len() - 1)];
        let gk = if k == 1 { g.clone() } else { power(g, k)? };
        for a in 0..n {
            let cent = centralizer_of(g, a);
            if gamma.is_subset_of(&cent) {
                continue;
            }
            let y = Subset::from_fn(tuples as usize, |i| {
                let mut digits = vec![0; k];
                let mut r = i;
                for d in digits.iter_mut().rev() {
                    *d = r % n;
                    r /= n;
                }
                let c = digits[1..].iter().fold(digits[0], |acc, &d| g.comm(acc, d));
                cent.contains(c)
            });
            if may_be_2_large(&y) && is_k_large(&gk, &y, 1 << k)?.0 {
                return Ok(Some(json!({"k": k, "g": a})));
            }
        }
    }
    Ok(None)
}

fn reverify(question: &str, g: &Group, data: &Value) -> Result<bool> {
    let none = Bindings::new();
    let num = |key: &str| data[key].as_u64().map(|v| v as usize).ok_or_else(|| Error::Invalid(format!("witness lacks {key}")));
    match question {
        "oq_cube_5large" => {
            let sols = solution_set(g, &parse_equation("x1^3 = 1")?, &none)?;
            let large = largeness_report(g, &sols.bits)?.largeness_number.at_least(5);
            let engel = probability(g, &parse_equation("[x1,x2,x2] = 1")?, &none)?.ratio() == 1.into();
            Ok(large && !engel)
        }
        "oq_comm_2large_c" => {
            let c = num("c")?;
            let b: Bindings = [("c".to_string(), c)].into();
            let sols = solution_set(g, &parse_equation("[x1,x2] = c")?, &b)?;
            let g2 = solution_group(g, 2)?;
            Ok(c != g.identity() && largeness_report(&g2, &sols.bits)?.largeness_number.at_least(2))
        }
        _ => {
            let (k, a) = (num("k")?, num("g")?);
            let vars = (1..=k).map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
            let text = if k == 1 { "[x1,a] = 1".to_string() } else { format!("[[{vars}],a] = 1") };
            let b: Bindings = [("a".to_string(), a)].into();
            let sols = solution_set(g, &parse_equation(&text)?, &b)?;
            let gk = solution_group(g, k)?;
            let large = largeness_report(&gk, &sols.bits)?.largeness_number.at_least(1 << k);
            let lower = lower_central_series(g);
            let escapes = !lower[(k - 1).min(lower.len() - 1)].is_subset_of(&centralizer_of(g, a));
            Ok(large && escapes)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog_upto;

    #[test]
    fn unknown_question() {
        assert!(matches!(
            search_counterexample("oq_nope", vec![], &SearchBudget::default()),
            Err(Error::UnknownQuestion(_))
        ));
    }

    #[test]
    fn empty_iterator_gives_none() {
        for q in QUESTIONS {
            assert_eq!(search_counterexample(q, vec![], &SearchBudget::default()).unwrap(), None);
        }
    }

    #[test]
    fn gamma_k_small_sweep() {
        let found = search_counterexample("oq_gamma_k", catalog_upto(8), &SearchBudget::default()).unwrap();
        assert_eq!(found, None);
    }
}
