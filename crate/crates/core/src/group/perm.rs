//! Permutation groups generated by explicit permutations.

use std::collections::HashMap;

use super::Group;
use crate::error::{Error, Result};

/// Default cap on the order of a generated permutation group.
pub const PERM_ORDER_BOUND: usize = 5040;

/// Image list on `0..degree`; `p[i]` is the image of point `i`.
pub type Perm = Vec<u32>;

pub fn identity_perm(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// `compose(p, q)` applies `p` first, then `q`.
pub fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i as usize]).collect()
}

/// Parse cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`.
/// The empty string and `()` denote the identity.
pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
    let mut p = identity_perm(degree);
    let bad = |m: String| Error::NotAPermutation(m);
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad(format!("expected '(' in {text:?}")))?;
        let close = body.find(')').ok_or_else(|| bad(format!("unclosed cycle in {text:?}")))?;
        let pts: Vec<usize> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| bad(format!("bad point {s:?}"))))
            .collect::<Result<_>>()?;
        for &x in &pts {
            if x == 0 || x > degree {
                return Err(bad(format!("point {x} outside 1..={degree}")));
            }
        }
        let mut cycle = identity_perm(degree);
        for (k, &x) in pts.iter().enumerate() {
            let y = pts[(k + 1) % pts.len()];
            if cycle[x - 1] != (x - 1) as u32 {
                return Err(bad(format!("point {x} repeated in a cycle")));
            }
            cycle[x - 1] = (y - 1) as u32;
        }
        // Cycles are written left to right and applied left to right.
        p = compose(&p, &cycle);
        rest = body[close + 1..].trim_start();
    }
    check_perm(degree, &p)?;
    Ok(p)
}

pub fn check_perm(degree: usize, p: &[u32]) -> Result<()> {
    if p.len() != degree {
        return Err(Error::NotAPermutation(format!("length {} for degree {degree}", p.len())));
    }
    let mut seen = vec![false; degree];
    for &i in p {
        let i = i as usize;
        if i >= degree || std::mem::replace(&mut seen[i], true) {
            return Err(Error::NotAPermutation(format!("{p:?} is not a bijection")));
        }
    }
    Ok(())
}

/// Cycle notation of a permutation, 1-based; `e` for the identity.
pub fn cycle_string(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut cyc = vec![];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = p[i] as usize;
        }
        out.push('(');
        out.push_str(&cyc.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// Closure of `generators` under composition, identity first, remaining
/// elements in breadth-first discovery order.
pub fn closure(degree: usize, generators: &[Perm], bound: usize) -> Result<Vec<Perm>> {
    for g in generators {
        check_perm(degree, g)?;
    }
    let id = identity_perm(degree);
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Perm, usize> = HashMap::from([(id, 0)]);
    let mut head = 0;
    while head < elems.len() {
        let cur = elems[head].clone();
        head += 1;
        for g in generators {
            let next = compose(&cur, g);
            if !index.contains_key(&next) {
                if elems.len() >= bound {
                    return Err(Error::OrderBound {
                        what: "permutation group order",
                        needed: elems.len() as u128 + 1,
                        limit: bound as u128,
                    });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
    }
    Ok(elems)
}

/// Group table of a list of permutations closed under composition.
/// Element `a·b` is "apply `a`, then `b`".
pub fn group_from_elements(elems: &[Perm], label: impl Into<String>, names: Option<Vec<String>>) -> Group {
    let index = Group::index_map(elems);
    let names = names.unwrap_or_else(|| elems.iter().map(cycle_string).collect());
    Group::from_fn(elems.len(), Some(names), label, |a, b| index[&compose(&elems[a], &elems[b])])
}

/// Group generated by permutations on `degree` points.
pub fn from_permutation_generators(degree: usize, generators: &[Perm]) -> Result<Group> {
    from_permutation_generators_bounded(degree, generators, PERM_ORDER_BOUND)
}

pub fn from_permutation_generators_bounded(degree: usize, generators: &[Perm], bound: usize) -> Result<Group> {
    let elems = closure(degree, generators, bound)?;
    Ok(group_from_elements(&elems, format!("perm{degree}[{}]", elems.len()), None))
}

/// Parse `perm:<degree>:<cycles>[;<cycles>…]`.
pub fn parse_perm_spec(spec: &str) -> Result<Group> {
    let body = spec.strip_prefix("perm:").ok_or_else(|| Error::UnknownSpec { spec: spec.into(), suggestion: None })?;
    let (deg, gens) = body.split_once(':').unwrap_or((body, ""));
    let degree: usize = deg
        .trim()
        .parse()
        .map_err(|_| Error::UnknownSpec { spec: spec.into(), suggestion: Some("perm:3:(1 2 3);(1 2)".into()) })?;
    let gens = gens
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_cycles(degree, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(from_permutation_generators(degree, &gens)?.with_label(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_two_generators() {
        let g = parse_perm_spec("perm:3:(1 2 3);(1 2)").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        assert!(g.validate().is_ok());
    }

    #[test]
    fn double_transposition() {
        let p = parse_cycles(4, "(1 2)(3 4)").unwrap();
        let g = from_permutation_generators(4, &[p]).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = from_permutation_generators(3, &[]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(matches!(check_perm(3, &[0, 0, 1]), Err(Error::NotAPermutation(_))));
        assert!(parse_cycles(3, "(1 4)").is_err());
        assert!(parse_cycles(3, "(1 2 1)").is_err());
    }

    #[test]
    fn order_bound_enforced() {
        let gens = [parse_cycles(5, "(1 2 3 4 5)").unwrap(), parse_cycles(5, "(1 2)").unwrap()];
        assert!(matches!(
            from_permutation_generators_bounded(5, &gens, 100),
            Err(Error::OrderBound { .. })
        ));
    }

    #[test]
    fn cycle_strings() {
        assert_eq!(cycle_string(&parse_cycles(4, "(1 3)(2 4)").unwrap()), "(1 3)(2 4)");
        assert_eq!(cycle_string(&identity_perm(3)), "e");
    }
}
