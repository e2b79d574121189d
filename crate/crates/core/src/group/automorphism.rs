//! Automorphism groups by brute force over generator images.

use super::{subgroup_generated, Group};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Default bound on `|G|` for the full automorphism search.
pub const AUTOMORPHISM_ORDER_BOUND: usize = 64;
/// Default bound on the size of the greedy generating set.
pub const AUTOMORPHISM_GENERATOR_BOUND: usize = 3;

/// A group acting on the elements of another group.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    /// Abstract group; element `σ` is the `σ`-th map in `action`.
    pub group: Group,
    /// `action[σ][g] = σ(g)`.
    pub action: Vec<Vec<usize>>,
}

impl ActionGroup {
    /// Build from a list of bijections closed under composition, identity first.
    pub fn from_maps(maps: Vec<Vec<usize>>, label: impl Into<String>) -> Result<ActionGroup> {
        let index = Group::index_map(&maps);
        if index.len() != maps.len() {
            return Err(Error::Invalid("duplicate maps in action".into()));
        }
        let n = maps.len();
        let mut table = Vec::with_capacity(n * n);
        for s in &maps {
            for t in &maps {
                // (σ∘τ)(g) = σ(τ(g))
                let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                let k = index.get(&st).ok_or(Error::ActionNotClosed)?;
                table.push(*k as u32);
            }
        }
        let names = (0..n).map(|i| if i == 0 { "id".to_string() } else { format!("s{i}") }).collect();
        let group = Group::from_trusted_table(table, Some(names), label);
        Ok(ActionGroup { group, action: maps })
    }

    pub fn apply(&self, sigma: usize, g: usize) -> usize {
        self.action[sigma][g]
    }

    /// Whether every map is an automorphism of `g` (exhaustive).
    pub fn preserves(&self, g: &Group) -> bool {
        self.action.iter().all(|s| {
            s.len() == g.order()
                && (0..g.order()).all(|a| (0..g.order()).all(|b| s[g.mul(a, b)] == g.mul(s[a], s[b])))
        })
    }
}

/// Greedy generating set: repeatedly add the element that enlarges the
/// generated subgroup the most (ties to the lowest index).
pub fn greedy_generators(g: &Group) -> Vec<usize> {
    let mut gens = vec![];
    let mut current = g.singleton(g.identity());
    while current.count() < g.order() {
        let mut best = (0, 0);
        for x in 0..g.order() {
            if current.contains(x) {
                continue;
            }
            let mut s = Subset::from_indices(g.order(), gens.iter().copied());
            s.insert(x);
            let size = subgroup_generated(g, &s).count();
            if size > best.0 {
                best = (size, x);
            }
        }
        gens.push(best.1);
        let s = Subset::from_indices(g.order(), gens.iter().copied());
        current = subgroup_generated(g, &s);
    }
    gens
}

/// Extend generator images to a homomorphism on the generated subgroup,
/// or `None` if some relation is violated.
fn extend(g: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = g.identity();
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = g.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

pub fn automorphism_group(g: &Group) -> Result<ActionGroup> {
    automorphism_group_bounded(g, AUTOMORPHISM_ORDER_BOUND, AUTOMORPHISM_GENERATOR_BOUND)
}

pub fn automorphism_group_bounded(g: &Group, order_bound: usize, gen_bound: usize) -> Result<ActionGroup> {
    if g.order() > order_bound {
        return Err(Error::OrderBound { what: "automorphism search order", needed: g.order() as u128, limit: order_bound as u128 });
    }
    let gens = greedy_generators(g);
    if gens.len() > gen_bound {
        return Err(Error::OrderBound {
            what: "automorphism generating set",
            needed: gens.len() as u128,
            limit: gen_bound as u128,
        });
    }
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let mut found = vec![];
    let mut images = vec![];
    search(g, &gens, &orders, &mut images, &mut found);
    let id: Vec<usize> = (0..g.order()).collect();
    found.retain(|m| m != &id);
    found.sort();
    found.insert(0, id);
    ActionGroup::from_maps(found, format!("Aut({})", g.label()))
}

fn search(g: &Group, gens: &[usize], orders: &[usize], images: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
    let k = images.len();
    if k == gens.len() {
        if let Some(map) = extend(g, gens, images) {
            let mut seen = vec![false; g.order()];
            if map.iter().all(|&y| y != usize::MAX && !std::mem::replace(&mut seen[y], true)) {
                found.push(map);
            }
        }
        return;
    }
    for t in 0..g.order() {
        if orders[t] != orders[gens[k]] {
            continue;
        }
        images.push(t);
        if extend(g, &gens[..=k], images).is_some() {
            search(g, gens, orders, images, found);
        }
        images.pop();
    }
}

/// Conjugation maps `x ↦ a x a⁻¹`, deduplicated, identity first.
pub fn inner_automorphisms(g: &Group) -> Result<ActionGroup> {
    let mut maps: Vec<Vec<usize>> = vec![];
    let mut seen = std::collections::HashSet::new();
    let mut order: Vec<usize> = vec![g.identity()];
    order.extend((0..g.order()).filter(|&a| a != g.identity()));
    for a in order {
        let m: Vec<usize> = (0..g.order()).map(|x| g.conj(x, g.inv(a))).collect();
        if seen.insert(m.clone()) {
            maps.push(m);
        }
    }
    ActionGroup::from_maps(maps, format!("Inn({})", g.label()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::group::center;

    #[test]
    fn small_automorphism_groups() {
        for (spec, n) in [("C4", 2), ("C2xC2", 6), ("S3", 6), ("C5", 4), ("Q8", 24), ("D4", 8), ("E2^3", 168), ("C1", 1)] {
            let g = catalog(spec).unwrap();
            let aut = automorphism_group(&g).unwrap();
            assert_eq!(aut.group.order(), n, "{spec}");
            assert!(aut.preserves(&g), "{spec}");
            assert!(aut.group.validate().is_ok(), "{spec}");
        }
    }

    #[test]
    fn inner_is_g_mod_center() {
        for spec in ["S3", "D4", "Q8", "C6", "A4"] {
            let g = catalog(spec).unwrap();
            let inn = inner_automorphisms(&g).unwrap();
            assert_eq!(inn.group.order(), g.order() / center(&g).count(), "{spec}");
            assert!(inn.preserves(&g));
        }
    }

    #[test]
    fn bounds_fail_fast() {
        assert!(matches!(automorphism_group(&catalog("E2^4").unwrap()), Err(Error::OrderBound { .. })));
        assert!(matches!(automorphism_group(&catalog("S5").unwrap()), Err(Error::OrderBound { .. })));
    }
}
