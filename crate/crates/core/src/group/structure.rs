//! Subgroups, centralizers, conjugacy classes and central series.

use super::Group;
use crate::subset::Subset;

pub fn is_subgroup(g: &Group, h: &Subset) -> bool {
    h.universe() == g.order()
        && h.contains(g.identity())
        && h.iter().all(|a| h.contains(g.inv(a)) && h.iter().all(|b| h.contains(g.mul(a, b))))
}

pub fn centralizer_of(g: &Group, x: usize) -> Subset {
    Subset::from_fn(g.order(), |y| g.mul(x, y) == g.mul(y, x))
}

/// Elements commuting with every element of `s`.
pub fn centralizer(g: &Group, s: &Subset) -> Subset {
    let mut c = g.full();
    for x in s.iter() {
        c.intersect_with(&centralizer_of(g, x));
    }
    c
}

pub fn center(g: &Group) -> Subset {
    centralizer(g, &g.full())
}

/// Closure of `s ∪ {e}` under multiplication.
pub fn subgroup_generated(g: &Group, s: &Subset) -> Subset {
    let gens: Vec<usize> = s.iter().collect();
    let mut out = g.singleton(g.identity());
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for &y in &gens {
            let z = g.mul(x, y);
            if !out.contains(z) {
                out.insert(z);
                queue.push(z);
            }
        }
    }
    out
}

pub fn normal_closure(g: &Group, s: &Subset) -> Subset {
    let mut conj = Subset::empty(g.order());
    for x in s.iter() {
        for y in 0..g.order() {
            conj.insert(g.conj(x, y));
        }
    }
    subgroup_generated(g, &conj)
}

/// Subgroup generated by all `[a, b]` with `a ∈ a_set`, `b ∈ b_set`.
pub fn commutator_subgroup(g: &Group, a_set: &Subset, b_set: &Subset) -> Subset {
    let mut gens = Subset::empty(g.order());
    for a in a_set.iter() {
        for b in b_set.iter() {
            gens.insert(g.comm(a, b));
        }
    }
    subgroup_generated(g, &gens)
}

pub fn derived_subgroup(g: &Group) -> Subset {
    commutator_subgroup(g, &g.full(), &g.full())
}

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<usize>> {
    let mut seen = Subset::empty(g.order());
    let mut classes = vec![];
    for x in 0..g.order() {
        if seen.contains(x) {
            continue;
        }
        let class = Subset::from_indices(g.order(), (0..g.order()).map(|y| g.conj(x, y)));
        seen.union_with(&class);
        classes.push(class.to_vec());
    }
    classes
}

pub fn class_count(g: &Group) -> usize {
    conjugacy_classes(g).len()
}

/// `γ₁ = G, γ_{i+1} = [γ_i, G]`, up to and including the first repeat.
pub fn lower_central_series(g: &Group) -> Vec<Subset> {
    let full = g.full();
    let mut series = vec![full.clone()];
    loop {
        let next = commutator_subgroup(g, series.last().unwrap(), &full);
        let done = &next == series.last().unwrap();
        series.push(next);
        if done {
            return series;
        }
    }
}

/// `Z₀ = 1, Z_{i+1} = {x : [x, G] ⊆ Z_i}`, up to and including the first repeat.
pub fn upper_central_series(g: &Group) -> Vec<Subset> {
    let mut series = vec![g.singleton(g.identity())];
    loop {
        let zi = series.last().unwrap();
        let next = Subset::from_fn(g.order(), |x| (0..g.order()).all(|y| zi.contains(g.comm(x, y))));
        let done = &next == zi;
        series.push(next);
        if done {
            return series;
        }
    }
}

/// Least `k` with `γ_{k+1} = 1`, or `None` when `G` is not nilpotent.
pub fn nilpotency_class(g: &Group) -> Option<usize> {
    let series = lower_central_series(g);
    series.iter().position(|s| s.count() == 1)
}

/// Whether `[x, y, y] = 1` for all `x, y`.
pub fn is_2_engel(g: &Group) -> bool {
    (0..g.order()).all(|x| (0..g.order()).all(|y| g.comm(g.comm(x, y), y) == g.identity()))
}

/// `max_g |G : C_G(g)|`, the largest conjugacy class size.
pub fn max_centralizer_index(g: &Group) -> usize {
    conjugacy_classes(g).iter().map(Vec::len).max().unwrap_or(1)
}

/// Every subgroup of `G`, sorted by size then by element list.
pub fn subgroups(g: &Group) -> Vec<Subset> {
    let mut found: Vec<Subset> = vec![];
    let mut set = std::collections::HashSet::new();
    for x in 0..g.order() {
        let c = subgroup_generated(g, &g.singleton(x));
        if set.insert(c.clone()) {
            found.push(c);
        }
    }
    let cyclic = found.clone();
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = vec![];
        for h in &frontier {
            for c in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let j = subgroup_generated(g, &h.union(c));
                if set.insert(j.clone()) {
                    found.push(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.to_vec().cmp(&b.to_vec())));
    found
}

/// A subgroup re-indexed as a group in its own right.
#[derive(Clone, Debug)]
pub struct SubgroupGroup {
    pub group: Group,
    /// `embed[i]` is the ambient index of subgroup element `i`.
    pub embed: Vec<usize>,
    /// Inverse of `embed` on the ambient group.
    pub index_of: Vec<Option<usize>>,
}

impl SubgroupGroup {
    /// Pull an ambient subset back to subgroup indices (`X ∩ H`).
    pub fn restrict(&self, x: &Subset) -> Subset {
        Subset::from_fn(self.embed.len(), |i| x.contains(self.embed[i]))
    }
}

pub fn subgroup_as_group(g: &Group, h: &Subset) -> Option<SubgroupGroup> {
    if !is_subgroup(g, h) {
        return None;
    }
    let embed: Vec<usize> = h.iter().collect();
    let mut index_of = vec![None; g.order()];
    for (i, &x) in embed.iter().enumerate() {
        index_of[x] = Some(i);
    }
    let names = embed.iter().map(|&x| g.name(x)).collect();
    let label = if h.count() == g.order() { g.label().to_string() } else { format!("{}<{}>", g.label(), h.count()) };
    let group = Group::from_fn(embed.len(), Some(names), label, |a, b| index_of[g.mul(embed[a], embed[b])].unwrap());
    Some(SubgroupGroup { group, embed, index_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::{catalog, catalog_upto};

    fn sizes(classes: &[Vec<usize>]) -> Vec<usize> {
        let mut s: Vec<usize> = classes.iter().map(Vec::len).collect();
        s.sort();
        s
    }

    #[test]
    fn centers() {
        assert_eq!(center(&catalog("S3").unwrap()).count(), 1);
        assert_eq!(center(&catalog("Q8").unwrap()).count(), 2);
        assert_eq!(center(&catalog("D4").unwrap()).count(), 2);
        assert_eq!(center(&catalog("C6").unwrap()).count(), 6);
    }

    #[test]
    fn centralizer_of_transposition() {
        let s3 = catalog("S3").unwrap();
        let t = s3.element("(1 2)").unwrap();
        assert_eq!(centralizer(&s3, &s3.singleton(t)).count(), 2);
    }

    #[test]
    fn class_sizes() {
        assert_eq!(sizes(&conjugacy_classes(&catalog("S3").unwrap())), vec![1, 2, 3]);
        assert_eq!(class_count(&catalog("Q8").unwrap()), 5);
        assert_eq!(class_count(&catalog("C2xC4").unwrap()), 8);
        assert_eq!(class_count(&catalog("S4").unwrap()), 5);
    }

    #[test]
    fn series_and_class() {
        let d4 = catalog("D4").unwrap();
        assert_eq!(nilpotency_class(&d4), Some(2));
        assert_eq!(lower_central_series(&d4)[1].count(), 2);
        let s3 = catalog("S3").unwrap();
        assert_eq!(nilpotency_class(&s3), None);
        let lcs = lower_central_series(&s3);
        assert_eq!(lcs[1].count(), 3);
        assert_eq!(lcs[2].count(), 3);
        assert_eq!(nilpotency_class(&catalog("C5").unwrap()), Some(1));
        assert_eq!(nilpotency_class(&Group::trivial()), Some(0));
        assert_eq!(nilpotency_class(&catalog("D8").unwrap()), Some(3));
    }

    #[test]
    fn engel() {
        assert!(is_2_engel(&catalog("Q8").unwrap()));
        assert!(!is_2_engel(&catalog("S3").unwrap()));
        assert!(is_2_engel(&catalog("H3").unwrap()));
    }

    #[test]
    fn structural_invariants_over_catalog() {
        for g in catalog_upto(24) {
            let z = center(&g);
            assert_eq!(z, centralizer(&g, &g.full()));
            assert!(is_subgroup(&g, &z));
            let classes = conjugacy_classes(&g);
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
            assert!(classes.iter().all(|c| g.order() % c.len() == 0));
            let lower = lower_central_series(&g);
            let upper = upper_central_series(&g);
            let reaches_top = upper.last().unwrap().is_full();
            assert_eq!(nilpotency_class(&g).is_some(), reaches_top, "{}", g.label());
            if let Some(c) = nilpotency_class(&g) {
                assert_eq!(upper.iter().position(|s| s.is_full()), Some(c), "{}", g.label());
            }
            assert!(lower.iter().all(|s| is_subgroup(&g, s)));
            assert!(is_subgroup(&g, &derived_subgroup(&g)));
        }
    }

    #[test]
    fn centralizer_is_antitone() {
        let g = catalog("D6").unwrap();
        let s = Subset::from_indices(12, [1]);
        let t = Subset::from_indices(12, [1, 7]);
        assert!(centralizer(&g, &t).is_subset_of(&centralizer(&g, &s)));
    }

    #[test]
    fn subgroup_lattice_counts() {
        assert_eq!(subgroups(&catalog("S3").unwrap()).len(), 6);
        assert_eq!(subgroups(&catalog("Q8").unwrap()).len(), 6);
        assert_eq!(subgroups(&catalog("D4").unwrap()).len(), 10);
        assert_eq!(subgroups(&catalog("E2^3").unwrap()).len(), 16);
    }

    #[test]
    fn generated_and_normal_closure() {
        let s3 = catalog("S3").unwrap();
        let t = s3.element("(1 2)").unwrap();
        assert_eq!(subgroup_generated(&s3, &s3.singleton(t)).count(), 2);
        assert_eq!(normal_closure(&s3, &s3.singleton(t)).count(), 6);
        let sub = subgroup_as_group(&s3, &subgroup_generated(&s3, &s3.singleton(t))).unwrap();
        assert_eq!(sub.group.order(), 2);
        assert!(sub.group.validate().is_ok());
    }
}
