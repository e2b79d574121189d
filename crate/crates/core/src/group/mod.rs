//! Finite groups as indexed element sets with a multiplication table.

mod automorphism;
pub mod catalog;
mod hom;
mod mc;
pub mod perm;
mod product;
mod structure;

pub use automorphism::{automorphism_group, inner_automorphisms, ActionGroup, AUTOMORPHISM_ORDER_BOUND};
pub use hom::{image_subset, preimage_subset, quotient, Homomorphism};
pub use mc::{mc_witness, McWitness, MC_SEARCH_CAP};
pub use product::{direct_product, power, projection, MATERIALIZE_BOUND};

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Axiom, Error, Result};
use crate::subset::Subset;

/// Orders up to this bound get the exhaustive O(n^3) associativity check.
pub const VALIDATION_BOUND: usize = 512;

/// Direct-product structure: element index in mixed radix with the
/// leftmost factor most significant.
#[derive(Clone)]
struct Factors {
    groups: Vec<Arc<Group>>,
    place: Vec<usize>,
}

impl Factors {
    #[inline]
    fn coord(&self, g: usize, i: usize) -> usize {
        (g / self.place[i]) % self.groups[i].order
    }
}

/// A finite group on the indices `0..order`.
#[derive(Clone)]
pub struct Group {
    label: String,
    order: usize,
    identity: usize,
    inverses: Vec<u32>,
    names: Option<Vec<String>>,
    /// Row-major Cayley table, `table[g * order + h] = g·h`. Absent only for
    /// large products, which multiply through `factors`.
    table: Option<Vec<u32>>,
    factors: Option<Factors>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group").field("label", &self.label).field("order", &self.order).finish()
    }
}

impl Group {
    /// Build a group from a Cayley table, validating every group axiom.
    ///
    /// The identity and inverses are derived from the table; element 0 need
    /// not be the identity. Associativity is checked exhaustively up to
    /// [`VALIDATION_BOUND`].
    pub fn from_cayley_table(rows: &[Vec<usize>], names: Option<Vec<String>>) -> Result<Group> {
        let n = rows.len();
        let not = |axiom, witness| Error::NotAGroup { axiom, witness };
        if n == 0 {
            return Err(not(Axiom::Shape, (0, 0, 0)));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(not(Axiom::Shape, (i, row.len(), n)));
            }
            if let Some(j) = row.iter().position(|&v| v >= n) {
                return Err(not(Axiom::Range, (i, j, row[j])));
            }
        }
        if let Some(ns) = &names {
            if ns.len() != n {
                return Err(Error::Invalid(format!("{} names for {} elements", ns.len(), n)));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if seen[v] == i {
                    return Err(not(Axiom::LatinRow, (i, j, v)));
                }
                seen[v] = i;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for j in 0..n {
            for i in 0..n {
                let v = rows[i][j];
                if seen[v] == j {
                    return Err(not(Axiom::LatinColumn, (i, j, v)));
                }
                seen[v] = j;
            }
        }
        // In a Latin square the only idempotent of a group is its identity.
        let e = (0..n).find(|&e| rows[e][e] == e).ok_or(not(Axiom::Identity, (0, 0, 0)))?;
        for g in 0..n {
            if rows[e][g] != g || rows[g][e] != g {
                return Err(not(Axiom::Identity, (e, g, rows[e][g])));
            }
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&v| v as u32).collect();
        let mut inverses = vec![0u32; n];
        for g in 0..n {
            let h = rows[g].iter().position(|&v| v == e).unwrap();
            if rows[h][g] != e {
                return Err(not(Axiom::Inverse, (g, h, rows[h][g])));
            }
            inverses[g] = h as u32;
        }
        if n <= VALIDATION_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = rows[a][b];
                    for c in 0..n {
                        if rows[ab][c] != rows[a][rows[b][c]] {
                            return Err(not(Axiom::Associativity, (a, b, c)));
                        }
                    }
                }
            }
        }
        Ok(Group {
            label: format!("table{n}"),
            order: n,
            identity: e,
            inverses,
            names,
            table: Some(table),
            factors: None,
        })
    }

    /// Build from a flat table known to be a group (catalog and permutation
    /// constructions).
    pub(crate) fn from_trusted_table(
        table: Vec<u32>,
        names: Option<Vec<String>>,
        label: impl Into<String>,
    ) -> Group {
        let n = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(n * n, table.len());
        let identity = (0..n).find(|&e| table[e * n + e] as usize == e).expect("group has an identity");
        let mut inverses = vec![0u32; n];
        for g in 0..n {
            let row = &table[g * n..(g + 1) * n];
            inverses[g] = row.iter().position(|&v| v as usize == identity).expect("latin row") as u32;
        }
        Group { label: label.into(), order: n, identity, inverses, names, table: Some(table), factors: None }
    }

    /// Build a group from an associative, invertible operation on `0..n`.
    pub(crate) fn from_fn(
        n: usize,
        names: Option<Vec<String>>,
        label: impl Into<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Group {
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(mul(a, b) as u32);
            }
        }
        Group::from_trusted_table(table, names, label)
    }

    pub fn trivial() -> Group {
        Group::from_trusted_table(vec![0], Some(vec!["e".into()]), "C1")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// Number of direct factors (1 for a group not built as a product).
    pub fn factor_count(&self) -> usize {
        self.factors.as_ref().map_or(1, |f| f.groups.len())
    }

    pub fn factor(&self, i: usize) -> Option<&Group> {
        self.factors.as_ref().and_then(|f| f.groups.get(i)).map(|g| g.as_ref())
    }

    /// The Cayley table as rows (materializes product groups).
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn inverses(&self) -> Vec<usize> {
        self.inverses.iter().map(|&v| v as usize).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.table {
            return t[a * self.order + b] as usize;
        }
        let fs = self.factors.as_ref().expect("group without table has factors");
        let mut out = 0;
        for (i, (f, &p)) in fs.groups.iter().zip(&fs.place).enumerate() {
            out += f.mul(fs.coord(a, i), fs.coord(b, i)) * p;
        }
        out
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// Conjugate `a^b = b⁻¹ a b`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(b), self.mul(a, b))
    }

    /// Commutator `[a,b] = a⁻¹ b⁻¹ a b`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element; `#i` when the group has no name table.
    pub fn name(&self, g: usize) -> String {
        if let Some(ns) = &self.names {
            return ns[g].clone();
        }
        if let Some(fs) = &self.factors {
            let parts: Vec<String> = (0..fs.groups.len()).map(|i| fs.groups[i].name(fs.coord(g, i))).collect();
            return format!("({})", parts.join(","));
        }
        format!("#{g}")
    }

    /// Resolve an element spec: `#<index>`, `<index>`, `#<name>` or `<name>`.
    pub fn element(&self, spec: &str) -> Option<usize> {
        let s = spec.strip_prefix('#').unwrap_or(spec);
        if let Some(ns) = &self.names {
            if let Some(i) = ns.iter().position(|n| n == s) {
                return Some(i);
            }
        }
        if let Ok(i) = s.parse::<usize>() {
            return (i < self.order).then_some(i);
        }
        if s == "e" || s == "1" {
            return Some(self.identity);
        }
        (0..self.order).find(|&g| self.name(g) == s)
    }

    /// Components of a product-group element (a single component otherwise).
    pub fn coordinates(&self, g: usize) -> Vec<usize> {
        match &self.factors {
            Some(fs) => (0..fs.groups.len()).map(|i| fs.coord(g, i)).collect(),
            None => vec![g],
        }
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.order)
    }

    pub fn singleton(&self, g: usize) -> Subset {
        Subset::from_indices(self.order, [g])
    }

    /// Map from element to index, for constructions that discover elements.
    pub(crate) fn index_map<K: std::hash::Hash + Eq + Clone>(keys: &[K]) -> HashMap<K, usize> {
        keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
    }

    /// Check all four table invariants exhaustively. Used by tests and the
    /// `info` command; construction already guarantees them.
    pub fn validate(&self) -> std::result::Result<(), (Axiom, (usize, usize, usize))> {
        let n = self.order;
        let e = self.identity;
        for g in 0..n {
            if self.mul(e, g) != g || self.mul(g, e) != g {
                return Err((Axiom::Identity, (e, g, 0)));
            }
            if self.mul(g, self.inv(g)) != e {
                return Err((Axiom::Inverse, (g, self.inv(g), 0)));
            }
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = self.mul(a, b);
                let c = self.mul(b, a);
                if std::mem::replace(&mut row[r], true) {
                    return Err((Axiom::LatinRow, (a, b, r)));
                }
                if std::mem::replace(&mut col[c], true) {
                    return Err((Axiom::LatinColumn, (b, a, c)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err((Axiom::Associativity, (a, b, c)));
                    }
                }
            }
        }
        Ok(())
    }
}

pub use structure::{
    center, centralizer, centralizer_of, class_count, conjugacy_classes, derived_subgroup,
    is_2_engel, is_subgroup, lower_central_series, max_centralizer_index, nilpotency_class,
    normal_closure, subgroup_as_group, subgroup_generated, subgroups, upper_central_series,
    SubgroupGroup,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = Group::from_cayley_table(&[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn c2_table() {
        let g = Group::from_cayley_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert!(g.validate().is_ok());
    }

    #[test]
    fn latin_violation_in_row_one() {
        let err = Group::from_cayley_table(&[vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]], None).unwrap_err();
        match err {
            Error::NotAGroup { axiom: Axiom::LatinRow, witness } => assert_eq!(witness.0, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn identity_need_not_be_zero() {
        // C3 with the identity stored at index 2.
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = Group::from_cayley_table(&rows, None).unwrap();
        assert_eq!(g.identity(), 2);
        assert_eq!(g.inv(0), 1);
    }

    #[test]
    fn non_associative_latin_square_rejected() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = Group::from_cayley_table(&rows, None).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { axiom: Axiom::Associativity, .. }));
    }
}
