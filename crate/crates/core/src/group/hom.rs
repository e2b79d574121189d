use std::sync::Arc;

use super::{is_subgroup, Group};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// A homomorphism given by its values on every source element.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Arc<Group>,
    target: Arc<Group>,
    map: Vec<usize>,
}

impl Homomorphism {
    /// Checked constructor: verifies `φ(ab) = φ(a)φ(b)` exhaustively.
    pub fn new(source: Arc<Group>, target: Arc<Group>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&t| t >= target.order()) {
            return Err(Error::Invalid("map has wrong length or values out of range".into()));
        }
        let h = Homomorphism { source, target, map };
        if !h.is_homomorphism() {
            return Err(Error::Invalid("map does not preserve products".into()));
        }
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: Arc<Group>, target: Arc<Group>, map: Vec<usize>) -> Self {
        Homomorphism { source, target, map }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if self.map[s.identity()] != t.identity() {
            return false;
        }
        (0..s.order()).all(|a| (0..s.order()).all(|b| self.map[s.mul(a, b)] == t.mul(self.map[a], self.map[b])))
    }

    pub fn is_surjective(&self) -> bool {
        image_subset(self, &self.source.full()).is_full()
    }

    pub fn kernel(&self) -> Subset {
        Subset::from_fn(self.source.order(), |g| self.map[g] == self.target.identity())
    }
}

pub fn image_subset(phi: &Homomorphism, x: &Subset) -> Subset {
    Subset::from_indices(phi.target.order(), x.iter().map(|g| phi.map[g]))
}

pub fn preimage_subset(phi: &Homomorphism, y: &Subset) -> Subset {
    Subset::from_fn(phi.source.order(), |g| y.contains(phi.map[g]))
}

/// `G/N` on coset representatives (the least index in each coset, cosets
/// ordered by representative) together with the projection `G → G/N`.
pub fn quotient(g: &Group, n: &Subset) -> Result<(Group, Homomorphism)> {
    if !is_subgroup(g, n) {
        return Err(Error::NotASubgroup(format!("{:?} in {}", n.to_vec(), g.label())));
    }
    for h in n.iter() {
        for x in 0..g.order() {
            if !n.contains(g.conj(h, x)) {
                return Err(Error::NotNormal { h, g: x });
            }
        }
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = vec![];
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for h in n.iter() {
            coset_of[g.mul(x, h)] = idx;
        }
    }
    let names = reps.iter().map(|&r| if reps.len() == order { g.name(r) } else { format!("[{}]", g.name(r)) }).collect();
    let label = if n.count() == 1 { g.label().to_string() } else { format!("{}/N{}", g.label(), n.count()) };
    let q = Group::from_fn(reps.len(), Some(names), label, |a, b| coset_of[g.mul(reps[a], reps[b])]);
    let q = Arc::new(q);
    let pi = Homomorphism::new_unchecked(Arc::new(g.clone()), q.clone(), coset_of);
    Ok(((*q).clone(), pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::group::{center, projection};

    #[test]
    fn c4_mod_c2() {
        let c4 = catalog("C4").unwrap();
        let (q, pi) = quotient(&c4, &Subset::from_indices(4, [0, 2])).unwrap();
        assert_eq!(q.order(), 2);
        assert!(pi.is_homomorphism());
        assert!(pi.is_surjective());
    }

    #[test]
    fn d4_mod_center_is_klein() {
        let d4 = catalog("D4").unwrap();
        let (q, pi) = quotient(&d4, &center(&d4)).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.exponent(), 2);
        assert!(q.validate().is_ok());
        assert!(pi.is_homomorphism());
    }

    #[test]
    fn trivial_quotient_is_identity_map() {
        let s3 = catalog("S3").unwrap();
        let (q, pi) = quotient(&s3, &s3.singleton(s3.identity())).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(pi.map(), (0..6).collect::<Vec<_>>());
        assert_eq!(q.table(), s3.table());
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = catalog("S3").unwrap();
        let t = s3.element("(1 2)").unwrap();
        let h = Subset::from_indices(6, [s3.identity(), t]);
        assert!(matches!(quotient(&s3, &h), Err(Error::NotNormal { .. })));
        let not_sub = Subset::from_indices(6, [t]);
        assert!(matches!(quotient(&s3, &not_sub), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn preimage_of_identity_is_kernel() {
        let d4 = catalog("D4").unwrap();
        let z = center(&d4);
        let (q, pi) = quotient(&d4, &z).unwrap();
        assert_eq!(preimage_subset(&pi, &q.singleton(q.identity())), z);
        assert_eq!(pi.kernel(), z);
    }

    #[test]
    fn projection_image() {
        let p = crate::group::direct_product(&catalog("C3").unwrap(), &catalog("C2").unwrap()).unwrap();
        let pi = projection(&p, 0).unwrap();
        assert!(image_subset(&pi, &p.full()).is_full());
    }

    #[test]
    fn rejects_non_homomorphism() {
        let c4 = Arc::new(catalog("C4").unwrap());
        let c2 = Arc::new(catalog("C2").unwrap());
        assert!(Homomorphism::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(Homomorphism::new(c4, c2, vec![0, 1, 1, 0]).is_err());
    }
}
