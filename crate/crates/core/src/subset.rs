//! Dense bit-vector subsets of a group's element indices.

use std::fmt;

/// A subset of `0..len`, stored as packed 64-bit words.
///
/// Bits past `len` in the last word are always zero, so word-level
/// operations (`union_with`, `count`, equality) never see stray bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    len: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Subset { len, words: vec![!0; len.div_ceil(64)] };
        s.trim();
        s
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subset::empty(len);
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut s = Subset::empty(len);
        for i in 0..len {
            if f(i) {
                s.insert(i);
            }
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Length of the ambient index range (the parent group's order).
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
    }

    /// First index *not* in the set.
    pub fn first_missing(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != !0)
            .map(|(wi, &w)| wi * 64 + (!w).trailing_zeros() as usize)
            .filter(|&i| i < self.len)
    }

    pub fn complement(&self) -> Subset {
        let mut s = Subset { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Number of elements of `other` not already in `self`.
    pub fn gain(&self, other: &Subset) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (b & !a).count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({}/{}: ", self.count(), self.len)?;
        f.debug_set().entries(self.iter()).finish()?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_bits_stay_clear() {
        let s = Subset::full(70);
        assert_eq!(s.count(), 70);
        assert_eq!(s.complement().count(), 0);
        assert_eq!(Subset::empty(70).complement(), s);
        assert_eq!(s.first_missing(), None);
    }

    #[test]
    fn iteration_and_gain() {
        let a = Subset::from_indices(130, [0, 5, 64, 129]);
        assert_eq!(a.to_vec(), vec![0, 5, 64, 129]);
        let b = Subset::from_indices(130, [5, 6, 128]);
        assert_eq!(a.gain(&b), 2);
        assert_eq!(a.union(&b).count(), 6);
        assert_eq!(a.intersection(&b).to_vec(), vec![5]);
        assert_eq!(a.first_missing(), Some(1));
        assert!(!a.is_subset_of(&b));
    }
}
