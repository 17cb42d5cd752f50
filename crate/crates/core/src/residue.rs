//! Subsets of the cyclic group `Z_m`.

use std::cmp::Ordering;
use std::fmt;

use crate::bitset::BitSet;

/// A subset of `Z_m`, stored as a bitset over `0..m`.
///
/// Sets compare lexicographically by their sorted member lists, so `{1, 7}`
/// sorts before `{3, 5}` and `{}` sorts before everything.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u32,
    bits: BitSet,
}

impl ResidueSet {
    pub fn empty(modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            modulus,
            bits: BitSet::new(modulus as usize),
        }
    }

    pub fn full(modulus: u32) -> Self {
        Self {
            modulus,
            bits: BitSet::full(modulus as usize),
        }
    }

    /// Builds a set from arbitrary integers, reducing each modulo `modulus`.
    pub fn from_residues<I: IntoIterator<Item = i64>>(modulus: u32, items: I) -> Self {
        let mut s = Self::empty(modulus);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// `{ i : 0 <= i < m, pred(i) }`.
    pub fn from_predicate(modulus: u32, pred: impl Fn(u32) -> bool) -> Self {
        let mut s = Self::empty(modulus);
        for i in 0..modulus {
            if pred(i) {
                s.bits.insert(i as usize);
            }
        }
        s
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.modulus as i64) as u32
    }

    pub fn insert(&mut self, x: i64) {
        let r = self.reduce(x);
        self.bits.insert(r as usize);
    }

    #[inline]
    pub fn contains(&self, x: i64) -> bool {
        self.bits.contains(self.reduce(x) as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.iter().map(|i| i as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn as_bitset(&self) -> &BitSet {
        &self.bits
    }

    /// `shift + A`.
    pub fn translate(&self, shift: i64) -> Self {
        let m = self.modulus as i64;
        Self::from_residues(self.modulus, self.iter().map(|i| i as i64 + shift.rem_euclid(m)))
    }

    /// `factor · A`.
    pub fn scale(&self, factor: i64) -> Self {
        Self::from_residues(self.modulus, self.iter().map(|i| i as i64 * factor))
    }

    /// `-A`.
    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    pub fn intersection_count(&self, other: &ResidueSet) -> usize {
        debug_assert_eq!(self.modulus, other.modulus);
        self.bits.intersection_count(&other.bits)
    }

    /// `|A ∩ (shift + B)|` computed without materialising the translate.
    pub fn shifted_intersection_count(&self, shift: i64, other: &ResidueSet) -> usize {
        let s = shift.rem_euclid(self.modulus as i64);
        other
            .iter()
            .filter(|&b| self.contains(b as i64 + s))
            .count()
    }

    pub fn union(&self, other: &ResidueSet) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self {
            modulus: self.modulus,
            bits,
        }
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// True when every member is congruent to `residue` modulo `divisor`.
    pub fn all_congruent(&self, residue: u32, divisor: u32) -> bool {
        self.iter().all(|i| i % divisor == residue % divisor)
    }
}

impl Ord for ResidueSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ResidueSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}} mod {}", self.modulus)
    }
}

/// Comma-separated members, e.g. `1,3`. Empty sets print as the empty string.
impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_translation() {
        let a = ResidueSet::from_residues(8, [-1, 9, 3]);
        assert_eq!(a.to_vec(), vec![1, 3, 7]);
        assert_eq!(a.translate(2).to_vec(), vec![1, 3, 5]);
        assert_eq!(a.negate().to_vec(), vec![1, 5, 7]);
        assert_eq!(a.scale(3).to_vec(), vec![1, 3, 5]);
    }

    #[test]
    fn lexicographic_order() {
        let a = ResidueSet::from_residues(8, [1, 7]);
        let b = ResidueSet::from_residues(8, [3, 5]);
        let e = ResidueSet::empty(8);
        let c = ResidueSet::from_residues(8, [1]);
        assert!(a < b);
        assert!(e < c);
        assert!(c < a);
    }

    #[test]
    fn shifted_counts_match_materialised_translate() {
        let a = ResidueSet::from_residues(10, [0, 1, 4, 6]);
        let b = ResidueSet::from_residues(10, [2, 3, 9]);
        for s in -12..12 {
            assert_eq!(
                a.shifted_intersection_count(s, &b),
                a.intersection_count(&b.translate(s))
            );
        }
    }
}
