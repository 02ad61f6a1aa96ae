//! Letters, words and letter sets.
//!
//! A [`Letter`] is an index into the alphabet of a [`Substitution`](crate::Substitution);
//! the printable symbol lives on the substitution. Words order shortlex so that
//! sorted collections come out by length first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Deref, DerefMut};

/// Largest alphabet a [`LetterSet`] can hold.
pub const MAX_ALPHABET: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u8);

impl Letter {
    pub fn from_index(i: usize) -> Letter {
        assert!(i < MAX_ALPHABET, "letter index {i} out of range");
        Letter(i as u8)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, possibly empty, sequence of letters.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Word {
        Word(Vec::new())
    }

    pub fn single(a: Letter) -> Word {
        Word(vec![a])
    }

    pub fn with_capacity(n: usize) -> Word {
        Word(Vec::with_capacity(n))
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    /// The set of letters occurring in the word, `Lett(w)`.
    pub fn letters(&self) -> LetterSet {
        letters_of(&self.0)
    }

    /// `k`-fold concatenation.
    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl Deref for Word {
    type Target = Vec<Letter>;
    fn deref(&self) -> &Vec<Letter> {
        &self.0
    }
}

impl DerefMut for Word {
    fn deref_mut(&mut self) -> &mut Vec<Letter> {
        &mut self.0
    }
}

impl AsRef<[Letter]> for Word {
    fn as_ref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Word {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Word {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Word {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn letters_of(w: &[Letter]) -> LetterSet {
    w.iter().copied().collect()
}

/// Number of (possibly overlapping) occurrences of `u` in `v`, written `|v|_u`.
///
/// `u` must be nonempty.
pub fn occurrences(v: &[Letter], u: &[Letter]) -> usize {
    assert!(
        !u.is_empty(),
        "occurrences of the empty word are not counted"
    );
    if u.len() > v.len() {
        return 0;
    }
    v.windows(u.len()).filter(|w| *w == u).count()
}

/// Starting positions of every occurrence of `u` in `v`.
pub fn positions(v: &[Letter], u: &[Letter]) -> Vec<usize> {
    if u.is_empty() || u.len() > v.len() {
        return Vec::new();
    }
    v.windows(u.len())
        .enumerate()
        .filter_map(|(i, w)| (w == u).then_some(i))
        .collect()
}

/// `u ≺ v`. The empty word is a factor of everything.
pub fn is_factor(u: &[Letter], v: &[Letter]) -> bool {
    u.is_empty() || (u.len() <= v.len() && v.windows(u.len()).any(|w| w == u))
}

/// A subset of the alphabet, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LetterSet(u128);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    pub fn full(n: usize) -> LetterSet {
        assert!(n <= MAX_ALPHABET);
        if n == MAX_ALPHABET {
            LetterSet(u128::MAX)
        } else {
            LetterSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(a: Letter) -> LetterSet {
        LetterSet(1u128 << a.index())
    }

    #[inline]
    pub fn contains(self, a: Letter) -> bool {
        self.0 >> a.index() & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1u128 << a.index();
    }

    pub fn remove(&mut self, a: Letter) {
        self.0 &= !(1u128 << a.index());
    }

    pub fn union(self, o: LetterSet) -> LetterSet {
        LetterSet(self.0 | o.0)
    }

    pub fn intersection(self, o: LetterSet) -> LetterSet {
        LetterSet(self.0 & o.0)
    }

    pub fn difference(self, o: LetterSet) -> LetterSet {
        LetterSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: LetterSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: LetterSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member by index.
    pub fn first(self) -> Option<Letter> {
        (self.0 != 0).then(|| Letter(self.0.trailing_zeros() as u8))
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Letter(i as u8))
            }
        })
    }

    pub fn bits(self) -> u128 {
        self.0
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> LetterSet {
        let mut s = LetterSet::EMPTY;
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|a| a.index()))
            .finish()
    }
}

impl Ord for LetterSet {
    fn cmp(&self, other: &LetterSet) -> Ordering {
        // lexicographic on the sorted member lists
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for LetterSet {
    fn partial_cmp(&self, other: &LetterSet) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[usize]) -> Word {
        ix.iter().map(|&i| Letter::from_index(i)).collect()
    }

    #[test]
    fn occurrences_count_overlaps() {
        assert_eq!(occurrences(&w(&[0, 1, 1, 0]), &w(&[1])), 2);
        assert_eq!(occurrences(&w(&[0, 0, 0]), &w(&[0, 0])), 2);
        assert_eq!(occurrences(&w(&[0, 1]), &w(&[1, 0])), 0);
        assert_eq!(occurrences(&w(&[0]), &w(&[0, 0])), 0);
    }

    #[test]
    fn empty_word_is_a_factor() {
        assert!(is_factor(&[], &w(&[1, 2])));
        assert!(is_factor(&[], &[]));
        assert!(!is_factor(&w(&[2, 1]), &w(&[1, 2])));
    }

    #[test]
    fn shortlex_order() {
        let mut v = vec![w(&[1]), w(&[0, 0]), w(&[0]), w(&[]), w(&[0, 1])];
        v.sort();
        assert_eq!(v, vec![w(&[]), w(&[0]), w(&[1]), w(&[0, 0]), w(&[0, 1])]);
    }

    #[test]
    fn letter_set_ops() {
        let s: LetterSet = w(&[3, 0, 3, 5]).letters();
        assert_eq!(s.len(), 3);
        assert_eq!(
            s.iter().map(|a| a.index()).collect::<Vec<_>>(),
            vec![0, 3, 5]
        );
        assert_eq!(s.first(), Some(Letter::from_index(0)));
        assert!(LetterSet::singleton(Letter::from_index(3)).is_subset(s));
        assert!(LetterSet::full(6).difference(s).is_disjoint(s));
        assert_eq!(LetterSet::full(128).len(), 128);
        let a = LetterSet::singleton(Letter::from_index(0));
        let b = LetterSet::singleton(Letter::from_index(1));
        assert!(a < a.union(b));
        assert!(a.union(b) < b);
    }
}
