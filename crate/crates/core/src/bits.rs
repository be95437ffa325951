//! Fixed-length bitsets.
//!
//! Every element of every algebra in this crate is a `Bits`: a set of points
//! of `^αU` for set algebras, a set of atoms for finite algebras.

use std::fmt;

use rand::Rng;
use smallvec::SmallVec;

const WORD: usize = 64;

/// A bitset of fixed length. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    len: usize,
    words: SmallVec<[u64; 4]>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            len,
            words: SmallVec::from_elem(0, word_count(len)),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits {
            len,
            words: SmallVec::from_elem(u64::MAX, word_count(len)),
        };
        b.mask_tail();
        b
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::zeros(len);
        for i in indices {
            b.insert(i);
        }
        b
    }

    /// The low `len` bits of `mask`. Panics if `len > 64`.
    pub fn from_u64(len: usize, mask: u64) -> Self {
        assert!(len <= WORD, "from_u64 needs len <= 64");
        let mut b = Bits::zeros(len);
        if len > 0 {
            b.words[0] = mask;
            b.mask_tail();
        }
        b
    }

    /// Element number `index` in the canonical enumeration of the powerset.
    /// Works for any `len`; bits past 64 stay clear.
    pub fn from_index(len: usize, index: u64) -> Self {
        let mut b = Bits::zeros(len);
        if len > 0 {
            b.words[0] = index;
            b.mask_tail();
        }
        b
    }

    /// The bits as an integer mask, if they fit.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words.iter().skip(1).any(|&w| w != 0) {
            return None;
        }
        Some(self.words.first().copied().unwrap_or(0))
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut b = Bits::zeros(len);
        for w in b.words.iter_mut() {
            *w = rng.gen();
        }
        b.mask_tail();
        b
    }

    fn mask_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Bits::ones(self.len)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.insert(i)
        } else {
            self.remove(i)
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
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
                Some(wi * WORD + t)
            })
        })
    }

    fn check_len(&self, other: &Bits) {
        assert_eq!(self.len, other.len, "bitset length mismatch");
    }

    pub fn union_with(&mut self, other: &Bits) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Bits) {
        self.check_len(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.difference_with(other);
        r
    }

    pub fn complement(&self) -> Bits {
        let mut r = self.clone();
        for w in r.words.iter_mut() {
            *w = !*w;
        }
        r.mask_tail();
        r
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.check_len(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Bits) -> bool {
        self.check_len(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Renders as `{1,4,7}`.
impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_keeps_tail_clear() {
        let b = Bits::ones(70);
        assert_eq!(b.count(), 70);
        assert_eq!(b.words()[1], (1 << 6) - 1);
        assert_eq!(b.complement().count(), 0);
    }

    #[test]
    fn iter_lists_set_bits_in_order() {
        let b = Bits::from_indices(200, [3, 64, 65, 199]);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![3, 64, 65, 199]);
        assert_eq!(b.to_string(), "{3,64,65,199}");
    }

    #[test]
    fn set_operations() {
        let a = Bits::from_indices(10, [1, 2, 3]);
        let b = Bits::from_indices(10, [3, 4]);
        assert_eq!(a.union(&b), Bits::from_indices(10, [1, 2, 3, 4]));
        assert_eq!(a.intersection(&b), Bits::from_indices(10, [3]));
        assert_eq!(a.difference(&b), Bits::from_indices(10, [1, 2]));
        assert_eq!(a.complement().count(), 7);
        assert!(Bits::from_indices(10, [3]).is_subset(&a));
        assert!(!a.is_disjoint(&b));
    }

    #[test]
    fn u64_round_trip() {
        let b = Bits::from_u64(8, 0b1010_0101);
        assert_eq!(b.to_u64(), Some(0b1010_0101));
        assert_eq!(Bits::from_u64(3, 0xff).to_u64(), Some(7));
        assert_eq!(Bits::ones(100).to_u64(), None);
    }

    #[test]
    fn zero_length_is_both_empty_and_full() {
        let b = Bits::zeros(0);
        assert!(b.is_empty());
        assert!(b.is_full());
        assert_eq!(b.complement(), b);
    }
}
