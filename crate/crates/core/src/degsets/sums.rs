use alloc::{format, vec::Vec};

use num_bigint::BigInt;

use super::DegreeSet;
use crate::{Error, Result};

/// Default cap on sequence length for [`subsequence_sums`].
pub const DEFAULT_LENGTH_CAP: usize = 40;

/// Widest offset range the dynamic program will allocate.
const MAX_RANGE_BITS: u64 = 1 << 28;

/// A finite sequence of nonzero integers. Duplicates are meaningful:
/// `S_(1,1) = {0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SequenceB {
    entries: Vec<i64>,
}

impl SequenceB {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|x| *x == 0) {
            return Err(Error::InvalidInput(format!("sequence entry {i} is zero")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_abs(&self) -> u64 {
        self.entries.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }
}

/// Bitset over a fixed window `[lo, lo + width)` of candidate sums.
#[derive(Clone)]
pub(crate) struct SumBits {
    lo: i64,
    width: usize,
    words: Vec<u64>,
}

impl SumBits {
    /// The set `{0}` inside `[lo, hi]`; requires `lo ≤ 0 ≤ hi`.
    pub(crate) fn zero_in(lo: i64, hi: i64) -> Self {
        let width = (hi - lo + 1) as usize;
        let mut s = Self { lo, width, words: alloc::vec![0; width.div_ceil(64)] };
        s.set((-lo) as usize);
        s
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn contains(&self, x: i64) -> bool {
        let i = x - self.lo;
        i >= 0 && (i as usize) < self.width && self.get(i as usize)
    }

    /// `self ∪ (self + e)`, truncated to the window.
    pub(crate) fn add_entry(&mut self, e: i64) {
        let n = self.words.len();
        let shift = e.unsigned_abs() as usize;
        let (ws, bs) = (shift / 64, shift % 64);
        let old = self.words.clone();
        if e > 0 {
            for i in (ws..n).rev() {
                let mut v = old[i - ws] << bs;
                if bs > 0 && i > ws {
                    v |= old[i - ws - 1] >> (64 - bs);
                }
                self.words[i] |= v;
            }
        } else {
            for i in 0..n.saturating_sub(ws) {
                let mut v = old[i + ws] >> bs;
                if bs > 0 && i + ws + 1 < n {
                    v |= old[i + ws + 1] << (64 - bs);
                }
                self.words[i] |= v;
            }
        }
        let tail = self.width % 64;
        if tail != 0 {
            self.words[n - 1] &= (1u64 << tail) - 1;
        }
    }

    pub(crate) fn values(&self) -> Vec<i64> {
        (0..self.width).filter(|&i| self.get(i)).map(|i| self.lo + i as i64).collect()
    }
}

/// `S_B` as a sorted list, by dynamic programming over `[Σ negatives, Σ positives]`.
pub fn subsequence_sum_values(entries: &[i64]) -> Result<Vec<i64>> {
    let overflow = || Error::ResourceCap { cap: "sum-range", limit: MAX_RANGE_BITS };
    let mut lo: i64 = 0;
    let mut hi: i64 = 0;
    for &e in entries {
        if e == 0 {
            return Err(Error::InvalidInput("sequence entry is zero".into()));
        }
        if e < 0 {
            lo = lo.checked_add(e).ok_or_else(overflow)?;
        } else {
            hi = hi.checked_add(e).ok_or_else(overflow)?;
        }
    }
    let width = hi.checked_sub(lo).ok_or_else(overflow)?;
    if width as u64 >= MAX_RANGE_BITS {
        return Err(overflow());
    }
    let mut bits = SumBits::zero_in(lo, hi);
    for &e in entries {
        bits.add_entry(e);
    }
    Ok(bits.values())
}

/// The set of sums of subsequences of `b`, including 0 for the empty one.
///
/// Fails with a resource error when `b` is longer than `length_cap`.
pub fn subsequence_sums(b: &SequenceB, length_cap: usize) -> Result<DegreeSet> {
    if b.len() > length_cap {
        return Err(Error::ResourceCap { cap: "sequence-length", limit: length_cap as u64 });
    }
    let values = subsequence_sum_values(b.entries())?;
    Ok(DegreeSet::from_finite(values.into_iter().map(BigInt::from)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degsets::enumerate_subset_sums;
    use proptest::prelude::*;

    fn sums(v: &[i64]) -> DegreeSet {
        subsequence_sums(&SequenceB::new(v.to_vec()).unwrap(), DEFAULT_LENGTH_CAP).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(sums(&[7]), DegreeSet::from_i64s(&[0, 7]));
        assert_eq!(sums(&[1, 2]), DegreeSet::from_i64s(&[0, 1, 2, 3]));
        assert_eq!(sums(&[]), DegreeSet::zero());
        assert_eq!(sums(&[1, 1]), DegreeSet::from_i64s(&[0, 1, 2]));
        assert_eq!(sums(&[-3, 5]), DegreeSet::from_i64s(&[-3, 0, 2, 5]));
    }

    #[test]
    fn zero_rejected() {
        assert!(SequenceB::new(alloc::vec![1, 0]).is_err());
    }

    #[test]
    fn length_cap() {
        let b = SequenceB::new(alloc::vec![1; 41]).unwrap();
        assert_eq!(
            subsequence_sums(&b, DEFAULT_LENGTH_CAP),
            Err(Error::ResourceCap { cap: "sequence-length", limit: 40 })
        );
    }

    #[test]
    fn wide_entries_cross_words() {
        assert_eq!(subsequence_sum_values(&[100, -70, 1]).unwrap(), [-70, -69, 0, 1, 30, 31, 100, 101]);
        assert_eq!(subsequence_sum_values(&[64, 64, -128]).unwrap(), [-128, -64, 0, 64, 128]);
    }

    proptest! {
        #[test]
        fn dp_matches_enumeration(v in proptest::collection::vec(prop_oneof![-9i64..=-1, 1i64..=9], 0..=16)) {
            let dp = subsequence_sum_values(&v).unwrap();
            let brute: Vec<i64> = enumerate_subset_sums(&v, 20).unwrap().into_iter().collect();
            prop_assert_eq!(dp, brute);
        }
    }
}
