use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{arith, Error, Result};

/// `{base + q·modulus : q ∈ ℤ}` with `modulus ≥ 1` and `0 ≤ base < modulus`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Progression {
    // field order gives the canonical sort: by modulus, then base
    modulus: BigInt,
    base: BigInt,
}

impl Progression {
    pub fn new(base: &BigInt, modulus: BigInt) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(Error::InvalidInput(alloc::format!("progression modulus {modulus} must be at least 1")));
        }
        Ok(Self { base: arith::reduce(base, &modulus), modulus })
    }

    pub fn base(&self) -> &BigInt {
        &self.base
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn contains(&self, d: &BigInt) -> bool {
        (d - &self.base).is_multiple_of(&self.modulus)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.modulus.is_multiple_of(&other.modulus) && other.contains(&self.base)
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        arith::crt(&self.base, &self.modulus, &other.base, &other.modulus).map(|(base, modulus)| Self { base, modulus })
    }

    /// `{k·x : x ∈ self}` for `k ≠ 0`.
    pub fn scale(&self, k: &BigInt) -> Self {
        let modulus = &self.modulus * k.abs();
        Self { base: arith::reduce(&(&self.base * k), &modulus), modulus }
    }

    /// Splits into the residue classes modulo `modulus · factor`.
    fn refine(&self, factor: &BigInt) -> Vec<Self> {
        let modulus = &self.modulus * factor;
        let mut out = Vec::new();
        let mut q = BigInt::zero();
        while &q < factor {
            out.push(Self { base: &self.base + &q * &self.modulus, modulus: modulus.clone() });
            q += 1;
        }
        out
    }
}

impl fmt::Debug for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.base, self.modulus)
    }
}

/// A set of integers: `finite ∪ ⋃ progressions`, with 0 removed from the
/// progression part when `excludes_zero` is set.
///
/// Values are always canonical: `finite` sorted and deduplicated, no finite
/// element inside a stored progression, progressions pairwise non-nested and
/// sorted by `(modulus, base)`, and `excludes_zero` only set when some
/// progression actually contains 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSet {
    finite: Vec<BigInt>,
    progressions: Vec<Progression>,
    excludes_zero: bool,
}

impl DegreeSet {
    pub fn new(finite: Vec<BigInt>, progressions: Vec<Progression>, excludes_zero: bool) -> Self {
        let mut s = Self { finite, progressions, excludes_zero };
        s.canonicalize();
        s
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `{0}`.
    pub fn zero() -> Self {
        Self::from_finite([BigInt::zero()])
    }

    pub fn from_finite<I: IntoIterator<Item = BigInt>>(items: I) -> Self {
        Self::new(items.into_iter().collect(), Vec::new(), false)
    }

    pub fn from_i64s(items: &[i64]) -> Self {
        Self::from_finite(items.iter().map(|x| BigInt::from(*x)))
    }

    pub fn from_progression(p: Progression) -> Self {
        Self::new(Vec::new(), alloc::vec![p], false)
    }

    pub fn finite(&self) -> &[BigInt] {
        &self.finite
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub fn excludes_zero(&self) -> bool {
        self.excludes_zero
    }

    pub fn is_finite(&self) -> bool {
        self.progressions.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.progressions.is_empty()
    }

    /// Members of a finite set, ascending; `None` if the set is infinite.
    pub fn elements(&self) -> Option<&[BigInt]> {
        self.is_finite().then_some(self.finite.as_slice())
    }

    /// Returns this set with 0 removed from the progression part.
    pub fn without_zero_in_progressions(mut self) -> Self {
        self.excludes_zero = true;
        self.canonicalize();
        self
    }

    pub fn canonicalize(&mut self) {
        self.finite.sort();
        self.finite.dedup();

        self.progressions.sort();
        self.progressions.dedup();
        let all = core::mem::take(&mut self.progressions);
        self.progressions = all
            .iter()
            .enumerate()
            .filter(|(i, p)| !all.iter().enumerate().any(|(j, q)| *i != j && p.is_subset_of(q)))
            .map(|(_, p)| p.clone())
            .collect();

        let zero = BigInt::zero();
        let zero_in_progressions = self.progressions.iter().any(|p| p.contains(&zero));
        if !zero_in_progressions || self.finite.binary_search(&zero).is_ok() {
            self.excludes_zero = false;
        }
        let progressions = &self.progressions;
        let excludes_zero = self.excludes_zero;
        self.finite.retain(|d| !(progressions.iter().any(|p| p.contains(d)) && !(excludes_zero && d.is_zero())));
    }

    pub fn contains(&self, d: &BigInt) -> bool {
        if self.finite.binary_search(d).is_ok() {
            return true;
        }
        if self.excludes_zero && d.is_zero() {
            return false;
        }
        self.progressions.iter().any(|p| p.contains(d))
    }

    pub fn contains_i64(&self, d: i64) -> bool {
        self.contains(&BigInt::from(d))
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut finite: Vec<BigInt> = self.finite.iter().filter(|d| other.contains(d)).cloned().collect();
        finite.extend(other.finite.iter().filter(|d| self.contains(d)).cloned());
        let mut progressions = Vec::new();
        for p in &self.progressions {
            for q in &other.progressions {
                if let Some(r) = p.intersect(q) {
                    progressions.push(r);
                }
            }
        }
        let zero = BigInt::zero();
        let zero_in = self.contains(&zero) && other.contains(&zero);
        if zero_in {
            finite.push(zero);
        }
        Self::new(finite, progressions, !zero_in)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut finite: Vec<BigInt> = self.finite.iter().chain(&other.finite).cloned().collect();
        let progressions = self.progressions.iter().chain(&other.progressions).cloned().collect();
        let zero = BigInt::zero();
        let zero_in = self.contains(&zero) || other.contains(&zero);
        if zero_in {
            finite.push(zero);
        }
        Self::new(finite, progressions, !zero_in)
    }

    /// Semantic equality. Canonical forms are not unique for infinite sets
    /// (`0 mod 2 ∪ 1 mod 2` equals `0 mod 1`), so progressions are compared by
    /// mutual covering.
    pub fn equals(&self, other: &Self) -> bool {
        if self == other {
            return true;
        }
        let zero = BigInt::zero();
        if self.contains(&zero) != other.contains(&zero) {
            return false;
        }
        self.finite.iter().all(|d| other.contains(d))
            && other.finite.iter().all(|d| self.contains(d))
            && self.progressions.iter().all(|p| covered(p, &other.progressions))
            && other.progressions.iter().all(|p| covered(p, &self.progressions))
    }

    /// `{k·x : x ∈ self}`.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return if self.is_empty() { Self::empty() } else { Self::zero() };
        }
        Self::new(
            self.finite.iter().map(|d| d * k).collect(),
            self.progressions.iter().map(|p| p.scale(k)).collect(),
            self.excludes_zero,
        )
    }

    /// Members inside `[lo, hi]`, ascending.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|d| self.contains(&BigInt::from(*d))).collect()
    }

    pub fn insert_zero(&self) -> Self {
        self.union(&Self::zero())
    }
}

/// Whether `p ⊆ ⋃ cover` (treating every member of the cover as a full
/// progression).
fn covered(p: &Progression, cover: &[Progression]) -> bool {
    if cover.iter().any(|q| p.is_subset_of(q)) {
        return true;
    }
    let meeting: Vec<&Progression> = cover.iter().filter(|q| p.intersect(q).is_some()).collect();
    let Some(first) = meeting.first() else {
        return false;
    };
    // Refine p along the first partially-overlapping progression; each piece
    // is then either inside it or disjoint from it.
    let lcm = p.modulus().lcm(first.modulus());
    let factor = &lcm / p.modulus();
    debug_assert!(factor > BigInt::one());
    p.refine(&factor).iter().all(|piece| covered(piece, cover))
}

impl fmt::Debug for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for d in &self.finite {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{d}")?;
        }
        for p in &self.progressions {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{p:?}")?;
        }
        write!(f, "}}")?;
        if self.excludes_zero {
            write!(f, " \\ {{0}}")?;
        }
        Ok(())
    }
}
