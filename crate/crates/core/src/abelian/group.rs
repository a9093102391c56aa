use alloc::{format, vec::Vec};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{smith_normal_form, IntegerMatrix};
use crate::{arith, Error, Result};

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t` with `2 ≤ d₁ | d₂ | … | d_t`.
///
/// Generators are ordered free first, then torsion; every matrix acting on a
/// group uses this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (j, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::InvalidInput(format!("torsion factor {j} is {d}, must be at least 2")));
            }
        }
        for (j, w) in torsion.windows(2).enumerate() {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidInput(format!(
                    "torsion factors {} and {} break the divisibility chain ({} does not divide {})",
                    j,
                    j + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(Self { rank, torsion })
    }

    /// `ℤ^rank`.
    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// `ℤ/n` (trivial group for `n = 1`).
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Ok(Self::free(1)),
            1 => Ok(Self::free(0)),
            _ => Self::new(0, alloc::vec![BigInt::from(n)]),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn generator_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion subgroup, `∏ d_j`.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            free: alloc::vec![BigInt::zero(); self.rank],
            torsion: alloc::vec![BigInt::zero(); self.torsion.len()],
        }
    }

    pub fn element<F, T>(&self, free: &[F], torsion: &[T]) -> Result<GroupElement>
    where
        F: Into<BigInt> + Clone,
        T: Into<BigInt> + Clone,
    {
        GroupElement::new(
            self.clone(),
            free.iter().cloned().map(Into::into).collect(),
            torsion.iter().cloned().map(Into::into).collect(),
        )
    }

    /// The `i`-th canonical generator (free ones first).
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = alloc::vec![BigInt::zero(); self.generator_count()];
        coords[i] = BigInt::one();
        GroupElement::from_coordinates(self, coords).expect("coordinate count matches")
    }

    /// Every element of a finite group, in lexicographic residue order.
    pub fn enumerate(&self) -> Option<Vec<GroupElement>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = alloc::vec![self.zero()];
        for (j, d) in self.torsion.iter().enumerate() {
            let mut next = Vec::new();
            for e in &out {
                let mut r = BigInt::zero();
                while &r < d {
                    let mut x = e.clone();
                    x.torsion[j] = r.clone();
                    next.push(x);
                    r += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push(alloc::string::String::from("Z")),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// An element of an [`FgAbelianGroup`], torsion residues always reduced into
/// `[0, d_j)` so that equality is componentwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgAbelianGroup,
    free: Vec<BigInt>,
    torsion: Vec<BigInt>,
}

impl GroupElement {
    pub fn new(group: FgAbelianGroup, free: Vec<BigInt>, torsion: Vec<BigInt>) -> Result<Self> {
        if free.len() != group.rank {
            return Err(Error::InvalidElement(format!(
                "{} free coordinates given, group has rank {}",
                free.len(),
                group.rank
            )));
        }
        if torsion.len() != group.torsion.len() {
            return Err(Error::InvalidElement(format!(
                "{} torsion coordinates given, group has {} torsion factors",
                torsion.len(),
                group.torsion.len()
            )));
        }
        let torsion = torsion.iter().zip(&group.torsion).map(|(x, d)| arith::reduce(x, d)).collect();
        Ok(Self { group, free, torsion })
    }

    /// Element from coordinates in generator order (free then torsion).
    pub fn from_coordinates(group: &FgAbelianGroup, mut coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != group.generator_count() {
            return Err(Error::InvalidElement(format!(
                "{} coordinates given, group has {} generators",
                coords.len(),
                group.generator_count()
            )));
        }
        let torsion = coords.split_off(group.rank);
        Self::new(group.clone(), coords, torsion)
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn coordinates(&self) -> Vec<BigInt> {
        self.free.iter().chain(&self.torsion).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }

    /// Torsion iff the free part vanishes.
    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(Zero::is_zero)
    }

    /// Order of a torsion element: `lcm_j d_j / gcd(d_j, residue_j)`.
    /// `None` for non-torsion elements.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_torsion() {
            return None;
        }
        Some(
            self.torsion
                .iter()
                .zip(&self.group.torsion)
                .map(|(x, d)| d / x.gcd(d))
                .fold(BigInt::one(), |acc, o| acc.lcm(&o)),
        )
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let free = self.free.iter().zip(&other.free).map(|(x, y)| x + y).collect();
        let torsion = self.torsion.iter().zip(&other.torsion).map(|(x, y)| x + y).collect();
        Self::new(self.group.clone(), free, torsion)
    }

    pub fn neg(&self) -> Self {
        let free = self.free.iter().map(|x| -x).collect();
        let torsion = self.torsion.iter().map(|x| -x).collect();
        Self::new(self.group.clone(), free, torsion).expect("same shape")
    }

    /// `k · self`.
    pub fn scale(&self, k: &BigInt) -> Self {
        let free = self.free.iter().map(|x| x * k).collect();
        let torsion = self.torsion.iter().map(|x| x * k).collect();
        Self::new(self.group.clone(), free, torsion).expect("same shape")
    }

    /// Image under the homomorphism whose columns are the images of this
    /// group's generators in `target`.
    pub fn map_by(&self, m: &IntegerMatrix, target: &FgAbelianGroup) -> Result<Self> {
        if m.rows() != target.generator_count() || m.cols() != self.group.generator_count() {
            return Err(Error::InvalidMatrix(format!(
                "action is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                target.generator_count(),
                self.group.generator_count()
            )));
        }
        Self::from_coordinates(target, m.apply(&self.coordinates())?)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?} in {}", self.free, self.torsion, self.group)
    }
}

/// Invariant-factor form of the group presented by `relations` (one relation
/// per row, one generator per column).
pub fn canonicalize_group(relations: &IntegerMatrix) -> FgAbelianGroup {
    let snf = smith_normal_form(relations);
    let diag = snf.invariants();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let rank = relations.cols() - nonzero;
    let torsion = diag.into_iter().filter(|d| d > &BigInt::one()).collect();
    FgAbelianGroup { rank, torsion }
}

/// Whether `m` (columns = images of the generators of `from`, expressed in
/// the generators of `to`) defines a homomorphism `from → to`.
///
/// Free generators may go anywhere. A torsion generator of order `d` must land
/// on an element killed by `d`: zero free coordinates, and `d·entry ≡ 0` modulo
/// each torsion factor of `to`.
pub fn validate_homomorphism(from: &FgAbelianGroup, to: &FgAbelianGroup, m: &IntegerMatrix) -> bool {
    if m.rows() != to.generator_count() || m.cols() != from.generator_count() {
        return false;
    }
    for (j, d) in from.torsion.iter().enumerate() {
        let col = from.rank + j;
        if (0..to.rank).any(|i| !m[(i, col)].is_zero()) {
            return false;
        }
        for (i, e) in to.torsion.iter().enumerate() {
            if !(d * &m[(to.rank + i, col)]).is_multiple_of(e) {
                return false;
            }
        }
    }
    true
}

/// [`validate_homomorphism`] with `from = to = g`.
pub fn validate_endomorphism(g: &FgAbelianGroup, m: &IntegerMatrix) -> bool {
    validate_homomorphism(g, g, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn chain_validation() {
        assert!(FgAbelianGroup::new(1, vec![b(2), b(4)]).is_ok());
        assert!(FgAbelianGroup::new(0, vec![b(2), b(3)]).is_err());
        assert!(FgAbelianGroup::new(0, vec![b(1)]).is_err());
    }

    #[test]
    fn canonicalize_examples() {
        let empty = IntegerMatrix::zeros(0, 2);
        assert_eq!(canonicalize_group(&empty), FgAbelianGroup::free(2));
        let one = IntegerMatrix::from_rows(2, &[vec![2i64, 0]]).unwrap();
        assert_eq!(canonicalize_group(&one), FgAbelianGroup::new(1, vec![b(2)]).unwrap());
        let d = IntegerMatrix::diagonal(&[2, 3]);
        assert_eq!(canonicalize_group(&d), FgAbelianGroup::new(0, vec![b(6)]).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let z2 = FgAbelianGroup::free(2);
        let a = z2.element(&[3, 0], &[] as &[i64]).unwrap();
        assert!(!a.is_torsion());
        assert_eq!(a.order(), None);

        let z6 = FgAbelianGroup::cyclic(6).unwrap();
        let a = z6.element(&[] as &[i64], &[2]).unwrap();
        assert!(a.is_torsion());
        // brute force: smallest n > 0 with n·a = 0
        let brute = (1..=6).find(|n| a.scale(&b(*n)).is_zero()).unwrap();
        assert_eq!(a.order(), Some(b(brute)));
        assert_eq!(brute, 3);

        for g in [z2, z6, FgAbelianGroup::new(1, vec![b(2), b(4)]).unwrap()] {
            assert_eq!(g.zero().order(), Some(b(1)));
        }
    }

    #[test]
    fn residues_reduced() {
        let g = FgAbelianGroup::cyclic(4).unwrap();
        let x = g.element(&[] as &[i64], &[-1]).unwrap();
        assert_eq!(x.torsion_part(), [b(3)]);
        assert_eq!(x, g.element(&[] as &[i64], &[7]).unwrap());
    }

    #[test]
    fn endomorphism_examples() {
        let g = FgAbelianGroup::new(1, vec![b(2)]).unwrap();
        assert!(validate_endomorphism(&g, &IntegerMatrix::identity(2)));
        // torsion generator sent to the free generator
        let bad = IntegerMatrix::from_rows(2, &[vec![1i64, 1], vec![0, 0]]).unwrap();
        assert!(!validate_endomorphism(&g, &bad));

        let h = FgAbelianGroup::new(0, vec![b(2), b(4)]).unwrap();
        let swap = IntegerMatrix::from_rows(2, &[vec![0i64, 1], vec![1, 0]]).unwrap();
        // generator of order 2 would map onto an element of order 4
        assert!(!validate_endomorphism(&h, &swap));
        let ok = IntegerMatrix::from_rows(2, &[vec![1i64, 1], vec![2, 1]]).unwrap();
        assert!(validate_endomorphism(&h, &ok));
    }

    #[test]
    fn enumerate_finite() {
        let g = FgAbelianGroup::new(0, vec![b(2), b(4)]).unwrap();
        assert_eq!(g.enumerate().unwrap().len(), 8);
        assert!(FgAbelianGroup::free(1).enumerate().is_none());
    }
}
