use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::GroupElement;
use crate::{arith, Error, Result};

/// The set `{k ∈ ℤ : k·a = c}`.
///
/// A progression with `modulus > 0` denotes `{base + q·modulus}` with
/// `0 ≤ base < modulus`; `modulus = 0` denotes the singleton `{base}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScalarSolutionSet {
    Empty,
    Progression { base: BigInt, modulus: BigInt },
}

impl ScalarSolutionSet {
    pub fn singleton(k: BigInt) -> Self {
        Self::Progression { base: k, modulus: BigInt::zero() }
    }

    pub fn progression(base: &BigInt, modulus: BigInt) -> Self {
        debug_assert!(modulus > BigInt::zero());
        Self::Progression { base: arith::reduce(base, &modulus), modulus }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Self::Empty)
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self, Self::Progression { modulus, .. } if modulus.is_zero())
    }

    pub fn contains(&self, k: &BigInt) -> bool {
        match self {
            Self::Empty => false,
            Self::Progression { base, modulus } if modulus.is_zero() => base == k,
            Self::Progression { base, modulus } => (k - base).is_multiple_of(modulus),
        }
    }

    fn intersect(self, other: Self) -> Self {
        use ScalarSolutionSet::*;
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (Progression { base: x, modulus: l }, Progression { base: y, modulus: m }) => {
                match (l.is_zero(), m.is_zero()) {
                    (true, true) if x == y => Self::singleton(x),
                    (true, true) => Empty,
                    (true, false) if (&x - &y).is_multiple_of(&m) => Self::singleton(x),
                    (false, true) if (&y - &x).is_multiple_of(&l) => Self::singleton(y),
                    (true, false) | (false, true) => Empty,
                    (false, false) => match arith::crt(&x, &l, &y, &m) {
                        Some((base, modulus)) => Progression { base, modulus },
                        None => Empty,
                    },
                }
            }
        }
    }
}

/// Every integer `k` with `k·a = c`.
///
/// Free coordinates are solved by exact division, torsion coordinates by the
/// linear congruence `k·a_j ≡ c_j (mod d_j)`, and the per-coordinate answers
/// are intersected. For torsion `a` a nonempty answer has modulus `order(a)`;
/// for non-torsion `a` it is empty or a singleton.
pub fn solve_scalar(a: &GroupElement, c: &GroupElement) -> Result<ScalarSolutionSet> {
    if a.group() != c.group() {
        return Err(Error::GroupMismatch);
    }
    let mut acc = ScalarSolutionSet::progression(&BigInt::zero(), BigInt::one());
    for (x, y) in a.free_part().iter().zip(c.free_part()) {
        let here = if x.is_zero() {
            if y.is_zero() {
                continue;
            }
            ScalarSolutionSet::Empty
        } else if y.is_multiple_of(x) {
            ScalarSolutionSet::singleton(y / x)
        } else {
            ScalarSolutionSet::Empty
        };
        acc = acc.intersect(here);
        if acc.is_empty() {
            return Ok(acc);
        }
    }
    for ((x, y), d) in a.torsion_part().iter().zip(c.torsion_part()).zip(a.group().torsion()) {
        let here = match arith::solve_linear_congruence(x, y, d) {
            Some((base, modulus)) => ScalarSolutionSet::Progression { base, modulus },
            None => ScalarSolutionSet::Empty,
        };
        acc = acc.intersect(here);
        if acc.is_empty() {
            return Ok(acc);
        }
    }
    Ok(acc)
}

/// Whether `b ∈ ⟨a⟩`. `b = 0` always qualifies as `0·a`.
pub fn in_cyclic_subgroup(b: &GroupElement, a: &GroupElement) -> Result<bool> {
    if b.is_zero() && a.group() == b.group() {
        return Ok(true);
    }
    Ok(!solve_scalar(a, b)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::free(1)
    }

    fn el(g: &FgAbelianGroup, free: &[i64], tors: &[i64]) -> GroupElement {
        g.element(free, tors).unwrap()
    }

    #[test]
    fn integer_examples() {
        let g = z();
        assert_eq!(solve_scalar(&el(&g, &[2], &[]), &el(&g, &[6], &[])).unwrap(), ScalarSolutionSet::singleton(b(3)));
        assert!(solve_scalar(&el(&g, &[2], &[]), &el(&g, &[3], &[])).unwrap().is_empty());
    }

    #[test]
    fn cyclic6_example() {
        let g = FgAbelianGroup::cyclic(6).unwrap();
        let a = el(&g, &[], &[2]);
        let c = el(&g, &[], &[4]);
        let brute: Vec<i64> = (0..6).filter(|k| a.scale(&b(*k)) == c).collect();
        assert_eq!(brute, [2, 5]);
        assert_eq!(solve_scalar(&a, &c).unwrap(), ScalarSolutionSet::Progression { base: b(2), modulus: b(3) });
    }

    #[test]
    fn zero_a() {
        let g = FgAbelianGroup::new(1, vec![b(4)]).unwrap();
        let zero = g.zero();
        assert_eq!(solve_scalar(&zero, &zero).unwrap(), ScalarSolutionSet::Progression { base: b(0), modulus: b(1) });
        assert!(solve_scalar(&zero, &el(&g, &[0], &[1])).unwrap().is_empty());
    }

    #[test]
    fn mismatch() {
        let a = z().zero();
        let c = FgAbelianGroup::free(2).zero();
        assert_eq!(solve_scalar(&a, &c), Err(Error::GroupMismatch));
    }

    #[test]
    fn cyclic_subgroup_examples() {
        let g = FgAbelianGroup::free(2);
        assert!(in_cyclic_subgroup(&el(&g, &[3, 0], &[]), &el(&g, &[1, 0], &[])).unwrap());
        assert!(!in_cyclic_subgroup(&el(&g, &[0, 1], &[]), &el(&g, &[1, 0], &[])).unwrap());
        let h = FgAbelianGroup::cyclic(4).unwrap();
        let a = el(&h, &[], &[2]);
        let multiples: Vec<_> = (0..4).map(|k| a.scale(&b(k))).collect();
        assert!(multiples.contains(&a));
        assert!(in_cyclic_subgroup(&a, &a).unwrap());
        assert!(!in_cyclic_subgroup(&el(&h, &[], &[1]), &a).unwrap());
    }

    fn group_strategy() -> impl Strategy<Value = FgAbelianGroup> {
        (0usize..=2, proptest::collection::vec(2u64..=6, 0..=2)).prop_map(|(rank, factors)| {
            // build a valid chain by accumulating products
            let mut chain: Vec<BigInt> = Vec::new();
            for f in factors {
                let next = chain.last().map_or(b(f as i64), |p| p * b(f as i64));
                chain.push(next);
            }
            FgAbelianGroup::new(rank, chain).unwrap()
        })
    }

    proptest! {
        #[test]
        fn matches_window(g in group_strategy(), seed in proptest::collection::vec(-4i64..=4, 8)) {
            let coords_a: Vec<BigInt> = seed[..g.generator_count()].iter().map(|x| b(*x)).collect();
            let coords_c: Vec<BigInt> = seed[4..4 + g.generator_count()].iter().map(|x| b(*x)).collect();
            let a = GroupElement::from_coordinates(&g, coords_a).unwrap();
            let c = GroupElement::from_coordinates(&g, coords_c).unwrap();
            let sol = solve_scalar(&a, &c).unwrap();
            for k in -60i64..=60 {
                prop_assert_eq!(sol.contains(&b(k)), a.scale(&b(k)) == c, "k={}", k);
            }
            if let ScalarSolutionSet::Progression { modulus, .. } = &sol {
                match a.order() {
                    None => prop_assert!(modulus.is_zero()),
                    Some(ord) => prop_assert_eq!(modulus, &ord),
                }
            }
        }
    }
}
