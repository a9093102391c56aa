use alloc::{format, vec::Vec};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{BaseManifold, Flag};
use crate::abelian::{solve_scalar, validate_homomorphism, GroupElement, IntegerMatrix, ScalarSolutionSet};
use crate::degsets::{DegreeSet, Progression};
use crate::{Error, Result};

/// Which clause of the vertical-map classification applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerticalCase {
    /// `b ∉ ⟨a⟩`: no vertical maps.
    NotInSubgroup,
    /// `a` torsion and `b = k·a`: every `k + q·order(a) ≠ 0`.
    TorsionProgression,
    /// `a` non-torsion and `b = k·a` with `k ≠ 0`: exactly `{k}`.
    Single,
    /// `a` non-torsion and `b = 0`: the only multiplier is `k = 0`, which the
    /// classification does not list.
    ZeroMultiplierOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalResult {
    pub set: DegreeSet,
    pub case: VerticalCase,
    /// Whether degree-0 vertical maps exist is not decided; 0 is never
    /// inserted into `set`.
    pub zero_undetermined: bool,
}

/// Degrees of vertical maps `M̃_a → M̃_b` over a common base.
pub fn vertical_degree_set(a: &GroupElement, b: &GroupElement) -> Result<VerticalResult> {
    let solutions = solve_scalar(a, b)?;
    let (set, case) = match solutions {
        ScalarSolutionSet::Empty => (DegreeSet::empty(), VerticalCase::NotInSubgroup),
        ScalarSolutionSet::Progression { base, modulus } if modulus.is_zero() => {
            if base.is_zero() {
                (DegreeSet::empty(), VerticalCase::ZeroMultiplierOnly)
            } else {
                (DegreeSet::from_finite([base]), VerticalCase::Single)
            }
        }
        ScalarSolutionSet::Progression { base, modulus } => (
            DegreeSet::from_progression(Progression::new(&base, modulus)?).without_zero_in_progressions(),
            VerticalCase::TorsionProgression,
        ),
    };
    Ok(VerticalResult { set, case, zero_undetermined: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionVerdict {
    Compatible,
    /// Exactly one of the Euler classes is torsion: every fiber-preserving
    /// map has degree 0.
    Incompatible,
}

pub fn torsion_consistency(a: &GroupElement, b: &GroupElement) -> TorsionVerdict {
    if a.is_torsion() == b.is_torsion() {
        TorsionVerdict::Compatible
    } else {
        TorsionVerdict::Incompatible
    }
}

/// A map between base manifolds, known only by its degree and its action
/// on `H²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapModel {
    pub degree: BigInt,
    /// Columns are the images of the target-base `H²` generators, written in
    /// the generators of the domain-base `H²`.
    pub action: IntegerMatrix,
}

/// User-declared base maps. `complete` asserts that every homotopy class
/// of nonzero-degree map is represented.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MapCatalogue {
    pub maps: Vec<MapModel>,
    pub complete: bool,
}

/// What one catalogue map contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contribution {
    pub map: usize,
    /// `f^#(b)`.
    pub pullback: GroupElement,
    /// Every `k` with `k·a = f^#(b)`.
    pub multipliers: ScalarSolutionSet,
    /// `{k·deg(f) : k ≠ 0}` over those multipliers.
    pub degrees: DegreeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberPreservingResult {
    pub set: DegreeSet,
    /// `true` only for a complete catalogue; otherwise `set` is a subset of
    /// the true fiber-preserving degree set.
    pub exact: bool,
    /// Set when the torsion-consistency check forced `{0}`.
    pub short_circuited: bool,
    pub contributions: Vec<Contribution>,
}

/// Degrees of fiber-preserving maps `M̃_a → Ñ_b`:
/// `{0} ∪ ⋃_f {k·deg(f) : k ≠ 0, k·a = f^#(b)}` over the catalogue.
pub fn fiber_preserving_degree_set(
    catalogue: &MapCatalogue,
    a: &GroupElement,
    b: &GroupElement,
) -> Result<FiberPreservingResult> {
    for (i, f) in catalogue.maps.iter().enumerate() {
        if f.degree.is_zero() {
            return Err(Error::InvalidInput(format!("catalogue map {i} has degree 0")));
        }
        if !validate_homomorphism(b.group(), a.group(), &f.action) {
            return Err(Error::InvalidMatrix(format!(
                "catalogue map {i}: action is not a homomorphism {} -> {}",
                b.group(),
                a.group()
            )));
        }
    }
    if torsion_consistency(a, b) == TorsionVerdict::Incompatible {
        return Ok(FiberPreservingResult {
            set: DegreeSet::zero(),
            exact: catalogue.complete,
            short_circuited: true,
            contributions: Vec::new(),
        });
    }

    let mut set = DegreeSet::zero();
    let mut contributions = Vec::with_capacity(catalogue.maps.len());
    for (i, f) in catalogue.maps.iter().enumerate() {
        let pullback = b.map_by(&f.action, a.group())?;
        let multipliers = solve_scalar(a, &pullback)?;
        let degrees = match &multipliers {
            ScalarSolutionSet::Empty => DegreeSet::empty(),
            ScalarSolutionSet::Progression { base, modulus } if modulus.is_zero() => {
                if base.is_zero() {
                    DegreeSet::empty()
                } else {
                    DegreeSet::from_finite([base * &f.degree])
                }
            }
            ScalarSolutionSet::Progression { base, modulus } => {
                DegreeSet::from_progression(Progression::new(base, modulus.clone())?)
                    .without_zero_in_progressions()
                    .scale(&f.degree)
            }
        };
        set = set.union(&degrees);
        contributions.push(Contribution { map: i, pullback, multipliers, degrees });
    }
    Ok(FiberPreservingResult { set, exact: catalogue.complete, short_circuited: false, contributions })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Promotion {
    pub set: DegreeSet,
    /// Both bases aspherical and the target base SCF: every nonzero-degree
    /// map is homotopic to a fiber-preserving one, so `set` is the full
    /// mapping degree set (as exact as the input).
    pub justified: bool,
}

pub fn promote_to_full_degree_set(
    domain_base: &BaseManifold,
    target_base: &BaseManifold,
    dfp: &DegreeSet,
) -> Promotion {
    let justified =
        domain_base.has(&Flag::Aspherical) && target_base.has(&Flag::Aspherical) && target_base.has(&Flag::ScfPi1);
    Promotion { set: dfp.clone(), justified }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbelianGroup;
    use crate::bundles::presets;
    use alloc::vec;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn z(x: i64) -> GroupElement {
        FgAbelianGroup::free(1).element(&[x], &[] as &[i64]).unwrap()
    }

    fn z6(x: i64) -> GroupElement {
        FgAbelianGroup::cyclic(6).unwrap().element(&[] as &[i64], &[x]).unwrap()
    }

    #[test]
    fn vertical_cases() {
        let r = vertical_degree_set(&z(1), &z(5)).unwrap();
        assert_eq!((r.set, r.case), (DegreeSet::from_i64s(&[5]), VerticalCase::Single));
        let r = vertical_degree_set(&z(2), &z(5)).unwrap();
        assert_eq!((r.set, r.case), (DegreeSet::empty(), VerticalCase::NotInSubgroup));
        let r = vertical_degree_set(&z6(2), &z6(4)).unwrap();
        assert_eq!(r.case, VerticalCase::TorsionProgression);
        assert_eq!(r.set.progressions(), [Progression::new(&b(2), b(3)).unwrap()]);
        assert!(r.set.contains(&b(-1)) && r.set.contains(&b(5)) && !r.set.contains(&b(0)));
        let r = vertical_degree_set(&z(3), &z(0)).unwrap();
        assert_eq!((r.set, r.case), (DegreeSet::empty(), VerticalCase::ZeroMultiplierOnly));
        // torsion a, b = 0: multiples of the order, 0 itself not listed
        let r = vertical_degree_set(&z6(2), &z6(0)).unwrap();
        assert!(r.set.contains(&b(3)) && !r.set.contains(&b(0)));
    }

    #[test]
    fn vertical_group_mismatch() {
        assert_eq!(vertical_degree_set(&z(1), &z6(1)), Err(Error::GroupMismatch));
    }

    #[test]
    fn torsion_verdicts() {
        assert_eq!(torsion_consistency(&z(2), &z(3)), TorsionVerdict::Compatible);
        assert_eq!(torsion_consistency(&z6(2), &z(3)), TorsionVerdict::Incompatible);
        assert_eq!(torsion_consistency(&z(0), &z(0)), TorsionVerdict::Compatible);
    }

    fn map(degree: i64, action: &[Vec<i64>]) -> MapModel {
        let cols = action.first().map_or(0, Vec::len);
        MapModel { degree: b(degree), action: IntegerMatrix::from_rows(cols, action).unwrap() }
    }

    #[test]
    fn fiber_preserving_examples() {
        let empty = MapCatalogue { maps: vec![], complete: true };
        let r = fiber_preserving_degree_set(&empty, &z(1), &z(1)).unwrap();
        assert_eq!((r.set, r.exact), (DegreeSet::zero(), true));

        let id = MapCatalogue { maps: vec![map(1, &[vec![1]])], complete: false };
        let r = fiber_preserving_degree_set(&id, &z(3), &z(3)).unwrap();
        assert_eq!(r.set, DegreeSet::from_i64s(&[0, 1]));
        assert!(!r.exact);

        // f^#(b) = 4 = 2a, deg 3 → {0, 6}
        let cat = MapCatalogue { maps: vec![map(3, &[vec![4]])], complete: true };
        let r = fiber_preserving_degree_set(&cat, &z(2), &z(1)).unwrap();
        assert_eq!(r.set, DegreeSet::from_i64s(&[0, 6]));
        assert_eq!(r.contributions[0].pullback, z(4));
        assert_eq!(r.contributions[0].multipliers, ScalarSolutionSet::singleton(b(2)));
    }

    #[test]
    fn fiber_preserving_torsion_progression_scaled() {
        let cat = MapCatalogue { maps: vec![map(2, &[vec![1]])], complete: true };
        let r = fiber_preserving_degree_set(&cat, &z6(2), &z6(4)).unwrap();
        // k ∈ {2 mod 3}, degrees 2k: {4 mod 6}
        for d in -30i64..=30 {
            assert_eq!(r.set.contains(&b(d)), d == 0 || (d - 4).rem_euclid(6) == 0, "d={d}");
        }
    }

    #[test]
    fn fiber_preserving_errors_and_short_circuit() {
        let zero = MapCatalogue { maps: vec![map(0, &[vec![1]])], complete: true };
        assert!(matches!(fiber_preserving_degree_set(&zero, &z(1), &z(1)), Err(Error::InvalidInput(_))));
        // torsion generator of ℤ/6 sent to ℤ
        let bad = MapCatalogue { maps: vec![map(1, &[vec![1]])], complete: true };
        assert!(matches!(fiber_preserving_degree_set(&bad, &z(1), &z6(1)), Err(Error::InvalidMatrix(_))));

        let cat = MapCatalogue { maps: vec![map(1, &[vec![0]])], complete: true };
        let r = fiber_preserving_degree_set(&cat, &z6(2), &z(3)).unwrap();
        assert!(r.short_circuited);
        assert_eq!(r.set, DegreeSet::zero());
    }

    #[test]
    fn promotion() {
        let hyp = presets::odd_isometry_4();
        let s = DegreeSet::from_i64s(&[0, 1]);
        assert!(promote_to_full_degree_set(&hyp, &hyp, &s).justified);
        let surface = presets::hyperbolic_surface();
        let bare =
            BaseManifold::new("bare", 2, surface.h2().clone(), surface.classes().clone(), [Flag::Aspherical], None)
                .unwrap();
        assert!(!promote_to_full_degree_set(&surface, &bare, &s).justified);
        let loose = BaseManifold::new("loose", 2, surface.h2().clone(), surface.classes().clone(), [], None).unwrap();
        assert!(!promote_to_full_degree_set(&loose, &surface, &s).justified);
        assert_eq!(promote_to_full_degree_set(&loose, &surface, &s).set, s);
    }
}
