//! Built-in base manifolds with their declared hypotheses.
//!
//! Each preset carries a rank-one `H²` with distinguished non-torsion class
//! `b`. Only the data the degree rules consume is modeled; the flags are
//! axioms established by geometry, not computed here.

use alloc::{collections::BTreeMap, string::ToString, vec, vec::Vec};

use super::{BaseManifold, Flag};
use crate::abelian::FgAbelianGroup;

/// Name of the distinguished class on every preset.
pub const CLASS: &str = "b";

pub const HYPERBOLIC_SURFACE: &str = "hyperbolic-surface";
pub const KNOT_GLUING_3: &str = "knot-gluing-3";
pub const ODD_ISOMETRY_4: &str = "odd-isometry-4";

/// Alternative names accepted by [`lookup`].
pub const ALIASES: &[(&str, &str)] =
    &[("sigma", HYPERBOLIC_SURFACE), ("thm52-dim3", KNOT_GLUING_3), ("thm52-dim4", ODD_ISOMETRY_4)];

fn rank_one(name: &str, dim: u32, flags: Vec<Flag>) -> BaseManifold {
    let h2 = FgAbelianGroup::free(1);
    let mut classes = BTreeMap::new();
    classes.insert(CLASS.to_string(), h2.element(&[1], &[] as &[i64]).expect("rank one"));
    BaseManifold::new(name, dim, h2, classes, flags, None).expect("preset is well formed")
}

/// Closed oriented hyperbolic surface, `b` the generator of `H² ≅ ℤ`.
///
/// Self-maps of nonzero degree have degree ±1 and act on `H²` by their
/// degree, which is what the surface-bundle pair rule relies on.
pub fn hyperbolic_surface() -> BaseManifold {
    rank_one(HYPERBOLIC_SURFACE, 2, vec![Flag::Hyperbolic])
}

/// Closed 3-manifold glued from two non-homeomorphic hyperbolic knot
/// complements (one without symmetries) along their boundary tori, matching
/// Seifert surfaces. Haken with `H² ≅ ℤ`, `D(N) = {0, 1}`, and every
/// degree-one self-map acts as the identity on `H²`.
pub fn knot_gluing_3() -> BaseManifold {
    rank_one(
        KNOT_GLUING_3,
        3,
        vec![Flag::Aspherical, Flag::ScfPi1, Flag::DSelfIs01, Flag::FixesClass(CLASS.to_string())],
    )
}

/// Closed hyperbolic 4-manifold with odd-order isometry group and positive
/// second Betti number; `b` spans a rank-one sublattice of `H²`.
pub fn odd_isometry_4() -> BaseManifold {
    rank_one(ODD_ISOMETRY_4, 4, vec![Flag::Hyperbolic, Flag::DSelfIs01, Flag::FixesClass(CLASS.to_string())])
}

pub fn builtin() -> Vec<BaseManifold> {
    vec![hyperbolic_surface(), knot_gluing_3(), odd_isometry_4()]
}

/// Resolves a preset name or alias.
pub fn lookup(name: &str) -> Option<BaseManifold> {
    let canonical = ALIASES.iter().find(|(alias, _)| *alias == name).map_or(name, |(_, target)| target);
    builtin().into_iter().find(|b| b.name() == canonical)
}

/// Base used by the realization pipeline for total-space dimension `n`:
/// surfaces for `n = 3` and for every `n ≥ 6` (built in dimension 3, then
/// stabilized), the knot-gluing 3-manifold for `n = 4`, the hyperbolic
/// 4-manifold for `n = 5`.
pub fn default_for_dimension(n: u32) -> Option<BaseManifold> {
    match n {
        0..=2 => None,
        4 => Some(knot_gluing_3()),
        5 => Some(odd_isometry_4()),
        _ => Some(hyperbolic_surface()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_resolve() {
        assert_eq!(lookup("thm52-dim3").unwrap().name(), KNOT_GLUING_3);
        assert_eq!(lookup("thm52-dim4").unwrap().dim(), 4);
        assert_eq!(lookup("sigma").unwrap().dim(), 2);
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn presets_carry_pair_hypotheses() {
        for base in [knot_gluing_3(), odd_isometry_4()] {
            for flag in [Flag::Aspherical, Flag::ScfPi1, Flag::DSelfIs01, Flag::FixesClass(CLASS.into())] {
                assert!(base.has(&flag), "{} lacks {flag}", base.name());
            }
            assert!(!base.class(CLASS).unwrap().is_torsion());
        }
        assert!(!hyperbolic_surface().has(&Flag::DSelfIs01));
    }
}
