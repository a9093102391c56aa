//! Symbolic manifolds and closed-form degree-set rules for circle bundles.
//!
//! Hypotheses about base manifolds (asphericity, strongly center-free
//! fundamental group, self-degree sets, …) cannot be computed; they are
//! declared as [`Flag`]s on a [`BaseManifold`] and every rule checks the
//! flags it depends on.

mod base;
mod expr;
mod maps;
pub mod presets;
mod rules;

pub use base::{BaseManifold, Flag};
pub use expr::ManifoldExpr;
pub use maps::{
    fiber_preserving_degree_set, promote_to_full_degree_set, torsion_consistency, vertical_degree_set, Contribution,
    FiberPreservingResult, MapCatalogue, MapModel, Promotion, TorsionVerdict, VerticalCase, VerticalResult,
};
pub use rules::{
    degree_bound, finiteness_verdict, same_base_pair_degree_set, Bound, FinitenessExtra, FinitenessReport, PairResult,
    PairRule, Verdict,
};
