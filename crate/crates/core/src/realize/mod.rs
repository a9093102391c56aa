//! Realization of a finite set `A ∋ 0` as a mapping degree set.
//!
//! `A` is written as `⋂ S_{B(i)}`. Each sequence `B(i)` becomes a pair
//! `M_i = #_β Ñ_{(α_i/β) b}`, `N_i = Ñ_{α_i b}` over one base `N`, with
//! `α_i = p_i·∏β` for distinct primes `p_i` above every `|β|`. Each summand
//! contributes `{0, β}`, so `D(M_i, N_i) = S_{B(i)}`, and the primes force
//! `D(M_i, N_j) = {0}` for `i ≠ j`. The final pair
//! `(#M_i) # (#^l S^{n−1}×S¹) → #N_i` then has degree set `A` for some
//! `l ≥ 0` that is kept symbolic.

mod build;
mod verify;

pub use build::{build_construction, choose_primes, stabilize, sumset};
pub use verify::{verify_certificate, CheckKind, Failure, VerificationReport};

use alloc::{string::String, sync::Arc, vec::Vec};

use num_bigint::BigInt;

use crate::bundles::{BaseManifold, ManifoldExpr};
use crate::degsets::{DecompositionCertificate, DegreeSet};

/// `D(#_j X_j, Y) = Σ_j D(X_j, Y)` for an aspherical circle-bundle target.
pub const SUM_RULE: &str = "connected-sum-domain";
/// `(α_i/β) ∤ α_j`, hence `D(Ñ_{(α_i/β)b}, Ñ_{α_j b}) = {0}`.
pub const FIREWALL_RULE: &str = "prime-firewall";
/// `D((#M_i) # (#^l S^{n−1}×S¹), #N_i) = ⋂ D(M_i, N_i)` for some `l ≥ 0`.
pub const INTERSECTION_RULE: &str = "intersection-combination";
/// One sequence: the pair itself is the answer.
pub const SINGLE_PAIR_RULE: &str = "single-pair";
/// Degree sets of `n`-manifolds recur in dimension `n + s` for `s ≥ 3`.
pub const STABILIZATION_RULE: &str = "dimension-stabilization";
/// Name of the symbolic sphere-product count.
pub const SPHERE_COUNT: &str = "l";
pub const MIN_STABILIZATION_SHIFT: u32 = 3;

/// `D(Ñ_{multiplier·b}, Ñ_{α·b}) = contribution`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandClaim {
    pub beta: i64,
    /// `α_i / β`.
    pub multiplier: BigInt,
    pub contribution: DegreeSet,
}

/// `D(domain, target) = claimed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClaim {
    pub domain: ManifoldExpr,
    pub target: ManifoldExpr,
    pub summands: Vec<SummandClaim>,
    pub claimed: DegreeSet,
    /// Rule combining the summands.
    pub rule: String,
    /// Rule giving each summand contribution.
    pub summand_rule: String,
}

/// Whether summand `beta_index` of `M_i` can map with nonzero degree to `N_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub i: usize,
    pub j: usize,
    pub beta_index: usize,
    /// `α_i / β`.
    pub multiplier: BigInt,
    /// `multiplier | α_j`; must be false.
    pub divides: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combination {
    /// The sphere-product count, absent for a single pair.
    pub symbol: Option<String>,
    pub result_domain: ManifoldExpr,
    pub result_target: ManifoldExpr,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub from_dimension: u32,
    pub shift: u32,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationCertificate {
    /// Sorted, contains 0.
    pub target_set: Vec<i64>,
    pub dimension: u32,
    pub base: Arc<BaseManifold>,
    pub class: String,
    pub decomposition: DecompositionCertificate,
    /// Empty when there is a single sequence.
    pub primes: Vec<BigInt>,
    pub multipliers: Vec<BigInt>,
    pub pairs: Vec<PairClaim>,
    pub cross_checks: Vec<CrossCheck>,
    pub combination: Combination,
    pub stabilization: Option<Stabilization>,
    pub final_set: DegreeSet,
}

impl RealizationCertificate {
    /// Dimension of the manifolds in `pairs`.
    pub fn construction_dimension(&self) -> u32 {
        self.base.dim() + 1
    }
}
