use alloc::{
    format,
    string::{String, ToString},
    vec::Vec,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{BaseManifold, Flag, ManifoldExpr};
use crate::degsets::DegreeSet;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Exact,
    /// The true set is a subset of the reported one.
    UpperBound,
}

/// The rule a same-base pair result was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// `D(N) = {0,1}` and degree-one self-maps fix `b`.
    SameBasePair,
    /// Hyperbolic surface base: degree ±1 self-maps act on `H²` by their degree.
    SurfaceBundlePair,
    /// Only `D(N)` finite: `{0, ±k/m}`.
    FiniteSelfDegrees,
}

impl PairRule {
    pub fn tag(self) -> &'static str {
        match self {
            PairRule::SameBasePair => "same-base-pair",
            PairRule::SurfaceBundlePair => "surface-bundle-pair",
            PairRule::FiniteSelfDegrees => "finite-self-degrees",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub set: DegreeSet,
    pub bound: Bound,
    pub rule: PairRule,
}

/// `D(Ñ_{mb}, Ñ_{kb})` for circle bundles over the same base `N`.
///
/// `{0, k/m}` when `m | k` and `{0}` otherwise. With only `D(N)` finite the
/// result is the bound `{0, ±k/m}`.
pub fn same_base_pair_degree_set(m: &BigInt, k: &BigInt, base: &BaseManifold, class: &str) -> Result<PairResult> {
    if m.is_zero() || k.is_zero() {
        return Err(Error::InvalidInput(format!("same-base pair needs nonzero multipliers, got m={m}, k={k}")));
    }
    base.require(Flag::Aspherical)?;
    base.require(Flag::ScfPi1)?;
    if base.class(class)?.is_torsion() {
        return Err(Error::Precondition(format!("class `{class}` of base `{}` is torsion", base.name())));
    }

    let fixes = Flag::FixesClass(class.into());
    let rule = if base.has(&Flag::DSelfIs01) && base.has(&fixes) {
        PairRule::SameBasePair
    } else if base.dim() == 2 && base.has(&Flag::Hyperbolic) {
        PairRule::SurfaceBundlePair
    } else if base.has(&Flag::DSelfFinite) {
        PairRule::FiniteSelfDegrees
    } else {
        return Err(Error::MissingHypothesis { base: base.name().into(), flag: Flag::DSelfIs01.to_string() });
    };

    let (q, r) = k.div_rem(m);
    let set = if !r.is_zero() {
        DegreeSet::zero()
    } else if rule == PairRule::FiniteSelfDegrees {
        DegreeSet::from_finite([BigInt::zero(), -&q, q])
    } else {
        DegreeSet::from_finite([BigInt::zero(), q])
    };
    let bound = if rule == PairRule::FiniteSelfDegrees { Bound::UpperBound } else { Bound::Exact };
    Ok(PairResult { set, bound, rule })
}

/// `⌊‖M‖ / ‖N‖⌋`, the bound on `|deg f|` for `f: M → N`.
pub fn degree_bound(vol_domain: Option<&BigRational>, vol_target: Option<&BigRational>) -> Result<BigInt> {
    let target = match vol_target {
        Some(v) if v.is_positive() => v,
        Some(_) => return Err(Error::HypothesisUnavailable("target simplicial volume is 0".into())),
        None => return Err(Error::HypothesisUnavailable("target simplicial volume is unknown".into())),
    };
    let domain =
        vol_domain.ok_or_else(|| Error::HypothesisUnavailable("domain simplicial volume is unknown".into()))?;
    if domain.is_negative() {
        return Err(Error::InvalidInput("negative simplicial volume".into()));
    }
    Ok((domain / target).floor().to_integer())
}

/// Facts about the base manifolds that flags cannot express.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FinitenessExtra {
    pub d_base_finite: bool,
    /// `{f^#(b)}` over nonzero-degree `f` is finite.
    pub pullback_class_set_finite: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Finite,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitenessReport {
    pub verdict: Verdict,
    /// Hypotheses that failed, in a fixed order.
    pub missing: Vec<String>,
}

pub fn finiteness_verdict(domain: &ManifoldExpr, target: &ManifoldExpr, extra: FinitenessExtra) -> FinitenessReport {
    let mut missing = Vec::new();
    let (Some((domain_base, _)), Some((target_base, b))) = (domain.as_bundle(), target.as_bundle()) else {
        missing.push("circle_bundle".into());
        return FinitenessReport { verdict: Verdict::Unknown, missing };
    };
    let hyperbolic = target_base.has(&Flag::Hyperbolic);
    if !domain_base.has(&Flag::Aspherical) {
        missing.push("domain aspherical".into());
    }
    if !target_base.has(&Flag::Aspherical) {
        missing.push("target aspherical".into());
    }
    if !target_base.has(&Flag::ScfPi1) {
        missing.push("target scf_pi1".into());
    }
    if b.is_torsion() {
        missing.push("target euler class non-torsion".into());
    }
    if !(extra.d_base_finite || hyperbolic || target_base.has(&Flag::DSelfFinite)) {
        missing.push("d_base_finite".into());
    }
    if !(extra.pullback_class_set_finite || hyperbolic) {
        missing.push("pullback_class_set_finite".into());
    }
    let verdict = if missing.is_empty() { Verdict::Finite } else { Verdict::Unknown };
    FinitenessReport { verdict, missing }
}
