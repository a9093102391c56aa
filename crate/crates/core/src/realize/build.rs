use alloc::{collections::BTreeSet, format, string::ToString, sync::Arc, vec::Vec};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::*;
use crate::abelian::GroupElement;
use crate::arith::primes_above;
use crate::bundles::{same_base_pair_degree_set, Bound, Flag, PairRule};
use crate::degsets::{decompose, subsequence_sum_values, SearchLimits, SequenceB};
use crate::{Error, Result};

/// The `k` smallest primes above every `|β|`, one per sequence.
pub fn choose_primes(sequences: &[SequenceB]) -> Vec<BigInt> {
    let floor = sequences.iter().map(SequenceB::max_abs).max().unwrap_or(0);
    primes_above(&BigInt::from(floor), sequences.len())
}

/// `{x + y : x ∈ X, y ∈ Y, …}` over finite sets.
pub fn sumset(sets: &[DegreeSet]) -> Result<DegreeSet> {
    let mut acc: BTreeSet<BigInt> = BTreeSet::from([BigInt::zero()]);
    for (i, s) in sets.iter().enumerate() {
        let elems = s.elements().ok_or_else(|| Error::InvalidInput(format!("summand set {i} is infinite")))?;
        acc = acc.iter().flat_map(|x| elems.iter().map(move |y| x + y)).collect();
    }
    Ok(DegreeSet::from_finite(acc))
}

/// The summand rule for `base`, which must give exact same-base pair sets.
pub(crate) fn summand_rule(base: &BaseManifold, class: &str) -> Result<PairRule> {
    let probe = same_base_pair_degree_set(&BigInt::one(), &BigInt::one(), base, class)?;
    if probe.bound == Bound::Exact {
        return Ok(probe.rule);
    }
    let flag = if base.has(&Flag::DSelfIs01) { Flag::FixesClass(class.into()) } else { Flag::DSelfIs01 };
    Err(Error::MissingHypothesis { base: base.name().into(), flag: flag.to_string() })
}

pub(crate) fn bundle(base: &Arc<BaseManifold>, b: &GroupElement, multiplier: &BigInt) -> Result<ManifoldExpr> {
    ManifoldExpr::circle_bundle(base.clone(), b.scale(multiplier))
}

/// `(#_β Ñ_{(α/β) b}, Ñ_{α b})`.
pub(crate) fn pair_shape(
    base: &Arc<BaseManifold>,
    b: &GroupElement,
    alpha: &BigInt,
    multipliers: &[BigInt],
) -> Result<(ManifoldExpr, ManifoldExpr)> {
    let summands = multipliers.iter().map(|m| bundle(base, b, m)).collect::<Result<Vec<_>>>()?;
    Ok((ManifoldExpr::connected_sum(summands)?, bundle(base, b, alpha)?))
}

/// The final pair for the given `(M_i, N_i)`, before stabilization.
pub(crate) fn combination_shape(pairs: &[(ManifoldExpr, ManifoldExpr)], dim: u32) -> Result<Combination> {
    if let [(m, n)] = pairs {
        return Ok(Combination {
            symbol: None,
            result_domain: m.clone(),
            result_target: n.clone(),
            rule: SINGLE_PAIR_RULE.into(),
        });
    }
    let spheres = ManifoldExpr::repeated(ManifoldExpr::sphere_product(dim)?, SPHERE_COUNT);
    let mut domain = Vec::new();
    for (m, _) in pairs {
        domain.extend(m.summands().iter().cloned());
    }
    domain.push(spheres);
    let mut target = Vec::new();
    for (_, n) in pairs {
        target.extend(n.summands().iter().cloned());
    }
    Ok(Combination {
        symbol: Some(SPHERE_COUNT.into()),
        result_domain: ManifoldExpr::connected_sum(domain)?,
        result_target: ManifoldExpr::connected_sum(target)?,
        rule: INTERSECTION_RULE.into(),
    })
}

fn product(entries: &[i64]) -> BigInt {
    entries.iter().fold(BigInt::one(), |acc, &e| acc * e)
}

/// Builds the realization of `a` by `n`-manifolds over `base`.
///
/// `n` must be `dim(base) + 1`, or at least 3 more, in which case the
/// construction is made in dimension `dim(base) + 1` and stabilized.
pub fn build_construction(
    a: &[i64],
    n: u32,
    base: Arc<BaseManifold>,
    class: &str,
    limits: &SearchLimits,
) -> Result<RealizationCertificate> {
    let native = base.dim() + 1;
    if n != native && n < native + MIN_STABILIZATION_SHIFT {
        return Err(Error::Precondition(format!(
            "dimension {n} is not reachable from base `{}` of dimension {}: need {native} or at least {}",
            base.name(),
            base.dim(),
            native + MIN_STABILIZATION_SHIFT
        )));
    }
    let rule = summand_rule(&base, class)?;
    let b = base.class(class)?.clone();
    let decomposition = decompose(a, limits)?;
    let sequences = &decomposition.sequences;
    let k = sequences.len();

    let primes = if k > 1 { choose_primes(sequences) } else { Vec::new() };
    let multipliers: Vec<BigInt> = sequences
        .iter()
        .enumerate()
        .map(|(i, s)| primes.get(i).cloned().unwrap_or_else(BigInt::one) * product(s.entries()))
        .collect();

    let mut pairs = Vec::with_capacity(k);
    let mut shapes = Vec::with_capacity(k);
    for (seq, alpha) in sequences.iter().zip(&multipliers) {
        let mut summands = Vec::with_capacity(seq.len());
        for &beta in seq.entries() {
            let (multiplier, rem) = alpha.div_rem(&BigInt::from(beta));
            if !rem.is_zero() {
                return Err(Error::Internal(format!("{beta} does not divide {alpha}")));
            }
            let contribution = same_base_pair_degree_set(&multiplier, alpha, &base, class)?.set;
            if contribution != DegreeSet::from_i64s(&[0, beta]) {
                return Err(Error::Internal(format!("summand {beta} of α = {alpha} contributes {contribution:?}")));
            }
            summands.push(SummandClaim { beta, multiplier, contribution });
        }
        let claimed = sumset(&summands.iter().map(|s| s.contribution.clone()).collect::<Vec<_>>())?;
        let direct = DegreeSet::from_finite(subsequence_sum_values(seq.entries())?.into_iter().map(BigInt::from));
        if claimed != direct {
            return Err(Error::Internal(format!("sum rule gives {claimed:?}, subsequence sums {direct:?}")));
        }
        let ms: Vec<BigInt> = summands.iter().map(|s| s.multiplier.clone()).collect();
        let (domain, target) = pair_shape(&base, &b, alpha, &ms)?;
        shapes.push((domain.clone(), target.clone()));
        pairs.push(PairClaim {
            domain,
            target,
            summands,
            claimed,
            rule: SUM_RULE.into(),
            summand_rule: rule.tag().into(),
        });
    }

    let mut cross_checks = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        for (j, alpha_j) in multipliers.iter().enumerate() {
            if i == j {
                continue;
            }
            for (t, s) in pair.summands.iter().enumerate() {
                let divides = alpha_j.is_multiple_of(&s.multiplier);
                if divides {
                    return Err(Error::Internal(format!("{} divides α_{j} = {alpha_j}", s.multiplier)));
                }
                cross_checks.push(CrossCheck { i, j, beta_index: t, multiplier: s.multiplier.clone(), divides });
            }
        }
    }

    let final_set = pairs.iter().skip(1).fold(pairs[0].claimed.clone(), |acc, p| acc.intersect(&p.claimed));
    if final_set != DegreeSet::from_i64s(&decomposition.target) {
        return Err(Error::Internal(format!("intersection {final_set:?} differs from the target")));
    }

    let cert = RealizationCertificate {
        target_set: decomposition.target.clone(),
        dimension: native,
        class: class.into(),
        combination: combination_shape(&shapes, native)?,
        base,
        decomposition,
        primes,
        multipliers,
        pairs,
        cross_checks,
        stabilization: None,
        final_set,
    };
    if n == native {
        Ok(cert)
    } else {
        stabilize(&cert, n)
    }
}

/// Moves a certificate to dimension `n_target ≥ dimension + 3` by wrapping
/// the final pair in a stabilization node. Degree sets are unchanged.
pub fn stabilize(cert: &RealizationCertificate, n_target: u32) -> Result<RealizationCertificate> {
    if n_target < cert.dimension + MIN_STABILIZATION_SHIFT {
        return Err(Error::Precondition(format!(
            "stabilization from dimension {} to {n_target} shifts by less than {MIN_STABILIZATION_SHIFT}",
            cert.dimension
        )));
    }
    let mut out = cert.clone();
    let inner_dim = cert.construction_dimension();
    let unwrap = |e: &ManifoldExpr| match e {
        ManifoldExpr::Stabilized { inner, .. } if cert.stabilization.is_some() => (**inner).clone(),
        other => other.clone(),
    };
    let shift = n_target - inner_dim;
    out.combination.result_domain = ManifoldExpr::stabilized(unwrap(&cert.combination.result_domain), shift);
    out.combination.result_target = ManifoldExpr::stabilized(unwrap(&cert.combination.result_target), shift);
    out.stabilization = Some(Stabilization { from_dimension: inner_dim, shift, rule: STABILIZATION_RULE.into() });
    out.dimension = n_target;
    Ok(out)
}
