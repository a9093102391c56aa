use alloc::{
    collections::{BTreeMap, BTreeSet},
    format,
    string::String,
    vec::Vec,
};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::build::{combination_shape, pair_shape, summand_rule, sumset};
use super::*;
use crate::arith::is_prime;
use crate::bundles::same_base_pair_degree_set;
use crate::degsets::{enumerate_subset_sums, subsequence_sum_values};

/// Checks in the order the verifier runs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Structure,
    Dimension,
    Hypotheses,
    Decomposition,
    PrimeCount,
    PrimeNotPrime,
    PrimeTooSmall,
    DuplicatePrime,
    Multiplier,
    PairShape,
    Summand,
    ClaimedSet,
    SummandSumset,
    CrossCheckMissing,
    CrossCheckWrong,
    Stabilization,
    Combination,
    FinalSet,
}

impl CheckKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Structure => "structure",
            CheckKind::Dimension => "dimension",
            CheckKind::Hypotheses => "hypotheses",
            CheckKind::Decomposition => "decomposition",
            CheckKind::PrimeCount => "prime-count",
            CheckKind::PrimeNotPrime => "prime-not-prime",
            CheckKind::PrimeTooSmall => "prime-too-small",
            CheckKind::DuplicatePrime => "duplicate-prime",
            CheckKind::Multiplier => "multiplier",
            CheckKind::PairShape => "pair-shape",
            CheckKind::Summand => "summand",
            CheckKind::ClaimedSet => "claimed-set",
            CheckKind::SummandSumset => "summand-sumset",
            CheckKind::CrossCheckMissing => "cross-check-missing",
            CheckKind::CrossCheckWrong => "cross-check-wrong",
            CheckKind::Combination => "combination",
            CheckKind::Stabilization => "stabilization",
            CheckKind::FinalSet => "final-set",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: CheckKind,
    /// Path into the certificate, e.g. `primes[1]` or `pairs[0].summands[2]`.
    pub locator: String,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.locator, self.detail)
    }
}

/// Failures of the first check stage that failed; empty when the certificate
/// is valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first(&self) -> Option<&Failure> {
        self.failures.first()
    }
}

struct Checker {
    failures: Vec<Failure>,
}

impl Checker {
    fn fail(&mut self, kind: CheckKind, locator: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure { kind, locator: locator.into(), detail: detail.into() });
    }

    fn ensure(&mut self, ok: bool, kind: CheckKind, locator: impl Into<String>, detail: impl Into<String>) {
        if !ok {
            self.fail(kind, locator, detail);
        }
    }

    fn failed(&self) -> bool {
        !self.failures.is_empty()
    }
}

const ENUMERATION_CAP: usize = 20;

/// `S_B` by subset enumeration, falling back to the bitset DP past 20 entries.
fn independent_sums(entries: &[i64]) -> Option<BTreeSet<i64>> {
    if entries.len() <= ENUMERATION_CAP {
        enumerate_subset_sums(entries, ENUMERATION_CAP).ok()
    } else {
        subsequence_sum_values(entries).ok().map(|v| v.into_iter().collect())
    }
}

fn set_of(values: &BTreeSet<i64>) -> DegreeSet {
    DegreeSet::from_finite(values.iter().map(|&x| BigInt::from(x)))
}

/// Re-derives every claim of `cert` from its raw fields.
///
/// Stages run in [`CheckKind`] order and the report holds the failures of the
/// first stage that fails.
pub fn verify_certificate(cert: &RealizationCertificate) -> VerificationReport {
    let mut c = Checker { failures: Vec::new() };
    let stages: [fn(&RealizationCertificate, &mut Checker, &mut Derived); 9] = [
        check_structure,
        check_dimension,
        check_hypotheses,
        check_decomposition,
        check_primes,
        check_multipliers,
        check_pairs,
        check_cross,
        check_combination,
    ];
    let mut derived = Derived::default();
    for stage in stages {
        stage(cert, &mut c, &mut derived);
        if c.failed() {
            return VerificationReport { failures: c.failures };
        }
    }
    check_final(cert, &mut c, &derived);
    VerificationReport { failures: c.failures }
}

/// Values recomputed by earlier stages.
#[derive(Default)]
struct Derived {
    sums: Vec<BTreeSet<i64>>,
}

fn check_structure(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    let sorted = cert.target_set.windows(2).all(|w| w[0] < w[1]);
    c.ensure(
        sorted && cert.target_set.binary_search(&0).is_ok(),
        CheckKind::Structure,
        "target_set",
        "must be strictly increasing and contain 0",
    );
    let k = cert.decomposition.sequences.len();
    c.ensure(k > 0, CheckKind::Structure, "decomposition.sequences", "no sequences");
    for (i, s) in cert.decomposition.sequences.iter().enumerate() {
        c.ensure(
            !s.is_empty() && !s.entries().contains(&0),
            CheckKind::Structure,
            format!("decomposition.sequences[{i}]"),
            "sequences must be nonempty with nonzero entries",
        );
    }
    c.ensure(cert.multipliers.len() == k, CheckKind::Structure, "multipliers", format!("expected {k} entries"));
    c.ensure(cert.pairs.len() == k, CheckKind::Structure, "pairs", format!("expected {k} entries"));
    if cert.pairs.len() == k {
        for (i, (p, s)) in cert.pairs.iter().zip(&cert.decomposition.sequences).enumerate() {
            c.ensure(
                p.summands.len() == s.len(),
                CheckKind::Structure,
                format!("pairs[{i}].summands"),
                format!("expected {} summands", s.len()),
            );
        }
    }
    for (t, x) in cert.cross_checks.iter().enumerate() {
        let in_range = x.i < k
            && x.j < k
            && x.i != x.j
            && cert.decomposition.sequences.get(x.i).is_some_and(|s| x.beta_index < s.len());
        c.ensure(in_range, CheckKind::Structure, format!("cross_checks[{t}]"), "index out of range");
    }
}

fn check_dimension(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    let native = cert.construction_dimension();
    let shift = cert.stabilization.as_ref().map_or(0, |s| s.shift);
    c.ensure(
        cert.dimension == native.saturating_add(shift),
        CheckKind::Dimension,
        "dimension",
        format!("base of dimension {} with shift {shift} gives {}", cert.base.dim(), native.saturating_add(shift)),
    );
    for (i, p) in cert.pairs.iter().enumerate() {
        c.ensure(
            p.domain.dim() == native && p.target.dim() == native,
            CheckKind::Dimension,
            format!("pairs[{i}]"),
            format!("pair manifolds must have dimension {native}"),
        );
    }
}

fn check_hypotheses(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    match summand_rule(&cert.base, &cert.class) {
        Ok(rule) => {
            for (i, p) in cert.pairs.iter().enumerate() {
                c.ensure(
                    p.summand_rule == rule.tag(),
                    CheckKind::Hypotheses,
                    format!("pairs[{i}].summand_rule"),
                    format!("base supports `{}`", rule.tag()),
                );
            }
        }
        Err(e) => c.fail(CheckKind::Hypotheses, "base", format!("{e}")),
    }
}

fn check_decomposition(cert: &RealizationCertificate, c: &mut Checker, d: &mut Derived) {
    let dec = &cert.decomposition;
    c.ensure(
        dec.target == cert.target_set,
        CheckKind::Decomposition,
        "decomposition.target",
        "differs from target_set",
    );
    let mut running: Option<BTreeSet<i64>> = None;
    for (i, s) in dec.sequences.iter().enumerate() {
        let Some(sums) = independent_sums(s.entries()) else {
            c.fail(CheckKind::Decomposition, format!("decomposition.sequences[{i}]"), "subsequence sums out of range");
            return;
        };
        running = Some(match running {
            None => sums.clone(),
            Some(r) => r.intersection(&sums).copied().collect(),
        });
        if let Some(step) = dec.transcript.get(i) {
            let ok = step.sums.iter().copied().eq(sums.iter().copied())
                && running.as_ref().is_some_and(|r| step.running.iter().copied().eq(r.iter().copied()));
            c.ensure(
                ok,
                CheckKind::Decomposition,
                format!("decomposition.transcript[{i}]"),
                "does not match recomputed sums",
            );
        }
        d.sums.push(sums);
    }
    c.ensure(
        dec.transcript.len() == dec.sequences.len(),
        CheckKind::Decomposition,
        "decomposition.transcript",
        "one step per sequence expected",
    );
    let target: BTreeSet<i64> = cert.target_set.iter().copied().collect();
    c.ensure(
        running.as_ref() == Some(&target),
        CheckKind::Decomposition,
        "decomposition",
        "intersection of subsequence sums differs from the target",
    );
}

fn check_primes(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    let seqs = &cert.decomposition.sequences;
    let expected = if seqs.len() > 1 { seqs.len() } else { 0 };
    if cert.primes.len() != expected {
        c.fail(CheckKind::PrimeCount, "primes", format!("expected {expected} primes, found {}", cert.primes.len()));
        return;
    }
    let floor = BigInt::from(seqs.iter().map(|s| s.max_abs()).max().unwrap_or(0));
    for (i, p) in cert.primes.iter().enumerate() {
        c.ensure(is_prime(p), CheckKind::PrimeNotPrime, format!("primes[{i}]"), format!("{p} is not prime"));
    }
    if c.failed() {
        return;
    }
    for (i, p) in cert.primes.iter().enumerate() {
        c.ensure(
            *p > floor,
            CheckKind::PrimeTooSmall,
            format!("primes[{i}]"),
            format!("{p} does not exceed max |β| = {floor}"),
        );
    }
    if c.failed() {
        return;
    }
    let mut seen = BTreeMap::new();
    for (i, p) in cert.primes.iter().enumerate() {
        if let Some(first) = seen.insert(p, i) {
            c.fail(CheckKind::DuplicatePrime, format!("primes[{i}]"), format!("{p} repeats primes[{first}]"));
        }
    }
}

fn check_multipliers(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    for (i, (s, alpha)) in cert.decomposition.sequences.iter().zip(&cert.multipliers).enumerate() {
        let p = cert.primes.get(i).cloned().unwrap_or_else(BigInt::one);
        let expected = s.entries().iter().fold(p, |acc, &e| acc * e);
        c.ensure(
            *alpha == expected && !alpha.is_zero(),
            CheckKind::Multiplier,
            format!("multipliers[{i}]"),
            format!("expected {expected}, found {alpha}"),
        );
    }
}

fn check_pairs(cert: &RealizationCertificate, c: &mut Checker, d: &mut Derived) {
    let b = match cert.base.class(&cert.class) {
        Ok(b) => b.clone(),
        Err(e) => return c.fail(CheckKind::PairShape, "class", format!("{e}")),
    };
    let seqs = &cert.decomposition.sequences;

    for (i, (p, alpha)) in cert.pairs.iter().zip(&cert.multipliers).enumerate() {
        let ms: Vec<BigInt> = p.summands.iter().map(|s| s.multiplier.clone()).collect();
        match pair_shape(&cert.base, &b, alpha, &ms) {
            Ok((m, n)) => {
                c.ensure(
                    p.domain == m,
                    CheckKind::PairShape,
                    format!("pairs[{i}].domain"),
                    "not the connected sum of the summand bundles",
                );
                c.ensure(
                    p.target == n,
                    CheckKind::PairShape,
                    format!("pairs[{i}].target"),
                    format!("not the bundle with Euler class {alpha}·b"),
                );
            }
            Err(e) => c.fail(CheckKind::PairShape, format!("pairs[{i}]"), format!("{e}")),
        }
        c.ensure(
            p.rule == SUM_RULE,
            CheckKind::PairShape,
            format!("pairs[{i}].rule"),
            format!("expected `{SUM_RULE}`"),
        );
    }
    if c.failed() {
        return;
    }

    for (i, (p, alpha)) in cert.pairs.iter().zip(&cert.multipliers).enumerate() {
        for (t, (s, &beta)) in p.summands.iter().zip(seqs[i].entries()).enumerate() {
            let loc = format!("pairs[{i}].summands[{t}]");
            if s.beta != beta {
                c.fail(CheckKind::Summand, loc, format!("β is {}, sequence has {beta}", s.beta));
                continue;
            }
            let (q, r) = alpha.div_rem(&BigInt::from(beta));
            if !r.is_zero() || s.multiplier != q || &s.multiplier * beta != *alpha {
                c.fail(CheckKind::Summand, loc, format!("multiplier {} is not α/β = {alpha}/{beta}", s.multiplier));
                continue;
            }
            match same_base_pair_degree_set(&s.multiplier, alpha, &cert.base, &cert.class) {
                Ok(r) => {
                    let ok = r.set == s.contribution && s.contribution == DegreeSet::from_i64s(&[0, beta]);
                    c.ensure(ok, CheckKind::Summand, loc, format!("contribution must be {{0, {beta}}}"));
                }
                Err(e) => c.fail(CheckKind::Summand, loc, format!("{e}")),
            }
        }
    }
    if c.failed() {
        return;
    }

    for (i, p) in cert.pairs.iter().enumerate() {
        c.ensure(
            p.claimed == set_of(&d.sums[i]),
            CheckKind::ClaimedSet,
            format!("pairs[{i}].claimed"),
            "differs from the subsequence sums of the sequence",
        );
    }
    if c.failed() {
        return;
    }

    for (i, p) in cert.pairs.iter().enumerate() {
        let contributions: Vec<DegreeSet> = p.summands.iter().map(|s| s.contribution.clone()).collect();
        let ok = sumset(&contributions).is_ok_and(|s| s == p.claimed);
        c.ensure(
            ok,
            CheckKind::SummandSumset,
            format!("pairs[{i}].summands"),
            "sumset of contributions differs from claimed",
        );
    }
}

fn check_cross(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    let mut index: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (t, x) in cert.cross_checks.iter().enumerate() {
        if let Some(first) = index.insert((x.i, x.j, x.beta_index), t) {
            c.fail(
                CheckKind::CrossCheckWrong,
                format!("cross_checks[{t}]"),
                format!("duplicates cross_checks[{first}]"),
            );
        }
    }
    if c.failed() {
        return;
    }
    let k = cert.pairs.len();
    for i in 0..k {
        for j in (0..k).filter(|&j| j != i) {
            for t in 0..cert.pairs[i].summands.len() {
                if !index.contains_key(&(i, j, t)) {
                    c.fail(
                        CheckKind::CrossCheckMissing,
                        format!("cross_checks(i={i}, j={j}, beta={t})"),
                        "no check recorded",
                    );
                }
            }
        }
    }
    if c.failed() {
        return;
    }
    for (t, x) in cert.cross_checks.iter().enumerate() {
        let loc = format!("cross_checks[{t}]");
        let beta = cert.decomposition.sequences[x.i].entries()[x.beta_index];
        let (q, r) = cert.multipliers[x.i].div_rem(&BigInt::from(beta));
        if !r.is_zero() || x.multiplier != q {
            c.fail(CheckKind::CrossCheckWrong, loc, format!("multiplier {} is not α_{}/β", x.multiplier, x.i));
            continue;
        }
        let alpha_j = &cert.multipliers[x.j];
        let divides = alpha_j.is_multiple_of(&x.multiplier);
        if divides != x.divides {
            c.fail(
                CheckKind::CrossCheckWrong,
                loc,
                format!("divisibility of α_{} by {} misreported", x.j, x.multiplier),
            );
        } else if divides {
            c.fail(
                CheckKind::CrossCheckWrong,
                loc,
                format!("{} divides α_{} = {alpha_j}; the cross pair is not {{0}}", x.multiplier, x.j),
            );
        } else if let Some(p) = cert.primes.get(x.i) {
            let firewall = x.multiplier.is_multiple_of(p) && !alpha_j.is_multiple_of(p);
            c.ensure(firewall, CheckKind::CrossCheckWrong, loc, format!("p_{} = {p} does not separate the pair", x.i));
        }
    }
}

fn check_combination(cert: &RealizationCertificate, c: &mut Checker, _: &mut Derived) {
    let shapes: Vec<(ManifoldExpr, ManifoldExpr)> =
        cert.pairs.iter().map(|p| (p.domain.clone(), p.target.clone())).collect();
    let native = cert.construction_dimension();
    let expected = match combination_shape(&shapes, native) {
        Ok(e) => e,
        Err(e) => return c.fail(CheckKind::Combination, "combination", format!("{e}")),
    };
    let (domain, target) = match &cert.stabilization {
        None => (cert.combination.result_domain.clone(), cert.combination.result_target.clone()),
        Some(s) => {
            c.ensure(
                s.shift >= MIN_STABILIZATION_SHIFT,
                CheckKind::Stabilization,
                "stabilization.shift",
                format!("shift {} is below {MIN_STABILIZATION_SHIFT}", s.shift),
            );
            c.ensure(
                s.from_dimension == native,
                CheckKind::Stabilization,
                "stabilization.from_dimension",
                format!("expected {native}"),
            );
            c.ensure(
                s.rule == STABILIZATION_RULE,
                CheckKind::Stabilization,
                "stabilization.rule",
                format!("expected `{STABILIZATION_RULE}`"),
            );
            let unwrap = |e: &ManifoldExpr, what: &str, c: &mut Checker| match e {
                ManifoldExpr::Stabilized { inner, shift } if *shift == s.shift => (**inner).clone(),
                other => {
                    c.fail(
                        CheckKind::Stabilization,
                        format!("combination.{what}"),
                        "not stabilized by the recorded shift",
                    );
                    other.clone()
                }
            };
            let d = unwrap(&cert.combination.result_domain, "result_domain", c);
            let t = unwrap(&cert.combination.result_target, "result_target", c);
            if c.failed() {
                return;
            }
            (d, t)
        }
    };
    c.ensure(
        cert.combination.rule == expected.rule,
        CheckKind::Combination,
        "combination.rule",
        format!("expected `{}`", expected.rule),
    );
    c.ensure(
        cert.combination.symbol == expected.symbol,
        CheckKind::Combination,
        "combination.symbol",
        "wrong sphere-count symbol",
    );
    c.ensure(
        domain == expected.result_domain,
        CheckKind::Combination,
        "combination.result_domain",
        "not the sum of the pair domains",
    );
    c.ensure(
        target == expected.result_target,
        CheckKind::Combination,
        "combination.result_target",
        "not the sum of the pair targets",
    );
}

fn check_final(cert: &RealizationCertificate, c: &mut Checker, d: &Derived) {
    let mut running = d.sums[0].clone();
    for s in &d.sums[1..] {
        running = running.intersection(s).copied().collect();
    }
    let recomputed = set_of(&running);
    c.ensure(
        cert.final_set == recomputed && recomputed == DegreeSet::from_i64s(&cert.target_set),
        CheckKind::FinalSet,
        "final_set",
        "differs from the intersection of the pair sets",
    );
}
