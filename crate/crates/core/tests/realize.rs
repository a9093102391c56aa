use std::sync::Arc;

use num_bigint::BigInt;
use s1deg_core::bundles::{presets, BaseManifold, ManifoldExpr};
use s1deg_core::degsets::{subsequence_sums, DegreeSet, SearchLimits, SequenceB};
use s1deg_core::realize::{
    build_construction, choose_primes, stabilize, verify_certificate, CheckKind, RealizationCertificate,
};
use s1deg_core::Error;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn realize(a: &[i64], n: u32) -> RealizationCertificate {
    let base = Arc::new(presets::default_for_dimension(n).unwrap());
    build_construction(a, n, base, presets::CLASS, &SearchLimits::default()).unwrap()
}

fn seqs(v: &[&[i64]]) -> Vec<SequenceB> {
    v.iter().map(|s| SequenceB::new(s.to_vec()).unwrap()).collect()
}

fn euler_multiple(e: &ManifoldExpr) -> BigInt {
    let (_, euler) = e.as_bundle().expect("bundle");
    euler.free_part()[0].clone()
}

#[test]
fn primes_examples() {
    assert_eq!(choose_primes(&seqs(&[&[1, 3], &[1, 2]])), [big(5), big(7)]);
    assert_eq!(choose_primes(&seqs(&[&[10]])), [big(11)]);
    assert_eq!(choose_primes(&seqs(&[&[1], &[1], &[1]])), [big(2), big(3), big(5)]);
    assert_eq!(choose_primes(&seqs(&[&[-7, 2], &[1]])), [big(11), big(13)]);
}

#[test]
fn worked_example_0_1_3() {
    let cert = realize(&[0, 1, 3], 4);
    let entries: Vec<Vec<i64>> = cert.decomposition.sequences.iter().map(|s| s.entries().to_vec()).collect();
    assert_eq!(entries, [vec![1, 3], vec![1, 2]]);
    assert_eq!(cert.primes, [big(5), big(7)]);
    assert_eq!(cert.multipliers, [big(15), big(14)]);

    let m1: Vec<BigInt> = cert.pairs[0].domain.summands().iter().map(euler_multiple).collect();
    assert_eq!(m1, [big(15), big(5)]);
    assert_eq!(euler_multiple(&cert.pairs[0].target), big(15));
    assert_eq!(cert.pairs[0].claimed, DegreeSet::from_i64s(&[0, 1, 3, 4]));
    assert_eq!(cert.pairs[1].claimed, DegreeSet::from_i64s(&[0, 1, 2, 3]));

    let cross: Vec<(usize, usize, i64, bool)> =
        cert.cross_checks.iter().map(|c| (c.i, c.j, i64::try_from(&c.multiplier).unwrap(), c.divides)).collect();
    assert_eq!(cross, [(0, 1, 15, false), (0, 1, 5, false), (1, 0, 14, false), (1, 0, 7, false)]);
    assert_eq!(cert.final_set, DegreeSet::from_i64s(&[0, 1, 3]));
    assert_eq!(cert.combination.symbol.as_deref(), Some("l"));
    assert_eq!(cert.combination.result_domain.summands().len(), 5);
    assert!(verify_certificate(&cert).passed());
}

#[test]
fn single_pair_for_two_element_sets() {
    for k in [-10i64, -3, 1, 7, 10] {
        for n in [3, 4, 5] {
            let cert = realize(&[0, k], n);
            assert!(cert.primes.is_empty());
            assert_eq!(cert.pairs.len(), 1);
            let pair = &cert.pairs[0];
            assert_eq!(euler_multiple(&pair.domain), big(1));
            assert_eq!(euler_multiple(&pair.target), big(k));
            assert_eq!(pair.claimed, DegreeSet::from_i64s(&[0, k]));
            assert_eq!(cert.combination.rule, "single-pair");
            assert!(verify_certificate(&cert).passed(), "k={k} n={n}");
        }
    }
}

#[test]
fn zero_set() {
    let cert = realize(&[0], 4);
    assert_eq!(cert.primes, [big(5), big(7)]);
    assert_eq!(cert.multipliers, [big(10), big(21)]);
    assert_eq!(cert.final_set, DegreeSet::zero());
    assert!(verify_certificate(&cert).passed());
}

#[test]
fn dimension_routing() {
    assert_eq!(realize(&[0, 2], 3).pairs[0].summand_rule, "surface-bundle-pair");
    assert_eq!(realize(&[0, 2], 4).pairs[0].summand_rule, "same-base-pair");
    for n in [6, 7, 11] {
        let cert = realize(&[0, 1, 3], n);
        assert_eq!(cert.dimension, n);
        let s = cert.stabilization.as_ref().unwrap();
        assert_eq!((s.from_dimension, s.shift), (3, n - 3));
        assert_eq!(cert.combination.result_domain.dim(), n);
        assert!(verify_certificate(&cert).passed());
    }
}

#[test]
fn unreachable_dimensions() {
    let knot = Arc::new(presets::knot_gluing_3());
    for n in [2, 3, 5, 6] {
        let r = build_construction(&[0, 1], n, knot.clone(), "b", &SearchLimits::default());
        assert!(matches!(r, Err(Error::Precondition(_))), "n={n}");
    }
    assert!(build_construction(&[0, 1], 7, knot, "b", &SearchLimits::default()).is_ok());
}

#[test]
fn base_without_pair_hypotheses() {
    let surface = presets::hyperbolic_surface();
    let weak = BaseManifold::new(
        "weak",
        3,
        surface.h2().clone(),
        surface.classes().clone(),
        [s1deg_core::bundles::Flag::Hyperbolic],
        None,
    )
    .unwrap();
    let r = build_construction(&[0, 1], 4, Arc::new(weak), "b", &SearchLimits::default());
    assert!(matches!(r, Err(Error::MissingHypothesis { ref flag, .. }) if flag == "d_self_is_01"));
}

#[test]
fn stabilize_rules() {
    let cert = realize(&[0, 1, 3], 3);
    let six = stabilize(&cert, 6).unwrap();
    assert_eq!(six.dimension, 6);
    assert!(verify_certificate(&six).passed());
    let four = stabilize(&realize(&[0, 2], 4), 7).unwrap();
    assert!(verify_certificate(&four).passed());
    assert!(matches!(stabilize(&cert, 5), Err(Error::Precondition(_))));
    let nine = stabilize(&six, 9).unwrap();
    assert_eq!(nine.stabilization.as_ref().unwrap().shift, 6);
    assert!(verify_certificate(&nine).passed());
    assert_eq!(six.final_set, cert.final_set);
}

#[test]
fn every_subset_of_window_realizes() {
    let values: Vec<i64> = (-5..=5).filter(|&x| x != 0).collect();
    for mask in 0u32..(1 << values.len()) {
        let mut a = vec![0];
        a.extend(values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        let cert = realize(&a, 4);
        let report = verify_certificate(&cert);
        assert!(report.passed(), "{a:?}: {:?}", report.first());
        for (i, pair) in cert.pairs.iter().enumerate() {
            let direct = subsequence_sums(&cert.decomposition.sequences[i], 64).unwrap();
            assert_eq!(pair.claimed, direct);
        }
        for (i, p) in cert.primes.iter().enumerate() {
            for (j, alpha_j) in cert.multipliers.iter().enumerate() {
                if i != j {
                    assert_ne!(alpha_j % p, big(0));
                }
            }
            for s in &cert.pairs[i].summands {
                assert_eq!(&s.multiplier % p, big(0));
            }
        }
    }
}

#[test]
fn deterministic() {
    assert_eq!(realize(&[-2, 0, 3, 4], 5), realize(&[-2, 0, 3, 4], 5));
}

fn first_kind(cert: &RealizationCertificate) -> (CheckKind, String) {
    let r = verify_certificate(cert);
    let f = r.first().expect("tampered certificate must fail");
    (f.kind, f.locator.clone())
}

#[test]
fn tampering_is_located() {
    let good = realize(&[0, 1, 3], 4);

    let mut c = good.clone();
    c.primes[1] = big(3);
    assert_eq!(first_kind(&c), (CheckKind::PrimeTooSmall, "primes[1]".into()));

    let mut c = good.clone();
    c.primes[1] = big(5);
    assert_eq!(first_kind(&c), (CheckKind::DuplicatePrime, "primes[1]".into()));

    let mut c = good.clone();
    c.multipliers[0] = big(30);
    assert_eq!(first_kind(&c), (CheckKind::Multiplier, "multipliers[0]".into()));

    let mut c = good.clone();
    c.cross_checks.remove(2);
    assert_eq!(first_kind(&c), (CheckKind::CrossCheckMissing, "cross_checks(i=1, j=0, beta=0)".into()));

    let mut c = good.clone();
    c.final_set = DegreeSet::from_i64s(&[0, 1]);
    assert_eq!(first_kind(&c), (CheckKind::FinalSet, "final_set".into()));
}
