//! Brute-force oracle suites. `selftest` runs them at small sizes; the
//! acceptance tests run them at full size.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use s1deg_core::abelian::{solve_scalar, unimodular_rational_eigen_check, FgAbelianGroup, GroupElement, IntegerMatrix};
use s1deg_core::bundles::{presets, same_base_pair_degree_set, vertical_degree_set, Bound, VerticalCase};
use s1deg_core::degsets::{enumerate_subset_sums, subsequence_sums, DegreeSet, SearchLimits, SequenceB};
use s1deg_core::realize::{build_construction, verify_certificate};

const FAILURE_SAMPLE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "cases": self.cases,
            "passed": self.passed(),
            "failures": self.failures.iter().take(FAILURE_SAMPLE).collect::<Vec<_>>(),
        })
    }
}

/// DP subsequence sums against full subset enumeration on random sequences
/// of length at most 16 with entries in `[−9, 9] \ {0}`.
pub fn subset_sums<R: Rng>(rng: &mut R, count: usize) -> SuiteResult {
    let mut r = SuiteResult::new("subset-sums");
    for _ in 0..count {
        let len = rng.gen_range(0..=16);
        let entries: Vec<i64> = (0..len)
            .map(|_| {
                let x = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) {
                    x
                } else {
                    -x
                }
            })
            .collect();
        let dp = SequenceB::new(entries.clone()).and_then(|b| subsequence_sums(&b, 16));
        let brute = enumerate_subset_sums(&entries, 16);
        let ok = match (dp, brute) {
            (Ok(d), Ok(b)) => d == DegreeSet::from_finite(b.into_iter().map(BigInt::from)),
            _ => false,
        };
        r.check(ok, || format!("{entries:?}"));
    }
    r
}

/// Invariant factors `d_1 | d_2 | …`, each at least 2, with product at most `cap`.
fn random_torsion<R: Rng>(rng: &mut R, cap: u64) -> Vec<BigInt> {
    let mut out: Vec<u64> = Vec::new();
    let mut product = 1u64;
    let parts = rng.gen_range(0..=3);
    for _ in 0..parts {
        let prev = out.last().copied().unwrap_or(1);
        let factor = rng.gen_range(if out.is_empty() { 2 } else { 1 }..=12);
        let d = prev * factor;
        if d < 2 || product * d > cap {
            break;
        }
        product *= d;
        out.push(d);
    }
    out.into_iter().map(BigInt::from).collect()
}

fn random_element<R: Rng>(rng: &mut R, g: &FgAbelianGroup, bound: i64) -> GroupElement {
    let free: Vec<i64> = (0..g.rank()).map(|_| rng.gen_range(-bound..=bound)).collect();
    let torsion: Vec<BigInt> =
        g.torsion().iter().map(|d| BigInt::from(rng.gen_range(0..u64::try_from(d).unwrap()))).collect();
    GroupElement::new(g.clone(), free.into_iter().map(BigInt::from).collect(), torsion).expect("valid element")
}

/// `solve_scalar` restricted to `[−1000, 1000]` against trying every `k`,
/// on groups of rank at most 3 and torsion order at most 10⁴.
pub fn scalar<R: Rng>(rng: &mut R, count: usize) -> SuiteResult {
    let mut r = SuiteResult::new("scalar-equation");
    for _ in 0..count {
        let g = FgAbelianGroup::new(rng.gen_range(0..=3), random_torsion(rng, 10_000)).expect("valid group");
        let a = random_element(rng, &g, 6);
        let c = if rng.gen_bool(0.6) {
            let base = a.scale(&BigInt::from(rng.gen_range(-40..=40)));
            if rng.gen_bool(0.2) {
                base.add(&random_element(rng, &g, 1)).expect("same group")
            } else {
                base
            }
        } else {
            random_element(rng, &g, 30)
        };
        let solutions = match solve_scalar(&a, &c) {
            Ok(s) => s,
            Err(e) => {
                r.check(false, || format!("{g}: {e}"));
                continue;
            }
        };
        let mut ok = true;
        for k in -1000i64..=1000 {
            let k = BigInt::from(k);
            if solutions.contains(&k) != (a.scale(&k) == c) {
                ok = false;
                break;
            }
        }
        r.check(ok, || format!("group {g}, a {:?}, c {:?}", a.coordinates(), c.coordinates()));
    }
    r
}

/// The same-base pair formula on every `m, k ∈ [−12, 12] \ {0}`.
pub fn pair_table() -> SuiteResult {
    let mut r = SuiteResult::new("same-base-pair-table");
    let base = presets::knot_gluing_3();
    for m in (-12i64..=12).filter(|&x| x != 0) {
        for k in (-12i64..=12).filter(|&x| x != 0) {
            let expected = if k % m == 0 { DegreeSet::from_i64s(&[0, k / m]) } else { DegreeSet::zero() };
            let got = same_base_pair_degree_set(&BigInt::from(m), &BigInt::from(k), &base, presets::CLASS);
            let ok = got.as_ref().is_ok_and(|p| p.set == expected && p.bound == Bound::Exact);
            r.check(ok, || format!("m={m} k={k}: {got:?}"));
        }
    }
    r
}

/// `{k ≠ 0 : k·a = b}` by trying every `k` in `[−window, window]`.
fn brute_multipliers(a: &GroupElement, b: &GroupElement, window: i64) -> BTreeSet<i64> {
    (-window..=window).filter(|&k| k != 0 && a.scale(&BigInt::from(k)) == *b).collect()
}

/// Whether `b ∈ ⟨a⟩`, by enumerating the multiples of a torsion `a`.
fn in_span_by_enumeration(a: &GroupElement, b: &GroupElement) -> Option<bool> {
    let order = u64::try_from(a.order()?).ok()?;
    Some((0..order).any(|k| a.scale(&BigInt::from(k)) == *b))
}

/// Vertical-map cases over a fixed matrix of groups, cycling through the
/// empty, single-multiplier and torsion-progression cases.
pub fn vertical<R: Rng>(rng: &mut R, count: usize) -> SuiteResult {
    let mut r = SuiteResult::new("vertical-cases");
    let groups = [
        FgAbelianGroup::free(1),
        FgAbelianGroup::free(2),
        FgAbelianGroup::cyclic(6).unwrap(),
        FgAbelianGroup::new(0, vec![BigInt::from(4), BigInt::from(12)]).unwrap(),
        FgAbelianGroup::new(1, vec![BigInt::from(6)]).unwrap(),
        FgAbelianGroup::new(2, vec![BigInt::from(2), BigInt::from(10)]).unwrap(),
    ];
    let with_rank: Vec<&FgAbelianGroup> = groups.iter().filter(|g| g.rank() > 0).collect();
    let with_torsion: Vec<&FgAbelianGroup> = groups.iter().filter(|g| !g.torsion().is_empty()).collect();
    const WINDOW: i64 = 150;
    let mut seen = BTreeSet::new();

    for i in 0..count {
        let (a, b, expected) = match i % 3 {
            0 => loop {
                let g = groups.choose(rng).unwrap();
                let a = random_element(rng, g, 3);
                let b = random_element(rng, g, 7);
                let outside = match in_span_by_enumeration(&a, &b) {
                    Some(inside) => !inside,
                    None => brute_multipliers(&a, &b, WINDOW).is_empty() && !b.is_zero(),
                };
                if outside {
                    break (a, b, VerticalCase::NotInSubgroup);
                }
            },
            1 => loop {
                let g = *with_rank.choose(rng).unwrap();
                let a = random_element(rng, g, 4);
                let k = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
                if !a.is_torsion() {
                    break (a.clone(), a.scale(&BigInt::from(k)), VerticalCase::Single);
                }
            },
            _ => {
                let g = *with_torsion.choose(rng).unwrap();
                let mut a = random_element(rng, g, 0);
                while a.is_zero() {
                    a = random_element(rng, g, 0);
                }
                let k = rng.gen_range(-20..=20);
                (a.clone(), a.scale(&BigInt::from(k)), VerticalCase::TorsionProgression)
            }
        };
        let got = match vertical_degree_set(&a, &b) {
            Ok(v) => v,
            Err(e) => {
                r.check(false, || format!("{e}"));
                continue;
            }
        };
        seen.insert(format!("{:?}", got.case));
        let brute = brute_multipliers(&a, &b, WINDOW);
        let listed: BTreeSet<i64> = got.set.window(-WINDOW, WINDOW).into_iter().filter(|&k| k != 0).collect();
        let zero_absent = !got.set.contains(&BigInt::zero());
        let infinite_iff_torsion = got.set.is_finite() != (got.case == VerticalCase::TorsionProgression);
        let finite_check = match (in_span_by_enumeration(&a, &b), got.case) {
            (Some(inside), VerticalCase::NotInSubgroup) => !inside,
            (Some(inside), VerticalCase::TorsionProgression) => inside,
            _ => true,
        };
        r.check(got.case == expected && listed == brute && zero_absent && infinite_iff_torsion && finite_check, || {
            format!("a {:?}, b {:?}: {:?} vs brute {brute:?}", a.coordinates(), b.coordinates(), got.set)
        });
    }
    let needed = if count >= 3 { 3 } else { count };
    r.check(seen.len() >= needed, || format!("cases covered: {seen:?}"));
    r
}

/// A product of `steps` elementary matrices of size `n`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    for _ in 0..steps {
        let mut e = IntegerMatrix::identity(n);
        let i = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let c = rng.gen_range(-3i64..=3);
                e.set(i, j, BigInt::from(c));
            }
            1 if n > 1 => {
                let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
                e.set(i, i, BigInt::zero());
                e.set(j, j, BigInt::zero());
                e.set(i, j, BigInt::one());
                e.set(j, i, BigInt::one());
            }
            _ => e.set(i, i, -BigInt::one()),
        }
        m = e.mul(&m).expect("square");
    }
    m
}

/// Every rational eigenvalue of a unimodular matrix is ±1.
pub fn unimodular<R: Rng>(rng: &mut R, count: usize) -> SuiteResult {
    let mut r = SuiteResult::new("unimodular-eigenvalues");
    let one = BigRational::one();
    for _ in 0..count {
        let n = rng.gen_range(1..=6);
        let steps = rng.gen_range(1..=14);
        let m = random_unimodular(rng, n, steps);
        let ok = match unimodular_rational_eigen_check(&m) {
            Ok(e) => {
                e.unimodular
                    && m.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
                    && e.rational_eigenvalues.iter().all(|x| x.abs() == one)
            }
            Err(_) => false,
        };
        r.check(ok, || format!("{:?}", m.to_rows()));
    }
    r
}

/// Builds and verifies the realization of every `A ⊆ [−h, h]` containing 0.
pub fn realization_window(h: i64, n: u32) -> SuiteResult {
    let mut r = SuiteResult::new("realization-window");
    let values: Vec<i64> = (-h..=h).filter(|&x| x != 0).collect();
    let base = std::sync::Arc::new(presets::default_for_dimension(n).expect("dimension has a preset"));
    for mask in 0u64..(1 << values.len()) {
        let mut a = vec![0];
        a.extend(values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
        let got = build_construction(&a, n, base.clone(), presets::CLASS, &SearchLimits::default());
        let ok = match &got {
            Ok(c) => verify_certificate(c).passed(),
            Err(_) => false,
        };
        r.check(ok, || format!("{a:?}: {:?}", got.err()));
    }
    r
}

/// All suites at the sizes used by the `selftest` command.
pub fn quick<R: Rng>(rng: &mut R) -> Vec<SuiteResult> {
    vec![
        subset_sums(rng, 200),
        scalar(rng, 60),
        pair_table(),
        vertical(rng, 30),
        unimodular(rng, 50),
        realization_window(3, 4),
    ]
}
