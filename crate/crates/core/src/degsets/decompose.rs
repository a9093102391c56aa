use alloc::{boxed::Box, collections::BTreeSet, format, vec, vec::Vec};

use super::sums::SumBits;
use super::{enumerate_subset_sums, subsequence_sum_values, SequenceB};
use crate::{Error, Result};

/// Caps for the exclusion search. `None` means "derive from the target":
/// length `|a| + 4`, entry magnitude `4·max|a|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_len: Option<usize>,
    pub max_entry: Option<u64>,
    pub budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_len: None, max_entry: None, budget: 10_000_000 }
    }
}

impl SearchLimits {
    fn resolve(&self, target: &[i64]) -> (usize, u64) {
        let hull = target.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).max(1);
        (self.max_len.unwrap_or(target.len() + 4), self.max_entry.unwrap_or(4 * hull))
    }
}

/// One sequence of the decomposition with the state after intersecting it in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptStep {
    /// The extraneous sum this sequence was searched for; `None` for the seed.
    pub excludes: Option<i64>,
    pub sums: Vec<i64>,
    pub running: Vec<i64>,
}

/// `target = ⋂ S_{B(i)}` with the full transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub target: Vec<i64>,
    pub sequences: Vec<SequenceB>,
    /// `max |x|` over the target.
    pub hull_bound: u64,
    pub max_len: usize,
    pub max_entry: u64,
    pub budget: u64,
    pub transcript: Vec<TranscriptStep>,
}

fn normalize_target(a: &[i64]) -> Result<Vec<i64>> {
    let set: BTreeSet<i64> = a.iter().copied().collect();
    if !set.contains(&0) {
        return Err(Error::Precondition("target set must contain 0".into()));
    }
    Ok(set.into_iter().collect())
}

fn intersect_sorted(x: &[i64], y: &[i64]) -> Vec<i64> {
    let ys: BTreeSet<i64> = y.iter().copied().collect();
    x.iter().copied().filter(|v| ys.contains(v)).collect()
}

/// Order in which extraneous sums are attacked: by magnitude, positive first.
fn attack_key(x: i64) -> (u64, bool) {
    (x.unsigned_abs(), x < 0)
}

/// Writes a finite set `a ∋ 0` as an intersection of subsequence-sum sets.
///
/// Seeds with `B₀` = the nonzero elements of `a` (so `a ⊆ S_{B₀}`), then for
/// every extraneous sum `x` still in the running intersection searches for a
/// sequence `B_x` with `a ⊆ S_{B_x}` and `x ∉ S_{B_x}`. The search deepens
/// on length, then on the entry-magnitude bound; within one (length, bound)
/// stage candidates are multisets in lexicographic order over the entry list
/// `1, −1, 2, −2, …`, and the first hit is kept. The set `{0}` has an empty
/// seed and is decomposed as `(2), (3)`.
pub fn decompose(a: &[i64], limits: &SearchLimits) -> Result<DecompositionCertificate> {
    let target = normalize_target(a)?;
    let (max_len, max_entry) = limits.resolve(&target);
    let hull_bound = target.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let mut cert = DecompositionCertificate {
        target: target.clone(),
        sequences: Vec::new(),
        hull_bound,
        max_len,
        max_entry,
        budget: limits.budget,
        transcript: Vec::new(),
    };

    let seed: Vec<i64> = if target == [0] {
        // S_() = {0} already, but realization needs nonempty sequences
        vec![2]
    } else {
        target.iter().copied().filter(|x| *x != 0).collect()
    };
    let sums = subsequence_sum_values(&seed)?;
    cert.sequences.push(SequenceB::new(seed)?);
    cert.transcript.push(TranscriptStep { excludes: None, sums: sums.clone(), running: sums.clone() });
    let mut running = sums;

    let mut spent = 0u64;
    while let Some(x) =
        running.iter().copied().filter(|x| target.binary_search(x).is_err()).min_by_key(|x| attack_key(*x))
    {
        let found = if target == [0] && cert.sequences.len() == 1 {
            Some(vec![3])
        } else {
            search_excluding(&target, x, max_len, max_entry, limits.budget, &mut spent)
        };
        let Some(entries) = found else {
            let remaining = running.iter().filter(|v| target.binary_search(v).is_err()).count();
            let (cap, limit) =
                if spent >= limits.budget { ("budget", limits.budget) } else { ("search-space", max_len as u64) };
            return Err(Error::SearchExhausted { cap, limit, remaining, partial: Box::new(cert) });
        };
        let sums = subsequence_sum_values(&entries)?;
        running = intersect_sorted(&running, &sums);
        cert.sequences.push(SequenceB::new(entries)?);
        cert.transcript.push(TranscriptStep { excludes: Some(x), sums, running: running.clone() });
    }

    if running != target {
        return Err(Error::Internal(format!("decomposition ended at {running:?}, expected {target:?}")));
    }
    Ok(cert)
}

/// Iterative-deepening search for `B` with `target ⊆ S_B` and `x ∉ S_B`.
fn search_excluding(
    target: &[i64],
    x: i64,
    max_len: usize,
    max_entry: u64,
    budget: u64,
    spent: &mut u64,
) -> Option<Vec<i64>> {
    let t_min = *target.first().expect("target contains 0");
    let t_max = *target.last().expect("target contains 0");
    for len in 1..=max_len {
        // |S_B| ≤ 2^len
        if len < 64 && (1u64 << len) < target.len() as u64 {
            continue;
        }
        for bound in 1..=max_entry {
            let entries: Vec<i64> = (1..=bound as i64).flat_map(|m| [m, -m]).collect();
            let reach = (len as i64) * bound as i64;
            let mut search = Stage {
                target,
                x,
                t_min,
                t_max,
                entries: &entries,
                len,
                bound: bound as i64,
                budget,
                spent,
                chosen: Vec::with_capacity(len),
            };
            let start = SumBits::zero_in(-reach, reach);
            match search.dfs(0, &start, 0, 0) {
                Ok(Some(found)) => return Some(found),
                Ok(None) => {}
                Err(()) => return None,
            }
        }
    }
    None
}

struct Stage<'a> {
    target: &'a [i64],
    x: i64,
    t_min: i64,
    t_max: i64,
    entries: &'a [i64],
    len: usize,
    bound: i64,
    budget: u64,
    spent: &'a mut u64,
    chosen: Vec<i64>,
}

impl Stage<'_> {
    /// `Err` when the budget runs out.
    fn dfs(&mut self, from: usize, sums: &SumBits, pos: i64, neg: i64) -> core::result::Result<Option<Vec<i64>>, ()> {
        let depth = self.chosen.len();
        if depth == self.len {
            let hit = self.chosen.last().is_some_and(|e| e.abs() == self.bound)
                && self.target.iter().all(|t| sums.contains(*t));
            return Ok(hit.then(|| self.chosen.clone()));
        }
        let left = (self.len - depth) as i64;
        for i in from..self.entries.len() {
            let e = self.entries[i];
            // the last slot must carry the current magnitude bound
            if depth + 1 == self.len && e.abs() != self.bound {
                continue;
            }
            *self.spent += 1;
            if *self.spent > self.budget {
                return Err(());
            }
            let (pos, neg) = if e > 0 { (pos + e, neg) } else { (pos, neg + e) };
            // remaining slots can add at most `bound` each in either direction
            if pos + (left - 1) * self.bound < self.t_max || neg - (left - 1) * self.bound > self.t_min {
                continue;
            }
            let mut next = sums.clone();
            next.add_entry(e);
            // x ∈ S stays true for every extension
            if next.contains(self.x) {
                continue;
            }
            self.chosen.push(e);
            let found = self.dfs(i, &next, pos, neg)?;
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Recomputes every `S_{B(i)}` by subset enumeration (at most 20 entries per
/// sequence) and checks that their intersection is exactly the target.
pub fn verify_decomposition(cert: &DecompositionCertificate) -> Result<bool> {
    const ENUMERATION_CAP: usize = 20;
    if cert.sequences.is_empty() {
        return Ok(cert.target == [0]);
    }
    let mut running: Option<BTreeSet<i64>> = None;
    for seq in &cert.sequences {
        if seq.entries().contains(&0) {
            return Ok(false);
        }
        let sums = enumerate_subset_sums(seq.entries(), ENUMERATION_CAP)?;
        running = Some(match running {
            None => sums,
            Some(r) => r.intersection(&sums).copied().collect(),
        });
    }
    let target: BTreeSet<i64> = cert.target.iter().copied().collect();
    Ok(running == Some(target))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries(c: &DecompositionCertificate) -> Vec<Vec<i64>> {
        c.sequences.iter().map(|s| s.entries().to_vec()).collect()
    }

    #[test]
    fn example_0_1_3() {
        let c = decompose(&[0, 1, 3], &SearchLimits::default()).unwrap();
        assert_eq!(entries(&c), [vec![1, 3], vec![1, 2]]);
        // S_(1,3) = {0,1,3,4}, S_(1,2) = {0,1,2,3}
        assert_eq!(c.transcript[0].sums, [0, 1, 3, 4]);
        assert_eq!(c.transcript[1].sums, [0, 1, 2, 3]);
        assert_eq!(c.transcript[1].running, [0, 1, 3]);
        assert!(verify_decomposition(&c).unwrap());
    }

    #[test]
    fn example_pairs_and_zero() {
        let c = decompose(&[0, 7], &SearchLimits::default()).unwrap();
        assert_eq!(entries(&c), [vec![7]]);
        let c = decompose(&[0, -4], &SearchLimits::default()).unwrap();
        assert_eq!(entries(&c), [vec![-4]]);
        let c = decompose(&[0], &SearchLimits::default()).unwrap();
        assert_eq!(entries(&c), [vec![2], vec![3]]);
        assert!(verify_decomposition(&c).unwrap());
    }

    #[test]
    fn requires_zero() {
        assert!(matches!(decompose(&[1, 2], &SearchLimits::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn tampered_certificate() {
        let mut c = decompose(&[0, 1, 3], &SearchLimits::default()).unwrap();
        c.sequences.pop();
        assert!(!verify_decomposition(&c).unwrap());
        let single = DecompositionCertificate {
            target: vec![0, 5],
            sequences: vec![SequenceB::new(vec![5]).unwrap()],
            hull_bound: 5,
            max_len: 6,
            max_entry: 20,
            budget: 10,
            transcript: Vec::new(),
        };
        assert!(verify_decomposition(&single).unwrap());
    }

    #[test]
    fn budget_exhaustion_carries_partial() {
        let limits = SearchLimits { budget: 3, ..SearchLimits::default() };
        match decompose(&[0, 1, 3], &limits) {
            Err(Error::SearchExhausted { cap, partial, .. }) => {
                assert_eq!(cap, "budget");
                assert_eq!(entries(&partial), [vec![1, 3]]);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn deterministic() {
        let a = [-3, 0, 2, 5];
        assert_eq!(decompose(&a, &SearchLimits::default()).unwrap(), decompose(&a, &SearchLimits::default()).unwrap());
    }

    #[test]
    fn small_hull_exhaustive() {
        // every subset of [-3, 3] containing 0
        let universe = [-3i64, -2, -1, 1, 2, 3];
        for mask in 0u32..(1 << universe.len()) {
            let mut a = vec![0];
            a.extend(universe.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x));
            let c = decompose(&a, &SearchLimits::default()).unwrap_or_else(|e| panic!("{a:?}: {e}"));
            assert!(verify_decomposition(&c).unwrap(), "{a:?}");
        }
    }
}
