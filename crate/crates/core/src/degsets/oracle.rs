use alloc::collections::BTreeSet;

use crate::{Error, Result};

/// `S_B` by walking all `2^|B|` index subsets. Independent of the dynamic
/// program in [`subsequence_sum_values`](super::subsequence_sum_values);
/// used by the verifiers.
pub fn enumerate_subset_sums(entries: &[i64], cap: usize) -> Result<BTreeSet<i64>> {
    if entries.len() > cap {
        return Err(Error::ResourceCap { cap: "enumeration-length", limit: cap as u64 });
    }
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << entries.len()) {
        let mut total: i128 = 0;
        for (i, e) in entries.iter().enumerate() {
            if mask >> i & 1 == 1 {
                total += *e as i128;
            }
        }
        out.insert(i64::try_from(total).map_err(|_| Error::ResourceCap { cap: "sum-range", limit: i64::MAX as u64 })?);
    }
    Ok(out)
}
