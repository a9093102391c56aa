//! Degree-set algebra and subsequence-sum machinery.
//!
//! A [`DegreeSet`] is a finite set of integers plus a union of arithmetic
//! progressions; [`subsequence_sums`] computes `S_B` for a sequence `B`, and
//! [`decompose`] writes a finite set containing 0 as `⋂ S_{B(i)}`.

mod decompose;
mod oracle;
mod set;
mod sums;

pub use decompose::{decompose, verify_decomposition, DecompositionCertificate, SearchLimits, TranscriptStep};
pub use oracle::enumerate_subset_sums;
pub use set::{DegreeSet, Progression};
pub use sums::{subsequence_sum_values, subsequence_sums, SequenceB, DEFAULT_LENGTH_CAP};
