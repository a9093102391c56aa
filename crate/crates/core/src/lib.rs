//! Exact arithmetic for mapping degree sets of oriented circle bundles.
//!
//! The crate is `no_std` (it needs `alloc`) and performs no IO. It covers four
//! areas:
//!
//! - [`abelian`]: finitely generated abelian groups, Smith normal form, and the
//!   scalar Euler-class equation `k·a = c`.
//! - [`degsets`]: degree-set algebra, subsequence sums and the intersection
//!   decomposition `A = ⋂ S_B` with brute-force certification.
//! - [`bundles`]: symbolic manifolds and the closed-form degree-set rules for
//!   vertical and fiber-preserving maps between circle bundles.
//! - [`realize`]: the constructive realization of a finite set containing 0 as
//!   a mapping degree set, with an independent certificate verifier.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod abelian;
pub mod arith;
pub mod bundles;
pub mod degsets;
mod error;
pub mod realize;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
