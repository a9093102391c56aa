//! Finitely generated abelian groups and their elements.
//!
//! Groups are kept in invariant-factor form `ℤ^r ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_t` with
//! `d_j | d_{j+1}`; arbitrary presentations are canonicalized through the
//! Smith normal form of their relation matrix.

mod eigen;
mod group;
mod matrix;
mod scalar;
mod snf;

pub use eigen::{characteristic_polynomial, unimodular_rational_eigen_check, EigenCheck};
pub use group::{canonicalize_group, validate_endomorphism, validate_homomorphism, FgAbelianGroup, GroupElement};
pub use matrix::IntegerMatrix;
pub use scalar::{in_cyclic_subgroup, solve_scalar, ScalarSolutionSet};
pub use snf::{smith_normal_form, SmithForm};
