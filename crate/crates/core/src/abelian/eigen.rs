use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;
use crate::{arith, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenCheck {
    /// `|det m| = 1`.
    pub unimodular: bool,
    /// Rational roots of the characteristic polynomial with multiplicity,
    /// largest first.
    pub rational_eigenvalues: Vec<BigRational>,
}

/// Coefficients of `det(λ·I − m)`, constant term first (the last one is 1).
///
/// Faddeev–LeVerrier: every division in the recurrence is exact over ℤ.
pub fn characteristic_polynomial(m: &IntegerMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::InvalidMatrix(alloc::format!(
            "characteristic polynomial of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut coeffs = alloc::vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntegerMatrix::zeros(n, n);
    for k in 1..=n {
        // aux ← m·aux + c_{n-k+1}·I
        let mut next = m.mul(&aux)?;
        for i in 0..n {
            *next.get_mut(i, i) += &coeffs[n - k + 1];
        }
        aux = next;
        let prod = m.mul(&aux)?;
        let trace: BigInt = (0..n).map(|i| prod[(i, i)].clone()).sum();
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    Ok(coeffs)
}

fn evaluate(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divides a monic polynomial by `(λ − root)`; the remainder must be zero.
fn deflate(coeffs: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut out = alloc::vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (0..n).rev() {
        carry = &coeffs[i + 1] + carry * root;
        out[i] = carry.clone();
    }
    out
}

/// Determinant check plus all rational eigenvalues via the rational-root test.
///
/// The characteristic polynomial is monic with integer coefficients, so every
/// rational root is an integer dividing the constant term. When `m` is
/// unimodular that constant is `±1`, leaving only `±1` as candidates.
pub fn unimodular_rational_eigen_check(m: &IntegerMatrix) -> Result<EigenCheck> {
    let det = m.determinant()?;
    let mut poly = characteristic_polynomial(m)?;
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(BigInt::zero());
        poly.remove(0);
    }
    if poly.len() > 1 {
        for d in arith::positive_divisors(&poly[0]) {
            for candidate in [d.clone(), -d] {
                while poly.len() > 1 && evaluate(&poly, &candidate).is_zero() {
                    poly = deflate(&poly, &candidate);
                    roots.push(candidate.clone());
                }
            }
        }
    }
    roots.sort_by(|a, b| b.cmp(a));
    Ok(EigenCheck {
        unimodular: det.abs().is_one(),
        rational_eigenvalues: roots.into_iter().map(BigRational::from_integer).collect(),
    })
}
