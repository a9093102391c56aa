//! Integer helpers shared by the group solver, the set algebra and the
//! realization layer.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = core::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = core::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = core::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Least nonnegative residue of `x` modulo `m > 0`.
pub fn reduce(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

/// Inverse of `a` modulo `m > 0`, when `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (g, x, _) = ext_gcd(a, m);
    if g.is_one() {
        Some(reduce(&x, m))
    } else {
        None
    }
}

/// Solves `k·a ≡ c (mod m)` for `m > 0`.
///
/// Returns `(base, modulus)` with `0 ≤ base < modulus` describing every
/// solution, or `None` when the congruence has none.
pub fn solve_linear_congruence(a: &BigInt, c: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let a = reduce(a, m);
    let c = reduce(c, m);
    let g = a.gcd(m);
    if g.is_zero() {
        // a ≡ 0 and m would have to be 0, excluded by the precondition.
        return None;
    }
    if !c.is_multiple_of(&g) {
        return None;
    }
    let modulus = m / &g;
    if modulus.is_one() {
        return Some((BigInt::zero(), modulus));
    }
    let inv = mod_inverse(&(&a / &g), &modulus)?;
    let base = reduce(&(&(&c / &g) * inv), &modulus);
    Some((base, modulus))
}

/// Intersects `{x + q·l}` with `{y + q·m}` for `l, m > 0`.
///
/// Returns the combined progression normalized to `0 ≤ base < lcm`, or `None`
/// when the two progressions are disjoint.
pub fn crt(x: &BigInt, l: &BigInt, y: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let (g, p, _) = ext_gcd(l, m);
    let diff = y - x;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let lcm = l / &g * m;
    let m_over_g = m / &g;
    let t = reduce(&(&diff / &g * p), &m_over_g);
    Some((reduce(&(x + t * l), &lcm), lcm))
}

/// Deterministic primality by trial division. Only used on small primes
/// (the realization layer picks primes just above the sequence entries).
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let two = BigInt::from(2);
    if n == &two {
        return true;
    }
    if n.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The `count` smallest primes strictly greater than `floor`.
pub fn primes_above(floor: &BigInt, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut candidate = floor + 1;
    while out.len() < count {
        if is_prime(&candidate) {
            out.push(candidate.clone());
        }
        candidate += 1;
    }
    out
}

/// Positive divisors of `n ≠ 0`, ascending. Trial division up to `√|n|`.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
