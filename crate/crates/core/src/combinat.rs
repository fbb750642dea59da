//! Exact binomial coefficients and the signed coefficients of the
//! transformed coset formula.
//!
//! Everything here is arbitrary precision. `binom` follows the usual
//! convention that out-of-range lower indices give zero, which lets the
//! alternating sums elsewhere in the crate be transcribed without guards.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    BigInt::from(binom_u(n, k))
}

/// Unsigned variant of [`binom`].
pub fn binom_u(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial with a possibly negative upper index treated as an empty set:
/// returns zero for `n < 0`. Used where formulas index below zero.
pub(crate) fn binom_i(n: i64, k: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        binom(n as u64, k)
    }
}

#[inline]
pub(crate) fn sign(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Signed coefficient `Omega_w^(v) = (-1)^(w-d) C(n-v, w-v) C(w-1-v, d-2-v)`.
///
/// Vanishes for `w <= d - 2`. Rejects `v > d - 2` and `w > n`.
pub fn omega(n: usize, d: usize, w: usize, v: usize) -> Result<BigInt> {
    if d < 2 {
        return Err(Error::domain(format!("omega needs d >= 2, got d = {d}")));
    }
    if v > d - 2 {
        return Err(Error::domain(format!("omega index v = {v} exceeds d - 2 = {}", d - 2)));
    }
    if w > n {
        return Err(Error::domain(format!("omega weight w = {w} exceeds n = {n}")));
    }
    Ok(omega_unchecked(n, d, w, v))
}

pub(crate) fn omega_unchecked(n: usize, d: usize, w: usize, v: usize) -> BigInt {
    if w + 2 <= d {
        return BigInt::zero();
    }
    let (n, d, w, v) = (n as i64, d as i64, w as i64, v as i64);
    let magnitude = binom_i(n - v, w - v) * binom_i(w - 1 - v, d - 2 - v);
    if sign(w - d) < 0 {
        -magnitude
    } else {
        magnitude
    }
}
