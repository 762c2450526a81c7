//! Small integer helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Trial division; every prime this crate sees is tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NonPrimeModulus(p))
    }
}

/// The bracket `[a/2]`: greatest integer not greater than `a/2`, also for
/// negative `a`.
pub fn floor_half(a: i64) -> i64 {
    a.div_euclid(2)
}

pub fn big_pow(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// `p^k` as a rational, `k` of either sign.
pub fn rat_pow(p: u64, k: i64) -> BigRational {
    let base = big_pow(p, k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Splits off the p-part of a nonzero integer: returns `(v, n / p^v)`.
pub fn split_int(p: u64, n: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    (v, rest)
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(p: u64, x: &BigRational) -> i64 {
    debug_assert!(!x.is_zero());
    split_int(p, x.numer()).0 - split_int(p, x.denom()).0
}

/// Inverse of a unit modulo `m`; `u` must be coprime to `m`.
pub fn inv_mod(u: &BigInt, m: &BigInt) -> BigInt {
    let e = u.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.abs().is_one());
    (e.x * e.gcd).mod_floor(m)
}

/// `binom(m, k)` for `k` small and `m` possibly huge.
pub fn binomial(m: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= m - BigInt::from(j);
        acc /= BigInt::from(j + 1);
    }
    acc
}

/// The rational `a/b` with `|a|, |b| ≤ sqrt(m/2)` congruent to `u` modulo
/// `m`, if there is one.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
