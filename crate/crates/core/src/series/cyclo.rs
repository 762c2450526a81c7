use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Cap, Coefficient, PowerSeries, Series};
use crate::arith::{big_pow, check_prime};
use crate::error::{Error, Result};
use crate::padic::PadicScalar;

fn ints_to_series(p: u64, v: Vec<BigInt>, cap: Cap) -> PowerSeries {
    Series::new(p, v.into_iter().map(|c| PadicScalar::from_int(p, c)).collect(), cap)
}

/// Coefficients `binom(m, k)` for `k < len` (stopping at `k = m`).
fn binomial_row(m: &BigInt, len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len.min(1 << 20));
    let mut c = BigInt::one();
    for k in 0..len {
        if c.is_zero() {
            break;
        }
        out.push(c.clone());
        c = c * (m - BigInt::from(k)) / BigInt::from(k + 1);
    }
    out
}

fn phi_upto(p: u64, j: u32, len: usize) -> Vec<BigInt> {
    assert!(j >= 1, "phi needs j >= 1");
    let m = big_pow(p, j - 1);
    let mut acc: Vec<BigInt> = Vec::new();
    for t in 0..p {
        let row = binomial_row(&(&m * BigInt::from(t)), len);
        if acc.len() < row.len() {
            acc.resize(row.len(), BigInt::zero());
        }
        for (a, r) in acc.iter_mut().zip(row) {
            *a += r;
        }
    }
    acc
}

/// `Φ_j(1+X) = Σ_{t<p} (1+X)^{p^{j−1} t}`, exactly.
///
/// The degree is `p^{j−1}(p−1)`, so large `(p, j)` are expensive; use
/// [`phi_truncated`] when only low-order terms matter.
pub fn phi(p: u64, j: u32) -> PowerSeries {
    ints_to_series(p, phi_upto(p, j, usize::MAX), Cap::Exact)
}

/// `Φ_j(1+X) mod X^cap`.
pub fn phi_truncated(p: u64, j: u32, cap: usize) -> PowerSeries {
    ints_to_series(p, phi_upto(p, j, cap), Cap::Finite(cap))
}

/// The single coefficient of `X^k` in `Φ_j(1+X)`.
pub fn phi_coefficient(p: u64, j: u32, k: usize) -> BigInt {
    let m = big_pow(p, j - 1);
    (0..p).map(|t| crate::arith::binomial(&(&m * BigInt::from(t)), k)).sum()
}

/// `ω_n = (1+X)^{p^n} − 1`.
pub fn omega(p: u64, n: u32) -> PowerSeries {
    let mut row = binomial_row(&big_pow(p, n), usize::MAX);
    row[0] = BigInt::zero();
    ints_to_series(p, row, Cap::Exact)
}

/// Product of `Φ_j(1+X)` over `1 ≤ j ≤ n` with `j ≡ i (mod 2̃)`.
pub fn omega_congruent(p: u64, ap: i64, n: u32, i: i64) -> Result<PowerSeries> {
    let two = crate::trace::period_constants(p, ap)?.two_tilde;
    let mut acc = PowerSeries::from_ints(p, &[1], Cap::Exact);
    for j in 1..=n {
        if (j as i64 - i).rem_euclid(two) == 0 {
            acc = acc.mul(&phi(p, j), Cap::Exact);
        }
    }
    Ok(acc)
}

fn monic_int_coeffs(g: &PowerSeries) -> Vec<PadicScalar> {
    assert!(g.cap() == Cap::Exact && g.is_exact(), "modulus must be an exact polynomial");
    let lead = g.coeffs().last().expect("modulus must be nonzero");
    assert!(lead.value().is_one(), "modulus must be monic");
    assert!(g.coeffs().iter().all(|c| c.value().is_integer()), "modulus must be integral");
    g.coeffs().to_vec()
}

/// Quotient and remainder by a monic integer polynomial.
fn divmod<C: Coefficient>(f: &Series<C>, g: &PowerSeries) -> (Vec<C>, Vec<C>) {
    let gc = monic_int_coeffs(g);
    let d = gc.len() - 1;
    let mut r: Vec<C> = f.coeffs().to_vec();
    if r.len() <= d {
        return (Vec::new(), r);
    }
    let mut q = vec![C::zero(f.ctx()); r.len() - d];
    for k in (d..r.len()).rev() {
        let c = std::mem::replace(&mut r[k], C::zero(f.ctx()));
        if c.is_exact_zero() {
            continue;
        }
        for (i, gi) in gc.iter().enumerate().take(d) {
            if !gi.is_exact_zero() {
                r[k - d + i] = r[k - d + i].sub(&c.scale(gi));
            }
        }
        q[k - d] = c;
    }
    r.truncate(d);
    (q, r)
}

/// Remainder of `f` modulo the monic integer polynomial `g`.
///
/// A truncated `f` is treated as the polynomial of its tracked terms; the
/// discarded tail is the caller's concern.
///
/// # Panics
///
/// If `g` is not monic with exact integer coefficients.
pub fn reduce_mod<C: Coefficient>(f: &Series<C>, g: &PowerSeries) -> Series<C> {
    let (_, r) = divmod(f, g);
    Series::new(f.ctx(), r, Cap::Exact)
}

/// `f(ζ_{p^j} − 1)`, as a remainder modulo `Φ_j(1+X)`.
pub fn eval_at_root<C: Coefficient>(f: &Series<C>, j: u32) -> Series<C> {
    reduce_mod(f, &phi(f.p(), j))
}

/// `q` with `f = q·g`, or [`Error::InexactDivision`] if the remainder is not
/// zero at the available precision.
pub fn exact_divide<C: Coefficient>(f: &Series<C>, g: &PowerSeries) -> Result<Series<C>> {
    let (q, r) = divmod(f, g);
    if let Some(k) = r.iter().position(|c| !c.is_zero()) {
        return Err(Error::InexactDivision(format!(
            "nonzero remainder at degree {k} when dividing by a degree {} modulus",
            g.len() - 1
        )));
    }
    let cap = match f.cap() {
        Cap::Exact => Cap::Exact,
        Cap::Finite(c) => Cap::Finite(c.saturating_sub(g.len() - 1)),
    };
    Ok(Series::new(f.ctx(), q, cap))
}

/// `log_p(1+X) = Σ_{k<cap} (−1)^{k+1} X^k / k` with exact coefficients.
pub fn log_series(p: u64, cap: usize) -> Result<PowerSeries> {
    check_prime(p)?;
    let v = (0..cap)
        .map(|k| {
            if k == 0 {
                PadicScalar::zero(p)
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                PadicScalar::from_rational(p, BigRational::new(sign.into(), BigInt::from(k)))
            }
        })
        .collect();
    Ok(Series::new(p, v, Cap::Finite(cap)))
}
