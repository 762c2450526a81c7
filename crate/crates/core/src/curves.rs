//! Point counts and traces of Frobenius for long Weierstrass models
//! `y² + a1xy + a3y = x³ + a2x² + a4x + a6`.

use serde::{Deserialize, Serialize};

use crate::arith::check_prime;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveData {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl CurveData {
    pub const fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Self {
        CurveData { a1, a2, a3, a4, a6 }
    }

    /// `y² + a3·y = x³ + a4·x + a6`.
    pub const fn short(a3: i64, a4: i64, a6: i64) -> Self {
        Self::new(0, 0, a3, a4, a6)
    }

    /// The same curve after `x ↦ x + c`.
    pub fn translate_x(&self, c: i64) -> Self {
        let CurveData { a1, a2, a3, a4, a6 } = *self;
        CurveData {
            a1,
            a2: a2 + 3 * c,
            a3: a3 + a1 * c,
            a4: a4 + 2 * a2 * c + 3 * c * c,
            a6: a6 + a4 * c + a2 * c * c + c * c * c,
        }
    }
}

/// `y² + y = x³ − x`.
pub const MORDELL_37: CurveData = CurveData::short(1, -1, 0);
/// `y² + y = x³ − 7x + 7`.
pub const CURVE_755: CurveData = CurveData::short(1, -7, 7);

pub fn discriminant(c: &CurveData) -> i128 {
    let [a1, a2, a3, a4, a6] = [c.a1, c.a2, c.a3, c.a4, c.a6].map(i128::from);
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
}

fn good_reduction(c: &CurveData, p: u64) -> Result<()> {
    check_prime(p)?;
    if discriminant(c).rem_euclid(p as i128) == 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(())
}

/// `#E(F_p)`, point at infinity included, by enumerating `F_p²`.
pub fn count_points(c: &CurveData, p: u64) -> Result<u64> {
    good_reduction(c, p)?;
    let m = p as i128;
    let r = |v: i64| (v as i128).rem_euclid(m);
    let [a1, a2, a3, a4, a6] = [c.a1, c.a2, c.a3, c.a4, c.a6].map(r);
    let mut n = 1;
    for x in 0..m {
        let rhs = (((x + a2) * x + a4) * x + a6) % m;
        for y in 0..m {
            if (y * y + a1 * x * y + a3 * y - rhs).rem_euclid(m) == 0 {
                n += 1;
            }
        }
    }
    Ok(n)
}

pub fn ap(c: &CurveData, p: u64) -> Result<i64> {
    let a = p as i64 + 1 - count_points(c, p)? as i64;
    if a * a > 4 * p as i64 {
        return Err(Error::HasseViolation { p, ap: a });
    }
    Ok(a)
}

pub fn is_supersingular(c: &CurveData, p: u64) -> Result<bool> {
    Ok(ap(c, p)? % p as i64 == 0)
}

/// Output of the `ap` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApReport {
    pub p: u64,
    pub count: u64,
    pub ap: i64,
    pub supersingular: bool,
}

pub fn ap_report(c: &CurveData, p: u64) -> Result<ApReport> {
    let count = count_points(c, p)?;
    let a = ap(c, p)?;
    Ok(ApReport { p, count, ap: a, supersingular: a % p as i64 == 0 })
}
