use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use super::limit::{limit_rows, LimitOptions, LimitRows};
use crate::arith::{big_pow, check_prime, rat_pow, rational_reconstruct};
use crate::error::{Error, Result};
use crate::padic::{PadicScalar, QuadExtScalar};
use crate::series::{gauss_norm_log, log_series, phi_truncated, Cap, PowerSeries, QuadSeries, QuadSeriesRepr};
use crate::trace::{beta, period_constants};

/// The pair `(log_α^ϑ, log_α^υ)` with coefficients `a + bα`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfLogPair {
    pub p: u64,
    pub ap: i64,
    /// α is symbolic; the tag only names which root the coordinates use.
    pub root_tag: String,
    pub log_theta: QuadSeries,
    pub log_upsilon: QuadSeries,
    pub cap: usize,
    pub prec: i64,
}

fn quad(ap: i64, s: &PowerSeries) -> QuadSeries {
    s.to_quad(ap)
}

/// `(Θ_∞^{−i}ᾱ^i − Θ_∞^{−j}ᾱ^j)/(β_{j−1} − β_{i−1})` and the `Υ` analogue,
/// read off already computed limits.
fn from_rows(rows: &LimitRows, i: i64, j: i64) -> Result<(QuadSeries, QuadSeries)> {
    let (p, ap) = (rows.p, rows.ap);
    let abar = QuadExtScalar::alpha_bar(p, ap);
    let den = beta(p, ap, j - 1)?.sub(&beta(p, ap, i - 1)?);
    if den.is_zero() {
        return Err(Error::IdentityViolation(format!("β_{} = β_{}", j - 1, i - 1)));
    }
    let inv = den.inverse()?;
    let (ci, cj) = (abar.pow(i)?.mul(&inv), abar.pow(j)?.mul(&inv));
    let side = |f: &PowerSeries, g: &PowerSeries| quad(ap, f).scale_by(&ci).sub(&quad(ap, g).scale_by(&cj));
    Ok((side(rows.theta(-i), rows.theta(-j)), side(rows.upsilon(-i), rows.upsilon(-j))))
}

/// Half-logarithms from the index pair `(i, j)`, `i ≢ j (mod 2̃)`.
pub fn half_logs_from_indices(
    p: u64,
    ap: i64,
    i: i64,
    j: i64,
    cap: usize,
    prec: i64,
    opts: LimitOptions,
) -> Result<HalfLogPair> {
    let rows = limit_rows(p, ap, &[-i, -j], cap, prec, opts)?;
    let (log_theta, log_upsilon) = from_rows(&rows, i, j)?;
    Ok(HalfLogPair { p, ap, root_tag: "alpha".into(), log_theta, log_upsilon, cap, prec })
}

/// Precision lost when dividing by `β_{j−1} − β_{i−1}`.
fn division_loss(p: u64, ap: i64, i: i64, j: i64) -> Result<i64> {
    let den = beta(p, ap, j - 1)?.sub(&beta(p, ap, i - 1)?);
    Ok(den.valuation().map_or(0, |v| v.ceil().to_integer()).max(0))
}

/// `(Θ_∞^0 − ᾱΘ_∞^{−1}, Υ_∞^0 − ᾱΥ_∞^{−1})`, cross-checked against the
/// index pair `(2̃−1, 2̃)`.
pub fn half_logs(p: u64, ap: i64, cap: usize, prec: i64, opts: LimitOptions) -> Result<HalfLogPair> {
    let two = period_constants(p, ap)?.two_tilde;
    let rows = limit_rows(p, ap, &[0, -1, -(two - 1), -two], cap, prec, opts)?;
    let (log_theta, log_upsilon) = from_rows(&rows, 0, 1)?;
    let (t2, u2) = from_rows(&rows, two - 1, two)?;
    let check_prec = prec - division_loss(p, ap, two - 1, two)? - 1;
    for (name, a, b) in [("theta", &log_theta, &t2), ("upsilon", &log_upsilon, &u2)] {
        if let Some(k) = a.first_disagreement(b, check_prec, cap) {
            return Err(Error::IdentityViolation(format!(
                "half-log {name} from (0, 1) and ({}, {two}) differ at X^{k} modulo {p}^{check_prec}",
                two - 1
            )));
        }
    }
    Ok(HalfLogPair { p, ap, root_tag: "alpha".into(), log_theta, log_upsilon, cap, prec })
}

impl HalfLogPair {
    /// Agreement of both components modulo `p^prec` below `X^upto`.
    pub fn agrees_mod(&self, other: &Self, prec: i64, upto: usize) -> bool {
        self.log_theta.agrees_mod(&other.log_theta, prec, upto)
            && self.log_upsilon.agrees_mod(&other.log_upsilon, prec, upto)
    }

    /// `log_p|f|_r − ½ log_p|log_p(1+X)|_r` at `r = p^{−s}` for each
    /// component.
    pub fn growth_excess(&self, s: Rational64) -> Result<[Option<Rational64>; 2]> {
        let l = gauss_norm_log(&log_series(self.p, self.cap)?, s).expect("log is nonzero");
        let half = l / Rational64::from_integer(2);
        Ok([
            gauss_norm_log(&self.log_theta, s).map(|v| v - half),
            gauss_norm_log(&self.log_upsilon, s).map(|v| v - half),
        ])
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct HalfLogRepr {
    pub p: u64,
    pub ap: i64,
    pub root_tag: String,
    pub cap: usize,
    pub prec: i64,
    pub log_theta: QuadSeriesRepr,
    pub log_upsilon: QuadSeriesRepr,
}

impl Serialize for HalfLogPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HalfLogRepr {
            p: self.p,
            ap: self.ap,
            root_tag: self.root_tag.clone(),
            cap: self.cap,
            prec: self.prec,
            log_theta: self.log_theta.to_repr(),
            log_upsilon: self.log_upsilon.to_repr(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HalfLogPair {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = HalfLogRepr::deserialize(d)?;
        let conv = |x: &QuadSeriesRepr| {
            if (x.p, x.ap) != (r.p, r.ap) {
                return Err(Error::Parse("component over a different extension".into()));
            }
            QuadSeries::from_repr(x)
        };
        let out = (|| {
            crate::trace::check_supersingular(r.p, r.ap)?;
            Ok::<_, Error>(HalfLogPair {
                p: r.p,
                ap: r.ap,
                root_tag: r.root_tag.clone(),
                log_theta: conv(&r.log_theta)?,
                log_upsilon: conv(&r.log_upsilon)?,
                cap: r.cap,
                prec: r.prec,
            })
        })();
        out.map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

fn ceil_log(p: u64, cap: usize) -> i64 {
    let mut n = 0;
    while (p as u128).pow(n as u32) < cap as u128 {
        n += 1;
    }
    n
}

/// `Π Φ_j(1+X)/p` over `j ≥ 1` of the given parity, modulo `X^cap` and
/// `p^prec`.
///
/// Once `p^{j−1} ≥ cap` a factor is `1 + O(p^{j−2−log_p cap})` below `X^cap`,
/// so the product is cut off after it stops changing at that precision.
pub fn pollack_product(p: u64, parity: Parity, cap: usize, prec: i64) -> Result<PowerSeries> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::Parse("the parity products are defined for odd p".into()));
    }
    let lc = ceil_log(p, cap);
    let small = (1..=lc + 1).count() as i64;
    let w = prec + small + 2;
    let inv_p = PadicScalar::from_rational(p, rat_pow(p, -1));
    let mut acc = PowerSeries::from_ints(p, &[1], Cap::Finite(cap));
    let first = match parity {
        Parity::Even => 2,
        Parity::Odd => 1,
    };
    let j_max = lc + 2 * prec + 8;
    let mut j = first;
    while j <= j_max {
        let f = phi_truncated(p, j as u32, cap).scale(&inv_p).truncate_precision(w);
        let next = acc.mul(&f, Cap::Finite(cap));
        let stable = next.agrees_mod(&acc, prec, cap);
        acc = next;
        if stable && j - 2 - lc >= prec {
            return Ok(acc.truncate_precision(prec));
        }
        j += 2;
    }
    Err(Error::NotConverged { level: j_max as usize, detail: format!("parity product at p = {p}") })
}

/// Pollack's `log^± = (1/p)·Π Φ_j(1+X)/p`, `+` for even and `−` for odd `j`.
pub fn pollack_log(p: u64, parity: Parity, cap: usize, prec: i64) -> Result<PowerSeries> {
    let inv_p = PadicScalar::from_rational(p, rat_pow(p, -1));
    Ok(pollack_product(p, parity, cap, prec + 1)?.scale(&inv_p))
}

/// For `a_p = 0`: the constant `c` with `log^ϑ = c·log^+` and
/// `log^υ = c·α·log^−`, recognised as a small rational, or `None` if no such
/// constant fits the data modulo `p^prec`.
pub fn pollack_constant(pair: &HalfLogPair, prec: i64) -> Result<Option<BigRational>> {
    let (p, cap) = (pair.p, pair.cap);
    let plus = pollack_log(p, Parity::Even, cap, prec + 2)?;
    let minus = pollack_log(p, Parity::Odd, cap, prec + 2)?;
    // log^+ has constant term 1/p, so c = p·log^ϑ(0)
    let c0 = pair.log_theta.coeff(0);
    if !c0.b().is_zero() {
        return Ok(None);
    }
    let c = c0.a().clone() * PadicScalar::from_int(p, p);
    let m = big_pow(p, (prec - 1).max(1) as u32);
    let Some(cr) = c.as_integer().or_else(|| {
        // inexact: the canonical residue is already an integer when v(c) ≥ 0
        c.value().is_integer().then(|| c.value().to_integer())
    }) else {
        return Ok(None);
    };
    let Some(r) = rational_reconstruct(&cr, &m) else {
        return Ok(None);
    };
    let cs = PadicScalar::from_rational(p, r.clone());
    let alpha = QuadExtScalar::alpha(p, pair.ap);
    let want_t = quad(pair.ap, &plus.scale(&cs));
    let want_u = quad(pair.ap, &minus.scale(&cs)).scale_by(&alpha);
    let ok = pair.log_theta.agrees_mod(&want_t, prec, cap) && pair.log_upsilon.agrees_mod(&want_u, prec, cap);
    Ok(ok.then_some(r))
}
