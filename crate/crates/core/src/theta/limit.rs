use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{n_convention, Level, LadderMatrix};
use crate::arith::{big_pow, floor_half, rat_pow};
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::series::{phi_truncated, Cap, PowerSeries};
use crate::trace::{check_supersingular, delta_coeffs};

/// Environment variable read by the command-line front end to override the
/// iteration cap of [`limit_rows`].
pub const MAX_STEPS_ENV: &str = "SPRUNG_MAX_LIMIT_STEPS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LimitOptions {
    /// Highest level `n` to try. Defaults to `⌈log_p cap⌉ + 2·prec + 8`.
    pub max_level: Option<u32>,
}

/// Scaled limits `Θ_∞^i, Υ_∞^i` for a set of indices, computed together.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitRows {
    pub p: u64,
    pub ap: i64,
    pub cap: usize,
    pub prec: i64,
    /// The level at which consecutive approximants first agreed.
    pub level: u32,
    rows: BTreeMap<i64, [PowerSeries; 2]>,
}

impl LimitRows {
    pub fn theta(&self, i: i64) -> &PowerSeries {
        &self.rows[&i][0]
    }

    pub fn upsilon(&self, i: i64) -> &PowerSeries {
        &self.rows[&i][1]
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.keys().copied()
    }
}

type ModPoly = Vec<BigInt>;

fn mod_mul(a: &ModPoly, b: &ModPoly, cap: usize, m: &BigInt) -> ModPoly {
    let n = (a.len() + b.len()).saturating_sub(1).min(cap);
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out.iter_mut().for_each(|c| *c = c.mod_floor(m));
    out
}

/// `a·f − g`, reduced.
fn mod_comb(a: &BigInt, f: &ModPoly, g: &ModPoly, m: &BigInt) -> ModPoly {
    let n = f.len().max(g.len());
    let z = BigInt::zero();
    (0..n).map(|k| (a * f.get(k).unwrap_or(&z) - g.get(k).unwrap_or(&z)).mod_floor(m)).collect()
}

fn ceil_log(p: u64, cap: usize) -> u32 {
    let mut n = 0;
    while (p as u128).pow(n) < cap as u128 {
        n += 1;
    }
    n
}

/// `Θ_∞^i = lim p^{[(i−N)/2]}Θ_n^{i−N}` (and `Υ_∞^i`) for each requested `i`,
/// modulo `X^cap`, stopping once consecutive levels agree modulo `p^prec`.
///
/// Level-`n` rows are kept modulo `p^W` with `W` large enough to absorb the
/// negative scaling, and `Θ_n^{i−N} = y_{i−N}Θ_n^0 + y′_{i−N}Θ_n^{−1}`.
pub fn limit_rows(
    p: u64,
    ap: i64,
    indices: &[i64],
    cap: usize,
    prec: i64,
    opts: LimitOptions,
) -> Result<LimitRows> {
    check_supersingular(p, ap)?;
    if cap == 0 || prec < 1 {
        return Err(Error::Parse("cap and prec must be positive".into()));
    }
    let n_start = ceil_log(p, cap).max(1);
    let n_max = opts.max_level.unwrap_or(ceil_log(p, cap) + 2 * prec as u32 + 8);
    let imin = indices.iter().copied().min().unwrap_or(0).min(0);
    let spread = n_convention(p, n_max) - imin;
    let w = prec + (spread + 1) / 2 + 4;
    let m = big_pow(p, w as u32);
    let apb = BigInt::from(ap);

    let mut top: [ModPoly; 2] = [vec![BigInt::from(1)], vec![]];
    let mut bottom: [ModPoly; 2] = [vec![], vec![BigInt::from(1)]];
    let mut prev: Option<BTreeMap<i64, [PowerSeries; 2]>> = None;
    for n in 1..=n_max {
        let f: ModPoly = phi_truncated(p, n, cap)
            .coeffs()
            .iter()
            .map(|c| c.value().to_integer().mod_floor(&m))
            .collect();
        let nt = [
            mod_comb(&apb, &top[0], &mod_mul(&f, &bottom[0], cap, &m), &m),
            mod_comb(&apb, &top[1], &mod_mul(&f, &bottom[1], cap, &m), &m),
        ];
        bottom = std::mem::replace(&mut top, nt);
        if n < n_start {
            continue;
        }
        // rows for indices 0 and −1
        let r0 = &bottom;
        let rm1 = [mod_comb(&apb, &r0[0], &top[0], &m), mod_comb(&apb, &r0[1], &top[1], &m)];
        let big_n = n_convention(p, n);
        let mut cur = BTreeMap::new();
        for &i in indices {
            let d = delta_coeffs(p, ap, i - big_n)?;
            let s = floor_half(i - big_n);
            let (y, yp) = (BigInt::from(d.y), BigInt::from(d.y_prime));
            let scale = rat_pow(p, s);
            let entry = |k: usize| -> PowerSeries {
                let z = BigInt::zero();
                let coeffs = (0..cap)
                    .map(|j| {
                        let c = (&y * r0[k].get(j).unwrap_or(&z) + &yp * rm1[k].get(j).unwrap_or(&z)).mod_floor(&m);
                        PadicScalar::with_precision(p, num_rational::BigRational::from_integer(c) * &scale, w + s)
                    })
                    .collect();
                PowerSeries::new(p, coeffs, Cap::Finite(cap))
            };
            cur.insert(i, [entry(0), entry(1)]);
        }
        if let Some(old) = &prev {
            let settled = cur.iter().all(|(i, [t, u])| {
                t.agrees_mod(&old[i][0], prec, cap) && u.agrees_mod(&old[i][1], prec, cap)
            });
            if settled {
                let rows = cur
                    .into_iter()
                    .map(|(i, [t, u])| (i, [t.truncate_precision(prec), u.truncate_precision(prec)]))
                    .collect();
                return Ok(LimitRows { p, ap, cap, prec, level: n, rows });
            }
        }
        prev = Some(cur);
    }
    Err(Error::NotConverged {
        level: n_max as usize,
        detail: format!("(p, a_p) = ({p}, {ap}), cap {cap}, prec {prec}"),
    })
}

/// Rows `(Θ_∞^i, Υ_∞^i)` and `(Θ_∞^{i−1}, Υ_∞^{i−1})`.
pub fn ladder_infinity(p: u64, ap: i64, i: i64, cap: usize, prec: i64, opts: LimitOptions) -> Result<LadderMatrix> {
    let r = limit_rows(p, ap, &[i, i - 1], cap, prec, opts)?;
    Ok(LadderMatrix {
        p,
        ap,
        level: Level::Infinity,
        index: i,
        cap: Cap::Finite(cap),
        prec: Some(prec),
        top: [r.theta(i).clone(), r.upsilon(i).clone()],
        bottom: [r.theta(i - 1).clone(), r.upsilon(i - 1).clone()],
    })
}
