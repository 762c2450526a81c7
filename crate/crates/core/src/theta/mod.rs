//! The series side: the ladders `Θ_n^i, Υ_n^i`, their scaled limits
//! `Θ_∞^i, Υ_∞^i`, and the half-logarithms built from them.

mod checks;
mod halflog;
mod limit;

use serde::{Deserialize, Serialize};

pub use checks::{kappa_identity_check, mod_omega_compatibility_check};
pub use halflog::{
    half_logs, half_logs_from_indices, pollack_constant, pollack_log, pollack_product, HalfLogPair,
    HalfLogRepr, Parity,
};
pub use limit::{ladder_infinity, limit_rows, LimitOptions, LimitRows, MAX_STEPS_ENV};

use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::series::{phi, phi_truncated, Cap, PowerSeries, SeriesRepr};
use crate::trace::{ap_at, check_supersingular};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(u32),
    Infinity,
}

/// Rows `(Θ^i, Υ^i)` and `(Θ^{i−1}, Υ^{i−1})` at level `n` or at infinity.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderMatrix {
    pub p: u64,
    pub ap: i64,
    pub level: Level,
    pub index: i64,
    pub cap: Cap,
    pub prec: Option<i64>,
    /// `[Θ^i, Υ^i]`
    pub top: [PowerSeries; 2],
    /// `[Θ^{i−1}, Υ^{i−1}]`
    pub bottom: [PowerSeries; 2],
}

fn int(p: u64, n: i64) -> PadicScalar {
    PadicScalar::from_int(p, n)
}

/// `a·r − s` on rows.
fn comb(a: i64, r: &[PowerSeries; 2], s: &[PowerSeries; 2]) -> [PowerSeries; 2] {
    let p = r[0].p();
    [r[0].scale(&int(p, a)).sub(&s[0]), r[1].scale(&int(p, a)).sub(&s[1])]
}

/// `N = n + 1` for odd `p`, `n + 2` for `p = 2`.
pub fn n_convention(p: u64, n: u32) -> i64 {
    n as i64 + if p == 2 { 2 } else { 1 }
}

impl LadderMatrix {
    /// `Θ^iΥ^{i−1} − Υ^iΘ^{i−1}`.
    pub fn det(&self) -> PowerSeries {
        let cap = self.cap;
        self.top[0].mul(&self.bottom[1], cap).sub(&self.top[1].mul(&self.bottom[0], cap))
    }

    /// Applies `[[a_p(i), −1], [1, 0]]`: rows `(i, i−1)` become `(i+1, i)`.
    pub fn shift_up(&self) -> Self {
        let a = ap_at(self.p, self.ap, self.index);
        let top = comb(a, &self.top, &self.bottom);
        LadderMatrix { index: self.index + 1, top, bottom: self.top.clone(), ..self.clone() }
    }

    /// Applies `[[0, 1], [−1, a_p(i−1)]]`, the inverse of the upward shift:
    /// rows `(i, i−1)` become `(i−1, i−2)`.
    pub fn shift_down(&self) -> Self {
        let a = ap_at(self.p, self.ap, self.index - 1);
        let bottom = comb(a, &self.bottom, &self.top);
        LadderMatrix { index: self.index - 1, top: self.bottom.clone(), bottom, ..self.clone() }
    }

    /// Shifts to index `i`.
    pub fn at_index(&self, i: i64) -> Self {
        let mut m = self.clone();
        while m.index < i {
            m = m.shift_up();
        }
        while m.index > i {
            m = m.shift_down();
        }
        m
    }
}

/// The base product `[[a_p, −Φ_n], [1, 0]]···[[a_p, −Φ_1], [1, 0]]` as rows
/// for indices 1 and 0, truncated at `cap` when that is below `p^n`.
fn base_rows(p: u64, ap: i64, n: u32, cap: Cap) -> LadderMatrix {
    let full = (p as usize).checked_pow(n);
    let cap = match (cap, full) {
        (Cap::Finite(c), Some(f)) if c >= f => Cap::Exact,
        (c, _) => c,
    };
    let zero = PowerSeries::zero(p, cap);
    let one = PowerSeries::from_ints(p, &[1], cap);
    // rows of the running product, starting from the identity
    let mut top = [one.clone(), zero.clone()];
    let mut bottom = [zero, one];
    for j in 1..=n {
        let f = match cap {
            Cap::Finite(c) => phi_truncated(p, j, c),
            Cap::Exact => phi(p, j),
        };
        // new top = a_p·top − Φ_j·bottom, new bottom = top
        let nt = [
            top[0].scale(&int(p, ap)).sub(&f.mul(&bottom[0], cap)),
            top[1].scale(&int(p, ap)).sub(&f.mul(&bottom[1], cap)),
        ];
        bottom = std::mem::replace(&mut top, nt);
    }
    LadderMatrix { p, ap, level: Level::Finite(n), index: 1, cap, prec: None, top, bottom }
}

/// Level-`n` ladder at index `i`; exact unless `cap < p^n`.
pub fn ladder(p: u64, ap: i64, n: u32, i: i64, cap: Cap) -> Result<LadderMatrix> {
    check_supersingular(p, ap)?;
    if n == 0 {
        return Err(Error::Parse("ladder level must be at least 1".into()));
    }
    Ok(base_rows(p, ap, n, cap).at_index(i))
}

/// Wire form of a [`LadderMatrix`].
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LadderRepr {
    pub p: u64,
    pub ap: i64,
    /// level number, or the string "infinity"
    pub level: serde_json::Value,
    pub index: i64,
    pub prec: Option<i64>,
    pub theta: [SeriesRepr; 2],
    pub upsilon: [SeriesRepr; 2],
}

impl LadderMatrix {
    pub fn to_repr(&self) -> LadderRepr {
        LadderRepr {
            p: self.p,
            ap: self.ap,
            level: match self.level {
                Level::Finite(n) => n.into(),
                Level::Infinity => "infinity".into(),
            },
            index: self.index,
            prec: self.prec,
            theta: [self.top[0].to_repr(), self.bottom[0].to_repr()],
            upsilon: [self.top[1].to_repr(), self.bottom[1].to_repr()],
        }
    }

    pub fn from_repr(r: &LadderRepr) -> Result<Self> {
        check_supersingular(r.p, r.ap)?;
        let level = match &r.level {
            serde_json::Value::String(s) if s == "infinity" => Level::Infinity,
            v => Level::Finite(
                v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| Error::Parse(format!("bad level {v}")))?,
            ),
        };
        let s = |x: &SeriesRepr| PowerSeries::from_repr(x);
        let top = [s(&r.theta[0])?, s(&r.upsilon[0])?];
        let bottom = [s(&r.theta[1])?, s(&r.upsilon[1])?];
        if top.iter().chain(&bottom).any(|f| f.p() != r.p) {
            return Err(Error::Parse("entries over a different prime".into()));
        }
        let cap = top.iter().chain(&bottom).map(|f| f.cap()).min().unwrap_or(Cap::Exact);
        Ok(LadderMatrix { p: r.p, ap: r.ap, level, index: r.index, cap, prec: r.prec, top, bottom })
    }
}

impl Serialize for LadderMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LadderMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LadderMatrix::from_repr(&LadderRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
