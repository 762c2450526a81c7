//! Truncated power series and exact polynomials over [`PadicScalar`] (or the
//! quadratic extension), with the cyclotomic moduli `Φ_j(1+X)` and `ω_n`.

mod coeff;
mod cyclo;
mod lambda;
mod norm;
mod serial;

use std::fmt;

pub use coeff::Coefficient;
pub use cyclo::{
    eval_at_root, exact_divide, log_series, omega, omega_congruent, phi, phi_coefficient,
    phi_truncated, reduce_mod,
};
pub use lambda::LambdaElement;
pub use norm::gauss_norm_log;
pub use serial::{QuadSeriesRepr, SeriesRepr};

use crate::padic::{PadicScalar, QuadExtScalar};

/// How far a series is known: modulo `X^n`, or exactly (a polynomial).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cap {
    Finite(usize),
    Exact,
}

impl Cap {
    pub fn limit(self) -> Option<usize> {
        match self {
            Cap::Finite(n) => Some(n),
            Cap::Exact => None,
        }
    }
}

/// A power series known modulo `X^cap` (or exactly). Trailing exact zeros
/// are never stored.
#[derive(Clone, PartialEq)]
pub struct Series<C: Coefficient> {
    ctx: C::Ctx,
    coeffs: Vec<C>,
    cap: Cap,
}

pub type PowerSeries = Series<PadicScalar>;
pub type QuadSeries = Series<QuadExtScalar>;

/// Selector for [`series_arith`].
#[derive(Clone, Debug)]
pub enum SeriesOp<'a> {
    Add(&'a PowerSeries),
    Sub(&'a PowerSeries),
    Mul(&'a PowerSeries),
    ScalarMul(&'a PadicScalar),
}

/// Ring operation followed by truncation at `X^cap`.
pub fn series_arith(f: &PowerSeries, op: SeriesOp<'_>, cap: Cap) -> PowerSeries {
    match op {
        SeriesOp::Add(g) => f.add(g).truncate(cap),
        SeriesOp::Sub(g) => f.sub(g).truncate(cap),
        SeriesOp::Mul(g) => f.mul(g, cap),
        SeriesOp::ScalarMul(c) => f.scale(c).truncate(cap),
    }
}

impl<C: Coefficient> Series<C> {
    pub fn new(ctx: C::Ctx, mut coeffs: Vec<C>, cap: Cap) -> Self {
        if let Cap::Finite(n) = cap {
            coeffs.truncate(n);
        }
        while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            coeffs.pop();
        }
        Series { ctx, coeffs, cap }
    }

    pub fn zero(ctx: C::Ctx, cap: Cap) -> Self {
        Series { ctx, coeffs: Vec::new(), cap }
    }

    pub fn constant(c: C, cap: Cap) -> Self {
        Self::new(c.ctx(), vec![c], cap)
    }

    /// The monomial `X^k`.
    pub fn monomial(ctx: C::Ctx, k: usize, cap: Cap) -> Self {
        let mut v = vec![C::zero(ctx); k];
        v.push(C::from_scalar(ctx, &PadicScalar::one(C::prime(ctx))));
        Self::new(ctx, v, cap)
    }

    pub fn ctx(&self) -> C::Ctx {
        self.ctx
    }

    pub fn p(&self) -> u64 {
        C::prime(self.ctx)
    }

    pub fn cap(&self) -> Cap {
        self.cap
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(|| C::zero(self.ctx))
    }

    /// Number of stored coefficients (one more than the tracked degree).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the tracked polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_exact(&self) -> bool {
        self.cap == Cap::Exact && self.coeffs.iter().all(|c| c.is_exact())
    }

    /// Every tracked coefficient is zero (exactly or at its precision).
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, cap: Cap) -> Self {
        Self::new(self.ctx, self.coeffs.clone(), self.cap.min(cap))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let v = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Self::new(self.ctx, v, self.cap.min(other.cap))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let v = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        Self::new(self.ctx, v, self.cap.min(other.cap))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|c| c.neg()).collect(), self.cap)
    }

    /// Product truncated at `min(cap, self.cap, other.cap)`.
    pub fn mul(&self, other: &Self, cap: Cap) -> Self {
        let cap = cap.min(self.cap).min(other.cap);
        if self.is_empty() || other.is_empty() {
            return Self::zero(self.ctx, cap);
        }
        let full = self.len() + other.len() - 1;
        let n = cap.limit().map_or(full, |c| c.min(full));
        let mut out = vec![C::zero(self.ctx); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_exact_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.ctx, out, cap)
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|x| x.scale(c)).collect(), self.cap)
    }

    pub fn scale_by(&self, c: &C) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|x| x.mul(c)).collect(), self.cap)
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![C::zero(self.ctx); k];
        v.extend(self.coeffs.iter().cloned());
        let cap = match self.cap {
            Cap::Finite(n) => Cap::Finite(n + k),
            Cap::Exact => Cap::Exact,
        };
        Self::new(self.ctx, v, cap)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p();
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&PadicScalar::from_int(p, k as i64)))
            .collect();
        let cap = match self.cap {
            Cap::Finite(n) => Cap::Finite(n.saturating_sub(1)),
            Cap::Exact => Cap::Exact,
        };
        Self::new(self.ctx, v, cap)
    }

    pub fn map<D: Coefficient>(&self, ctx: D::Ctx, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(ctx, self.coeffs.iter().map(f).collect(), self.cap)
    }

    /// Coefficientwise congruence modulo `p^prec` up to `X^upto`.
    pub fn agrees_mod(&self, other: &Self, prec: i64, upto: usize) -> bool {
        (0..upto).all(|k| self.coeff(k).agrees_mod(&other.coeff(k), prec))
    }

    /// First index below `upto` where the congruence fails.
    pub fn first_disagreement(&self, other: &Self, prec: i64, upto: usize) -> Option<usize> {
        (0..upto).find(|&k| !self.coeff(k).agrees_mod(&other.coeff(k), prec))
    }

    pub fn truncate_precision(&self, prec: i64) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|c| c.truncate_precision(prec)).collect(), self.cap)
    }

    /// Smallest absolute precision among the tracked coefficients.
    pub fn min_absprec(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| c.absprec()).min()
    }
}

impl PowerSeries {
    pub fn from_ints(p: u64, coeffs: &[i64], cap: Cap) -> Self {
        Self::new(p, coeffs.iter().map(|&c| PadicScalar::from_int(p, c)).collect(), cap)
    }

    pub fn to_quad(&self, ap: i64) -> QuadSeries {
        self.map((self.p(), ap), |c| QuadExtScalar::from_scalar(ap, c.clone()))
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Cap::Finite(n) = self.cap {
            write!(f, " + O(X^{n})")?;
        }
        Ok(())
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arith_examples() {
        let one_plus = PowerSeries::from_ints(3, &[1, 1], Cap::Exact);
        let one_minus = PowerSeries::from_ints(3, &[1, -1], Cap::Exact);
        let prod = series_arith(&one_plus, SeriesOp::Mul(&one_minus), Cap::Finite(10));
        assert_eq!(prod, PowerSeries::from_ints(3, &[1, 0, -1], Cap::Finite(10)));

        let x9 = PowerSeries::monomial(3, 9, Cap::Exact);
        let sq = series_arith(&x9, SeriesOp::Mul(&x9), Cap::Finite(10));
        assert!(sq.is_empty());
        assert_eq!(sq.cap(), Cap::Finite(10));

        let lhs = phi(3, 1).mul(&phi(3, 2), Cap::Exact).shift(1);
        assert_eq!(lhs, omega(3, 2));
    }

    #[test]
    fn scalar_mul_and_derivative() {
        let f = PowerSeries::from_ints(5, &[1, 2, 3], Cap::Exact);
        let g = series_arith(&f, SeriesOp::ScalarMul(&PadicScalar::from_int(5, 5)), Cap::Finite(2));
        assert_eq!(g, PowerSeries::from_ints(5, &[5, 10], Cap::Finite(2)));
        assert_eq!(f.derivative(), PowerSeries::from_ints(5, &[2, 6], Cap::Exact));
    }
}
