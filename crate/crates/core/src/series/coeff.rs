use std::fmt;

use num_rational::Rational64;

use crate::padic::{PadicScalar, QuadExtScalar};

/// What a series needs from its coefficient ring.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    /// Enough data to build zero: the prime, plus `a_p` for the extension.
    type Ctx: Copy + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn prime(ctx: Self::Ctx) -> u64;
    fn zero(ctx: Self::Ctx) -> Self;
    fn from_scalar(ctx: Self::Ctx, s: &PadicScalar) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &PadicScalar) -> Self;

    fn is_zero(&self) -> bool;
    fn is_exact_zero(&self) -> bool;
    fn is_exact(&self) -> bool;
    fn absprec(&self) -> Option<i64>;
    /// Valuation with `v(p) = 1`; `None` when the coefficient is zero.
    fn valuation_q(&self) -> Option<Rational64>;
    fn agrees_mod(&self, other: &Self, prec: i64) -> bool;
    fn truncate_precision(&self, prec: i64) -> Self;
}

impl Coefficient for PadicScalar {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.p()
    }
    fn prime(ctx: u64) -> u64 {
        ctx
    }
    fn zero(ctx: u64) -> Self {
        PadicScalar::zero(ctx)
    }
    fn from_scalar(_: u64, s: &PadicScalar) -> Self {
        s.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, s: &PadicScalar) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        PadicScalar::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        PadicScalar::is_exact_zero(self)
    }
    fn is_exact(&self) -> bool {
        PadicScalar::is_exact(self)
    }
    fn absprec(&self) -> Option<i64> {
        PadicScalar::absprec(self)
    }
    fn valuation_q(&self) -> Option<Rational64> {
        if PadicScalar::is_zero(self) {
            None
        } else {
            self.valuation_floor().map(Rational64::from_integer)
        }
    }
    fn agrees_mod(&self, other: &Self, prec: i64) -> bool {
        PadicScalar::agrees_mod(self, other, prec)
    }
    fn truncate_precision(&self, prec: i64) -> Self {
        PadicScalar::truncate_precision(self, prec)
    }
}

impl Coefficient for QuadExtScalar {
    type Ctx = (u64, i64);

    fn ctx(&self) -> (u64, i64) {
        (self.p(), self.ap())
    }
    fn prime(ctx: (u64, i64)) -> u64 {
        ctx.0
    }
    fn zero(ctx: (u64, i64)) -> Self {
        QuadExtScalar::zero(ctx.0, ctx.1)
    }
    fn from_scalar(ctx: (u64, i64), s: &PadicScalar) -> Self {
        QuadExtScalar::from_scalar(ctx.1, s.clone())
    }
    fn add(&self, other: &Self) -> Self {
        QuadExtScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        QuadExtScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        QuadExtScalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        QuadExtScalar::neg(self)
    }
    fn scale(&self, s: &PadicScalar) -> Self {
        QuadExtScalar::scale(self, s)
    }
    fn is_zero(&self) -> bool {
        QuadExtScalar::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        self.a().is_exact_zero() && self.b().is_exact_zero()
    }
    fn is_exact(&self) -> bool {
        self.a().is_exact() && self.b().is_exact()
    }
    fn absprec(&self) -> Option<i64> {
        match (self.a().absprec(), self.b().absprec()) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }
    fn valuation_q(&self) -> Option<Rational64> {
        if QuadExtScalar::is_zero(self) {
            None
        } else {
            let va = (!self.a().is_zero()).then(|| self.a().valuation_floor()).flatten();
            let vb = (!self.b().is_zero()).then(|| self.b().valuation_floor()).flatten();
            let va = va.map(Rational64::from_integer);
            let vb = vb.map(|v| Rational64::new(2 * v + 1, 2));
            match (va, vb) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            }
        }
    }
    fn agrees_mod(&self, other: &Self, prec: i64) -> bool {
        QuadExtScalar::agrees_mod(self, other, prec)
    }
    fn truncate_precision(&self, prec: i64) -> Self {
        QuadExtScalar::truncate_precision(self, prec)
    }
}
