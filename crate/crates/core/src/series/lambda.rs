use std::fmt;

use super::{omega, reduce_mod, Cap, PowerSeries};
use crate::padic::PadicScalar;

/// An element of `Λ_n = Z_p[X]/(ω_n)`, stored as its remainder of degree
/// `< p^n`.
#[derive(Clone, PartialEq)]
pub struct LambdaElement {
    level: u32,
    poly: PowerSeries,
}

impl LambdaElement {
    /// Reduces `f` modulo `ω_n`. `f` should be an exact polynomial.
    pub fn new(f: &PowerSeries, level: u32) -> Self {
        LambdaElement { level, poly: reduce_mod(f, &omega(f.p(), level)) }
    }

    /// Wraps a polynomial already reduced modulo `ω_n` (and `ω_n` itself, so
    /// callers reducing many elements can share it).
    pub fn reduce_with(f: &PowerSeries, level: u32, omega_n: &PowerSeries) -> Self {
        LambdaElement { level, poly: reduce_mod(f, omega_n) }
    }

    pub fn from_ints(p: u64, level: u32, coeffs: &[i64]) -> Self {
        Self::new(&PowerSeries::from_ints(p, coeffs, Cap::Exact), level)
    }

    pub fn zero(p: u64, level: u32) -> Self {
        LambdaElement { level, poly: PowerSeries::zero(p, Cap::Exact) }
    }

    pub fn p(&self) -> u64 {
        self.poly.p()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn poly(&self) -> &PowerSeries {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_ring(&self, other: &Self) {
        assert_eq!((self.p(), self.level), (other.p(), other.level), "elements of different Λ_n");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        LambdaElement { level: self.level, poly: self.poly.add(&other.poly) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_ring(other);
        LambdaElement { level: self.level, poly: self.poly.sub(&other.poly) }
    }

    pub fn neg(&self) -> Self {
        LambdaElement { level: self.level, poly: self.poly.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        Self::new(&self.poly.mul(&other.poly, Cap::Exact), self.level)
    }

    /// Product with a polynomial that is not yet reduced.
    pub fn mul_poly(&self, f: &PowerSeries) -> Self {
        Self::new(&self.poly.mul(f, Cap::Exact), self.level)
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        LambdaElement { level: self.level, poly: self.poly.scale(c) }
    }
}

impl fmt::Debug for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ω_{}", self.poly, self.level)
    }
}
