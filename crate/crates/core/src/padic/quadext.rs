use std::fmt;

use num_rational::Rational64;

use super::scalar::PadicScalar;
use crate::error::{Error, Result};

/// `a + bα` in Q_p(α), where `α² = a_p·α − p`.
///
/// α is kept symbolic; no root is ever chosen, so every identity checked with
/// these coordinates is an identity in Q(α).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExtScalar {
    p: u64,
    ap: i64,
    a: PadicScalar,
    b: PadicScalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadOp {
    Add,
    Sub,
    Mul,
}

pub fn quadext_arith(op: QuadOp, x: &QuadExtScalar, y: &QuadExtScalar) -> Result<QuadExtScalar> {
    if (x.p, x.ap) != (y.p, y.ap) {
        return Err(Error::MixedExtension(x.p, x.ap, y.p, y.ap));
    }
    Ok(match op {
        QuadOp::Add => x.add(y),
        QuadOp::Sub => x.sub(y),
        QuadOp::Mul => x.mul(y),
    })
}

pub fn quadext_conj(x: &QuadExtScalar) -> QuadExtScalar {
    x.conj()
}

impl QuadExtScalar {
    pub fn new(p: u64, ap: i64, a: PadicScalar, b: PadicScalar) -> Self {
        assert!(a.p() == p && b.p() == p, "coordinates over the wrong prime");
        QuadExtScalar { p, ap, a, b }
    }

    pub fn from_scalar(ap: i64, a: PadicScalar) -> Self {
        let p = a.p();
        QuadExtScalar { p, ap, a, b: PadicScalar::zero(p) }
    }

    pub fn from_int(p: u64, ap: i64, n: i64) -> Self {
        Self::from_scalar(ap, PadicScalar::from_int(p, n))
    }

    pub fn zero(p: u64, ap: i64) -> Self {
        Self::from_int(p, ap, 0)
    }

    pub fn one(p: u64, ap: i64) -> Self {
        Self::from_int(p, ap, 1)
    }

    /// The root α itself.
    pub fn alpha(p: u64, ap: i64) -> Self {
        QuadExtScalar { p, ap, a: PadicScalar::zero(p), b: PadicScalar::one(p) }
    }

    /// The other root, `a_p − α = p/α`.
    pub fn alpha_bar(p: u64, ap: i64) -> Self {
        Self::alpha(p, ap).conj()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ap(&self) -> i64 {
        self.ap
    }

    /// Rational coordinate.
    pub fn a(&self) -> &PadicScalar {
        &self.a
    }

    /// Coordinate of α.
    pub fn b(&self) -> &PadicScalar {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        QuadExtScalar { p: self.p, ap: self.ap, a: &self.a + &other.a, b: &self.b + &other.b }
    }

    pub fn sub(&self, other: &Self) -> Self {
        QuadExtScalar { p: self.p, ap: self.ap, a: &self.a - &other.a, b: &self.b - &other.b }
    }

    pub fn neg(&self) -> Self {
        QuadExtScalar { p: self.p, ap: self.ap, a: -&self.a, b: -&self.b }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = PadicScalar::from_int(self.p, self.p);
        let ap = PadicScalar::from_int(self.p, self.ap);
        let bb = &self.b * &other.b;
        // (a1 + b1 α)(a2 + b2 α) with α² = a_p α − p
        let a = &(&self.a * &other.a) - &(&p * &bb);
        let b = &(&(&self.a * &other.b) + &(&self.b * &other.a)) + &(&ap * &bb);
        QuadExtScalar { p: self.p, ap: self.ap, a, b }
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        QuadExtScalar { p: self.p, ap: self.ap, a: &self.a * c, b: &self.b * c }
    }

    /// `a + bα ↦ (a + a_p b) − bα`.
    pub fn conj(&self) -> Self {
        let ap = PadicScalar::from_int(self.p, self.ap);
        QuadExtScalar { p: self.p, ap: self.ap, a: &self.a + &(&ap * &self.b), b: -&self.b }
    }

    /// `x · conj(x) = a² + a_p ab + p b²`, an element of Q_p.
    pub fn norm(&self) -> PadicScalar {
        let prod = self.mul(&self.conj());
        debug_assert!(prod.b.is_zero());
        prod.a
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        let c = self.conj();
        Ok(QuadExtScalar { p: self.p, ap: self.ap, a: c.a.div(&n)?, b: c.b.div(&n)? })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer powers; negative exponents go through `α⁻¹ = ᾱ/p` style
    /// inversion.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.p, self.ap);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Valuation in Q_p(α), normalized so that `v(p) = 1`. Both roots have
    /// valuation 1/2 for every supersingular pair, so the rational and α
    /// parts never cancel. `None` for zero.
    pub fn valuation(&self) -> Option<Rational64> {
        let va = self.a.valuation_floor().map(Rational64::from_integer);
        let vb = self.b.valuation_floor().map(|v| Rational64::new(2 * v + 1, 2));
        match (va, vb) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn agrees_mod(&self, other: &Self, prec: i64) -> bool {
        self.a.agrees_mod(&other.a, prec) && self.b.agrees_mod(&other.b, prec)
    }

    pub fn truncate_precision(&self, prec: i64) -> Self {
        QuadExtScalar {
            p: self.p,
            ap: self.ap,
            a: self.a.truncate_precision(prec),
            b: self.b.truncate_precision(prec),
        }
    }
}

impl fmt::Display for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})α", self.a, self.b)
    }
}

impl fmt::Debug for QuadExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [p={}, a_p={}]", self.p, self.ap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const PAIRS: [(u64, i64); 7] = [(2, 0), (2, 2), (2, -2), (3, 0), (3, 3), (3, -3), (5, 0)];

    #[test]
    fn reduction_and_norm_examples() {
        let a = QuadExtScalar::alpha(2, 2);
        let sq = quadext_arith(QuadOp::Mul, &a, &a).unwrap();
        assert_eq!(sq, QuadExtScalar::new(2, 2, PadicScalar::from_int(2, -2), PadicScalar::from_int(2, 2)));
        let n = quadext_arith(QuadOp::Mul, &a, &quadext_conj(&a)).unwrap();
        assert_eq!(n, QuadExtScalar::from_int(2, 2, 2));

        let a = QuadExtScalar::alpha(3, -3);
        assert_eq!(a.mul(&a.conj()), QuadExtScalar::from_int(3, -3, 3));
        let a = QuadExtScalar::alpha(3, 3);
        assert_eq!(a.conj().mul(&a), QuadExtScalar::from_int(3, 3, 3));
    }

    #[test]
    fn conj_examples() {
        let ab = quadext_conj(&QuadExtScalar::alpha(2, 2));
        assert_eq!(ab, QuadExtScalar::new(2, 2, PadicScalar::from_int(2, 2), PadicScalar::from_int(2, -1)));
        assert_eq!(quadext_conj(&QuadExtScalar::one(3, 3)), QuadExtScalar::one(3, 3));
    }

    #[test]
    fn mixed_extension_rejected() {
        let x = QuadExtScalar::alpha(3, 3);
        let y = QuadExtScalar::alpha(3, -3);
        assert_eq!(quadext_arith(QuadOp::Add, &x, &y), Err(Error::MixedExtension(3, 3, 3, -3)));
    }

    #[test]
    fn root_relations_for_all_pairs() {
        for (p, ap) in PAIRS {
            let a = QuadExtScalar::alpha(p, ap);
            let ab = QuadExtScalar::alpha_bar(p, ap);
            assert_eq!(a.add(&ab), QuadExtScalar::from_int(p, ap, ap));
            assert_eq!(a.mul(&ab), QuadExtScalar::from_int(p, ap, p as i64));
            // α⁻¹ = ᾱ/p
            let inv = a.pow(-1).unwrap();
            assert_eq!(inv.scale(&PadicScalar::from_int(p, p)), ab);
            assert_eq!(a.valuation(), Some(Rational64::new(1, 2)));
        }
    }

    fn arb_quad() -> impl Strategy<Value = QuadExtScalar> {
        (0..PAIRS.len(), -50i64..50, -50i64..50).prop_map(|(k, a, b)| {
            let (p, ap) = PAIRS[k];
            QuadExtScalar::new(p, ap, PadicScalar::from_int(p, a), PadicScalar::from_int(p, b))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn conj_is_a_multiplicative_involution(x in arb_quad(), c in -30i64..30, d in -30i64..30) {
            let y = QuadExtScalar::new(x.p(), x.ap(), PadicScalar::from_int(x.p(), c), PadicScalar::from_int(x.p(), d));
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        }

        #[test]
        fn ring_axioms(x in arb_quad(), c in -30i64..30, d in -30i64..30, e in -9i64..9) {
            let (p, ap) = (x.p(), x.ap());
            let y = QuadExtScalar::new(p, ap, PadicScalar::from_int(p, c), PadicScalar::from_int(p, d));
            let z = QuadExtScalar::new(p, ap, PadicScalar::from_int(p, e), PadicScalar::from_int(p, c - d));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !x.is_zero() {
                prop_assert_eq!(x.mul(&x.inverse().unwrap()), QuadExtScalar::one(p, ap));
            }
        }
    }
}
