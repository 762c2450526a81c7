use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{big_pow, check_prime, inv_mod, rat_pow, rat_valuation, split_int};
use crate::error::{Error, Result};

/// An element of Q_p, either exact or known modulo `p^absprec`.
///
/// Exact values are arbitrary rationals (every rational lives in Q_p).
/// Inexact values are kept in a canonical form `r / p^k` with
/// `0 <= r < p^(absprec + k)`, so two inexact scalars that agree at their
/// common precision compare equal structurally. An inexact value that is
/// `0 mod p^absprec` collapses to the canonical zero at that precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    p: u64,
    value: BigRational,
    absprec: Option<i64>,
}

/// Selector for [`padic_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `num / p^den_pow + O(p^absprec)` (`absprec = None` means exact).
pub fn padic_from_rational(
    p: u64,
    num: impl Into<BigInt>,
    den_pow: u32,
    absprec: Option<i64>,
) -> Result<PadicScalar> {
    check_prime(p)?;
    let value = BigRational::new(num.into(), big_pow(p, den_pow));
    Ok(PadicScalar::build(p, value, absprec))
}

pub fn padic_arith(op: ArithOp, x: &PadicScalar, y: &PadicScalar) -> Result<PadicScalar> {
    if x.p != y.p {
        return Err(Error::MixedPrimes(x.p, y.p));
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.div(y)?,
    })
}

/// `None` stands for +infinity (exact zero).
pub fn padic_valuation(x: &PadicScalar) -> Result<Option<i64>> {
    x.valuation()
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl PadicScalar {
    fn build(p: u64, value: BigRational, absprec: Option<i64>) -> Self {
        let Some(prec) = absprec else {
            return PadicScalar { p, value, absprec };
        };
        if value.is_zero() || rat_valuation(p, &value) >= prec {
            return PadicScalar { p, value: BigRational::zero(), absprec };
        }
        // value = t / p^k with t p-integral; reduce t mod p^(prec + k).
        let (vn, _) = split_int(p, value.numer());
        let (vd, _) = split_int(p, value.denom());
        let k = (vd - vn).max(0);
        let t = &value * rat_pow(p, k);
        let modulus = big_pow(p, (prec + k) as u32);
        let r = (t.numer() * inv_mod(t.denom(), &modulus)).mod_floor(&modulus);
        PadicScalar { p, value: BigRational::new(r, big_pow(p, k as u32)), absprec }
    }

    /// Exact integer. `p` is trusted to be prime.
    pub fn from_int(p: u64, n: impl Into<BigInt>) -> Self {
        PadicScalar { p, value: BigRational::from_integer(n.into()), absprec: None }
    }

    /// Exact rational. `p` is trusted to be prime.
    pub fn from_rational(p: u64, value: BigRational) -> Self {
        PadicScalar { p, value, absprec: None }
    }

    /// A rational known modulo `p^absprec`.
    pub fn with_precision(p: u64, value: BigRational, absprec: i64) -> Self {
        Self::build(p, value, Some(absprec))
    }

    pub fn zero(p: u64) -> Self {
        Self::from_int(p, 0)
    }

    pub fn one(p: u64) -> Self {
        Self::from_int(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn absprec(&self) -> Option<i64> {
        self.absprec
    }

    pub fn is_exact(&self) -> bool {
        self.absprec.is_none()
    }

    /// True for exact zero and for the zero at a finite precision.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.value.is_zero()
    }

    pub fn valuation(&self) -> Result<Option<i64>> {
        if self.value.is_zero() {
            return match self.absprec {
                None => Ok(None),
                Some(a) => Err(Error::PrecisionExhausted(format!(
                    "value is 0 mod {}^{a}",
                    self.p
                ))),
            };
        }
        Ok(Some(rat_valuation(self.p, &self.value)))
    }

    /// Lower bound for the valuation: the true valuation, `absprec` for a
    /// zero at precision, `None` (infinity) for exact zero.
    pub fn valuation_floor(&self) -> Option<i64> {
        if self.value.is_zero() {
            self.absprec
        } else {
            Some(rat_valuation(self.p, &self.value))
        }
    }

    /// Drops precision to at most `prec`.
    pub fn truncate_precision(&self, prec: i64) -> Self {
        Self::build(self.p, self.value.clone(), min_prec(self.absprec, Some(prec)))
    }

    /// Returns the value as an integer when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.value.is_integer().then(|| self.value.to_integer())
    }

    /// `self ≡ other (mod p^prec)` with both sides known that far.
    pub fn agrees_mod(&self, other: &PadicScalar, prec: i64) -> bool {
        let d = self - other;
        d.absprec.is_none_or(|a| a >= prec) && d.valuation_floor().is_none_or(|v| v >= prec)
    }

    pub fn div(&self, other: &PadicScalar) -> Result<PadicScalar> {
        assert_eq!(self.p, other.p, "mixed primes");
        if other.value.is_zero() {
            return Err(match other.absprec {
                None => Error::DivisionByZero,
                Some(a) => Error::PrecisionExhausted(format!(
                    "divisor is 0 mod {}^{a}",
                    other.p
                )),
            });
        }
        if self.is_exact_zero() {
            return Ok(PadicScalar::zero(self.p));
        }
        let vb = rat_valuation(self.p, &other.value);
        let value = &self.value / &other.value;
        let absprec = match (self.absprec, other.absprec) {
            (None, None) => None,
            _ => {
                let va = self.valuation_floor();
                // relative precisions of numerator and denominator
                let rel_a = self.absprec.map(|a| a - va.unwrap_or(a));
                let rel_b = other.absprec.map(|b| b - vb);
                let rel = min_prec(rel_a, rel_b).unwrap();
                let lead = va.unwrap() - vb;
                let by_num = self.absprec.map(|a| a - vb);
                min_prec(Some(lead + rel), by_num)
            }
        };
        Ok(Self::build(self.p, value, absprec))
    }

    pub fn pow(&self, e: u32) -> PadicScalar {
        let mut acc = PadicScalar::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

// Integer operands skip the gcd normalisation of `Ratio`.
fn rat_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn rat_sub(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn rat_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

impl Add for &PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: &PadicScalar) -> PadicScalar {
        assert_eq!(self.p, rhs.p, "mixed primes");
        PadicScalar::build(self.p, rat_add(&self.value, &rhs.value), min_prec(self.absprec, rhs.absprec))
    }
}

impl Sub for &PadicScalar {
    type Output = PadicScalar;
    fn sub(self, rhs: &PadicScalar) -> PadicScalar {
        assert_eq!(self.p, rhs.p, "mixed primes");
        PadicScalar::build(self.p, rat_sub(&self.value, &rhs.value), min_prec(self.absprec, rhs.absprec))
    }
}

impl Mul for &PadicScalar {
    type Output = PadicScalar;
    fn mul(self, rhs: &PadicScalar) -> PadicScalar {
        assert_eq!(self.p, rhs.p, "mixed primes");
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return PadicScalar::zero(self.p);
        }
        if self.absprec.is_none() && rhs.absprec.is_none() {
            return PadicScalar { p: self.p, value: rat_mul(&self.value, &rhs.value), absprec: None };
        }
        let va = self.valuation_floor().unwrap();
        let vb = rhs.valuation_floor().unwrap();
        let from_a = self.absprec.map(|a| a + vb);
        let from_b = rhs.absprec.map(|b| b + va);
        let absprec = min_prec(from_a, from_b);
        PadicScalar::build(self.p, rat_mul(&self.value, &rhs.value), absprec)
    }
}

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar::build(self.p, -&self.value, self.absprec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, rhs: PadicScalar) -> PadicScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        -&self
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if let Some(a) = self.absprec {
            write!(f, " + O({}^{})", self.p, a)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [p={}]", self.p)
    }
}

/// Wire form: `{"num": "..", "den_pow": k, "absprec": n | "inf"}`.
///
/// The value is `num / p^den_pow`. Exact rationals whose denominator has a
/// part prime to p carry it in the optional `den_unit` field; inexact values
/// never need it.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ScalarRepr {
    pub num: String,
    pub den_pow: u32,
    pub absprec: PrecRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub den_unit: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum PrecRepr {
    Finite(i64),
    Infinite(String),
}

impl PadicScalar {
    pub fn to_repr(&self) -> ScalarRepr {
        let (vd, unit) = if self.value.denom().is_one() {
            (0, BigInt::one())
        } else {
            split_int(self.p, self.value.denom())
        };
        ScalarRepr {
            num: self.value.numer().to_string(),
            den_pow: vd as u32,
            absprec: match self.absprec {
                Some(a) => PrecRepr::Finite(a),
                None => PrecRepr::Infinite("inf".into()),
            },
            den_unit: (!unit.is_one()).then(|| unit.to_string()),
        }
    }

    pub fn from_repr(p: u64, r: &ScalarRepr) -> Result<Self> {
        check_prime(p)?;
        let num: BigInt =
            r.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", r.num)))?;
        let mut den = big_pow(p, r.den_pow);
        if let Some(u) = &r.den_unit {
            let u: BigInt = u.parse().map_err(|_| Error::Parse(format!("bad unit {u:?}")))?;
            if u.is_zero() || (u.abs() % BigInt::from(p)).is_zero() {
                return Err(Error::Parse(format!("den_unit {u} is not prime to {p}")));
            }
            den *= u;
        }
        let absprec = match &r.absprec {
            PrecRepr::Finite(a) => Some(*a),
            PrecRepr::Infinite(s) if s == "inf" => None,
            PrecRepr::Infinite(s) => return Err(Error::Parse(format!("bad absprec {s:?}"))),
        };
        Ok(Self::build(p, BigRational::new(num, den), absprec))
    }
}

/// Serializes without the prime; the enclosing object carries `p`.
impl Serialize for PadicScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(p: u64, n: i64) -> PadicScalar {
        PadicScalar::from_int(p, n)
    }

    fn rat(p: u64, n: i64, d: i64) -> PadicScalar {
        PadicScalar::from_rational(p, BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn construction_examples() {
        let one = padic_from_rational(3, 1, 0, Some(5)).unwrap();
        assert_eq!(one.value(), &BigRational::one());
        assert_eq!(one.absprec(), Some(5));

        let third = padic_from_rational(3, 1, 1, Some(5)).unwrap();
        assert_eq!(third.valuation().unwrap(), Some(-1));

        let six = padic_from_rational(2, 6, 0, None).unwrap();
        assert!(six.is_exact());
        assert_eq!(six.valuation().unwrap(), Some(1));

        assert_eq!(padic_from_rational(4, 1, 0, None), Err(Error::NonPrimeModulus(4)));
    }

    #[test]
    fn arithmetic_examples() {
        let third = rat(3, 1, 3);
        assert_eq!(padic_arith(ArithOp::Mul, &third, &int(3, 3)).unwrap(), int(3, 1));

        let one_o9 = padic_from_rational(3, 1, 0, Some(2)).unwrap();
        let sum = padic_arith(ArithOp::Add, &one_o9, &int(3, 9)).unwrap();
        assert_eq!(sum.absprec(), Some(2));
        assert!(sum.agrees_mod(&int(3, 1), 2));
        assert_eq!(sum, one_o9);

        let q = padic_arith(ArithOp::Div, &int(2, 6), &int(2, 2)).unwrap();
        assert_eq!(q, int(2, 3));
        assert_eq!(q.valuation().unwrap(), Some(0));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&int(2, 6)).unwrap(), Some(1));
        assert_eq!(padic_valuation(&rat(3, 1, 3)).unwrap(), Some(-1));
        assert_eq!(padic_valuation(&int(5, 0)).unwrap(), None);
        let z = padic_from_rational(3, 27, 0, Some(2)).unwrap();
        assert!(z.is_zero());
        assert!(matches!(padic_valuation(&z), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn error_paths() {
        assert_eq!(
            padic_arith(ArithOp::Add, &int(2, 1), &int(3, 1)),
            Err(Error::MixedPrimes(2, 3))
        );
        assert_eq!(padic_arith(ArithOp::Div, &int(2, 1), &int(2, 0)), Err(Error::DivisionByZero));
        let z = padic_from_rational(2, 0, 0, Some(4)).unwrap();
        assert!(matches!(
            padic_arith(ArithOp::Div, &int(2, 1), &z),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn precision_propagation() {
        // (1 + O(3^4)) * 9 is known mod 3^6
        let a = padic_from_rational(3, 1, 0, Some(4)).unwrap();
        let prod = &a * &int(3, 9);
        assert_eq!(prod.absprec(), Some(6));
        // (3 + O(3^4)) / 3 is known mod 3^3
        let b = padic_from_rational(3, 3, 0, Some(4)).unwrap();
        let q = b.div(&int(3, 3)).unwrap();
        assert_eq!(q.absprec(), Some(3));
        assert!(q.agrees_mod(&int(3, 1), 3));
        // unit denominators become residues
        let h = PadicScalar::with_precision(3, BigRational::new(1.into(), 2.into()), 3);
        assert_eq!(h.value(), &BigRational::from_integer(14.into()));
    }

    #[test]
    fn repr_round_trip() {
        for s in [
            rat(3, -5, 9),
            rat(5, 2, 7),
            padic_from_rational(2, 13, 2, Some(6)).unwrap(),
            int(7, 0),
        ] {
            let r = s.to_repr();
            assert_eq!(PadicScalar::from_repr(s.p(), &r).unwrap(), s);
        }
        let json = serde_json::to_string(&int(3, 4)).unwrap();
        assert_eq!(json, r#"{"num":"4","den_pow":0,"absprec":"inf"}"#);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb(p: u64) -> impl Strategy<Value = PadicScalar> {
            (-500i64..500, 1i64..60).prop_map(move |(n, d)| rat(p, n, d))
        }

        proptest! {
            #[test]
            fn ring_axioms(x in arb(3), y in arb(3), z in arb(3)) {
                prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
                prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
                prop_assert_eq!(&(&x + &y) - &y, x.clone());
            }

            #[test]
            fn square_doubles_valuation(x in arb(2)) {
                prop_assume!(!x.is_zero());
                let v = x.valuation().unwrap().unwrap();
                prop_assert_eq!((&x * &x).valuation().unwrap(), Some(2 * v));
            }
        }
    }
}
