//! Linear algebra of the map `φ_n^i: (ϑ, υ) ↦ (Θ_n^iϑ + Υ_n^iυ, Θ_n^{i−1}ϑ + Υ_n^{i−1}υ)`
//! on `Λ_n ⊕ Λ_n`: its kernel, its constructive inverse, and the Limit Lemma
//! divisibility.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::floor_half;
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::report::CheckReport;
use crate::series::{exact_divide, omega, phi, reduce_mod, Cap, LambdaElement, PowerSeries, SeriesRepr};
use crate::theta::{ladder, LadderMatrix};
use crate::trace::{ap_at, check_supersingular};

/// A pair in `Λ_n ⊕ Λ_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPair {
    pub first: LambdaElement,
    pub second: LambdaElement,
}

impl LambdaPair {
    pub fn new(first: LambdaElement, second: LambdaElement) -> Self {
        assert_eq!((first.p(), first.level()), (second.p(), second.level()), "components in different Λ_n");
        LambdaPair { first, second }
    }

    pub fn from_ints(p: u64, level: u32, first: &[i64], second: &[i64]) -> Self {
        Self::new(LambdaElement::from_ints(p, level, first), LambdaElement::from_ints(p, level, second))
    }

    pub fn p(&self) -> u64 {
        self.first.p()
    }

    pub fn level(&self) -> u32 {
        self.first.level()
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.first.add(&o.first), self.second.add(&o.second))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.first.sub(&o.first), self.second.sub(&o.second))
    }

    /// Both components times `c`.
    pub fn mul(&self, c: &LambdaElement) -> Self {
        Self::new(self.first.mul(c), self.second.mul(c))
    }

    /// Reduction to a lower level `m ≤ n`.
    pub fn project(&self, m: u32) -> Self {
        let w = omega(self.p(), m);
        Self::new(
            LambdaElement::reduce_with(self.first.poly(), m, &w),
            LambdaElement::reduce_with(self.second.poly(), m, &w),
        )
    }
}

/// The two generators `X·(Υ_n^i, −Θ_n^i)` and `X·(Υ_n^{i−1}, −Θ_n^{i−1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelBasis {
    pub generators: [LambdaPair; 2],
}

fn reduced_ladder(p: u64, ap: i64, n: u32, i: i64) -> Result<LadderMatrix> {
    ladder(p, ap, n, i, Cap::Exact)
}

fn apply_rows(m: &LadderMatrix, v: &LambdaPair, w: &PowerSeries) -> LambdaPair {
    let n = v.level();
    let row = |r: &[PowerSeries; 2]| {
        let s = r[0].mul(v.first.poly(), Cap::Exact).add(&r[1].mul(v.second.poly(), Cap::Exact));
        LambdaElement::reduce_with(&s, n, w)
    };
    LambdaPair::new(row(&m.top), row(&m.bottom))
}

/// `φ_n^i(v)`, reduced modulo `ω_n`.
pub fn phi_apply(p: u64, ap: i64, n: u32, i: i64, v: &LambdaPair) -> Result<LambdaPair> {
    check_level(p, n, v)?;
    let m = reduced_ladder(p, ap, n, i)?;
    Ok(apply_rows(&m, v, &omega(p, n)))
}

fn check_level(p: u64, n: u32, v: &LambdaPair) -> Result<()> {
    if (v.p(), v.level()) != (p, n) {
        return Err(Error::Parse(format!(
            "pair lives in Λ_{} over p = {}, expected Λ_{n} over p = {p}",
            v.level(),
            v.p()
        )));
    }
    Ok(())
}

pub fn kernel_basis(p: u64, ap: i64, n: u32, i: i64) -> Result<KernelBasis> {
    let m = reduced_ladder(p, ap, n, i)?;
    let w = omega(p, n);
    let gen = |r: &[PowerSeries; 2]| {
        LambdaPair::new(
            LambdaElement::reduce_with(&r[1].shift(1), n, &w),
            LambdaElement::reduce_with(&r[0].shift(1).neg(), n, &w),
        )
    };
    Ok(KernelBasis { generators: [gen(&m.top), gen(&m.bottom)] })
}

/// `φ_n^1(v) = 0`; the kernel does not depend on the index.
pub fn kernel_member(p: u64, ap: i64, n: u32, v: &LambdaPair) -> Result<bool> {
    Ok(phi_apply(p, ap, n, 1, v)?.is_zero())
}

/// Note attached to every decomposition.
pub const KERNEL_COSET_NOTE: &str = "The pair is determined modulo the kernel of φ_n, which is generated by \
X·(Υ_n^i, −Θ_n^i) and X·(Υ_n^{i−1}, −Θ_n^{i−1}) and contains (ω_n, 0) and (0, ω_n). \
The representative returned comes from peeling canonical lifts of degree below p^n.";

/// `(ϑ, υ)` with `φ_n^1(ϑ, υ) = (P1, P0)`, found by peeling the factors
/// `[[a_p, −Φ_j], [1, 0]]` for `j = n, …, 1`:
/// `(P1, P0) ↦ (P0, (a_p·P0 − P1)/Φ_j)`.
///
/// [`Error::InexactDivision`] means the input is not in the image.
pub fn decompose(p: u64, ap: i64, n: u32, p1: &LambdaElement, p0: &LambdaElement) -> Result<LambdaPair> {
    check_supersingular(p, ap)?;
    let v = LambdaPair::new(p1.clone(), p0.clone());
    check_level(p, n, &v)?;
    let w = omega(p, n);
    let a = PadicScalar::from_int(p, ap);
    let (mut top, mut bot) = (p1.poly().clone(), p0.poly().clone());
    for j in (1..=n).rev() {
        let num = reduce_mod(&bot.scale(&a).sub(&top), &w);
        let q = exact_divide(&num, &phi(p, j)).map_err(|_| {
            Error::InexactDivision(format!("a_p·P0 − P1 is not divisible by Φ_{j}(1+X) at level {n}; not in the image"))
        })?;
        top = bot;
        bot = reduce_mod(&q, &w);
    }
    Ok(LambdaPair::new(LambdaElement::reduce_with(&top, n, &w), LambdaElement::reduce_with(&bot, n, &w)))
}

/// `X·(rows of the level-(2m+ν) ladder)` reduced modulo `ω_ν` has every
/// coefficient divisible by `p^m`. The ladder is built directly in `Λ_ν`
/// (each `Φ_j` reduced modulo `ω_ν` first), at index 1 and at index `2m+1`.
pub fn limit_lemma_check(p: u64, ap: i64, m: u32, nu: u32) -> Result<CheckReport> {
    check_supersingular(p, ap)?;
    let config = json!({"p": p, "ap": ap, "m": m, "nu": nu});
    let level = 2 * m + nu;
    let rows = ladder_mod_omega(p, ap, level, nu)?;
    for i in [1, 2 * m as i64 + 1] {
        let r = rows.at_index(i);
        let w = omega(p, nu);
        for (name, f) in [
            ("theta", &r.top[0]),
            ("upsilon", &r.top[1]),
            ("theta_prev", &r.bottom[0]),
            ("upsilon_prev", &r.bottom[1]),
        ] {
            let g = reduce_mod(&f.shift(1), &w);
            if let Some((k, c)) = g.coeffs().iter().enumerate().find(|(_, c)| {
                c.valuation_floor().is_some_and(|v| v < m as i64)
            }) {
                return Ok(CheckReport::fail(
                    "limit lemma",
                    config,
                    json!({"index": i, "entry": name, "degree": k, "coefficient": c.to_string()}),
                ));
            }
        }
    }
    Ok(CheckReport::pass("limit lemma", config))
}

/// Level-`n` base rows (index 1) computed in `Λ_ν`.
pub fn ladder_mod_omega(p: u64, ap: i64, n: u32, nu: u32) -> Result<LadderMatrix> {
    check_supersingular(p, ap)?;
    let w = omega(p, nu);
    let red = |f: &PowerSeries| reduce_mod(f, &w);
    let a = PadicScalar::from_int(p, ap);
    let one = PowerSeries::from_ints(p, &[1], Cap::Exact);
    let zero = PowerSeries::zero(p, Cap::Exact);
    let mut top = [red(&one), zero.clone()];
    let mut bottom = [zero, red(&one)];
    for j in 1..=n {
        // Φ_j ≡ p modulo ω_ν once j > ν
        let f = if j > nu { PowerSeries::from_ints(p, &[p as i64], Cap::Exact) } else { red(&phi(p, j)) };
        let nt = [
            red(&top[0].scale(&a).sub(&f.mul(&bottom[0], Cap::Exact))),
            red(&top[1].scale(&a).sub(&f.mul(&bottom[1], Cap::Exact))),
        ];
        bottom = std::mem::replace(&mut top, nt);
    }
    let m = ladder(p, ap, 1, 1, Cap::Exact)?;
    Ok(LadderMatrix { level: crate::theta::Level::Finite(n), index: 1, top, bottom, ..m })
}

/// `φ_{n+1}^i(v)` reduced to level `n` equals `M·φ_n^{i+1}(v mod ω_n)` with
/// `M = diag(p^{[(i+1)/2]−[i/2]}, p^{[i/2]−[(i−1)/2]})`, i.e. `diag(p, 1)`
/// for odd `i` and `diag(1, p)` for even `i`.
pub fn projection_compatibility_check(p: u64, ap: i64, n: u32, i: i64, v: &LambdaPair) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "i": i});
    let hi = phi_apply(p, ap, n + 1, i, v)?.project(n);
    let lo = phi_apply(p, ap, n, i + 1, &v.project(n))?;
    let s = |e: i64| PadicScalar::from_int(p, (p as i64).pow(e as u32));
    let d0 = s(floor_half(i + 1) - floor_half(i));
    let d1 = s(floor_half(i) - floor_half(i - 1));
    let want = LambdaPair::new(lo.first.scale(&d0), lo.second.scale(&d1));
    if hi == want {
        Ok(CheckReport::pass("projection compatibility", config))
    } else {
        Ok(CheckReport::fail(
            "projection compatibility",
            config,
            json!({"projected": hi.to_repr(), "expected": want.to_repr()}),
        ))
    }
}

/// `φ^{i+1} = [[a_p(i), −1], [1, 0]]·φ^i` on a given pair.
pub fn transformation_check(p: u64, ap: i64, n: u32, i: i64, v: &LambdaPair) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "i": i});
    let lo = phi_apply(p, ap, n, i, v)?;
    let hi = phi_apply(p, ap, n, i + 1, v)?;
    let a = PadicScalar::from_int(p, ap_at(p, ap, i));
    let want = LambdaPair::new(lo.first.scale(&a).sub(&lo.second), lo.first.clone());
    Ok(CheckReport::from_witness(
        "phi transformation",
        config,
        (hi != want).then(|| json!({"got": hi.to_repr(), "expected": want.to_repr()})),
    ))
}

/// `{"p", "level", "theta", "upsilon"}`; the decomposer adds a coset note.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LambdaPairRepr {
    pub p: u64,
    pub level: u32,
    pub theta: SeriesRepr,
    pub upsilon: SeriesRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_coset_note: Option<String>,
}

impl LambdaPair {
    pub fn to_repr(&self) -> LambdaPairRepr {
        LambdaPairRepr {
            p: self.p(),
            level: self.level(),
            theta: self.first.poly().to_repr(),
            upsilon: self.second.poly().to_repr(),
            kernel_coset_note: None,
        }
    }

    /// Reads a pair; components are reduced modulo `ω_level`.
    pub fn from_repr(r: &LambdaPairRepr) -> Result<Self> {
        let a = PowerSeries::from_repr(&r.theta)?;
        let b = PowerSeries::from_repr(&r.upsilon)?;
        if a.p() != r.p || b.p() != r.p {
            return Err(Error::Parse("components over a different prime".into()));
        }
        if !a.is_exact() || !b.is_exact() {
            return Err(Error::Parse("Λ_n components must be exact polynomials".into()));
        }
        if r.level > 12 {
            return Err(Error::Parse(format!("level {} is beyond what can be held exactly", r.level)));
        }
        Ok(LambdaPair::new(LambdaElement::new(&a, r.level), LambdaElement::new(&b, r.level)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{period_constants, supersingular_pairs};
    use proptest::prelude::*;
    use proptest::test_runner::{Config, TestRunner};

    #[test]
    fn phi_apply_examples() {
        let v = LambdaPair::from_ints(3, 1, &[1], &[]);
        assert_eq!(phi_apply(3, 3, 1, 1, &v).unwrap(), LambdaPair::from_ints(3, 1, &[3], &[1]));
        let v = LambdaPair::from_ints(3, 1, &[], &[1]);
        let neg_phi = LambdaElement::new(&phi(3, 1).neg(), 1);
        assert_eq!(phi_apply(3, 3, 1, 1, &v).unwrap(), LambdaPair::new(neg_phi, LambdaElement::zero(3, 1)));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(3, 3, 1, 1).unwrap();
        assert_eq!(k.generators[1], LambdaPair::from_ints(3, 1, &[], &[0, -1]));
        for g in &k.generators {
            assert!(phi_apply(3, 3, 1, 1, g).unwrap().is_zero());
            assert!(phi_apply(3, 3, 1, 2, g).unwrap().is_zero());
            assert!(kernel_member(3, 3, 1, g).unwrap());
        }
        assert!(!kernel_member(3, 3, 1, &LambdaPair::from_ints(3, 1, &[1], &[])).unwrap());
        let w = omega(3, 1);
        let wp = LambdaPair::new(LambdaElement::new(&w, 1), LambdaElement::zero(3, 1));
        assert!(wp.is_zero() && kernel_member(3, 3, 1, &wp).unwrap());
        let g2 = kernel_basis(3, 3, 2, 2).unwrap();
        assert!(kernel_member(3, 3, 2, &g2.generators[0]).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let p1 = LambdaElement::from_ints(3, 1, &[3]);
        let p0 = LambdaElement::from_ints(3, 1, &[1]);
        assert_eq!(decompose(3, 3, 1, &p1, &p0).unwrap(), LambdaPair::from_ints(3, 1, &[1], &[]));
        let one = LambdaElement::from_ints(3, 1, &[1]);
        let zero = LambdaElement::zero(3, 1);
        assert!(matches!(decompose(3, 0, 1, &one, &zero), Err(Error::InexactDivision(_))));
    }

    #[test]
    fn kernel_is_index_independent() {
        for (p, ap) in supersingular_pairs(&[2, 3]) {
            let two = period_constants(p, ap).unwrap().two_tilde;
            for n in 1..=2 {
                for i in -1..=two {
                    for g in kernel_basis(p, ap, n, i).unwrap().generators {
                        for j in [i - 1, i + 1, 1] {
                            assert!(phi_apply(p, ap, n, j, &g).unwrap().is_zero(), "({p},{ap}) n={n} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn limit_lemma_small() {
        assert!(limit_lemma_check(3, 0, 1, 1).unwrap().passed());
        assert!(limit_lemma_check(2, 2, 2, 1).unwrap().passed());
        assert!(limit_lemma_check(3, 3, 1, 0).unwrap().passed());
    }

    #[test]
    fn quotient_ladder_matches_full_level() {
        for (p, ap) in supersingular_pairs(&[2, 3]) {
            for (n, nu) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
                let q = ladder_mod_omega(p, ap, n, nu).unwrap();
                let full = ladder(p, ap, n, 1, Cap::Exact).unwrap();
                let w = omega(p, nu);
                for i in [1, 3] {
                    let (a, b) = (q.at_index(i), full.at_index(i));
                    for col in 0..2 {
                        assert_eq!(reduce_mod(&a.top[col], &w), reduce_mod(&b.top[col], &w));
                        assert_eq!(reduce_mod(&a.bottom[col], &w), reduce_mod(&b.bottom[col], &w));
                    }
                }
            }
        }
    }

    fn arb_pair(p: u64, n: u32) -> impl Strategy<Value = LambdaPair> {
        let d = (p as usize).pow(n);
        (prop::collection::vec(-9i64..9, d), prop::collection::vec(-9i64..9, d))
            .prop_map(move |(a, b)| LambdaPair::from_ints(p, n, &a, &b))
    }

    #[test]
    fn round_trip_modulo_kernel() {
        for (p, ap) in [(2, 2), (2, -2), (3, 3), (3, -3), (3, 0)] {
            for n in 1..=2 {
                let mut runner = TestRunner::new(Config { cases: 25, ..Config::default() });
                runner
                    .run(&arb_pair(p, n), |v| {
                        let img = phi_apply(p, ap, n, 1, &v).unwrap();
                        let back = decompose(p, ap, n, &img.first, &img.second).unwrap();
                        prop_assert_eq!(phi_apply(p, ap, n, 1, &back).unwrap(), img);
                        prop_assert!(kernel_member(p, ap, n, &back.sub(&v)).unwrap());
                        Ok(())
                    })
                    .unwrap();
            }
        }
    }

    #[test]
    fn transformation_and_projection() {
        let mut runner = TestRunner::new(Config { cases: 10, ..Config::default() });
        for (p, ap) in [(2, -2), (3, 3), (3, 0)] {
            for n in 1..=2 {
                runner
                    .run(&arb_pair(p, n + 1), |v| {
                        for i in -1..=2 {
                            prop_assert!(transformation_check(p, ap, n + 1, i, &v).unwrap().passed());
                            let r = projection_compatibility_check(p, ap, n, i, &v).unwrap();
                            prop_assert!(r.passed(), "{:?}", r);
                        }
                        Ok(())
                    })
                    .unwrap();
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let v = LambdaPair::from_ints(2, 2, &[1, 2, 3], &[0, -1]);
        let back = LambdaPair::from_repr(&serde_json::from_str(&serde_json::to_string(&v.to_repr()).unwrap()).unwrap()).unwrap();
        assert_eq!(back, v);
    }
}
