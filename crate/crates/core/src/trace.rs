//! The integer side: powers of the Hecke matrix `C = [[a_p, −1], [p, 0]]`,
//! the coefficient pairs `(y_i, y_i′)` with `δ_n^i = y_i c_n + y_i′ c_{n−1}`,
//! the matrices `A_l` and the scalars `β_m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{check_prime, floor_half, rat_pow};
use crate::error::{Error, Result};
use crate::padic::{PadicScalar, QuadExtScalar};
use crate::report::CheckReport;

/// Fails with [`Error::NotSupersingular`] unless `p` is prime, `p | a_p` and
/// `a_p² ≤ 4p`.
pub fn check_supersingular(p: u64, ap: i64) -> Result<()> {
    check_prime(p)?;
    let ok = ap % p as i64 == 0 && (ap as i128).pow(2) <= 4 * p as i128;
    if ok {
        Ok(())
    } else {
        Err(Error::NotSupersingular { p, ap })
    }
}

/// `(2̃, 4̃, 1̃)`: `(2, 4, 1)` when `a_p = 0`, else `(2p, 4p, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodConstants {
    pub two_tilde: i64,
    pub four_tilde: i64,
    pub one_tilde: i64,
}

pub fn period_constants(p: u64, ap: i64) -> Result<PeriodConstants> {
    check_supersingular(p, ap)?;
    let one = if ap == 0 { 1 } else { p as i64 };
    let pc = PeriodConstants { two_tilde: 2 * one, four_tilde: 4 * one, one_tilde: one };
    let c = hecke_matrix(p, ap);
    let lhs = mat_pow(&c, pc.two_tilde as u32);
    let s = -rat_pow(p, pc.one_tilde);
    let rhs = [[s.clone(), BigRational::zero()], [BigRational::zero(), s]];
    if lhs != rhs {
        return Err(Error::NotSupersingular { p, ap });
    }
    Ok(pc)
}

/// `a_p(i)`: `a_p/p` for odd `i`, `a_p` for even `i`.
pub fn ap_at(p: u64, ap: i64, i: i64) -> i64 {
    if i.rem_euclid(2) == 1 {
        ap / p as i64
    } else {
        ap
    }
}

pub type Mat2 = [[BigRational; 2]; 2];

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn mat(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    [[rat(a), rat(b)], [rat(c), rat(d)]]
}

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_identity() -> Mat2 {
    mat(1, 0, 0, 1)
}

pub fn mat_pow(x: &Mat2, e: u32) -> Mat2 {
    (0..e).fold(mat_identity(), |acc, _| mat_mul(&acc, x))
}

pub fn mat_inv(x: &Mat2) -> Result<Mat2> {
    let det = &x[0][0] * &x[1][1] - &x[0][1] * &x[1][0];
    if det.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok([
        [&x[1][1] / &det, -&x[0][1] / &det],
        [-&x[1][0] / &det, &x[0][0] / &det],
    ])
}

/// `C = [[a_p, −1], [p, 0]]`.
pub fn hecke_matrix(p: u64, ap: i64) -> Mat2 {
    mat(ap, -1, p as i64, 0)
}

/// `C^i` for any integer `i`, with `C⁻¹ = (1/p)[[0, 1], [−p, a_p]]`.
pub fn hecke_power(p: u64, ap: i64, i: i64) -> Mat2 {
    let c = hecke_matrix(p, ap);
    if i >= 0 {
        mat_pow(&c, i as u32)
    } else {
        let inv = mat_inv(&c).expect("C is invertible");
        mat_pow(&inv, i.unsigned_abs() as u32)
    }
}

/// The pair `(y_i, y_i′)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCoeffs {
    pub p: u64,
    pub ap: i64,
    pub i: i64,
    pub y: i64,
    pub y_prime: i64,
}

/// Direct formula `(y_i, y_i′) = p^{−[i/2]}·(top row of C^i)`; returns
/// rationals so that a failure of integrality is visible.
pub fn delta_coeffs_direct(p: u64, ap: i64, i: i64) -> (BigRational, BigRational) {
    let m = hecke_power(p, ap, i);
    let s = rat_pow(p, -floor_half(i));
    (&m[0][0] * &s, &m[0][1] * &s)
}

/// Base values for `0 ≤ r < 2̃` from the parity recursion
/// `y_{i+1} = a_p(i)·y_i − y_{i−1}` started at `y_{−1} = (0, 1)`, `y_0 = (1, 0)`.
fn base_pairs(p: u64, ap: i64, two_tilde: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(1, 0)];
    let mut prev = (0i64, 1i64);
    for i in 0..two_tilde - 1 {
        let cur = out[i as usize];
        let a = ap_at(p, ap, i);
        let next = (a * cur.0 - prev.0, a * cur.1 - prev.1);
        prev = cur;
        out.push(next);
    }
    out
}

pub fn delta_coeffs(p: u64, ap: i64, i: i64) -> Result<DeltaCoeffs> {
    let pc = period_constants(p, ap)?;
    let base = base_pairs(p, ap, pc.two_tilde);
    let r = i.rem_euclid(pc.two_tilde);
    let sign = if i.div_euclid(pc.two_tilde).rem_euclid(2) == 0 { 1 } else { -1 };
    let (y, yp) = base[r as usize];
    // the recursion and the power formula must agree on the base range
    let (dy, dyp) = delta_coeffs_direct(p, ap, r);
    if !dy.is_integer() || !dyp.is_integer() || dy != rat(y) || dyp != rat(yp) {
        return Err(Error::NonIntegralCoefficient { i });
    }
    Ok(DeltaCoeffs { p, ap, i, y: sign * y, y_prime: sign * yp })
}

/// `y·c_n ± y′·c_{n−1}` in the layout of the reference table.
pub fn render_delta(y: i64, yp: i64) -> String {
    let coef = |v: i64| if v.abs() == 1 { String::new() } else { v.abs().to_string() };
    let mut s = String::new();
    if y != 0 {
        if y < 0 {
            s.push('−');
        }
        s.push_str(&format!("{}c_n", coef(y)));
    }
    if yp != 0 {
        match (s.is_empty(), yp < 0) {
            (true, true) => s.push('−'),
            (true, false) => {}
            (false, true) => s.push_str(" − "),
            (false, false) => s.push_str(" + "),
        }
        s.push_str(&format!("{}c_{{n−1}}", coef(yp)));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRow {
    pub i: i64,
    pub y: i64,
    pub yp: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rendered: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaTable {
    pub p: u64,
    pub ap: i64,
    pub rows: Vec<DeltaRow>,
}

pub fn delta_table(p: u64, ap: i64, i_min: i64, i_max: i64) -> Result<DeltaTable> {
    let rows = (i_min..=i_max)
        .map(|i| {
            let d = delta_coeffs(p, ap, i)?;
            Ok(DeltaRow { i, y: d.y, yp: d.y_prime, rendered: Some(render_delta(d.y, d.y_prime)) })
        })
        .collect::<Result<_>>()?;
    Ok(DeltaTable { p, ap, rows })
}

impl DeltaTable {
    /// CSV with columns `i,y,y_prime,rendered`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,y,y_prime,rendered\n");
        for r in &self.rows {
            let text = r.rendered.clone().unwrap_or_else(|| render_delta(r.y, r.yp));
            out.push_str(&format!("{},{},{},{}\n", r.i, r.y, r.yp, text));
        }
        out
    }

    /// Parses the CSV produced by [`DeltaTable::to_csv`].
    pub fn from_csv(p: u64, ap: i64, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.splitn(4, ',').collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("bad table row {line:?}")));
            }
            let num = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {s:?}")));
            rows.push(DeltaRow { i: num(f[0])?, y: num(f[1])?, yp: num(f[2])?, rendered: Some(f[3].to_string()) });
        }
        Ok(DeltaTable { p, ap, rows })
    }
}

/// `A_1 = [[a_p, −1], [1, 0]]`, `A_{i+1} = A_i·[[a_p(i), −1], [1, 0]]`,
/// checked against
/// `A_l⁻¹·[[a_p, −p], [1, 0]]^{l−1} = diag(p^{[l/2]}, p^{[(l−1)/2]})·[[0, 1], [−1, a_p]]`.
pub fn a_matrix(p: u64, ap: i64, l: u32) -> Result<Mat2> {
    check_supersingular(p, ap)?;
    assert!(l >= 1, "A_l needs l >= 1");
    let mut a = mat(ap, -1, 1, 0);
    for i in 1..l as i64 {
        a = mat_mul(&a, &mat(ap_at(p, ap, i), -1, 1, 0));
    }
    let lhs = mat_mul(&mat_inv(&a)?, &mat_pow(&mat(ap, -(p as i64), 1, 0), l - 1));
    let l = l as i64;
    let d = [[rat_pow(p, floor_half(l)), BigRational::zero()], [BigRational::zero(), rat_pow(p, floor_half(l - 1))]];
    let rhs = mat_mul(&d, &mat(0, 1, -1, ap));
    if lhs != rhs {
        return Err(Error::IdentityViolation(format!("A_{l} identity at (p, a_p) = ({p}, {ap})")));
    }
    Ok(a)
}

fn quad_int(p: u64, ap: i64, n: impl Into<BigInt>) -> QuadExtScalar {
    QuadExtScalar::from_scalar(ap, PadicScalar::from_int(p, n))
}

/// `p^{[k]}` as an exact extension scalar (any sign of `k`).
fn quad_ppow(p: u64, ap: i64, k: i64) -> QuadExtScalar {
    QuadExtScalar::from_scalar(ap, PadicScalar::from_rational(p, rat_pow(p, k)))
}

/// `β_m = p^{[m/2]}·y_m·α^{−m}`.
pub fn beta(p: u64, ap: i64, m: i64) -> Result<QuadExtScalar> {
    let y = delta_coeffs(p, ap, m)?.y;
    let am = QuadExtScalar::alpha(p, ap).pow(-m)?;
    Ok(quad_ppow(p, ap, floor_half(m)).mul(&quad_int(p, ap, y)).mul(&am))
}

/// `p^{[i/2]}y_i − p^{[(i−k)/2]}y_{i−k}(p/α)^k = β_{k−1}α^i`, exactly.
pub fn y_beta_identity_check(p: u64, ap: i64, i: i64, k: u32) -> Result<CheckReport> {
    let k = k as i64;
    let config = json!({"p": p, "ap": ap, "i": i, "k": k});
    let alpha = QuadExtScalar::alpha(p, ap);
    let abar = QuadExtScalar::alpha_bar(p, ap);
    let yi = delta_coeffs(p, ap, i)?.y;
    let yik = delta_coeffs(p, ap, i - k)?.y;
    let lhs = quad_ppow(p, ap, floor_half(i))
        .mul(&quad_int(p, ap, yi))
        .sub(&quad_ppow(p, ap, floor_half(i - k)).mul(&quad_int(p, ap, yik)).mul(&abar.pow(k)?));
    let rhs = beta(p, ap, k - 1)?.mul(&alpha.pow(i)?);
    let witness = (lhs != rhs).then(|| json!({"lhs": lhs.to_string(), "rhs": rhs.to_string()}));
    Ok(CheckReport::from_witness("y-beta identity", config, witness))
}

/// Every supersingular pair with `p` in `primes`.
pub fn supersingular_pairs(primes: &[u64]) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for &p in primes {
        for ap in -(2 * p as i64)..=(2 * p as i64) {
            if check_supersingular(p, ap).is_ok() {
                out.push((p, ap));
            }
        }
    }
    out
}

/// `y` as a machine integer, for callers that hold big rationals.
pub fn small_int(x: &BigRational) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

impl DeltaCoeffs {
    pub fn is_one(&self) -> bool {
        self.y == 1 && self.y_prime == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate() {
        assert_eq!(
            supersingular_pairs(&[2, 3, 5, 7]),
            vec![(2, -2), (2, 0), (2, 2), (3, -3), (3, 0), (3, 3), (5, 0), (7, 0)]
        );
        assert_eq!(check_supersingular(5, 5), Err(Error::NotSupersingular { p: 5, ap: 5 }));
        assert_eq!(check_supersingular(2, 1), Err(Error::NotSupersingular { p: 2, ap: 1 }));
        assert_eq!(check_supersingular(4, 0), Err(Error::NonPrimeModulus(4)));
    }

    #[test]
    fn period_examples() {
        let pc = period_constants(3, 0).unwrap();
        assert_eq!((pc.two_tilde, pc.four_tilde, pc.one_tilde), (2, 4, 1));
        let pc = period_constants(2, 2).unwrap();
        assert_eq!((pc.two_tilde, pc.four_tilde, pc.one_tilde), (4, 8, 2));
        assert_eq!(hecke_power(2, 2, 4), mat(-4, 0, 0, -4));
        let pc = period_constants(3, -3).unwrap();
        assert_eq!((pc.two_tilde, pc.four_tilde, pc.one_tilde), (6, 12, 3));
        assert_eq!(hecke_power(3, -3, 6), mat(-27, 0, 0, -27));
    }

    #[test]
    fn delta_examples() {
        let d = |p, ap, i| {
            let d = delta_coeffs(p, ap, i).unwrap();
            (d.y, d.y_prime)
        };
        assert_eq!(d(2, -2, 1), (-2, -1));
        assert_eq!(d(3, 3, 3), (3, -2));
        for p in [2, 3, 5, 7] {
            assert_eq!(d(p, 0, 1728), (1, 0));
            assert_eq!(d(p, 0, 691), (0, 1));
        }
        assert_eq!(d(2, 2, -2), (-1, 1));
    }

    #[test]
    fn rendering() {
        let t = delta_table(3, -3, 3, 3).unwrap();
        assert_eq!(t.rows[0].rendered.as_deref(), Some("−3c_n − 2c_{n−1}"));
        assert_eq!(delta_table(5, 0, 2, 2).unwrap().rows[0].rendered.as_deref(), Some("−c_n"));
        assert_eq!(delta_table(2, 2, 4, 4).unwrap().rows[0].rendered.as_deref(), Some("−c_n"));
        assert_eq!(render_delta(0, 1), "c_{n−1}");
        assert_eq!(render_delta(-1, 1), "−c_n + c_{n−1}");
    }

    #[test]
    fn csv_round_trip() {
        let t = delta_table(3, -3, -2, 7).unwrap();
        assert_eq!(DeltaTable::from_csv(3, -3, &t.to_csv()).unwrap(), t);
        assert_eq!(t.to_csv().lines().count(), 11);
    }

    #[test]
    fn integrality_periodicity_recursion() {
        for (p, ap) in supersingular_pairs(&[2, 3, 5, 7]) {
            let two = period_constants(p, ap).unwrap().two_tilde;
            let r = 8 * p as i64;
            for i in -r..=r {
                let d = delta_coeffs(p, ap, i).unwrap();
                let e = delta_coeffs(p, ap, i + two).unwrap();
                assert_eq!((e.y, e.y_prime), (-d.y, -d.y_prime));
                let (dy, dyp) = delta_coeffs_direct(p, ap, i);
                assert_eq!((small_int(&dy), small_int(&dyp)), (Some(d.y), Some(d.y_prime)), "({p},{ap}) i={i}");
                let up = delta_coeffs(p, ap, i + 1).unwrap();
                let down = delta_coeffs(p, ap, i - 1).unwrap();
                let a = ap_at(p, ap, i);
                assert_eq!((up.y, up.y_prime), (a * d.y - down.y, a * d.y_prime - down.y_prime));
            }
        }
    }

    #[test]
    fn scaled_power_rows() {
        for (p, ap) in supersingular_pairs(&[2, 3, 5, 7]) {
            for i in 0..=4 * p as i64 {
                let c = hecke_power(p, ap, i);
                let d = delta_coeffs(p, ap, i).unwrap();
                let dm = delta_coeffs(p, ap, i - 1).unwrap();
                let top = rat_pow(p, floor_half(i));
                let bot = rat_pow(p, floor_half(i + 1));
                assert_eq!(c[0][0], &top * rat(d.y));
                assert_eq!(c[0][1], &top * rat(d.y_prime));
                assert_eq!(c[1][0], &bot * rat(dm.y));
                assert_eq!(c[1][1], &bot * rat(dm.y_prime));
            }
        }
    }

    #[test]
    fn a_matrix_identity() {
        assert_eq!(mat_inv(&a_matrix(3, 3, 1).unwrap()).unwrap(), mat(0, 1, -1, 3));
        assert_eq!(a_matrix(3, 3, 2).unwrap(), mat_mul(&mat(3, -1, 1, 0), &mat(1, -1, 1, 0)));
        for (p, ap) in supersingular_pairs(&[2, 3]) {
            for l in 1..=(2 * p as u32 + 2) {
                a_matrix(p, ap, l).unwrap();
            }
        }
    }

    #[test]
    fn beta_values() {
        for (p, ap) in supersingular_pairs(&[2, 3, 5]) {
            assert_eq!(beta(p, ap, 0).unwrap(), QuadExtScalar::one(p, ap));
            assert_eq!(beta(p, ap, -1).unwrap(), QuadExtScalar::zero(p, ap));
            let two = period_constants(p, ap).unwrap().two_tilde;
            for m in -3 * two..=3 * two {
                assert_eq!(beta(p, ap, m).unwrap(), beta(p, ap, m + two).unwrap(), "({p},{ap}) m={m}");
            }
        }
        // β_2 − β_0 (p/α²)² = β_1 at (2, 2)
        let (p, ap) = (2, 2);
        let alpha = QuadExtScalar::alpha(p, ap);
        let r = quad_int(p, ap, 2).div(&alpha.mul(&alpha)).unwrap();
        let lhs = beta(p, ap, 2).unwrap().sub(&beta(p, ap, 0).unwrap().mul(&r.mul(&r)));
        assert_eq!(lhs, beta(p, ap, 1).unwrap());
        assert_eq!(beta(p, ap, 1).unwrap(), QuadExtScalar::alpha_bar(p, ap));
    }

    #[test]
    fn y_beta_identities() {
        assert!(y_beta_identity_check(3, 3, 0, 1).unwrap().passed());
        assert!(y_beta_identity_check(2, 2, 2, 2).unwrap().passed());
        assert!(y_beta_identity_check(3, 0, 4, 2).unwrap().passed());
        for (p, ap) in supersingular_pairs(&[2, 3, 5]) {
            let two = period_constants(p, ap).unwrap().two_tilde;
            for i in -two..=2 * two {
                for k in 1..=two as u32 + 1 {
                    let r = y_beta_identity_check(p, ap, i, k).unwrap();
                    assert!(r.passed(), "{r:?}");
                }
            }
        }
    }
}
