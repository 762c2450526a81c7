//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N ...: PASS|FAIL` line with its tolerances and timing.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;

use halflog::curves::{ap, CURVE_755, MORDELL_37};
use halflog::decompose::limit_lemma_check;
use halflog::identities::{
    a_matrix_check, anti_periodicity_check, coefficient_factorization_check, determinant_check,
    infinity_determinant_check, infinity_determinant_literal_check, infinity_recursion_check, intrinsic_check, pollack_check, round_trip_check,
    REFERENCE_DELTA_TABLE,
};
use halflog::padic::PadicScalar;
use halflog::report::CheckReport;
use halflog::series::{gauss_norm_log, phi, reduce_mod, Cap, PowerSeries};
use halflog::theta::{kappa_identity_check, LimitOptions};
use halflog::trace::{delta_table, hecke_power, period_constants, supersingular_pairs};

fn verdict(n: u32, what: &str, tol: &str, budget: Duration, start: Instant, failure: Option<String>) {
    let t = start.elapsed();
    let over = (t > budget).then(|| format!("took {t:.2?}, budget {budget:?}"));
    let problem = failure.or(over);
    let status = if problem.is_none() { "PASS" } else { "FAIL" };
    // written to stderr directly so the line survives the test harness's capture
    let mut line = format!("criterion {n} ({what}; {tol}; {t:.2?}): {status}\n");
    if let Some(p) = &problem {
        line.push_str(&format!("    witness: {p}\n"));
    }
    let _ = std::io::stderr().write_all(line.as_bytes());
    if let Some(p) = problem {
        panic!("criterion {n} failed: {p}");
    }
}

fn first_failure(reports: impl IntoIterator<Item = CheckReport>) -> Option<String> {
    reports
        .into_iter()
        .find(|r| !r.passed())
        .map(|r| format!("{} at {} -> {}", r.name, r.config, r.witness.unwrap_or_default()))
}

const S: fn(u64) -> Duration = Duration::from_secs;

/// `(y, y′)` for `δ^{−2}, …, δ^7`, transcribed by hand from the reference table.
const TRANSCRIBED: [(i64, [(i64, i64); 10]); 5] = [
    (2, [(-1, 1), (0, 1), (1, 0), (2, -1), (1, -1), (0, -1), (-1, 0), (-2, 1), (-1, 1), (0, 1)]),
    (-2, [(-1, -1), (0, 1), (1, 0), (-2, -1), (1, 1), (0, -1), (-1, 0), (2, 1), (-1, -1), (0, 1)]),
    (3, [(-1, 1), (0, 1), (1, 0), (3, -1), (2, -1), (3, -2), (1, -1), (0, -1), (-1, 0), (-3, 1)]),
    (-3, [(-1, -1), (0, 1), (1, 0), (-3, -1), (2, 1), (-3, -2), (1, 1), (0, -1), (-1, 0), (3, 1)]),
    (0, [(-1, 0), (0, 1), (1, 0), (0, -1), (-1, 0), (0, 1), (1, 0), (0, -1), (-1, 0), (0, 1)]),
];

#[test]
fn criterion_01_delta_table() {
    let start = Instant::now();
    let mut bad = None;
    for ((ap, coeffs), (ap2, rendered)) in TRANSCRIBED.iter().zip(REFERENCE_DELTA_TABLE.iter()) {
        assert_eq!(ap, ap2);
        let primes: &[u64] = match ap {
            0 => &[3, 5, 7],
            2 | -2 => &[2],
            _ => &[3],
        };
        for &p in primes {
            let t = delta_table(p, *ap, -2, 7).unwrap();
            for ((row, want), text) in t.rows.iter().zip(coeffs).zip(rendered) {
                if (row.y, row.yp) != *want || row.rendered.as_deref() != Some(*text) {
                    bad.get_or_insert(format!("p = {p}, a_p = {ap}, i = {}: got {:?}", row.i, row));
                }
            }
        }
    }
    verdict(1, "delta table, 10 rows x 5 columns", "exact, verbatim", S(1), start, bad);
}

#[test]
fn criterion_02_coefficient_lemma() {
    let start = Instant::now();
    let reports = supersingular_pairs(&[2, 3, 5, 7])
        .into_iter()
        .map(|(p, ap)| anti_periodicity_check(p, ap, 8 * p as i64).unwrap());
    verdict(2, "y_i, y_i' integral and anti-periodic, p in {2,3,5,7}, |i| <= 8p", "exact", S(1), start, first_failure(reports));
}

#[test]
fn criterion_03_matrix_identities() {
    let start = Instant::now();
    let mut fail = None;
    for (p, ap) in supersingular_pairs(&[2, 3]) {
        let pc = period_constants(p, ap).unwrap();
        let c = hecke_power(p, ap, pc.two_tilde);
        let s = -BigRational::from_integer(BigInt::from(p).pow(pc.one_tilde as u32));
        if c[0][0] != s || c[1][1] != s || !c[0][1].is_zero() || !c[1][0].is_zero() {
            fail.get_or_insert(format!("C^(2~) != -p^(1~) I at ({p},{ap})"));
        }
        if let Some(f) = first_failure([a_matrix_check(p, ap, 2 * p as u32 + 2)]) {
            fail.get_or_insert(f);
        }
    }
    verdict(3, "C^(2~) = -p^(1~) I and A_l for l <= 2p+2, p in {2,3}", "exact", S(1), start, fail);
}

#[test]
fn criterion_04_finite_determinant() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for (p, ap) in supersingular_pairs(&[2, 3]) {
        let two = period_constants(p, ap).unwrap().two_tilde;
        for n in 1..=4 {
            for i in -2..=two {
                reports.push(determinant_check(p, ap, n, i, false).unwrap());
            }
        }
    }
    verdict(4, "X det = omega_n, n <= 4, i in [-2, 2~], p in {2,3}", "exact", S(10), start, first_failure(reports));
}

#[test]
fn criterion_05_coefficient_factorization() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for (p, ap) in supersingular_pairs(&[2, 3]) {
        let two = period_constants(p, ap).unwrap().two_tilde;
        for n in 1..=3 {
            for j in -two..=two {
                reports.push(coefficient_factorization_check(p, ap, n, j).unwrap());
            }
        }
    }
    verdict(5, "Theta^j = y_j Theta^0 + y_j' Theta^-1 and Upsilon analogue, n <= 3, |j| <= 2~", "exact", S(10), start, first_failure(reports));
}

#[test]
fn criterion_06_kernel_round_trip() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for (p, ap) in [(2, 2), (2, -2), (3, 3), (3, -3), (3, 0)] {
        for n in 1..=3 {
            reports.push(round_trip_check(p, ap, n, 100, 7 + n as u64).unwrap());
        }
    }
    verdict(6, "decompose . phi = id mod kernel, 100 pairs per (p, a_p, n), n <= 3; phi(kernel) = 0", "exact", S(30), start, first_failure(reports));
}

#[test]
fn criterion_07_limit_lemma() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for (p, ap) in supersingular_pairs(&[2, 3]) {
        for m in 1..=3 {
            for nu in 0..=2 {
                reports.push(limit_lemma_check(p, ap, m, nu).unwrap());
            }
        }
    }
    verdict(7, "level 2m+nu generators mod omega_nu divisible by p^m, m <= 3, nu <= 2", "exact", S(30), start, first_failure(reports));
}

const INFINITY_CONFIGS: [(u64, i64); 6] = [(2, 2), (2, -2), (3, 3), (3, -3), (3, 0), (5, 0)];

#[test]
fn criterion_08_infinity_determinant() {
    // Compared as stated. The computed determinant is log_p(1+X)/(p^{N-n} X);
    // the corrected form is reported alongside but does not decide the verdict.
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut slowest = Duration::ZERO;
    for (p, ap) in INFINITY_CONFIGS {
        let t = Instant::now();
        let r = infinity_determinant_literal_check(p, ap, 200, 20, LimitOptions::default()).unwrap();
        slowest = slowest.max(t.elapsed());
        if !r.passed() {
            failures.push(format!("({p},{ap}): {}", r.witness.unwrap()));
        }
        let c = infinity_determinant_check(p, ap, 200, 20, LimitOptions::default()).unwrap();
        let reach = &c.config["compared_mod_p"];
        println!("    ({p},{ap}) p^(N-n) X det = log_p(1+X) mod p^{reach}: {}", if c.passed() { "holds" } else { "fails" });
    }
    let budget = S(60) * INFINITY_CONFIGS.len() as u32;
    let fail = if failures.is_empty() {
        (slowest > S(60)).then(|| format!("slowest configuration took {slowest:?}"))
    } else {
        Some(format!("{} of {} configurations differ; {}", failures.len(), INFINITY_CONFIGS.len(), failures.join("; ")))
    };
    verdict(8, "Theta^1 Upsilon^0 - Theta^0 Upsilon^1 vs log_p(1+X), cap 200", "mod p^20 coefficientwise", budget, start, fail);
}

#[test]
fn criterion_09_recursion_and_kappa() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for (p, ap) in INFINITY_CONFIGS {
        reports.push(infinity_recursion_check(p, ap, 200, 20, LimitOptions::default()).unwrap());
        let levels = if p == 5 { 1..=2 } else { 1..=3 };
        for n in levels {
            for i in -2..=4 {
                reports.push(kappa_identity_check(p, ap, n, i).unwrap());
            }
        }
    }
    verdict(9, "infinity row recursion (cap 200) and kappa identity (n <= 3, i in [-2,4])", "recursion mod p^20, kappa exact", S(30), start, first_failure(reports));
}

#[test]
fn criterion_10_parity_products() {
    let start = Instant::now();
    let mut constants = Vec::new();
    let mut fail = None;
    for p in [3, 5] {
        let (r, c) = pollack_check(p, 100, 10, LimitOptions::default()).unwrap();
        if !r.passed() {
            fail.get_or_insert(format!("p = {p}: {}", r.witness.unwrap()));
        }
        constants.push(c);
    }
    if fail.is_none() && constants[0] != constants[1] {
        fail = Some(format!("normalization constant differs across p: {constants:?}"));
    }
    let c = constants[0].clone().map_or("none".into(), |c| c.to_string());
    verdict(10, &format!("a_p = 0 half-logs = c (log^+, alpha log^-), p in {{3,5}}, c = {c}"), "mod p^10, cap 100", S(30), start, fail);
}

#[test]
fn criterion_11_intrinsicness() {
    let start = Instant::now();
    let reports = [(3, 3), (2, -2)].map(|(p, ap)| intrinsic_check(p, ap, 50, 8, LimitOptions::default()).unwrap());
    verdict(11, "half-logs from (0,1), (1,2), (2~-1,2~) agree, (3,3) and (2,-2)", "mod p^8, cap 50", S(30), start, first_failure(reports));
}

#[test]
fn criterion_12_curve_fixtures() {
    let start = Instant::now();
    let got = [ap(&MORDELL_37, 2), ap(&MORDELL_37, 3), ap(&CURVE_755, 2), ap(&CURVE_755, 3)].map(|r| r.unwrap());
    let fail = (got != [-2, -3, 2, 3]).then(|| format!("got {got:?}"));
    verdict(12, "a_p of y^2+y = x^3-x and y^2+y = x^3-7x+7 at p = 2, 3", "exact", S(1), start, fail);
}

#[test]
fn criterion_13_root_of_unity_values() {
    let start = Instant::now();
    let mut fail = None;
    for p in [2u64, 3, 5] {
        for i in 2..=4 {
            for j in 1..i {
                let r = reduce_mod(&phi(p, i), &phi(p, j));
                if r != PowerSeries::from_ints(p, &[p as i64], Cap::Exact) {
                    fail.get_or_insert(format!("Phi_{i} mod Phi_{j} at p = {p} is {r}"));
                }
            }
        }
    }
    verdict(13, "Phi_i mod Phi_j = p, 1 <= j < i <= 4, p in {2,3,5}", "exact", S(1), start, fail);
}

#[test]
fn criterion_14_gauss_norm_contraction() {
    let start = Instant::now();
    let mut fail = None;
    let half = Rational64::new(1, 2);
    for p in [2u64, 3] {
        let inv_p = PadicScalar::from_rational(p, BigRational::new(1.into(), p.into()));
        let one = PowerSeries::from_ints(p, &[1], Cap::Exact);
        let norms: Vec<Rational64> = (2..=6)
            .map(|n| gauss_norm_log(&phi(p, n).scale(&inv_p).sub(&one), half).expect("nonzero"))
            .collect();
        if !norms.windows(2).all(|w| w[1] < w[0]) {
            fail.get_or_insert(format!("p = {p}: {norms:?}"));
        }
    }
    verdict(14, "log_p |Phi_n/p - 1| at r = p^(-1/2) strictly decreasing, 2 <= n <= 6, p in {2,3}", "exact rationals", S(1), start, fail);
}
