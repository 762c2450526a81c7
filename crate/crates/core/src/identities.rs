//! The verification suite: every ladder, half-log and decomposition identity
//! as a named [`CheckReport`], plus the factorization check on synthetic
//! inputs.

use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{floor_half, rat_pow};
use crate::decompose::{decompose, kernel_basis, kernel_member, limit_lemma_check, phi_apply, ladder_mod_omega, LambdaPair};
use crate::error::{Error, Result};
use crate::padic::{PadicScalar, QuadExtScalar};
use crate::report::CheckReport;
use crate::series::{log_series, omega, phi, reduce_mod, Cap, PowerSeries, QuadSeries};
use crate::theta::{
    half_logs, half_logs_from_indices, kappa_identity_check, ladder, limit_rows, n_convention, pollack_constant,
    HalfLogPair, LimitOptions,
};
use crate::trace::{a_matrix, delta_coeffs, delta_table, period_constants, y_beta_identity_check};

/// The reference δ-table, rows `δ^{−2}, …, δ^7`, one column per `a_p`.
pub const REFERENCE_DELTA_TABLE: [(i64, [&str; 10]); 5] = [
    (2, ["−c_n + c_{n−1}", "c_{n−1}", "c_n", "2c_n − c_{n−1}", "c_n − c_{n−1}", "−c_{n−1}", "−c_n", "−2c_n + c_{n−1}", "−c_n + c_{n−1}", "c_{n−1}"]),
    (-2, ["−c_n − c_{n−1}", "c_{n−1}", "c_n", "−2c_n − c_{n−1}", "c_n + c_{n−1}", "−c_{n−1}", "−c_n", "2c_n + c_{n−1}", "−c_n − c_{n−1}", "c_{n−1}"]),
    (3, ["−c_n + c_{n−1}", "c_{n−1}", "c_n", "3c_n − c_{n−1}", "2c_n − c_{n−1}", "3c_n − 2c_{n−1}", "c_n − c_{n−1}", "−c_{n−1}", "−c_n", "−3c_n + c_{n−1}"]),
    (-3, ["−c_n − c_{n−1}", "c_{n−1}", "c_n", "−3c_n − c_{n−1}", "2c_n + c_{n−1}", "−3c_n − 2c_{n−1}", "c_n + c_{n−1}", "−c_{n−1}", "−c_n", "3c_n + c_{n−1}"]),
    (0, ["−c_n", "c_{n−1}", "c_n", "−c_{n−1}", "−c_n", "c_{n−1}", "c_n", "−c_{n−1}", "−c_n", "c_{n−1}"]),
];

/// The prime behind each column of the reference table.
pub fn reference_prime(ap: i64) -> u64 {
    match ap.abs() {
        2 => 2,
        _ => 3,
    }
}

/// Regenerates one column of the reference table.
pub fn delta_table_check(ap: i64, p: u64) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "imin": -2, "imax": 7});
    let Some((_, want)) = REFERENCE_DELTA_TABLE.iter().find(|(a, _)| *a == ap) else {
        return Err(Error::Parse(format!("no reference column for a_p = {ap}")));
    };
    let t = delta_table(p, ap, -2, 7)?;
    let bad: Vec<Value> = t
        .rows
        .iter()
        .zip(want)
        .filter(|(r, w)| r.rendered.as_deref() != Some(**w))
        .map(|(r, w)| json!({"i": r.i, "got": r.rendered, "expected": w}))
        .collect();
    Ok(CheckReport::from_witness("delta table", config, (!bad.is_empty()).then(|| json!(bad))))
}

/// `y_i, y_i′` integral and `y_{i+2̃} = −y_i` for `|i| ≤ range`.
pub fn anti_periodicity_check(p: u64, ap: i64, range: i64) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "range": range});
    let two = period_constants(p, ap)?.two_tilde;
    for i in -range..=range {
        let (a, b) = match (delta_coeffs(p, ap, i), delta_coeffs(p, ap, i + two)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return Ok(CheckReport::fail("anti-periodicity", config, json!({"i": i, "error": e.to_string()}))),
        };
        if (b.y, b.y_prime) != (-a.y, -a.y_prime) {
            return Ok(CheckReport::fail(
                "anti-periodicity",
                config,
                json!({"i": i, "y": [a.y, a.y_prime], "shifted": [b.y, b.y_prime]}),
            ));
        }
    }
    Ok(CheckReport::pass("anti-periodicity", config))
}

/// The `A_l` identity for `1 ≤ l ≤ l_max`.
pub fn a_matrix_check(p: u64, ap: i64, l_max: u32) -> CheckReport {
    let config = json!({"p": p, "ap": ap, "l_max": l_max});
    let r = (1..=l_max).try_for_each(|l| a_matrix(p, ap, l).map(|_| ()));
    CheckReport::from_result("A_l identity", config, r.map(|_| None))
}

fn ppow(p: u64, k: i64) -> PadicScalar {
    PadicScalar::from_rational(p, rat_pow(p, k))
}

/// Rows at index `i` from the unscaled recursion `R_{k+1} = a_pR_k − pR_{k−1}`
/// started at the level-`n` rows for indices 1 and 0, then scaled by
/// `p^{−[k/2]}`. With `corrupt_parity` the scaling uses `[(k+1)/2]`, which is
/// the same as swapping the parity in `a_p(i)`.
fn rows_via_hecke(p: u64, ap: i64, n: u32, i: i64, corrupt_parity: bool) -> Result<[[PowerSeries; 2]; 2]> {
    let base = ladder(p, ap, n, 1, Cap::Exact)?;
    let e = |k: i64| if corrupt_parity { floor_half(k + 1) } else { floor_half(k) };
    let (a, pp) = (PadicScalar::from_int(p, ap), PadicScalar::from_int(p, p as i64));
    let inv_p = ppow(p, -1);
    // (R_k, R_{k−1}) with R_1 = row 1 and R_0 = row 0
    let (mut k, mut hi, mut lo) = (1i64, base.top.clone(), base.bottom.clone());
    let step = |x: &[PowerSeries; 2], y: &[PowerSeries; 2], s: &PadicScalar| {
        [x[0].scale(&a).sub(&y[0].scale(s)), x[1].scale(&a).sub(&y[1].scale(s))]
    };
    while k < i {
        let next = step(&hi, &lo, &pp);
        lo = std::mem::replace(&mut hi, next);
        k += 1;
    }
    while k > i {
        // R_{k−2} = (a_pR_{k−1} − R_k)/p
        let prev = step(&lo, &hi, &PadicScalar::one(p));
        let prev = [prev[0].scale(&inv_p), prev[1].scale(&inv_p)];
        hi = std::mem::replace(&mut lo, prev);
        k -= 1;
    }
    let (s, t) = (ppow(p, -e(i)), ppow(p, -e(i - 1)));
    Ok([[hi[0].scale(&s), hi[1].scale(&s)], [lo[0].scale(&t), lo[1].scale(&t)]])
}

/// `X·(Θ_n^iΥ_n^{i−1} − Υ_n^iΘ_n^{i−1}) = ω_n`, exactly.
pub fn determinant_check(p: u64, ap: i64, n: u32, i: i64, corrupt_parity: bool) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "i": i});
    let [top, bottom] = rows_via_hecke(p, ap, n, i, corrupt_parity)?;
    let det = top[0].mul(&bottom[1], Cap::Exact).sub(&top[1].mul(&bottom[0], Cap::Exact));
    let lhs = det.shift(1);
    let w = omega(p, n);
    let witness = (lhs != w).then(|| {
        let k = lhs.first_disagreement(&w, i64::MAX, lhs.len().max(w.len())).unwrap_or(0);
        json!({"degree": k, "lhs": lhs.coeff(k).to_string(), "omega": w.coeff(k).to_string()})
    });
    Ok(CheckReport::from_witness("finite determinant", config, witness))
}

/// `Θ_n^j = y_jΘ_n^0 + y_j′Θ_n^{−1}` and the `Υ` analogue, exactly.
pub fn coefficient_factorization_check(p: u64, ap: i64, n: u32, j: i64) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "j": j});
    let at0 = ladder(p, ap, n, 0, Cap::Exact)?;
    let m = at0.at_index(j);
    let d = delta_coeffs(p, ap, j)?;
    let (y, yp) = (PadicScalar::from_int(p, d.y), PadicScalar::from_int(p, d.y_prime));
    for (col, name) in [(0, "theta"), (1, "upsilon")] {
        let want = at0.top[col].scale(&y).add(&at0.bottom[col].scale(&yp));
        if m.top[col] != want {
            let k = m.top[col].first_disagreement(&want, i64::MAX, want.len().max(m.top[col].len())).unwrap_or(0);
            return Ok(CheckReport::fail("coefficient factorization", config, json!({"component": name, "degree": k})));
        }
    }
    Ok(CheckReport::pass("coefficient factorization", config))
}

/// Random pairs at level `n`: `decompose ∘ φ_n` is the identity modulo the
/// kernel, and the kernel generators at index `i` are killed by `φ_n`.
pub fn round_trip_check(p: u64, ap: i64, n: u32, samples: usize, seed: u64) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "samples": samples, "seed": seed});
    let mut rng = StdRng::seed_from_u64(seed);
    let d = (p as usize).pow(n);
    let two = period_constants(p, ap)?.two_tilde;
    for i in [0, 1, two] {
        for g in kernel_basis(p, ap, n, i)?.generators {
            if !kernel_member(p, ap, n, &g)? {
                return Ok(CheckReport::fail("kernel round trip", config, json!({"generator_index": i, "pair": g.to_repr()})));
            }
        }
    }
    for s in 0..samples {
        let mut draw = || (0..d).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>();
        let v = LambdaPair::from_ints(p, n, &draw(), &draw());
        let img = phi_apply(p, ap, n, 1, &v)?;
        let back = decompose(p, ap, n, &img.first, &img.second)?;
        if !kernel_member(p, ap, n, &back.sub(&v))? {
            return Ok(CheckReport::fail("kernel round trip", config, json!({"sample": s, "input": v.to_repr()})));
        }
    }
    Ok(CheckReport::pass("kernel round trip", config))
}

/// `Θ_∞^1Υ_∞^0 − Θ_∞^0Υ_∞^1` against `log_p(1+X)` as stated: coefficientwise
/// modulo `p^prec` below `X^cap`.
pub fn infinity_determinant_literal_check(p: u64, ap: i64, cap: usize, prec: i64, opts: LimitOptions) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "cap": cap, "prec": prec, "form": "literal"});
    let r = limit_rows(p, ap, &[1, 0], cap, prec, opts)?;
    let det = r.theta(1).mul(r.upsilon(0), Cap::Finite(cap)).sub(&r.theta(0).mul(r.upsilon(1), Cap::Finite(cap)));
    let log = log_series(p, cap)?;
    let witness = det.first_disagreement(&log, prec, cap).map(|k| {
        json!({"degree": k, "determinant": det.coeff(k).to_string(), "log": log.coeff(k).to_string()})
    });
    Ok(CheckReport::from_witness("infinity determinant (literal)", config, witness))
}

/// `p^{N−n}·X·(Θ_∞^1Υ_∞^0 − Θ_∞^0Υ_∞^1) = log_p(1+X)` below `X^cap`, modulo
/// `p^{prec−2}` or the precision the product actually carries, whichever is
/// lower. Fails if that drops below `prec/2`.
pub fn infinity_determinant_check(p: u64, ap: i64, cap: usize, prec: i64, opts: LimitOptions) -> Result<CheckReport> {
    let r = limit_rows(p, ap, &[1, 0], cap, prec, opts)?;
    let det = r.theta(1).mul(r.upsilon(0), Cap::Finite(cap)).sub(&r.theta(0).mul(r.upsilon(1), Cap::Finite(cap)));
    let scale = PadicScalar::from_int(p, (p as i64).pow(n_convention(p, 0) as u32));
    let lhs = det.shift(1).scale(&scale);
    let reach = lhs.min_absprec().map_or(prec - 2, |a| a.min(prec - 2));
    let config = json!({"p": p, "ap": ap, "cap": cap, "prec": prec, "compared_mod_p": reach});
    if reach < prec / 2 {
        return Ok(CheckReport::fail("infinity determinant", config, json!("precision exhausted")));
    }
    let log = log_series(p, cap)?;
    let witness = lhs.first_disagreement(&log, reach, cap).map(|k| {
        json!({"degree": k, "scaled_determinant": lhs.coeff(k).to_string(), "log": log.coeff(k).to_string()})
    });
    Ok(CheckReport::from_witness("infinity determinant", config, witness))
}

/// `Θ_∞^{i+1} = a_pΘ_∞^i − pΘ_∞^{i−1}` (and for `Υ`) modulo `p^prec`.
pub fn infinity_recursion_check(p: u64, ap: i64, cap: usize, prec: i64, opts: LimitOptions) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "cap": cap, "prec": prec});
    let r = limit_rows(p, ap, &[-2, -1, 0, 1, 2], cap, prec, opts)?;
    let (a, pp) = (PadicScalar::from_int(p, ap), PadicScalar::from_int(p, p as i64));
    for i in -1..=1 {
        for name in ["theta", "upsilon"] {
            let g = |k| if name == "theta" { r.theta(k) } else { r.upsilon(k) };
            let want = g(i).scale(&a).sub(&g(i - 1).scale(&pp));
            if let Some(k) = g(i + 1).first_disagreement(&want, prec, cap) {
                return Ok(CheckReport::fail("infinity recursion", config, json!({"component": name, "i": i, "degree": k})));
            }
        }
    }
    Ok(CheckReport::pass("infinity recursion", config))
}

/// Half-logs from `(0, 1)` against `(1, 2)` and `(2̃−1, 2̃)`, modulo `p^prec`.
pub fn intrinsic_check(p: u64, ap: i64, cap: usize, prec: i64, opts: LimitOptions) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "cap": cap, "prec": prec});
    let two = period_constants(p, ap)?.two_tilde;
    // computed two digits deeper so the comparison is not at the edge
    let a = half_logs_from_indices(p, ap, 0, 1, cap, prec + 2, opts)?;
    for (i, j) in [(1, 2), (two - 1, two)] {
        let b = half_logs_from_indices(p, ap, i, j, cap, prec + 2, opts)?;
        if !a.agrees_mod(&b, prec, cap) {
            let k = a
                .log_theta
                .first_disagreement(&b.log_theta, prec, cap)
                .or_else(|| a.log_upsilon.first_disagreement(&b.log_upsilon, prec, cap));
            return Ok(CheckReport::fail("intrinsicness", config, json!({"pair": [i, j], "degree": k})));
        }
    }
    Ok(CheckReport::pass("intrinsicness", config))
}

/// For `a_p = 0`: the half-logs are `c·log^+` and `c·α·log^−` for a rational
/// `c`; the witness on success records `c`.
pub fn pollack_check(p: u64, cap: usize, prec: i64, opts: LimitOptions) -> Result<(CheckReport, Option<num_rational::BigRational>)> {
    let config = json!({"p": p, "ap": 0, "cap": cap, "prec": prec});
    let pair = half_logs(p, 0, cap, prec + 2, opts)?;
    let c = pollack_constant(&pair, prec)?;
    let report = match &c {
        Some(_) => CheckReport::pass("parity product comparison", config),
        None => CheckReport::fail("parity product comparison", config, json!("no rational constant fits")),
    };
    Ok((report, c))
}

/// Both half-logs grow no faster than `log_p(1+X)^{1/2}`: at `r = p^{−s}`
/// the excess `log_p|f|_r − ½log_p|log|_r` is at most `bound`.
pub fn growth_check(pair: &HalfLogPair, s: Rational64, bound: Rational64) -> Result<CheckReport> {
    let config = json!({"p": pair.p, "ap": pair.ap, "cap": pair.cap, "s": s.to_string(), "bound": bound.to_string()});
    let ex = pair.growth_excess(s)?;
    let over: Vec<String> = ex.iter().flatten().filter(|e| **e > bound).map(|e| e.to_string()).collect();
    Ok(CheckReport::from_witness("half-log growth", config, (!over.is_empty()).then(|| json!(over))))
}

/// `F_n = p^{[−N/2]}(Θ_n^{−N}L^ϑ + Υ_n^{−N}L^υ) − ᾱp^{[(−N−1)/2]}(Θ_n^{−N−1}L^ϑ + Υ_n^{−N−1}L^υ)`
/// modulo `Φ_j(1+X)`, computed in `Λ_j`.
fn finite_side(p: u64, ap: i64, n: u32, j: u32, lt: &PowerSeries, lu: &PowerSeries) -> Result<QuadSeries> {
    let big_n = n_convention(p, n);
    let m = ladder_mod_omega(p, ap, n, j)?.at_index(-big_n);
    let f = phi(p, j);
    let abar = QuadExtScalar::alpha_bar(p, ap);
    let comb = |r: &[PowerSeries; 2], e: i64| {
        let s = r[0].mul(lt, Cap::Exact).add(&r[1].mul(lu, Cap::Exact)).scale(&ppow(p, e));
        reduce_mod(&s, &f).to_quad(ap)
    };
    let hi = comb(&m.top, floor_half(-big_n));
    let lo = comb(&m.bottom, floor_half(-big_n - 1));
    Ok(hi.sub(&lo.scale_by(&abar)))
}

/// `S = log^ϑ·L^ϑ + log^υ·L^υ` evaluated at `ζ_{p^j} − 1` against the
/// finite-level combination `F_n` for `n > j`: `F_n mod Φ_j` is the same for
/// every `n > j`, and agrees with `S mod Φ_j` to the precision the truncation
/// at `X^cap` leaves.
#[allow(clippy::too_many_arguments)]
pub fn factorization_check(
    p: u64,
    ap: i64,
    ltheta: &PowerSeries,
    lupsilon: &PowerSeries,
    cap: usize,
    prec: i64,
    j_max: u32,
    opts: LimitOptions,
) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "cap": cap, "prec": prec, "j_max": j_max,
        "ltheta": ltheta.to_repr(), "lupsilon": lupsilon.to_repr()});
    if !ltheta.is_exact() || !lupsilon.is_exact() {
        return Err(Error::Parse("synthetic inputs must be exact polynomials".into()));
    }
    let pair = half_logs(p, ap, cap, prec + 2, opts)?;
    let s = pair
        .log_theta
        .mul(&ltheta.to_quad(ap), Cap::Finite(cap))
        .add(&pair.log_upsilon.mul(&lupsilon.to_quad(ap), Cap::Finite(cap)));
    // lowest valuation among the last coefficients bounds the discarded tail
    let late = pair
        .log_theta
        .coeffs()
        .iter()
        .chain(pair.log_upsilon.coeffs())
        .skip(cap / 2)
        .filter_map(crate::series::Coefficient::valuation_q)
        .min()
        .map_or(0, |v| v.floor().to_integer());
    for j in 1..=j_max {
        let d = (p as usize - 1) * (p as usize).pow(j - 1);
        let reach = (prec).min((cap / d) as i64 + late - 2);
        if reach < 1 {
            return Err(Error::NotConverged {
                level: j as usize,
                detail: format!("cap {cap} leaves no precision at Φ_{j}"),
            });
        }
        let f1 = finite_side(p, ap, j + 1, j, ltheta, lupsilon)?;
        let f2 = finite_side(p, ap, j + 2, j, ltheta, lupsilon)?;
        if f1 != f2 {
            return Ok(CheckReport::fail("factorization", config, json!({"j": j, "issue": "finite side not stable in n"})));
        }
        let sj = reduce_mod(&s, &phi(p, j));
        if let Some(k) = sj.first_disagreement(&f1, reach, d) {
            return Ok(CheckReport::fail(
                "factorization",
                config,
                json!({"j": j, "degree": k, "precision": reach, "series_side": sj.coeff(k).to_string(), "finite_side": f1.coeff(k).to_string()}),
            ));
        }
    }
    Ok(CheckReport::pass("factorization", config))
}

/// What [`run_suite`] covers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub pairs: Vec<(u64, i64)>,
    /// Highest finite level for exact checks.
    pub max_level: u32,
    pub cap: usize,
    pub prec: i64,
    pub samples: usize,
    pub seed: u64,
    /// Fault injection: swap the parity convention of `a_p(i)` in the
    /// determinant check.
    #[serde(default)]
    pub corrupt_parity: bool,
    #[serde(skip)]
    pub limit: LimitOptions,
}

impl SuiteConfig {
    pub fn for_pairs(pairs: Vec<(u64, i64)>) -> Self {
        SuiteConfig { pairs, max_level: 2, cap: 30, prec: 8, samples: 10, seed: 1, corrupt_parity: false, limit: LimitOptions::default() }
    }

    pub fn empty() -> Self {
        Self::for_pairs(Vec::new())
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self::for_pairs(vec![(2, 2), (2, -2), (3, 3), (3, -3), (3, 0), (5, 0)])
    }
}

type Task = Box<dyn Fn() -> CheckReport + Send + Sync>;

fn task(name: &'static str, config: Value, f: impl Fn() -> Result<CheckReport> + Send + Sync + 'static) -> Task {
    Box::new(move || f().unwrap_or_else(|e| CheckReport::fail(name, config.clone(), json!(e.to_string()))))
}

fn tasks_for(cfg: &SuiteConfig, p: u64, ap: i64) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    let cf = json!({"p": p, "ap": ap});
    let Ok(pc) = period_constants(p, ap) else {
        out.push(task("supersingular pair", cf.clone(), move || {
            period_constants(p, ap).map(|_| CheckReport::pass("supersingular pair", json!({"p": p, "ap": ap})))
        }));
        return out;
    };
    let two = pc.two_tilde;
    let (cap, prec, lim, levels) = (cfg.cap, cfg.prec, cfg.limit, cfg.max_level);
    if REFERENCE_DELTA_TABLE.iter().any(|(a, _)| *a == ap) && reference_prime(ap) == p || ap == 0 {
        out.push(task("delta table", cf.clone(), move || delta_table_check(ap, p)));
    }
    out.push(task("anti-periodicity", cf.clone(), move || anti_periodicity_check(p, ap, 8 * p as i64)));
    out.push(task("A_l identity", cf.clone(), move || Ok(a_matrix_check(p, ap, 2 * p as u32 + 2))));
    out.push(task("y-beta identity", cf.clone(), move || {
        for i in -2..=two + 1 {
            for k in 1..=2 * two as u32 {
                let r = y_beta_identity_check(p, ap, i, k)?;
                if !r.passed() {
                    return Ok(r);
                }
            }
        }
        Ok(CheckReport::pass("y-beta identity", json!({"p": p, "ap": ap})))
    }));
    let corrupt = cfg.corrupt_parity;
    for n in 1..=levels {
        for i in -2..=two {
            out.push(task("finite determinant", cf.clone(), move || determinant_check(p, ap, n, i, corrupt)));
        }
        for j in -two..=two {
            out.push(task("coefficient factorization", cf.clone(), move || coefficient_factorization_check(p, ap, n, j)));
            out.push(task("kappa identity", cf.clone(), move || kappa_identity_check(p, ap, n, j)));
        }
        let (samples, seed) = (cfg.samples, cfg.seed);
        out.push(task("kernel round trip", cf.clone(), move || round_trip_check(p, ap, n, samples, seed)));
    }
    for m in 1..=levels {
        for nu in 0..=levels.min(2) {
            out.push(task("limit lemma", cf.clone(), move || limit_lemma_check(p, ap, m, nu)));
        }
    }
    out.push(task("infinity determinant", cf.clone(), move || infinity_determinant_check(p, ap, cap, prec, lim)));
    out.push(task("infinity recursion", cf.clone(), move || infinity_recursion_check(p, ap, cap, prec, lim)));
    out.push(task("intrinsicness", cf.clone(), move || intrinsic_check(p, ap, cap, prec, lim)));
    out.push(task("half-log growth", cf.clone(), move || {
        let pair = half_logs(p, ap, cap, prec, lim)?;
        for s in [Rational64::new(1, 2), Rational64::new(1, 4)] {
            let r = growth_check(&pair, s, Rational64::from_integer(2))?;
            if !r.passed() {
                return Ok(r);
            }
        }
        Ok(CheckReport::pass("half-log growth", json!({"p": p, "ap": ap, "cap": cap})))
    }));
    if ap == 0 && p != 2 {
        out.push(task("parity product comparison", cf.clone(), move || Ok(pollack_check(p, cap, prec, lim)?.0)));
    }
    if p <= 3 {
        let seed = cfg.seed;
        out.push(task("factorization", cf, move || {
            let mut rng = StdRng::seed_from_u64(seed ^ p ^ (ap as u64));
            let mut draw = || (0..4).map(|_| rng.gen_range(-5i64..=5)).collect::<Vec<_>>();
            let (lt, lu) = (PowerSeries::from_ints(p, &draw(), Cap::Exact), PowerSeries::from_ints(p, &draw(), Cap::Exact));
            factorization_check(p, ap, &lt, &lu, cap.max(50), prec.min(6), 2, lim)
        }));
    }
    out
}

fn sort_key(r: &CheckReport) -> (String, String) {
    (r.name.clone(), r.config.to_string())
}

/// Runs every check for every configured pair in parallel; the result is
/// ordered by check name, then configuration.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckReport> {
    let tasks: Vec<Task> = cfg.pairs.iter().flat_map(|&(p, ap)| tasks_for(cfg, p, ap)).collect();
    let mut out: Vec<CheckReport> = tasks.par_iter().map(|t| t()).collect();
    out.sort_by_key(sort_key);
    out
}

/// Names of the checks [`run_suite`] can emit.
pub const CHECK_NAMES: &[&str] = &[
    "delta table",
    "anti-periodicity",
    "A_l identity",
    "y-beta identity",
    "finite determinant",
    "coefficient factorization",
    "kernel round trip",
    "limit lemma",
    "infinity determinant",
    "infinity recursion",
    "kappa identity",
    "intrinsicness",
    "parity product comparison",
    "half-log growth",
    "factorization",
    "supersingular pair",
];
