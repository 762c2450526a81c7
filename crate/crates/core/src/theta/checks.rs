use serde_json::json;

use super::{ladder, n_convention};
use crate::arith::{floor_half, rat_pow};
use crate::error::Result;
use crate::padic::{PadicScalar, QuadExtScalar};
use crate::report::CheckReport;
use crate::series::{omega, reduce_mod, Cap};
use crate::trace::beta;

fn ppow(p: u64, k: i64) -> PadicScalar {
    PadicScalar::from_rational(p, rat_pow(p, k))
}

/// At level `n`, exactly in `Q(α)[X]`:
/// `κ_{−N}Θ_n^0 − κ_{−N−1}Θ_n^{−1} = p^{[(−N−i)/2]}Θ_n^{−N−i}ᾱ^i` with
/// `κ_m = α^m(β_m − β_{i−1})`, and the same for `Υ`.
pub fn kappa_identity_check(p: u64, ap: i64, n: u32, i: i64) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "i": i});
    let big_n = n_convention(p, n);
    let alpha = QuadExtScalar::alpha(p, ap);
    let abar = QuadExtScalar::alpha_bar(p, ap);
    let b = beta(p, ap, i - 1)?;
    let kappa = |m: i64| -> Result<QuadExtScalar> { Ok(alpha.pow(m)?.mul(&beta(p, ap, m)?.sub(&b))) };
    let (k0, k1) = (kappa(-big_n)?, kappa(-big_n - 1)?);
    let at0 = ladder(p, ap, n, 0, Cap::Exact)?;
    let far = ladder(p, ap, n, -big_n - i, Cap::Exact)?;
    let rhs_scale = abar.pow(i)?.scale(&ppow(p, floor_half(-big_n - i)));
    for (col, name) in [(0, "theta"), (1, "upsilon")] {
        let lhs = at0.top[col].to_quad(ap).scale_by(&k0).sub(&at0.bottom[col].to_quad(ap).scale_by(&k1));
        let rhs = far.top[col].to_quad(ap).scale_by(&rhs_scale);
        if lhs != rhs {
            let k = lhs.first_disagreement(&rhs, i64::MAX, lhs.len().max(rhs.len())).unwrap_or(0);
            return Ok(CheckReport::fail(
                "kappa identity",
                config,
                json!({"component": name, "degree": k, "lhs": lhs.coeff(k).to_string(), "rhs": rhs.coeff(k).to_string()}),
            ));
        }
    }
    Ok(CheckReport::pass("kappa identity", config))
}

/// `p^{[j/2]}·(row j at level n+1) ≡ p^{[(j+1)/2]}·(row j+1 at level n)`
/// modulo `ω_n`, exactly. This is the diagonal compatibility between
/// levels, coming from `Φ_{n+1}(1+X) ≡ p (mod ω_n)`.
pub fn mod_omega_compatibility_check(p: u64, ap: i64, n: u32, j: i64) -> Result<CheckReport> {
    let config = json!({"p": p, "ap": ap, "n": n, "j": j});
    let w = omega(p, n);
    let hi = ladder(p, ap, n + 1, j, Cap::Exact)?;
    let lo = ladder(p, ap, n, j + 1, Cap::Exact)?;
    for (col, name) in [(0, "theta"), (1, "upsilon")] {
        let a = reduce_mod(&hi.top[col].scale(&ppow(p, floor_half(j))), &w);
        let b = reduce_mod(&lo.top[col].scale(&ppow(p, floor_half(j + 1))), &w);
        if a != b {
            return Ok(CheckReport::fail(
                "mod-omega compatibility",
                config,
                json!({"component": name, "level_n_plus_1": a.to_repr(), "level_n": b.to_repr()}),
            ));
        }
    }
    Ok(CheckReport::pass("mod-omega compatibility", config))
}
