use num_rational::Rational64;

use super::{Coefficient, Series};

/// `log_p |f|_r` at `r = p^{−s}`: the Gauss norm `max_k(−v(a_k) − k·s)` over
/// the tracked coefficients. `None` when every tracked coefficient is zero.
pub fn gauss_norm_log<C: Coefficient>(f: &Series<C>, s: Rational64) -> Option<Rational64> {
    f.coeffs()
        .iter()
        .enumerate()
        .filter_map(|(k, c)| c.valuation_q().map(|v| -v - s * Rational64::from_integer(k as i64)))
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicScalar;
    use crate::series::{phi, Cap, PowerSeries};
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn phi_over_p_minus_one(p: u64, n: u32) -> PowerSeries {
        let inv = PadicScalar::from_rational(p, num_rational::BigRational::new(1.into(), (p as i64).into()));
        phi(p, n).scale(&inv).sub(&PowerSeries::from_ints(p, &[1], Cap::Exact))
    }

    #[test]
    fn examples() {
        let x5 = PowerSeries::monomial(3, 5, Cap::Exact);
        assert_eq!(gauss_norm_log(&x5, q(1, 3)), Some(q(-5, 3)));
        assert_eq!(gauss_norm_log(&phi_over_p_minus_one(3, 1), q(1, 2)), Some(q(0, 1)));
        assert_eq!(gauss_norm_log(&phi_over_p_minus_one(3, 2), q(1, 2)), Some(q(-3, 2)));
        assert_eq!(gauss_norm_log(&PowerSeries::zero(3, Cap::Exact), q(1, 2)), None);
    }

    #[test]
    fn contraction_along_levels() {
        for p in [2u64, 3] {
            let norms: Vec<_> = (2..=6).map(|n| gauss_norm_log(&phi_over_p_minus_one(p, n), q(1, 2)).unwrap()).collect();
            assert!(norms.windows(2).all(|w| w[1] < w[0]), "p={p}: {norms:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn multiplicative(
            f in prop::collection::vec(-40i64..40, 1..8),
            g in prop::collection::vec(-40i64..40, 1..8),
            p in prop::sample::select(vec![2u64, 3, 5]),
            s in prop::sample::select(vec![q(1, 2), q(1, 4), q(1, 3), q(2, 1)]),
        ) {
            let f = PowerSeries::from_ints(p, &f, Cap::Exact);
            let g = PowerSeries::from_ints(p, &g, Cap::Exact);
            prop_assume!(!f.is_empty() && !g.is_empty());
            let lhs = gauss_norm_log(&f.mul(&g, Cap::Exact), s).unwrap();
            prop_assert_eq!(lhs, gauss_norm_log(&f, s).unwrap() + gauss_norm_log(&g, s).unwrap());
        }
    }
}
