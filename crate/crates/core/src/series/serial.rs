use serde::{Deserialize, Serialize};

use super::{Cap, PowerSeries, QuadSeries, Series};
use crate::arith::check_prime;
use crate::error::{Error, Result};
use crate::padic::{PadicScalar, PrecRepr, QuadExtScalar, ScalarRepr};

/// `{"p", "cap", "coeffs"}`; `cap` is `"inf"` for an exact polynomial.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SeriesRepr {
    pub p: u64,
    pub cap: PrecRepr,
    pub coeffs: Vec<ScalarRepr>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QuadRepr {
    pub a: ScalarRepr,
    pub b: ScalarRepr,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct QuadSeriesRepr {
    pub p: u64,
    pub ap: i64,
    pub cap: PrecRepr,
    pub coeffs: Vec<QuadRepr>,
}

fn cap_repr(c: Cap) -> PrecRepr {
    match c {
        Cap::Finite(n) => PrecRepr::Finite(n as i64),
        Cap::Exact => PrecRepr::Infinite("inf".into()),
    }
}

fn cap_from(r: &PrecRepr) -> Result<Cap> {
    match r {
        PrecRepr::Finite(n) if *n >= 0 => Ok(Cap::Finite(*n as usize)),
        PrecRepr::Infinite(s) if s == "inf" => Ok(Cap::Exact),
        other => Err(Error::Parse(format!("bad cap {other:?}"))),
    }
}

impl PowerSeries {
    pub fn to_repr(&self) -> SeriesRepr {
        SeriesRepr {
            p: self.p(),
            cap: cap_repr(self.cap()),
            coeffs: self.coeffs().iter().map(|c| c.to_repr()).collect(),
        }
    }

    pub fn from_repr(r: &SeriesRepr) -> Result<Self> {
        check_prime(r.p)?;
        let cap = cap_from(&r.cap)?;
        if let Cap::Finite(n) = cap {
            if r.coeffs.len() > n {
                return Err(Error::Parse(format!("{} coefficients exceed cap {n}", r.coeffs.len())));
            }
        }
        let v = r.coeffs.iter().map(|c| PadicScalar::from_repr(r.p, c)).collect::<Result<_>>()?;
        Ok(Series::new(r.p, v, cap))
    }

    /// Rows `degree,numerator,den_pow,absprec,den_unit` with a header line;
    /// `den_unit` is empty unless the denominator has a part prime to p.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,numerator,den_pow,absprec,den_unit\n");
        for (k, c) in self.coeffs().iter().enumerate() {
            let r = c.to_repr();
            let prec = match r.absprec {
                PrecRepr::Finite(a) => a.to_string(),
                PrecRepr::Infinite(s) => s,
            };
            let unit = r.den_unit.unwrap_or_default();
            out.push_str(&format!("{k},{},{},{prec},{unit}\n", r.num, r.den_pow));
        }
        out
    }
}

impl QuadSeries {
    pub fn to_repr(&self) -> QuadSeriesRepr {
        let (p, ap) = self.ctx();
        QuadSeriesRepr {
            p,
            ap,
            cap: cap_repr(self.cap()),
            coeffs: self.coeffs().iter().map(|c| QuadRepr { a: c.a().to_repr(), b: c.b().to_repr() }).collect(),
        }
    }

    pub fn from_repr(r: &QuadSeriesRepr) -> Result<Self> {
        check_prime(r.p)?;
        let cap = cap_from(&r.cap)?;
        let v = r
            .coeffs
            .iter()
            .map(|c| {
                Ok(QuadExtScalar::new(r.p, r.ap, PadicScalar::from_repr(r.p, &c.a)?, PadicScalar::from_repr(r.p, &c.b)?))
            })
            .collect::<Result<_>>()?;
        Ok(Series::new((r.p, r.ap), v, cap))
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        PowerSeries::from_repr(&r).map_err(serde::de::Error::custom)
    }
}

impl Serialize for QuadSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QuadSeriesRepr::deserialize(d)?;
        QuadSeries::from_repr(&r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{log_series, phi};

    #[test]
    fn json_round_trip() {
        for f in [phi(3, 2), log_series(3, 12).unwrap(), phi(2, 2).truncate_precision(1)] {
            let s = serde_json::to_string(&f).unwrap();
            let back: PowerSeries = serde_json::from_str(&s).unwrap();
            assert_eq!(back, f);
        }
        let q = phi(3, 1).to_quad(3).scale_by(&QuadExtScalar::alpha(3, 3));
        let back: QuadSeries = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(phi(2, 1)).unwrap();
        assert_eq!(v["p"], 2);
        assert_eq!(v["cap"], "inf");
        assert_eq!(v["coeffs"][0]["num"], "2");
    }

    #[test]
    fn csv_rows() {
        let csv = log_series(3, 4).unwrap().to_csv();
        assert_eq!(csv, "degree,numerator,den_pow,absprec,den_unit\n0,0,0,inf,\n1,1,0,inf,\n2,-1,0,inf,2\n3,1,1,inf,\n");
    }

    #[test]
    fn rejects_bad_input() {
        let bad = r#"{"p": 4, "cap": 3, "coeffs": []}"#;
        assert!(serde_json::from_str::<PowerSeries>(bad).is_err());
        let bad = r#"{"p": 3, "cap": 1, "coeffs": [{"num":"1","den_pow":0,"absprec":"inf"},{"num":"1","den_pow":0,"absprec":"inf"}]}"#;
        assert!(serde_json::from_str::<PowerSeries>(bad).is_err());
    }
}
