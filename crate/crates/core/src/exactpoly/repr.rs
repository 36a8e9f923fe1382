//! JSON encodings.
//!
//! A polynomial is `{"var":"q","coeffs":[[num,den],...]}` in ascending degree;
//! a Laurent polynomial adds `"minDegree"`. Integers that do not fit in 64 bits
//! are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LaurentPoly, Poly, RationalFunction};

const VAR: &str = "q";

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

fn encode(coeffs: &[BigRational]) -> Vec<(JsonInt, JsonInt)> {
    coeffs
        .iter()
        .map(|c| (c.numer().into(), c.denom().into()))
        .collect()
}

fn decode(coeffs: &[(JsonInt, JsonInt)]) -> Result<Vec<BigRational>, String> {
    coeffs
        .iter()
        .map(|(n, d)| {
            let d = d.to_bigint()?;
            if d.is_zero() {
                return Err("zero denominator".to_string());
            }
            Ok(BigRational::new(n.to_bigint()?, d))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    var: String,
    coeffs: Vec<(JsonInt, JsonInt)>,
}

#[derive(Serialize, Deserialize)]
struct LaurentRepr {
    var: String,
    #[serde(rename = "minDegree")]
    min_degree: i64,
    coeffs: Vec<(JsonInt, JsonInt)>,
}

impl Serialize for Poly<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            var: VAR.to_string(),
            coeffs: encode(self.coeffs()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        if repr.var != VAR {
            return Err(D::Error::custom(format!("unknown variable {:?}", repr.var)));
        }
        decode(&repr.coeffs)
            .map(Poly::new)
            .map_err(D::Error::custom)
    }
}

impl Serialize for LaurentPoly<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentRepr {
            var: VAR.to_string(),
            min_degree: self.min_degree(),
            coeffs: encode(self.coeffs()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = LaurentRepr::deserialize(d)?;
        if repr.var != VAR {
            return Err(D::Error::custom(format!("unknown variable {:?}", repr.var)));
        }
        decode(&repr.coeffs)
            .map(|c| LaurentPoly::new(repr.min_degree, c))
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: Poly<BigRational>,
    den: Poly<BigRational>,
}

impl Serialize for RationalFunction<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numerator().clone(),
            den: self.denominator().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalFunction<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        RationalFunction::new(repr.num, repr.den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn polynomial_json_layout() {
        let p = Poly::new(vec![
            BigRational::new((-1).into(), 2.into()),
            BigRational::from_integer(0.into()),
            BigRational::from_integer(3.into()),
        ]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"var":"q","coeffs":[[-1,2],[0,1],[3,1]]}"#);
        let back: Poly<BigRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(3).pow(50u32);
        let p = Poly::new(vec![BigRational::from_integer(big.clone())]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, format!(r#"{{"var":"q","coeffs":[["{big}",1]]}}"#));
        let back: Poly<BigRational> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn laurent_json_has_min_degree() {
        let l = LaurentPoly::new(-1, vec![BigRational::from_integer(1.into())]);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"var":"q","minDegree":-1,"coeffs":[[1,1]]}"#);
    }

    #[test]
    fn rejects_zero_denominator_and_foreign_variable() {
        assert!(
            serde_json::from_str::<Poly<BigRational>>(r#"{"var":"q","coeffs":[[1,0]]}"#).is_err()
        );
        assert!(
            serde_json::from_str::<Poly<BigRational>>(r#"{"var":"T","coeffs":[[1,1]]}"#).is_err()
        );
    }
}
