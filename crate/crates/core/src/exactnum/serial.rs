//! JSON forms: `Cyclotomic` as `{conductor, coeffs: [[k, num, den], ...]}`,
//! `QuadraticNumber` as `{d, a, b}` with rationals written `"n/d"`,
//! `SurdSum` as `[[m, "c"], ...]` meaning `Σ c·√m`.
//! Integers that fit in an `i64` are JSON numbers; larger ones are strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{Cyclotomic, Matrix, QuadraticNumber, Rational, SurdSum};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Text(String),
}

impl From<&BigInt> for JsonInt {
    fn from(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Text(b.to_string()),
        }
    }
}

impl JsonInt {
    fn to_big<E: de::Error>(&self) -> Result<BigInt, E> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Text(s) => BigInt::from_str(s).map_err(E::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    conductor: u32,
    coeffs: Vec<(u64, JsonInt, JsonInt)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloJson {
            conductor: self.conductor(),
            coeffs: self
                .terms()
                .iter()
                .map(|(k, c)| (*k as u64, c.numer().into(), c.denom().into()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycloJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(j.coeffs.len());
        for (k, n, den) in &j.coeffs {
            let den = den.to_big::<D::Error>()?;
            if den == BigInt::from(0) {
                return Err(de::Error::custom("zero denominator"));
            }
            terms.push((*k, Rational::new(n.to_big::<D::Error>()?, den)));
        }
        Cyclotomic::from_terms(j.conductor, &terms).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadJson {
    d: u64,
    a: String,
    b: String,
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadJson {
            d: self.d(),
            a: self.a().to_string(),
            b: self.b().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = QuadJson::deserialize(d)?;
        let a = Rational::from_str(&j.a).map_err(de::Error::custom)?;
        let b = Rational::from_str(&j.b).map_err(de::Error::custom)?;
        QuadraticNumber::new(j.d, a, b).map_err(de::Error::custom)
    }
}

impl Serialize for SurdSum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms()
            .map(|(m, c)| (m, c.to_string()))
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurdSum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let mut acc = SurdSum::zero();
        for (m, c) in Vec::<(u64, String)>::deserialize(d)? {
            if m == 0 {
                return Err(de::Error::custom("surd radicand must be positive"));
            }
            let c = Rational::from_str(&c).map_err(de::Error::custom)?;
            acc = &acc + &SurdSum::surd(c, m);
        }
        Ok(acc)
    }
}

/// `#[serde(with = ...)]` helper writing a [`Rational`] as `"n/d"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        r.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        Rational::from_str(&text).map_err(de::Error::custom)
    }
}

/// Matrices are written as a list of rows.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<Cyclotomic>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{gauss_sqrt, ratio};

    #[test]
    fn cyclotomic_round_trip() {
        let x = gauss_sqrt(21, 84).unwrap().scale(&ratio(3, 2));
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"conductor\":84,\"coeffs\":[["));
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn huge_coefficients_are_strings() {
        let x = (&Cyclotomic::one(7) + &Cyclotomic::zeta(7, 1).unwrap()).pow(200);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.contains('"'));
        let y: Cyclotomic = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn quadratic_round_trip() {
        let q = QuadraticNumber::new(21, ratio(5, 2), ratio(1, 2)).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"d":21,"a":"5/2","b":"1/2"}"#);
        assert_eq!(serde_json::from_str::<QuadraticNumber>(&s).unwrap(), q);
    }

    #[test]
    fn surd_round_trip() {
        let x = &SurdSum::from_int(21) + &SurdSum::surd(ratio(3, 2), 21);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[[1,"21"],[21,"3/2"]]"#);
        assert_eq!(serde_json::from_str::<SurdSum>(&s).unwrap(), x);
    }
}
