//! JSON form: `{"order": N, "num": [...], "den": [...]}`, one numerator and
//! one positive denominator per power-basis coordinate. Integers that fit in
//! an i64 are plain JSON numbers, larger ones are decimal strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycNum, Rational};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(b.to_string()),
        }
    }
}

impl IntRepr {
    fn to_bigint(&self) -> Option<BigInt> {
        match self {
            IntRepr::Small(v) => Some(BigInt::from(*v)),
            IntRepr::Big(s) => s.parse().ok(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycRepr {
    order: u32,
    num: Vec<IntRepr>,
    den: Vec<IntRepr>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self.coeffs();
        CycRepr {
            order: self.order(),
            num: coeffs.iter().map(|c| c.numer().into()).collect(),
            den: coeffs.iter().map(|c| c.denom().into()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycRepr::deserialize(d)?;
        if r.num.len() != r.den.len() {
            return Err(D::Error::custom("num and den arrays differ in length"));
        }
        let coeffs = r
            .num
            .iter()
            .zip(&r.den)
            .map(|(n, d)| {
                let n = n.to_bigint().ok_or_else(|| D::Error::custom("bad integer"))?;
                let d = d.to_bigint().ok_or_else(|| D::Error::custom("bad integer"))?;
                if d <= BigInt::from(0) {
                    return Err(D::Error::custom("denominators must be positive"));
                }
                Ok(Rational::new(n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CycNum::from_coeffs(r.order, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let d = CycNum::quadratic(3, 2, 3).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"order":12,"num":[3,4,0,-2],"den":[1,1,1,1]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn rejects_bad_denominator() {
        let r: Result<CycNum, _> = serde_json::from_str(r#"{"order":1,"num":[1],"den":[0]}"#);
        assert!(r.is_err());
    }
}
