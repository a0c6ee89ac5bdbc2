//! JSON wire formats.
//!
//! Integers of magnitude below 2^53 are written as JSON numbers, larger ones
//! as decimal strings; both spellings are accepted on input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::forms::{validate_form, SymForm};
use crate::isometry::{validate_isometry, FormIsometry};
use crate::linalg::IntMatrix;

const SAFE_BITS: u64 = 53;

/// An arbitrary-precision integer with the number-or-string JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(x: BigInt) -> Self {
        JsonInt(x)
    }
}

impl From<i64> for JsonInt {
    fn from(x: i64) -> Self {
        JsonInt(BigInt::from(x))
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.bits() <= SAFE_BITS {
            s.serialize_i64(self.0.to_i64().expect("fits in 53 bits"))
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!("expected an integer, got {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                BigInt::from_str(v.trim())
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

pub fn matrix_to_json(m: &IntMatrix) -> Vec<Vec<JsonInt>> {
    (0..m.rows()).map(|i| m.row(i).iter().cloned().map(JsonInt).collect()).collect()
}

pub fn matrix_from_json(rows: &[Vec<JsonInt>]) -> Result<IntMatrix> {
    IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect())
}

/// `{"label": string?, "matrix": [[int]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<JsonInt>>,
}

impl FormJson {
    pub fn from_form(form: &SymForm) -> Self {
        FormJson { label: form.label().map(str::to_owned), matrix: matrix_to_json(form.matrix()) }
    }

    pub fn to_form(&self) -> Result<SymForm> {
        if self.matrix.is_empty() {
            return Err(Error::EmptyForm);
        }
        validate_form(matrix_from_json(&self.matrix)?, self.label.clone())
    }
}

/// `{"form": <form>, "isometry": [[int]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryJson {
    pub form: FormJson,
    pub isometry: Vec<Vec<JsonInt>>,
}

impl IsometryJson {
    pub fn from_isometry(iso: &FormIsometry) -> Self {
        use crate::isometry::Isometry;
        IsometryJson { form: FormJson::from_form(iso.form()), isometry: matrix_to_json(iso.matrix()) }
    }

    pub fn to_isometry(&self) -> Result<FormIsometry> {
        let form = self.form.to_form()?;
        validate_isometry(&form, matrix_from_json(&self.isometry)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn small_ints_are_numbers_large_are_strings() {
        let small = JsonInt(BigInt::from((1i64 << 53) - 1));
        assert_eq!(serde_json::to_string(&small).unwrap(), "9007199254740991");
        let large = JsonInt(BigInt::from(1i64 << 53));
        assert_eq!(serde_json::to_string(&large).unwrap(), "\"9007199254740992\"");
        let neg = JsonInt(-(BigInt::one() << 80usize));
        let s = serde_json::to_string(&neg).unwrap();
        assert_eq!(s, "\"-1208925819614629174706176\"");
        assert_eq!(serde_json::from_str::<JsonInt>(&s).unwrap(), neg);
    }

    #[test]
    fn parse_rejects_floats() {
        assert!(serde_json::from_str::<JsonInt>("1.5").is_err());
        assert!(serde_json::from_str::<JsonInt>("\"abc\"").is_err());
        assert_eq!(serde_json::from_str::<JsonInt>("\"-7\"").unwrap(), JsonInt::from(-7));
    }

    #[test]
    fn form_json() {
        let f: FormJson = serde_json::from_str(r#"{"matrix": [[0, 1], ["1", 0]]}"#).unwrap();
        let form = f.to_form().unwrap();
        assert_eq!(form, crate::forms::hyperbolic());
        assert_eq!(serde_json::to_string(&FormJson::from_form(&form)).unwrap(), r#"{"matrix":[[0,1],[1,0]]}"#);
        let labelled = FormJson::from_form(&form.with_label("H"));
        assert_eq!(serde_json::to_string(&labelled).unwrap(), r#"{"label":"H","matrix":[[0,1],[1,0]]}"#);
        let empty: FormJson = serde_json::from_str(r#"{"matrix": []}"#).unwrap();
        assert_eq!(empty.to_form().unwrap_err(), Error::EmptyForm);
        let ragged: FormJson = serde_json::from_str(r#"{"matrix": [[1, 0], [0]]}"#).unwrap();
        assert!(matches!(ragged.to_form(), Err(Error::Dimension(_))));
    }

    #[test]
    fn isometry_json() {
        let j: IsometryJson =
            serde_json::from_str(r#"{"form": {"matrix": [[0,1],[1,0]]}, "isometry": [[0,1],[1,0]]}"#).unwrap();
        let iso = j.to_isometry().unwrap();
        assert_eq!(IsometryJson::from_isometry(&iso), j);
    }
}
