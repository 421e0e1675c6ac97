//! Serde helpers for decibel fields that can hold infinite sentinels.
//!
//! JSON has no literal for infinities, so `+inf` and `-inf` travel as the
//! strings `"+inf"` and `"-inf"` while finite values stay plain numbers.
//! NaN is refused outright; no pipeline value is ever NaN.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::{Error as _, Serializer};
use serde::Serialize;

fn serialize_db<S: Serializer>(value: f64, serializer: S) -> Result<S::Ok, S::Error> {
    if value.is_nan() {
        Err(S::Error::custom("NaN has no report representation"))
    } else if value == f64::INFINITY {
        serializer.serialize_str("+inf")
    } else if value == f64::NEG_INFINITY {
        serializer.serialize_str("-inf")
    } else {
        serializer.serialize_f64(value)
    }
}

struct DbVisitor;

impl<'de> Visitor<'de> for DbVisitor {
    type Value = f64;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a number, \"+inf\", or \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<f64, E> {
        Ok(v)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<f64, E> {
        Ok(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<f64, E> {
        match v {
            "+inf" => Ok(f64::INFINITY),
            "-inf" => Ok(f64::NEG_INFINITY),
            _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
        }
    }
}

struct Db(f64);

impl Serialize for Db {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_db(self.0, serializer)
    }
}

pub mod db_value {
    use super::*;

    pub fn serialize<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_db(*value, serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<f64, D::Error> {
        deserializer.deserialize_any(DbVisitor)
    }
}

pub mod opt_db_value {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<f64>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            None => serializer.serialize_none(),
            Some(v) => serializer.serialize_some(&Db(*v)),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<f64>, D::Error> {
        struct OptVisitor;

        impl<'de> Visitor<'de> for OptVisitor {
            type Value = Option<f64>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a number, \"+inf\", \"-inf\", or null")
            }

            fn visit_none<E: de::Error>(self) -> Result<Self::Value, E> {
                Ok(None)
            }

            fn visit_unit<E: de::Error>(self) -> Result<Self::Value, E> {
                Ok(None)
            }

            fn visit_some<D: Deserializer<'de>>(
                self,
                deserializer: D,
            ) -> Result<Self::Value, D::Error> {
                db_value::deserialize(deserializer).map(Some)
            }
        }

        deserializer.deserialize_option(OptVisitor)
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    #[derive(Serialize, Deserialize, Debug, PartialEq)]
    struct Row {
        #[serde(with = "super::db_value")]
        plain: f64,
        #[serde(with = "super::opt_db_value")]
        optional: Option<f64>,
    }

    #[test]
    fn finite_values_stay_numbers() {
        let row = Row {
            plain: -3.5,
            optional: Some(2.0),
        };
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(json, r#"{"plain":-3.5,"optional":2.0}"#);
        assert_eq!(serde_json::from_str::<Row>(&json).unwrap(), row);
    }

    #[test]
    fn infinities_travel_as_strings() {
        let row = Row {
            plain: f64::NEG_INFINITY,
            optional: Some(f64::INFINITY),
        };
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(json, r#"{"plain":"-inf","optional":"+inf"}"#);
        assert_eq!(serde_json::from_str::<Row>(&json).unwrap(), row);
    }

    #[test]
    fn missing_value_is_null() {
        let row = Row {
            plain: 0.0,
            optional: None,
        };
        let json = serde_json::to_string(&row).unwrap();
        assert_eq!(json, r#"{"plain":0.0,"optional":null}"#);
        assert_eq!(serde_json::from_str::<Row>(&json).unwrap(), row);
    }

    #[test]
    fn unknown_strings_are_rejected() {
        assert!(serde_json::from_str::<Row>(r#"{"plain":"fast","optional":null}"#).is_err());
    }
}
