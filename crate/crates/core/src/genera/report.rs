use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of a verification: `witness` carries the first failing Chern
/// number, an implied zero-cycle degree, or other evidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub inputs: Value,
    pub pass: bool,
    pub witness: Value,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Integers fitting in `i64` become JSON numbers, everything else an exact
/// string (`"p/q"` for fractions).
pub fn exact_int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn exact(q: &BigRational) -> Value {
    if q.is_integer() {
        exact_int(q.numer())
    } else {
        Value::from(q.to_string())
    }
}

pub(crate) fn serialize_int<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    exact_int(n).serialize(s)
}

pub(crate) fn serialize_opt_int<S: serde::Serializer>(n: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    n.as_ref().map(exact_int).serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    #[test]
    fn exact_values() {
        assert_eq!(exact(&frac(-6, 1)), Value::from(-6));
        assert_eq!(exact(&frac(3, 6)), Value::from("1/2"));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(exact_int(&big), Value::from("123456789012345678901234567890"));
    }
}
