use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::primes::nth_prime;
use super::sequence::valuation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Set,
    Seq,
    Pair,
    Partition,
    Raw,
}

/// A natural number together with what it codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Code {
    pub kind: CodeKind,
    #[serde(with = "decimal")]
    pub value: BigUint,
}

impl Code {
    pub fn new(value: BigUint, kind: CodeKind) -> Self {
        Code { kind, value }
    }

    pub fn raw(value: BigUint) -> Self {
        Code::new(value, CodeKind::Raw)
    }

    /// Prime factorization over consecutive primes, e.g. `2^1·3^2·5^3`.
    ///
    /// Trial division stops at the prime table limit; any cofactor left is
    /// printed as a trailing `·rest`.
    pub fn factored(&self) -> String {
        factored(&self.value)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn factored(value: &BigUint) -> String {
    if value.is_zero() {
        return "0".into();
    }
    if value.is_one() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut rest = value.clone();
    let mut i = 0u64;
    while !rest.is_one() {
        let Ok(p) = nth_prime(i) else {
            parts.push(rest.to_string());
            break;
        };
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            parts.push(format!("{rest}^1"));
            break;
        }
        let (e, q) = valuation(&rest, &pb);
        if e > 0 {
            parts.push(format!("{p}^{e}"));
            rest = q;
        }
        i += 1;
    }
    parts.join("·")
}

mod decimal {
    use super::*;

    pub fn serialize<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::from_str(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let c = Code::new(BigUint::from(2250u32), CodeKind::Set);
        let j = serde_json::to_string(&c).unwrap();
        assert_eq!(j, r#"{"kind":"set","value":"2250"}"#);
        assert_eq!(serde_json::from_str::<Code>(&j).unwrap(), c);
        assert!(serde_json::from_str::<Code>(r#"{"kind":"set","value":"-1"}"#).is_err());
    }

    #[test]
    fn factored_forms() {
        assert_eq!(factored(&BigUint::from(2250u32)), "2^1·3^2·5^3");
        assert_eq!(factored(&BigUint::from(1u32)), "1");
        assert_eq!(factored(&BigUint::from(10u32)), "2^1·5^1");
        assert_eq!(factored(&BigUint::from(49u32)), "7^2");
        assert_eq!(factored(&BigUint::from(7u32 * 1_000_003)), "7^1·1000003^1");
    }
}
