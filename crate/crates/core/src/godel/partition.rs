//! Set codes and partition codes.
//!
//! A coloring of `[m]^n` is coded as `∏_δ p_δ^{⟨⌈m_δ⌉, color(m_δ)⟩ + 1}`
//! with `m_δ` running over the n-subsets in colex order.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::pairing::{pair, unpair};
use super::primes::nth_prime;
use super::sequence::{decode_seq, encode_seq_u64, valuation};
use super::{Code, CodeKind, CodecError};
use crate::coloring::{subset_count, Coloring};
use crate::subset::{colex_subsets, FiniteSet};

/// Default ceiling on the bit length of a materialized partition code.
pub const DEFAULT_BIT_LIMIT: u64 = 1 << 24;

pub fn encode_set(s: &FiniteSet) -> Code {
    let xs: Vec<u64> = s.elements().iter().map(|&x| u64::from(x)).collect();
    let value = encode_seq_u64(&xs).expect("set elements fit u32 exponents").value;
    Code::new(value, CodeKind::Set)
}

pub fn decode_set(value: &BigUint) -> Result<FiniteSet, CodecError> {
    let xs = decode_seq(value)?;
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        let x = x
            .to_u32()
            .ok_or_else(|| CodecError::NotSetCode(format!("element {x} exceeds u32")))?;
        out.push(x);
    }
    FiniteSet::from_sorted(out).map_err(|e| CodecError::NotSetCode(e.to_string()))
}

/// Upper bound on the bit length of any partition code of `[m]^n` into
/// `c` colors.
pub fn code_bits(m: u32, n: usize, c: u32) -> Result<BigUint, CodecError> {
    if n as u64 > u64::from(m) {
        return Err(CodecError::Param(format!("n = {n} exceeds m = {m}")));
    }
    let top = BigUint::from(c.saturating_sub(1));
    let mut total = BigUint::zero();
    for (delta, s) in colex_subsets(m, n).iter().enumerate() {
        let p = nth_prime(delta as u64)?;
        let set = encode_set(&FiniteSet::from_sorted(s.clone()).expect("colex subsets are sorted"));
        // bits(p^e) <= e * bits(p)
        total += (pair(&set.value, &top) + 1u32) * (64 - p.leading_zeros());
    }
    Ok(total.max(BigUint::one()))
}

pub fn encode_partition(p: &Coloring) -> Result<Code, CodecError> {
    encode_partition_with_limit(p, DEFAULT_BIT_LIMIT)
}

pub fn encode_partition_with_limit(p: &Coloring, limit_bits: u64) -> Result<Code, CodecError> {
    let estimate = code_bits(p.m(), p.n(), p.c())?;
    if estimate > BigUint::from(limit_bits) {
        return Err(CodecError::TooLarge {
            estimate_bits: estimate,
            limit: limit_bits,
        });
    }
    let mut acc = BigUint::one();
    for (delta, (s, &color)) in colex_subsets(p.m(), p.n()).iter().zip(p.colors()).enumerate() {
        let set = encode_set(&FiniteSet::from_sorted(s.clone()).expect("colex subsets are sorted"));
        let e = (pair(&set.value, &BigUint::from(color)) + 1u32)
            .to_u32()
            .expect("exponent bounded by the bit guard");
        acc *= BigUint::from(nth_prime(delta as u64)?).pow(e);
    }
    Ok(Code::new(acc, CodeKind::Partition))
}

/// Inverse of [`encode_partition`] for the given shape.
pub fn decode_partition(value: &BigUint, m: u32, n: usize, c: u32) -> Result<Coloring, CodecError> {
    if value.is_zero() {
        return Err(CodecError::Zero);
    }
    let len = subset_count(m, n).map_err(|e| CodecError::Param(e.to_string()))? as usize;
    let subsets = colex_subsets(m, n);
    let mut rest = value.clone();
    let mut colors = Vec::with_capacity(len);
    for (delta, s) in subsets.iter().enumerate() {
        let p = BigUint::from(nth_prime(delta as u64)?);
        let (e, q) = valuation(&rest, &p);
        if e == 0 {
            return Err(CodecError::Structural(format!("no factor for subset #{delta}")));
        }
        rest = q;
        let (set_code, color) = unpair(&BigUint::from(e - 1));
        let set = decode_set(&set_code)
            .map_err(|err| CodecError::Structural(format!("subset #{delta}: {err}")))?;
        if set.elements() != &s[..] {
            return Err(CodecError::Structural(format!(
                "factor #{delta} codes {set}, expected {}",
                FiniteSet::from_sorted(s.clone()).expect("sorted")
            )));
        }
        let color = color
            .to_u32()
            .filter(|&x| x < c)
            .ok_or_else(|| CodecError::Structural(format!("subset #{delta}: color {color} out of range")))?;
        colors.push(color);
    }
    if !rest.is_one() {
        return Err(CodecError::Structural(format!(
            "code has prime factors beyond the {len} subsets"
        )));
    }
    Coloring::new(m, n, c, colors).map_err(|e| CodecError::Structural(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn set_examples() {
        assert_eq!(encode_set(&FiniteSet::empty()).value, big(1));
        let s = FiniteSet::from_sorted(vec![0, 1, 2]).unwrap();
        assert_eq!(encode_set(&s).value, big(2250));
        assert_eq!(decode_set(&big(2250)).unwrap(), s);
        assert!(decode_set(&big(75)).is_err());
        // 2^2 * 3^1 codes the sequence [1, 0]
        assert!(matches!(decode_set(&big(12)), Err(CodecError::NotSetCode(_))));
    }

    #[test]
    fn single_subset_partition() {
        let p = Coloring::new(1, 1, 1, vec![0]).unwrap();
        let code = encode_partition(&p).unwrap();
        assert_eq!(code.value, big(16));
        assert!(code_bits(1, 1, 1).unwrap() >= big(5));
        assert_eq!(decode_partition(&big(16), 1, 1, 1).unwrap(), p);
    }

    #[test]
    fn empty_partition() {
        let p = Coloring::new(0, 0, 1, vec![0]).unwrap();
        let code = encode_partition(&p).unwrap();
        // [0]^0 = {∅}: one factor 2^{⟨1, 0⟩ + 1} = 2^2
        assert_eq!(code.value, big(4));
        assert!(code_bits(0, 0, 1).unwrap() >= big(code.value.bits()));
        assert_eq!(code_bits(1, 2, 1).ok(), None);
    }

    #[test]
    fn decode_rejects_bad_shapes() {
        assert!(decode_partition(&big(16 * 3), 1, 1, 1).is_err());
        assert!(decode_partition(&big(8), 1, 1, 1).is_err());
        assert!(decode_partition(&big(0), 1, 1, 1).is_err());
        // color 1 with c = 1
        let p = Coloring::new(1, 1, 2, vec![1]).unwrap();
        let v = encode_partition(&p).unwrap().value;
        assert!(decode_partition(&v, 1, 1, 1).is_err());
        assert_eq!(decode_partition(&v, 1, 1, 2).unwrap(), p);
    }

    #[test]
    fn guard_trips() {
        let p = Coloring::constant(6, 2, 2, 0).unwrap();
        match encode_partition_with_limit(&p, 100) {
            Err(CodecError::TooLarge { estimate_bits, limit: 100 }) => assert!(estimate_bits > big(100)),
            other => panic!("{other:?}"),
        }
    }
}
