//! Sequence codes `∏ p_i^{x_i + 1}` and the arithmetic predicates on them.
//!
//! The `*_literal` functions evaluate the defining formulas by bounded
//! search with divisibility tests; the structural codec factors the code
//! directly. Tests hold the two routes against each other.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::nth_prime;
use super::{Code, CodeKind, CodecError};

fn big_prime(i: u64) -> Result<BigUint, CodecError> {
    nth_prime(i).map(BigUint::from)
}

/// Exponent of `p` in `a` (a > 0), by repeated squaring then descent.
pub(crate) fn valuation(a: &BigUint, p: &BigUint) -> (u64, BigUint) {
    debug_assert!(!a.is_zero());
    let mut rest = a.clone();
    let mut powers = vec![p.clone()];
    // find the largest p^(2^j) dividing rest
    loop {
        let r = &rest % powers.last().unwrap();
        if !r.is_zero() {
            break;
        }
        let next = powers.last().unwrap() * powers.last().unwrap();
        if next.bits() > rest.bits() + 1 {
            break;
        }
        powers.push(next);
    }
    let mut e = 0u64;
    for (j, pw) in powers.iter().enumerate().rev() {
        loop {
            let (q, r) = rest.div_rem(pw);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1 << j;
        }
    }
    (e, rest)
}

/// Code of a finite sequence; the empty sequence is 1.
pub fn encode_seq(xs: &[BigUint]) -> Result<Code, CodecError> {
    let mut acc = BigUint::one();
    for (i, x) in xs.iter().enumerate() {
        let e = (x + 1u32)
            .to_u32()
            .ok_or_else(|| CodecError::TooLarge { estimate_bits: BigUint::from(u64::MAX), limit: u64::from(u32::MAX) })?;
        acc *= big_prime(i as u64)?.pow(e);
    }
    Ok(Code::new(acc, CodeKind::Seq))
}

pub fn encode_seq_u64(xs: &[u64]) -> Result<Code, CodecError> {
    encode_seq(&xs.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>())
}

/// Inverse of [`encode_seq`]; rejects values outside `Seq`.
pub fn decode_seq(a: &BigUint) -> Result<Vec<BigUint>, CodecError> {
    if a.is_zero() {
        return Err(CodecError::Zero);
    }
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut i = 0u64;
    while !rest.is_one() {
        let p = big_prime(i)?;
        let (e, q) = valuation(&rest, &p);
        if e == 0 {
            return Err(CodecError::NotSeq {
                index: i,
                prime: nth_prime(i)?,
            });
        }
        out.push(BigUint::from(e - 1));
        rest = q;
        i += 1;
    }
    Ok(out)
}

pub fn decode_seq_u64(a: &BigUint) -> Result<Vec<u64>, CodecError> {
    decode_seq(a)?
        .into_iter()
        .map(|x| x.to_u64().ok_or_else(|| CodecError::Structural(format!("component {x} exceeds u64"))))
        .collect()
}

/// Length of the coded sequence.
pub fn seq_len(a: &BigUint) -> Result<usize, CodecError> {
    decode_seq(a).map(|v| v.len())
}

/// `a = 1 ∨ (a > 1 ∧ ∀x ≤ a [p_{x+1} | a → p_x | a])`.
///
/// The quantifier is cut short once the cofactor left after removing
/// `p_0..p_x` is 1 or a single prime, past which every instance is decided.
pub fn seq_predicate_literal(a: &BigUint) -> Result<bool, CodecError> {
    if a.is_one() {
        return Ok(true);
    }
    if a.is_zero() {
        return Ok(false);
    }
    let mut rest = a.clone();
    let mut x = 0u64;
    loop {
        let p = big_prime(x)?;
        let q = big_prime(x + 1)?;
        if (a % &q).is_zero() && !(a % &p).is_zero() {
            return Ok(false);
        }
        rest = valuation(&rest, &p).1;
        if rest.is_one() {
            return Ok(true);
        }
        if &q * &q > rest && rest != q {
            // rest is a prime beyond p_{x+1}; its predecessor does not divide a
            return Ok(false);
        }
        x += 1;
    }
}

/// `Lgh(a)`: 0 off `Seq` or at 1, else `μ x ≤ a [p_x | a ∧ ¬ p_{x+1} | a]`,
/// the index of the last prime factor.
pub fn lgh_literal(a: &BigUint) -> Result<u64, CodecError> {
    if a.is_one() || !seq_predicate_literal(a)? {
        return Ok(0);
    }
    lgh_unchecked(a)
}

/// The μ-search of `Lgh` without the `Seq` guard.
pub(crate) fn lgh_unchecked(a: &BigUint) -> Result<u64, CodecError> {
    if a.is_zero() {
        return Ok(0);
    }
    let mut rest = a.clone();
    let mut x = 0u64;
    loop {
        let p = big_prime(x)?;
        if (a % &p).is_zero() && !(a % big_prime(x + 1)?).is_zero() {
            return Ok(x);
        }
        rest = valuation(&rest, &p).1;
        if rest.is_one() {
            return Ok(0);
        }
        x += 1;
    }
}

/// `(a)_x = μ y ≤ a [p_x^{y+1} | a ∧ ¬ p_x^{y+2} | a]`.
///
/// Once `p_x^{y+1}` stops dividing `a` no larger `y` can succeed, so the
/// search ends there with the default 0.
pub fn component_literal(a: &BigUint, x: u64) -> Result<BigUint, CodecError> {
    if a.is_zero() {
        return Ok(BigUint::zero());
    }
    let p = big_prime(x)?;
    let mut y = BigUint::zero();
    let mut pw = p.clone(); // p^(y+1)
    loop {
        if y > *a || !(a % &pw).is_zero() {
            return Ok(BigUint::zero());
        }
        let next = &pw * &p;
        if !(a % &next).is_zero() {
            return Ok(y);
        }
        pw = next;
        y += 1u32;
    }
}

/// `a * b = a · ∏_{x ≤ Lgh(b)} p_{Lgh(a)+x+1}^{(b)_x + 1}`, with the empty
/// sequence 1 acting as identity on either side.
pub fn concat(a: &BigUint, b: &BigUint) -> Result<BigUint, CodecError> {
    if a.is_one() {
        return Ok(b.clone());
    }
    if b.is_one() {
        return Ok(a.clone());
    }
    for v in [a, b] {
        decode_seq(v).map_err(|e| CodecError::Param(format!("concat of non-sequence {v}: {e}")))?;
    }
    let la = lgh_unchecked(a)?;
    let lb = lgh_unchecked(b)?;
    let mut acc = a.clone();
    for x in 0..=lb {
        let e = component_literal(b, x)? + 1u32;
        let e = e.to_u32().ok_or_else(|| CodecError::Param("component too large".into()))?;
        acc *= big_prime(la + x + 1)?.pow(e);
    }
    Ok(acc)
}
