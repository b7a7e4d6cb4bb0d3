//! Cantor pairing `⟨x, y⟩ = (x + y)(x + y + 1)/2 + y`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::CodecError;

pub fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

/// Inverse of [`pair`]; total on the naturals.
pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8z + 1) - 1) / 2)
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = &w - &y;
    (x, y)
}

pub fn pair_u64(x: u64, y: u64) -> Result<u64, CodecError> {
    pair(&x.into(), &y.into())
        .to_u64()
        .ok_or_else(|| CodecError::Param(format!("<{x}, {y}> exceeds u64")))
}

pub fn unpair_u64(z: u64) -> (u64, u64) {
    let (x, y) = unpair(&z.into());
    (x.to_u64().expect("x <= z"), y.to_u64().expect("y <= z"))
}
