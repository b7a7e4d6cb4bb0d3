//! Prime-power coding of sequences, sets, pairs and colorings.

mod code;
pub mod pairing;
pub mod partition;
pub mod primes;
pub mod sequence;

use num_bigint::BigUint;
use thiserror::Error;

pub use code::{factored, Code, CodeKind};
pub use pairing::{pair, pair_u64, unpair, unpair_u64};
pub use partition::{
    code_bits, decode_partition, decode_set, encode_partition, encode_partition_with_limit, encode_set,
    DEFAULT_BIT_LIMIT,
};
pub use primes::{mu_bounded, mu_bounded_inclusive, nth_prime, prime_index, MAX_PRIME_INDEX};
pub use sequence::{
    component_literal, concat, decode_seq, decode_seq_u64, encode_seq, encode_seq_u64, lgh_literal, seq_len,
    seq_predicate_literal,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("0 codes nothing")]
    Zero,
    #[error("not a sequence code: p_{index} = {prime} is missing below a larger prime factor")]
    NotSeq { index: u64, prime: u64 },
    #[error("not a set code: {0}")]
    NotSetCode(String),
    #[error("prime index {index} exceeds the limit {limit}")]
    PrimeIndexTooLarge { index: u64, limit: u64 },
    #[error("code would need about {estimate_bits} bits, limit is {limit}")]
    TooLarge { estimate_bits: BigUint, limit: u64 },
    #[error("malformed code: {0}")]
    Structural(String),
    #[error("{0}")]
    Param(String),
}
