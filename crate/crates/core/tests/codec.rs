use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use phcalc_core::godel::*;
use phcalc_core::subset::colex_subsets;
use phcalc_core::{Coloring, FiniteSet};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Primality straight from the definition: no divisor strictly between 1 and x.
fn is_prime_by_definition(x: &BigUint) -> bool {
    if x <= &BigUint::one() {
        return false;
    }
    let mut y = big(2);
    while &y < x {
        if (x % &y).is_zero() {
            return false;
        }
        y += 1u32;
    }
    true
}

/// `μ x < bound [p < x ∧ Prime(x)]`, 0 when the range has no witness.
fn next_prime_mu(p: &BigUint, bound: &BigUint) -> BigUint {
    let mut x = BigUint::zero();
    while &x < bound {
        if &x > p && is_prime_by_definition(&x) {
            return x;
        }
        x += 1u32;
    }
    BigUint::zero()
}

#[test]
fn primes_agree_with_factorial_bounded_mu() {
    // p_{i+1} = μ x < p_i! + 1 [p_i < x ∧ Prime(x)]
    let mut p = big(2);
    assert_eq!(nth_prime(0).unwrap(), 2);
    for i in 0..100u64 {
        let fact: BigUint = (1..=p.to_u64().unwrap()).map(BigUint::from).product();
        let strict = next_prime_mu(&p, &(&fact + 1u32));
        let inclusive = next_prime_mu(&p, &(&fact + 2u32));
        if i == 0 {
            // 2! + 1 = 3 is itself the next prime, so only x <= p! + 1 reaches it
            assert_eq!(strict, big(0));
        } else {
            assert_eq!(strict, inclusive);
        }
        assert_eq!(big(nth_prime(i + 1).unwrap()), inclusive, "p_{}", i + 1);
        p = inclusive;
    }
}

fn exponents(a: u64) -> Vec<(u64, u64)> {
    // (prime, exponent) pairs by trial division, independent of the codec
    let mut out = Vec::new();
    let mut rest = a;
    let mut d = 2;
    while rest > 1 {
        let mut e = 0;
        while rest % d == 0 {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    out
}

#[test]
fn literal_evaluators_agree_with_structural_codec() {
    let small_primes: Vec<u64> = (0..30).map(|i| nth_prime(i).unwrap()).collect();
    for a in 0..=10_000u64 {
        let v = big(a);
        let f = exponents(a);
        let is_seq = a == 1
            || (a > 1 && f.iter().enumerate().all(|(i, &(p, _))| p == small_primes[i]));
        assert_eq!(seq_predicate_literal(&v).unwrap(), is_seq, "Seq({a})");
        assert_eq!(decode_seq(&v).is_ok(), is_seq, "decode({a})");
        let lgh = if is_seq && a > 1 { f.len() as u64 - 1 } else { 0 };
        assert_eq!(lgh_literal(&v).unwrap(), lgh, "Lgh({a})");
        if is_seq {
            let xs = decode_seq_u64(&v).unwrap();
            assert_eq!(seq_len(&v).unwrap(), xs.len());
            for (x, &c) in xs.iter().enumerate() {
                assert_eq!(component_literal(&v, x as u64).unwrap(), big(c), "({a})_{x}");
            }
        }
        for x in 0..6u64 {
            let e = f.iter().find(|&&(p, _)| p == small_primes[x as usize]).map_or(0, |&(_, e)| e);
            let expect = if a == 0 { 0 } else { e.saturating_sub(1) };
            assert_eq!(component_literal(&v, x).unwrap(), big(expect), "({a})_{x}");
        }
    }
}

#[test]
fn sequence_round_trips() {
    fn rec(prefix: &mut Vec<u64>, depth: usize) {
        let code = encode_seq_u64(prefix).unwrap();
        assert_eq!(&decode_seq_u64(&code.value).unwrap(), prefix);
        assert!(seq_predicate_literal(&code.value).unwrap());
        if depth == 0 {
            return;
        }
        for x in 0..=7 {
            prefix.push(x);
            rec(prefix, depth - 1);
            prefix.pop();
        }
    }
    // full tree to length 4, then a sweep of length-5 sequences
    rec(&mut Vec::new(), 4);
    for seed in 0..4096u64 {
        let xs: Vec<u64> = (0..5).map(|i| (seed >> (i * 3)) & 7).collect();
        assert_eq!(decode_seq_u64(&encode_seq_u64(&xs).unwrap().value).unwrap(), xs);
    }
}

#[test]
fn set_round_trips_and_factor_count() {
    for mask in 0u32..256 {
        let s = FiniteSet::from_sorted((0..8).filter(|i| mask >> i & 1 == 1).collect()).unwrap();
        let code = encode_set(&s);
        assert_eq!(decode_set(&code.value).unwrap(), s);
        let first_primes = [2u32, 3, 5, 7, 11, 13, 17, 19];
        let distinct = first_primes.iter().filter(|&&p| (&code.value % p).is_zero()).count();
        let rest = first_primes.iter().fold(code.value.clone(), |mut v, &p| {
            while (&v % p).is_zero() {
                v /= p;
            }
            v
        });
        assert!(rest.is_one());
        assert_eq!(distinct, s.len());
    }
}

#[test]
fn pairing_is_a_bijection_on_the_grid() {
    let mut seen = std::collections::HashMap::new();
    for x in 0..=200u64 {
        for y in 0..=200u64 {
            let z = pair_u64(x, y).unwrap();
            assert_eq!(z, (x + y) * (x + y + 1) / 2 + y);
            assert_eq!(unpair_u64(z), (x, y));
            assert!(seen.insert(z, (x, y)).is_none(), "collision at {z}");
        }
    }
    assert_eq!(pair_u64(1, 2).unwrap(), 8);
    for z in 0..=20_000u64 {
        let (x, y) = unpair_u64(z);
        assert_eq!(pair_u64(x, y).unwrap(), z);
    }
}

#[test]
fn concat_properties() {
    let samples: Vec<Vec<u64>> = vec![vec![], vec![0], vec![3], vec![1, 2], vec![0, 0, 5], vec![2, 1, 0, 4]];
    for a in &samples {
        for b in &samples {
            let ca = encode_seq_u64(a).unwrap().value;
            let cb = encode_seq_u64(b).unwrap().value;
            let ab = concat(&ca, &cb).unwrap();
            let joined: Vec<u64> = a.iter().chain(b).copied().collect();
            assert_eq!(decode_seq_u64(&ab).unwrap(), joined);
            assert_eq!(seq_len(&ab).unwrap(), a.len() + b.len());
        }
    }
}

fn all_colorings(m: u32, n: usize, c: u32) -> Vec<Coloring> {
    let len = colex_subsets(m, n).len() as u32;
    (0..c.pow(len))
        .map(|mut code| {
            let colors = (0..len)
                .map(|_| {
                    let x = code % c;
                    code /= c;
                    x
                })
                .collect();
            Coloring::new(m, n, c, colors).unwrap()
        })
        .collect()
}

#[test]
fn partition_round_trips_and_bit_bounds() {
    for m in 0..=3u32 {
        for n in 0..=2usize.min(m as usize) {
            for c in 1..=2u32 {
                let bound = code_bits(m, n, c).unwrap();
                for p in all_colorings(m, n, c) {
                    let code = encode_partition(&p).unwrap();
                    assert!(big(code.value.bits()) <= bound, "({m},{n},{c})");
                    assert_eq!(decode_partition(&code.value, m, n, c).unwrap(), p);
                }
            }
        }
    }
    assert_eq!(all_colorings(3, 2, 2).len(), 8);
    let p = Coloring::from_fn(4, 2, 2, |s| (s[0] + s[1]) % 2).unwrap();
    let code = encode_partition(&p).unwrap();
    assert!(big(code.value.bits()) <= code_bits(4, 2, 2).unwrap());
}

#[test]
fn partition_codes_are_injective_on_small_shapes() {
    let mut seen = std::collections::HashSet::new();
    for p in all_colorings(3, 2, 2).into_iter().chain(all_colorings(3, 1, 2)) {
        assert!(seen.insert(encode_partition(&p).unwrap().value));
    }
}
