use std::sync::RwLock;

use super::CodecError;

/// Largest prime index served by [`nth_prime`].
pub const MAX_PRIME_INDEX: u64 = 1_000_000;

static TABLE: RwLock<Vec<u64>> = RwLock::new(Vec::new());

/// The `i`-th prime, 0-indexed: `nth_prime(0) == 2`.
pub fn nth_prime(i: u64) -> Result<u64, CodecError> {
    if i > MAX_PRIME_INDEX {
        return Err(CodecError::PrimeIndexTooLarge {
            index: i,
            limit: MAX_PRIME_INDEX,
        });
    }
    if let Some(&p) = TABLE.read().unwrap().get(i as usize) {
        return Ok(p);
    }
    let mut table = TABLE.write().unwrap();
    if table.len() <= i as usize {
        *table = sieve_first(i as usize + 1);
    }
    Ok(table[i as usize])
}

/// Index of the prime `p`, if `p` is prime and within the table.
pub fn prime_index(p: u64) -> Option<u64> {
    let mut i = 0;
    loop {
        let q = nth_prime(i).ok()?;
        if q == p {
            return Some(i);
        }
        if q > p {
            return None;
        }
        i += 1;
    }
}

fn sieve_first(count: usize) -> Vec<u64> {
    // grow geometrically so repeated calls stay amortized
    let count = count.max(1024).next_power_of_two();
    let n = count as f64;
    let bound = if count < 6 { 15 } else { (n * (n.ln() + n.ln().ln())).ceil() as usize + 1 };
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::with_capacity(count);
    for x in 2..=bound {
        if composite[x] {
            continue;
        }
        primes.push(x as u64);
        let mut y = x * x;
        while y <= bound {
            composite[y] = true;
            y += x;
        }
    }
    primes
}

/// Least `y < bound` with `pred(y)`, and 0 when there is none.
pub fn mu_bounded(bound: u64, mut pred: impl FnMut(u64) -> bool) -> u64 {
    (0..bound).find(|&y| pred(y)).unwrap_or(0)
}

/// Least `y <= bound` with `pred(y)`, and 0 when there is none.
pub fn mu_bounded_inclusive(bound: u64, mut pred: impl FnMut(u64) -> bool) -> u64 {
    (0..=bound).find(|&y| pred(y)).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        assert_eq!(nth_prime(0).unwrap(), 2);
        assert_eq!(nth_prime(3).unwrap(), 7);
        assert_eq!(nth_prime(99).unwrap(), 541);
        assert_eq!(prime_index(541), Some(99));
        assert_eq!(prime_index(9), None);
    }

    #[test]
    fn index_bound() {
        assert!(nth_prime(MAX_PRIME_INDEX + 1).is_err());
    }

    #[test]
    fn mu_defaults_to_zero() {
        assert_eq!(mu_bounded(10, |y| y >= 3), 3);
        assert_eq!(mu_bounded(10, |_| false), 0);
        assert_eq!(mu_bounded(0, |_| true), 0);
        assert_eq!(mu_bounded_inclusive(3, |y| y == 3), 3);
        assert_eq!(mu_bounded(3, |y| y == 3), 0);
    }
}
