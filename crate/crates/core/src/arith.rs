//! Small integer utilities: primality, prime sweeps, modular arithmetic.

/// Deterministic primality by trial division; fine for the sweep ranges
/// used here (up to a few times 10⁴).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut f = 3u64;
    while f * f <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

/// All primes `p ≤ limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| if p { Some(k as u64) } else { None })
        .collect()
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m > 0);
    let mm = m as u128;
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo prime `p` (Fermat).
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(is_prime(p) && !a.is_multiple_of(p));
    mod_pow(a % p, p - 2, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(173) && is_prime(9973));
        assert!(!is_prime(1) && !is_prime(169) && !is_prime(171));
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_up_to(500);
        let trial: Vec<u64> = (0..=500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
    }

    #[test]
    fn modular_inverse() {
        for p in [5u64, 7, 13, 173] {
            for a in 1..p.min(40) {
                assert_eq!(a * mod_inv(a, p) % p, 1);
            }
        }
    }
}
