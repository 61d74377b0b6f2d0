use crate::error::{Error, Result};

/// Exponent of 2 in n.
pub fn two_adic_valuation(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::UndefinedInput("2-adic valuation of 0".into()));
    }
    Ok(n.trailing_zeros())
}

/// Calls `f(p, e)` for each prime power p^e exactly dividing n.
fn for_each_prime_power(mut n: u64, mut f: impl FnMut(u64, u32)) {
    let tz = n.trailing_zeros();
    if tz > 0 {
        f(2, tz);
        n >>= tz;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            f(p, e);
        }
        p += 2;
    }
    if n > 1 {
        f(n, 1);
    }
}

/// Ω(n): number of prime factors counted with multiplicity.
pub fn big_omega(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::UndefinedInput("Ω(0)".into()));
    }
    let mut total = 0;
    for_each_prime_power(n, |_, e| total += e);
    Ok(total)
}

/// ω(n): number of distinct prime factors.
pub fn small_omega(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::UndefinedInput("ω(0)".into()));
    }
    let mut total = 0;
    for_each_prime_power(n, |_, _| total += 1);
    Ok(total)
}

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::UndefinedInput("μ(0)".into()));
    }
    let mut mu = 1i8;
    let mut squareful = false;
    for_each_prime_power(n, |_, e| {
        if e > 1 {
            squareful = true;
        }
        mu = -mu;
    });
    Ok(if squareful { 0 } else { mu })
}

/// Distinct prime divisors of n, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n > 1 {
        for_each_prime_power(n, |p, _| out.push(p));
    }
    out
}

/// μ(k) for k = 0..=limit (entry 0 unused), by linear sieve.
pub fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    let mut is_comp = vec![false; limit + 1];
    let mut primes = Vec::new();
    if limit >= 1 {
        mu[0] = 0;
    }
    for i in 2..=limit {
        if !is_comp[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > limit {
                break;
            }
            is_comp[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(two_adic_valuation(8).unwrap(), 3);
        assert_eq!(two_adic_valuation(12).unwrap(), 2);
        for n in (1..200).step_by(2) {
            assert_eq!(two_adic_valuation(n).unwrap(), 0);
        }
        assert!(matches!(two_adic_valuation(0), Err(Error::UndefinedInput(_))));
    }

    #[test]
    fn big_omega_examples() {
        assert_eq!(big_omega(1).unwrap(), 0);
        assert_eq!(big_omega(12).unwrap(), 3);
        for p in [2u64, 3, 5, 97, 7919, 1_000_003] {
            assert_eq!(big_omega(p).unwrap(), 1);
        }
        assert!(big_omega(0).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_table_matches_pointwise() {
        let table = mobius_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(table[n as usize], mobius(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn prime_divisor_lists() {
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(4), vec![2]);
        assert_eq!(prime_divisors(84), vec![2, 3, 7]);
    }
}
