//! Primality testing and integer factorization sized for this crate's needs:
//! trial division, deterministic Miller–Rabin below 2⁶⁴, probabilistic above,
//! and Brent–Pollard rho for the occasional larger cofactor.

use super::Int;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Primes below `n` by sieve of Eratosthenes.
pub fn primes_below(n: usize) -> Vec<u64> {
    if n < 3 {
        return vec![];
    }
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // deterministic witness set for u64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Miller–Rabin on BigInt: deterministic below 2⁶⁴, 40 pseudo-random rounds
/// above (fixed seeds, reproducible).
pub fn is_prime(n: &Int) -> bool {
    if let Some(u) = to_u64(n) {
        return is_prime_u64(u);
    }
    if n.is_negative() || n.is_zero() || n.is_one() {
        return false;
    }
    let two = Int::from(2);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - Int::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut state = 0x9e3779b97f4a7c15u64;
    'witness: for _ in 0..40 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = Int::from(state % u64::MAX) % (n - &two) + &two;
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn to_u64(n: &Int) -> Option<u64> {
    use num_traits::ToPrimitive;
    n.to_u64()
}

/// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
pub fn pollard_rho(n: &Int) -> Option<Int> {
    if n.is_even() {
        return Some(Int::from(2));
    }
    let mut c = Int::one();
    for _ in 0..32 {
        let mut x = Int::from(2);
        let mut y = Int::from(2);
        let mut d = Int::one();
        let f = |v: &Int| (v * v + &c) % n;
        let mut count = 0u64;
        while d.is_one() && count < 1 << 22 {
            x = f(&x);
            y = f(&f(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            count += 1;
        }
        if !d.is_one() && d != *n {
            return Some(d);
        }
        c += Int::one();
    }
    None
}

#[derive(Debug, Clone, Default)]
pub struct Factorization {
    /// (prime, exponent), ascending primes.
    pub factors: Vec<(Int, u32)>,
    /// Composite cofactor that resisted factoring, if any.
    pub unresolved: Option<Int>,
}

/// Factor |n| by trial division up to `trial_bound`, then Miller–Rabin plus
/// Pollard rho on what remains.
pub fn factor(n: &Int, trial_bound: u64) -> Factorization {
    let mut out = Factorization::default();
    let mut n = n.abs();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let push = |p: Int, out: &mut Factorization| {
        if let Some(e) = out.factors.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.factors.push((p, 1));
        }
    };
    for p in [2u64, 3, 5].into_iter().chain((7..trial_bound).step_by(2)) {
        if p > 5 && (p % 3 == 0 || p % 5 == 0) {
            continue;
        }
        let pi = Int::from(p);
        if (&pi * &pi) > n {
            break;
        }
        while (&n % &pi).is_zero() {
            n /= &pi;
            push(pi.clone(), &mut out);
        }
    }
    // recursively split the cofactor
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut out);
        } else if let Some(d) = pollard_rho(&m) {
            stack.push(&m / &d);
            stack.push(d);
        } else {
            out.unresolved = Some(match out.unresolved.take() {
                Some(u) => u * m,
                None => m,
            });
        }
    }
    out.factors.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn primality() {
        assert!(is_prime_u64(8029187));
        assert!(!is_prime_u64(8029189));
        assert!(is_prime(&int(1_000_000_007)));
        assert!(!is_prime(&(int(1_000_000_007) * int(998_244_353))));
    }

    #[test]
    fn factor_mixed() {
        let n = int(2 * 2 * 3 * 8029187) * int(1_000_003);
        let f = factor(&n, 10_000);
        let primes: Vec<(i64, u32)> = f
            .factors
            .iter()
            .map(|(p, e)| (i64::try_from(p).unwrap(), *e))
            .collect();
        assert_eq!(primes, vec![(2, 2), (3, 1), (1_000_003, 1), (8_029_187, 1)]);
        assert!(f.unresolved.is_none());
    }

    #[test]
    fn sieve() {
        let p = primes_below(30);
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
