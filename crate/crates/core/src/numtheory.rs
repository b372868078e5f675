//! Small integer helpers: primality, factorization and prime powers.

pub use num_integer::{gcd, lcm};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, k)` with `q = p^k` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn is_square_free(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Primes dividing `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `a^e mod n` by square and multiply.
pub fn pow_mod(a: u64, mut e: u64, n: u64) -> u64 {
    let n128 = n as u128;
    let mut acc: u128 = 1 % n128;
    let mut base = (a % n) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % n128;
        }
        base = base * base % n128;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `n` when `gcd(a, n) = 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if n == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(777_600), vec![(2, 7), (3, 5), (5, 2)]);
        assert_eq!(factorize(864), vec![(2, 5), (3, 3)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert!(factorize(1).is_empty());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert!(is_square_free(30));
        assert!(!is_square_free(12));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(5, 12), Some(5));
        assert_eq!(inv_mod(4, 12), None);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(pow_mod(3, 6, 7), 1);
    }
}
