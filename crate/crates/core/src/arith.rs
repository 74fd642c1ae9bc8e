//! Elementary number theory on machine integers.

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_totient(n: u64) -> u64 {
    prime_factors(n).into_iter().fold(n, |acc, p| acc / p * (p - 1))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `k mod n` as a representative in `0..n`, for any sign of `k`.
pub fn modulo(k: i64, n: u64) -> u64 {
    k.rem_euclid(n as i64) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let n128 = n as u128;
    let mut b = (base % n) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n128;
        }
        b = b * b % n128;
        exp >>= 1;
    }
    acc as u64
}

/// Least `s >= 1` with `k^s = 1 mod n`; `None` when `gcd(k, n) != 1`.
pub fn multiplicative_order(k: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(k % n, n) != 1 {
        return None;
    }
    let mut x = k % n;
    let mut s = 1;
    while x != 1 {
        x = (x as u128 * (k % n) as u128 % n as u128) as u64;
        s += 1;
    }
    Some(s)
}

/// Inverse of `k` modulo `n` in `0..n`.
pub fn mod_inverse(k: u64, n: u64) -> Option<u64> {
    let s = multiplicative_order(k, n)?;
    Some(mod_pow(k, s - 1, n))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        let phi: Vec<u64> = (1..=12).map(euler_totient).collect();
        assert_eq!(phi, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn orders_and_inverses() {
        assert_eq!(multiplicative_order(2, 5), Some(4));
        assert_eq!(multiplicative_order(5, 8), Some(2));
        assert_eq!(multiplicative_order(2, 4), None);
        assert_eq!(multiplicative_order(0, 1), Some(1));
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(modulo(-1, 8), 7);
        assert!(is_prime(31) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn order_divides_totient() {
        for n in 1..60u64 {
            for k in 1..n.max(2) {
                if let Some(s) = multiplicative_order(k, n) {
                    assert_eq!(euler_totient(n) % s, 0);
                    assert_eq!(mod_pow(k, s, n), 1 % n);
                }
            }
        }
    }
}
