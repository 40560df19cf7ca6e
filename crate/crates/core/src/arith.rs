//! Small-integer number theory used to build characters and embeddings.

use num_integer::Integer;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `a` modulo `n`; `a` must be a unit.
pub fn mult_order(a: u64, n: u64) -> u64 {
    let phi = euler_phi(n);
    divisors(phi)
        .into_iter()
        .find(|&d| pow_mod(a, d, n) == 1 % n)
        .unwrap_or(phi)
}

/// Smallest generator of the cyclic group `(Z/n)^*`. `n` must be 2, 4, an odd prime
/// power, or twice one; callers only pass odd prime powers.
pub fn smallest_primitive_root(n: u64) -> u64 {
    if n <= 2 {
        return 1;
    }
    let phi = euler_phi(n);
    (2..n)
        .find(|&g| gcd(g, n) == 1 && mult_order(g, n) == phi)
        .expect("modulus has no primitive root")
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: i64, n: i64) -> Option<i64> {
    let e = a.rem_euclid(n).extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

pub fn v_p(mut n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `v_p(m!)` by Legendre's formula.
pub fn v_p_factorial(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= m {
        total += m / q;
        q = match q.checked_mul(p) {
            Some(q) => q,
            None => break,
        };
    }
    total
}
