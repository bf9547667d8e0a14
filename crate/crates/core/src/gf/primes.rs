//! Small-integer number theory: primality, prime powers, factorization.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin: these bases cover every 64-bit integer.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Largest `r` with `r^m <= n`.
fn integer_root(n: u64, m: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / m as f64) as u64;
    while r > 0 && r.checked_pow(m).map_or(true, |v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(m).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power or `p`
/// does not fit in a `u32`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let (p, m) = prime_power_wide(q)?;
    Some((u32::try_from(p).ok()?, m))
}

fn prime_power_wide(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    (1..=63u32).rev().find_map(|m| {
        let r = integer_root(q, m);
        (r >= 2 && r.pow(m) == q && is_prime(r)).then_some((r, m))
    })
}

/// Smallest prime power `>= from`.
pub fn next_prime_power(from: u64) -> u64 {
    (from.max(2)..).find(|&q| is_prime_power(q)).expect("prime powers are unbounded")
}

/// Smallest prime `>= from`.
pub fn next_prime(from: u64) -> u64 {
    (from.max(2)..).find(|&q| is_prime(q)).expect("primes are unbounded")
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_wide(q).is_some()
}

/// Prime powers in `[2, limit]`, increasing.
pub fn prime_powers_up_to(limit: u64) -> impl Iterator<Item = u64> {
    (2..=limit).filter(|&q| is_prime_power(q))
}
