//! Deterministic integer factorization and squarefree cores.
//!
//! Trial division handles everything small, Brent's variant of Pollard's rho
//! splits the rest. Primality below 2^64 is certified with the deterministic
//! Miller-Rabin base set; larger inputs use the same fixed bases, so the
//! output is deterministic either way.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{is_perfect_square, ExactError};

/// Complete prime factorization of `|n|`: strictly increasing primes with
/// positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back together.
    pub fn product(&self) -> BigInt {
        let mut p = BigInt::one();
        for (prime, m) in &self.factors {
            p *= prime.pow(*m);
        }
        p
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Complete prime factorization of `|n|`; rejects `n = 0`.
pub fn factorize(n: &BigInt) -> Result<Factorization, ExactError> {
    if n.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    if let Some(m) = n.abs().to_u64() {
        let mut raw = Vec::new();
        factor_u64(m, &mut raw);
        raw.sort_unstable();
        for p in raw {
            push_factor(&mut factors, BigInt::from(p));
        }
    } else {
        let mut raw = Vec::new();
        factor_big(n.abs(), &mut raw);
        raw.sort();
        for p in raw {
            push_factor(&mut factors, p);
        }
    }
    Ok(Factorization { factors })
}

/// The unique squarefree integer `c` with `n/c` a perfect square; the sign
/// of `c` equals the sign of `n`, and `core(1) = 1`.
pub fn squarefree_core(n: &BigInt) -> Result<BigInt, ExactError> {
    let f = factorize(n)?;
    let mut c = BigInt::one();
    for (prime, m) in f.factors() {
        if m % 2 == 1 {
            c *= prime;
        }
    }
    if n.is_negative() {
        c = -c;
    }
    Ok(c)
}

fn push_factor(factors: &mut Vec<(BigInt, u32)>, p: BigInt) {
    if let Some(last) = factors.last_mut() {
        if last.0 == p {
            last.1 += 1;
            return;
        }
    }
    factors.push((p, 1));
}

fn factor_u64(mut n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        if n == 1 {
            return;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.push(m);
            continue;
        }
        let d = split_u64(m);
        stack.push(d);
        stack.push(m / d);
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64 (the 12-base certificate).
pub(crate) fn is_prime_u64(n: u64) -> bool {
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
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits a known-composite odd `n` with Pollard's rho; the seed schedule
/// c = 1, 2, 3, ... is fixed, so the factor found is deterministic.
fn split_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let r = num_integer::Roots::sqrt(&n);
    if r * r == n {
        return r;
    }
    let mut c = 1u64;
    loop {
        if let Some(d) = rho_u64(n, c) {
            return d;
        }
        c += 1;
    }
}

fn rho_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
    while d == 1 {
        x = f(x);
        y = f(f(y));
        if x == y {
            return None;
        }
        d = gcd_u64(x.abs_diff(y), n);
    }
    if d != n {
        Some(d)
    } else {
        None
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Fixed-base Miller-Rabin for inputs beyond u64; deterministic output.
fn is_prime_big(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigInt::from(a);
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

fn factor_big(n: BigInt, out: &mut Vec<BigInt>) {
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let p = BigInt::from(p);
        while (&n % &p).is_zero() {
            out.push(p.clone());
            n /= &p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            let mut raw = Vec::new();
            factor_u64(small, &mut raw);
            out.extend(raw.into_iter().map(BigInt::from));
            continue;
        }
        if is_prime_big(&m) {
            out.push(m);
            continue;
        }
        if let Some(r) = is_perfect_square(&m) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = rho_brent_big(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
}

fn rho_brent_big(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut count = 0u32;
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = (&x - &y).abs();
            if diff.is_zero() {
                break;
            }
            let d = num_integer::Integer::gcd(&diff, n);
            if !d.is_one() {
                if &d != n {
                    return d;
                }
                break;
            }
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        c += 1u32;
    }
}
