//! Primality, factorization and square-freeness of integers.
//!
//! Factoring uses trial division by the primes below 10^6 and falls back to
//! Pollard's rho (Brent's variant) with Miller-Rabin for whatever cofactor
//! remains.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
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
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
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

/// Miller-Rabin over the first twenty prime bases. Deterministic below
/// 3.3 * 10^24, probabilistic (error < 4^-20) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &small_primes()[..20] {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding rho; returns a nontrivial factor of the odd composite `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut r: u64 = 1;
        let mut q = one.clone();
        const BATCH: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            // Batch overshot; step one at a time from the saved point.
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn push_factor(out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32) {
    if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        out.push((p, e));
    }
}

/// `(r, k)` with `r^k = n` and `k` maximal. Rho cannot split prime powers,
/// so these are peeled off first.
fn perfect_power(n: &BigUint) -> (BigUint, u32) {
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let r = n.nth_root(k);
        if r > BigUint::one() && &r.pow(k) == n {
            return (r, k);
        }
    }
    (n.clone(), 1)
}

fn split_large(n: BigUint, e: u32, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        push_factor(out, n, e);
        return;
    }
    let (root, k) = perfect_power(&n);
    if k > 1 {
        split_large(root, e * k, out);
        return;
    }
    let f = pollard_brent(&n);
    let cofactor = &n / &f;
    split_large(f, e, out);
    split_large(cofactor, e, out);
}

/// Prime factorization of `n > 0`, sorted by prime.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factor(0)");
    let mut out = Vec::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((pb, e));
        }
    }
    if rest > BigUint::one() {
        let limit = BigUint::from(TRIAL_LIMIT);
        if &limit * &limit > rest {
            // Nothing below the trial limit divides it, so it is prime.
            push_factor(&mut out, rest, 1);
        } else {
            split_large(rest, 1, &mut out);
        }
    }
    out.sort();
    out
}

/// Primes `p` with `p^k | n` (for `n != 0`), sorted, with their full exponent in `n`.
///
/// Stops trial division as soon as `p^k` exceeds the unfactored part, which
/// keeps this cheap for the discriminant-sized inputs of model reduction.
pub fn primes_with_power_dividing(n: &BigInt, k: u32) -> Vec<(u64, u32)> {
    assert!(!n.is_zero());
    let mut rest = n.magnitude().clone();
    let mut out = Vec::new();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if pb.pow(k) > rest {
            return out;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e >= k {
            out.push((p as u64, e));
        }
    }
    for (p, e) in factor(&rest) {
        if e >= k {
            let p = p
                .to_u64()
                .expect("prime with a 12th power inside a discriminant exceeds u64");
            out.push((p, e));
        }
    }
    out.sort();
    out
}

/// Whether no prime square divides `d`.
pub fn square_free_check(d: i64) -> Result<bool> {
    if d == 0 {
        return Err(Error::Zero);
    }
    let n = BigUint::from(d.unsigned_abs());
    Ok(factor(&n).iter().all(|(_, e)| *e == 1))
}

/// Ascending odd primes dividing the square-free integer `d`.
pub fn odd_prime_divisors(d: i64) -> Result<Vec<u64>> {
    if !square_free_check(d)? {
        return Err(Error::NotSquareFree(d));
    }
    let n = BigUint::from(d.unsigned_abs());
    Ok(factor(&n)
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("factor of a u64"))
        .filter(|&p| p != 2)
        .collect())
}
