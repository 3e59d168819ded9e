//! Exact integer primitives: square roots, squarefreeness, Kronecker symbols,
//! primality and modular square roots.
//!
//! Everything here is a pure function of its arguments. Intermediate products
//! that could exceed 64 bits are carried out in 128-bit arithmetic.

use crate::error::{Error, Result};

/// `⌊√n⌋` for an unsigned 64-bit value.
pub fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    // the float estimate is off by at most one in either direction
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// `⌊√n⌋` for an unsigned 128-bit value.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    if n <= u64::MAX as u128 {
        return isqrt_u64(n as u64) as u128;
    }
    // Newton iteration from an upper estimate
    let mut x = (n as f64).sqrt() as u128 + 2;
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// `⌊√n⌋`, rejecting negative input.
pub fn isqrt(n: i64) -> Result<i64> {
    if n < 0 {
        return Err(Error::Negative(n));
    }
    Ok(isqrt_u64(n as u64) as i64)
}

/// `⌈√n⌉` for `n ≥ 0`.
pub fn ceil_sqrt(n: i64) -> Result<i64> {
    let r = isqrt(n)?;
    Ok(if r * r == n { r } else { r + 1 })
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = isqrt_u64(n as u64);
        r * r == n as u64
    }
}

/// Squarefree test by trial division up to `⌊√n⌋`.
pub fn is_squarefree(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut n = n;
    if n % 4 == 0 {
        return Ok(false);
    }
    if n % 2 == 0 {
        n /= 2;
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(false);
            }
        }
        p += 2;
    }
    Ok(true)
}

/// Splits `n ≠ 0` as `n = s · k²` with `s` squarefree (sign kept on `s`).
pub fn squarefree_decompose(n: i64) -> Result<(i64, i64)> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let sign = n.signum();
    let mut rest = n.unsigned_abs();
    let mut core = 1u64;
    let mut root = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        root *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    core *= rest;
    Ok((sign * core as i64, root as i64))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

/// Kronecker symbol `(a/n)` for arbitrary integers, including `n ≤ 0` and even `n`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    const TAB2: [i32; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
    let mut a = a as i128;
    let mut b = n as i128;
    if b == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a & 1 == 0 && b & 1 == 0 {
        return 0;
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k = if v % 2 == 0 {
        1
    } else {
        TAB2[(a & 7) as usize]
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        // b is odd and positive here
        if a == 0 {
            return if b > 1 { 0 } else { k };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= TAB2[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin on the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    // the first twelve primes are a proven witness set below 3.3·10^24
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
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

/// All primes `≤ n`, by the sieve of Eratosthenes.
pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes `p` with `lo ≤ p ≤ hi`, ascending (segmented sieve).
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let base = primes_upto(isqrt_u64(hi));
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in &base {
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut j = start;
        while j <= hi {
            composite[(j - lo) as usize] = true;
            j += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// Smallest `b ∈ [0, p)` with `b² ≡ d (mod p)`, for an odd prime `p`.
///
/// Returns `None` exactly when `d` is a non-residue. Of the two roots `b` and
/// `p − b` the smaller is returned.
pub fn sqrt_mod_p(d: i64, p: u64) -> Option<u64> {
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(r);
    }
    if pow_mod(r, (p - 1) / 2, p) != 1 {
        return None;
    }
    let root = if p % 4 == 3 {
        pow_mod(r, (p + 1) / 4, p)
    } else {
        tonelli_shanks(r, p)
    };
    Some(root.min(p - root))
}

fn tonelli_shanks(n: u64, p: u64) -> u64 {
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}
