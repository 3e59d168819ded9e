//! Explicit generator constructions and the prime-interval exception scan.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{fundamental_range, Discriminant};
use crate::intarith::{
    ceil_sqrt, is_prime, is_squarefree, isqrt_u128, isqrt_u64, kronecker, primes_upto, sqrt_mod_p,
};
use crate::quadpoly::{disc_n, GenPoly, QuadPoly};

/// Smallest integral generator of `Q(√d)` for squarefree `d < 0`:
/// `x² − d` when `d ≡ 2, 3 (mod 4)`, `x² + x + (1 − d)/4` when `d ≡ 1 (mod 4)`.
pub fn lemma1_integral(d: i64) -> Result<QuadPoly> {
    if d >= 0 {
        return Err(Error::Precondition(format!("need d < 0, got {d}")));
    }
    if !is_squarefree(d.unsigned_abs())? {
        return Err(Error::Precondition(format!("{d} is not squarefree")));
    }
    if d.rem_euclid(4) == 1 {
        QuadPoly::new(1, 1, (1 - d) / 4)
    } else {
        QuadPoly::new(1, 0, -d)
    }
}

/// Monic generator `x² + a·x + b` of height `< √D` for real `D`.
///
/// `a` is the largest integer `≤ ⌊√D⌋` with `a ≡ D (mod 2)`, and
/// `b = (a² − D)/4`. Since `a ≥ ⌊√D⌋ − 1`, `|b| ≤ (D − (⌊√D⌋ − 1)²)/4 < ⌊√D⌋`.
pub fn prop2_generator(d: Discriminant) -> Result<QuadPoly> {
    if !d.is_real() {
        return Err(Error::Precondition(format!("need D > 0, got {d}")));
    }
    let dv = d.get();
    let s = isqrt_u64(dv as u64) as i64;
    let a = if (s - dv).rem_euclid(2) == 0 {
        s
    } else {
        s - 1
    };
    let b = (a * a - dv) / 4;
    QuadPoly::new(1, a, b)
}

/// A prime `p ∈ [½√D, (½+ε)√D]` with `(D/p) = 1` and the generator
/// `p·x² + b·x + c` of discriminant `D` built from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MepsWitness {
    pub disc: Discriminant,
    pub epsilon: Ratio<i64>,
    pub p: u64,
    pub poly: QuadPoly,
}

impl MepsWitness {
    /// `4·H² ≤ (1 + 2ε)²·D`, exactly.
    pub fn height_bound_holds(&self) -> bool {
        let h = self.poly.height() as i128;
        let (num, den) = (*self.epsilon.numer() as i128, *self.epsilon.denom() as i128);
        4 * h * h * den * den <= (den + 2 * num).pow(2) * self.disc.get() as i128
    }
}

fn check_epsilon(eps: Ratio<i64>) -> Result<()> {
    if *eps.numer() <= 0 || eps > Ratio::new(1, 2) {
        return Err(Error::Precondition(format!("need 0 < ε ≤ ½, got {eps}")));
    }
    Ok(())
}

/// Closed prime interval `[⌈√D/2⌉, ⌊(½+ε)√D⌋]`, endpoints decided exactly.
fn prime_interval(d: i64, eps: Ratio<i64>) -> (u64, u64) {
    let lo = (ceil_sqrt(d).expect("D > 0") as u64).div_ceil(2);
    let (num, den) = (*eps.numer() as u128, *eps.denom() as u128);
    // 2p·den ≤ (den + 2num)·√D
    let scaled = (den + 2 * num).pow(2) * d as u128;
    let hi = (isqrt_u128(scaled) / (2 * den)) as u64;
    (lo, hi)
}

fn witness_from_prime(d: Discriminant, eps: Ratio<i64>, p: u64) -> MepsWitness {
    let dv = d.get();
    let mut b = sqrt_mod_p(dv, p).expect("(D/p) = 1") as i64;
    // p − b is the other root; it has the other parity since p is odd
    if (b - dv).rem_euclid(2) != 0 {
        b = p as i64 - b;
    }
    let c = (b * b - dv) / (4 * p as i64);
    MepsWitness {
        disc: d,
        epsilon: eps,
        p,
        poly: QuadPoly::from_parts(p as i64, b, c),
    }
}

/// Generator of height `≤ (½+ε)√D` from the smallest odd prime `p` in
/// `[½√D, (½+ε)√D]` with `(D/p) = 1`; `None` when no such prime exists.
pub fn lemma2_generator(d: Discriminant, eps: Ratio<i64>) -> Result<Option<MepsWitness>> {
    if !d.is_real() {
        return Err(Error::Precondition(format!("need D > 0, got {d}")));
    }
    check_epsilon(eps)?;
    let (lo, hi) = prime_interval(d.get(), eps);
    let p = (lo.max(3)..=hi)
        .filter(|&p| p % 2 == 1)
        .find(|&p| is_prime(p) && kronecker(d.get(), p as i64) == 1);
    Ok(p.map(|p| witness_from_prime(d, eps, p)))
}

fn first_qualifying_prime(d: i64, eps: Ratio<i64>, odd_primes: &[u64]) -> Option<u64> {
    let (lo, hi) = prime_interval(d, eps);
    let start = odd_primes.partition_point(|&p| p < lo);
    odd_primes[start..]
        .iter()
        .take_while(|&&p| p <= hi)
        .copied()
        .find(|&p| kronecker(d, p as i64) == 1)
}

/// Fundamental `D ∈ [5, limit]` admitting no qualifying prime, ascending.
pub fn m_eps_exceptions(limit: i64, eps: Ratio<i64>) -> Result<Vec<Discriminant>> {
    if limit < 5 {
        return Err(Error::Precondition(format!("need limit ≥ 5, got {limit}")));
    }
    check_epsilon(eps)?;
    let (_, p_max) = prime_interval(limit, eps);
    let odd_primes: Vec<u64> = primes_upto(p_max).into_iter().filter(|&p| p > 2).collect();
    let ds = fundamental_range(5, limit);
    Ok(ds
        .par_iter()
        .filter(|d| first_qualifying_prime(d.get(), eps, &odd_primes).is_none())
        .copied()
        .collect())
}

/// `m·x² + x + m` generating `Q(√(1 − 4m²))`, when `4m² − 1` is squarefree.
pub fn imaginary_family(m: i64) -> Result<Option<(Discriminant, QuadPoly)>> {
    if m < 1 {
        return Err(Error::Precondition(format!("need m ≥ 1, got {m}")));
    }
    let n = m
        .checked_mul(m)
        .and_then(|x| x.checked_mul(4))
        .ok_or(Error::Overflow("4m²"))?
        - 1;
    if !is_squarefree(n as u64)? {
        return Ok(None);
    }
    Ok(Some((Discriminant::new(-n)?, QuadPoly::new(m, 1, m)?)))
}

/// `m·x² + (m−1)·x − m` with discriminant `5m² − 2m + 1`, when that is squarefree.
pub fn real_family(m: i64) -> Result<Option<(Discriminant, QuadPoly)>> {
    if m < 1 {
        return Err(Error::Precondition(format!("need m ≥ 1, got {m}")));
    }
    let d = m
        .checked_mul(m)
        .and_then(|x| x.checked_mul(5))
        .and_then(|x| x.checked_sub(2 * m))
        .ok_or(Error::Overflow("5m² − 2m + 1"))?
        + 1;
    if !is_squarefree(d as u64)? {
        return Ok(None);
    }
    Ok(Some((Discriminant::new(d)?, QuadPoly::new(m, m - 1, -m)?)))
}

/// Exact data backing `H(α) = q < √(2pq)` for a root of `p·xⁿ + q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeNCertificate {
    pub degree: u32,
    pub height: i64,
    /// `q²`
    pub q_squared: i64,
    /// `2pq`
    pub two_pq: i64,
    /// `q² < 2pq`, i.e. `q < 2p`.
    pub holds: bool,
    /// Discriminant of the polynomial; divisible by `p^{n−1}·q^{n−1}`.
    pub poly_disc: Option<i128>,
    /// `H(α) ≤ √2·|D_K|^{1/(2n−2)}` holds provided `p^{n−1}q^{n−1} | D_K`
    /// (total ramification of `p` and `q`); that divisibility is not checked.
    pub conditional_on_ramification: bool,
}

/// `p·xⁿ + q` for primes `p < q < 2p`, irreducible by Eisenstein at `q`.
pub fn degree_n_family(n: u32, p: u64, q: u64) -> Result<(GenPoly, DegreeNCertificate)> {
    if n < 2 {
        return Err(Error::Precondition(format!("degree {n} < 2")));
    }
    if !is_prime(p) || !is_prime(q) {
        return Err(Error::Precondition(format!(
            "{p} and {q} must both be prime"
        )));
    }
    if !(p < q && q < 2 * p) {
        return Err(Error::Precondition(format!(
            "need p < q < 2p, got p = {p}, q = {q}"
        )));
    }
    let (pi, qi) = (p as i64, q as i64);
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = qi;
    coeffs[n as usize] = pi;
    let poly = GenPoly::new(coeffs)?;
    let cert = DegreeNCertificate {
        degree: n,
        height: qi,
        q_squared: qi * qi,
        two_pq: 2 * pi * qi,
        holds: qi * qi < 2 * pi * qi,
        poly_disc: disc_n(&poly).ok(),
        conditional_on_ramification: true,
    };
    Ok((poly, cert))
}
