//! Fundamental discriminants of quadratic fields.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intarith::{is_square, is_squarefree, isqrt_u64};

/// Discriminant of a quadratic field `Q(√D)`, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        match violated_invariant(d) {
            None => Ok(Discriminant(d)),
            Some(reason) => Err(Error::NotFundamental { d, reason }),
        }
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }

    #[inline]
    pub fn abs(self) -> u64 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn is_imaginary(self) -> bool {
        self.0 < 0
    }

    #[inline]
    pub fn is_real(self) -> bool {
        self.0 > 0
    }

    pub(crate) fn new_unchecked(d: i64) -> Self {
        debug_assert!(is_fundamental(d));
        Discriminant(d)
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

fn violated_invariant(d: i64) -> Option<&'static str> {
    if d == 0 || d == 1 {
        return Some("D must be nonzero and different from 1");
    }
    if d == i64::MIN {
        return Some("out of range");
    }
    if is_square(d) {
        return Some("D is a perfect square");
    }
    match d.rem_euclid(4) {
        1 => {
            if is_squarefree(d.unsigned_abs()).unwrap_or(false) {
                None
            } else {
                Some("D ≡ 1 (mod 4) but D is not squarefree")
            }
        }
        0 => {
            let k = d / 4;
            match k.rem_euclid(4) {
                2 | 3 => {
                    if is_squarefree(k.unsigned_abs()).unwrap_or(false) {
                        None
                    } else {
                        Some("D ≡ 0 (mod 4) but D/4 is not squarefree")
                    }
                }
                _ => Some("D ≡ 0 (mod 4) but D/4 ≢ 2, 3 (mod 4)"),
            }
        }
        _ => Some("D ≢ 0, 1 (mod 4)"),
    }
}

pub fn is_fundamental(d: i64) -> bool {
    violated_invariant(d).is_none()
}

/// Fundamental discriminants in `[lo, hi]`, ascending.
pub fn fundamental_range(lo: i64, hi: i64) -> Vec<Discriminant> {
    if lo > hi {
        return Vec::new();
    }
    // only residues 0 and 1 mod 4 can qualify
    let mut out = Vec::new();
    let mut d = lo;
    while d <= hi {
        let r = d.rem_euclid(4);
        if (r == 0 || r == 1) && is_fundamental(d) {
            out.push(Discriminant(d));
        }
        d += match r {
            1 => 3,
            _ => 1,
        };
    }
    out
}

/// Class number of an imaginary quadratic field, by counting reduced forms.
///
/// Iterates `b ≥ 0` first and looks for divisors `a` of `(b² + |D|)/4` with
/// `b ≤ a ≤ c`; each form with `0 < b < a < c` is counted together with its
/// mirror `(a, −b, c)`.
pub fn class_number_imaginary(d: Discriminant) -> Result<u64> {
    if !d.is_imaginary() {
        return Err(Error::Precondition(format!(
            "class number oracle needs D < 0, got {d}"
        )));
    }
    let abs_d = d.abs();
    let b_max = isqrt_u64(abs_d / 3);
    let mut h = 0u64;
    let mut b = abs_d % 2;
    while b <= b_max {
        let n = (b * b + abs_d) / 4;
        let mut a = b.max(1);
        while a * a <= n {
            if n % a == 0 {
                let c = n / a;
                if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                    h += if b == 0 || b == a || a == c { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    Ok(h)
}
