//! Integer polynomials: heights, discriminants and the height lower bound
//! `H(α) ≥ |D_K|^{1/(2n−2)} / (n√n)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{is_fundamental, Discriminant};
use crate::intarith::{gcd3, is_square, squarefree_decompose};

/// Primitive irreducible quadratic `a·x² + b·x + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadPoly {
    a: i64,
    b: i64,
    c: i64,
}

impl QuadPoly {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a == 0 {
            return Err(Error::ZeroLeading);
        }
        let g = gcd3(a, b, c);
        if g != 1 {
            return Err(Error::NotPrimitive { a, b, c, gcd: g });
        }
        let disc = disc_of(a, b, c)?;
        if is_square(disc) {
            return Err(Error::Reducible { a, b, c, disc });
        }
        Ok(QuadPoly { a, b, c })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_parts(a: i64, b: i64, c: i64) -> Self {
        debug_assert!(QuadPoly::new(a, b, c).is_ok());
        QuadPoly { a, b, c }
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn coeffs(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    pub fn height(&self) -> i64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs())
    }

    /// `b² − 4ac`.
    pub fn disc(&self) -> i64 {
        // validated on construction
        disc_of(self.a, self.b, self.c).expect("discriminant checked at construction")
    }

    /// Representative of the orbit under `x ↦ −x` and coefficient reversal.
    ///
    /// Among the variants with positive leading coefficient and `b ≥ 0`, the
    /// lexicographically least `(a, b, c)` is chosen.
    pub fn canonicalize(&self) -> QuadPoly {
        let (a, b, c) = (self.a, self.b, self.c);
        [(a, b, c), (a, -b, c), (c, b, a), (c, -b, a)]
            .into_iter()
            .map(|(a, b, c)| if a < 0 { (-a, -b, -c) } else { (a, b, c) })
            .filter(|&(_, b, _)| b >= 0)
            .min()
            .map(|(a, b, c)| QuadPoly { a, b, c })
            .expect("at least one variant has b ≥ 0")
    }

    pub fn to_gen(&self) -> GenPoly {
        GenPoly {
            coeffs: vec![self.c, self.b, self.a],
        }
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn disc_of(a: i64, b: i64, c: i64) -> Result<i64> {
    let bb = b.checked_mul(b).ok_or(Error::Overflow("b²"))?;
    let ac4 = a
        .checked_mul(c)
        .and_then(|x| x.checked_mul(4))
        .ok_or(Error::Overflow("4ac"))?;
    bb.checked_sub(ac4).ok_or(Error::Overflow("b² − 4ac"))
}

pub fn height(f: &QuadPoly) -> i64 {
    f.height()
}

pub fn disc2(f: &QuadPoly) -> i64 {
    f.disc()
}

pub fn canonicalize(f: &QuadPoly) -> QuadPoly {
    f.canonicalize()
}

/// Field discriminant `D` and index `m` with `disc(f) = m²·D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldIndexPair {
    pub disc: Discriminant,
    pub index: i64,
}

/// Strips square factors from `disc(f)` down to the fundamental discriminant.
pub fn field_disc_and_index(f: &QuadPoly) -> Result<FieldIndexPair> {
    split_discriminant(f.disc())
}

/// Writes a non-square `Δ ≡ 0, 1 (mod 4)` as `m²·D` with `D` fundamental.
pub fn split_discriminant(delta: i64) -> Result<FieldIndexPair> {
    if is_square(delta) {
        return Err(Error::Precondition(format!(
            "{delta} is a perfect square; no quadratic field"
        )));
    }
    let r = delta.rem_euclid(4);
    if r != 0 && r != 1 {
        return Err(Error::Precondition(format!(
            "{delta} ≢ 0, 1 (mod 4) is not a discriminant"
        )));
    }
    let (core, k) = squarefree_decompose(delta)?;
    let (d, m) = if core.rem_euclid(4) == 1 {
        (core, k)
    } else {
        // core ≡ 2, 3 (mod 4) forces an even cofactor
        (4 * core, k / 2)
    };
    debug_assert!(is_fundamental(d));
    Ok(FieldIndexPair {
        disc: Discriminant::new_unchecked(d),
        index: m,
    })
}

/// `true` iff `f` generates the quadratic field of discriminant `d`.
pub fn is_generator_of(f: &QuadPoly, d: i64) -> bool {
    is_fundamental(d) && field_disc_and_index(f).is_ok_and(|p| p.disc.get() == d)
}

/// Primitive integer polynomial of degree `n ≥ 2`, coefficients stored from
/// the constant term up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenPoly {
    coeffs: Vec<i64>,
}

impl GenPoly {
    /// `coeffs[i]` is the coefficient of `xⁱ`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let Some(&lead) = coeffs.last() else {
            return Err(Error::ZeroLeading);
        };
        if lead == 0 {
            return Err(Error::ZeroLeading);
        }
        if coeffs.len() < 3 {
            return Err(Error::Precondition(format!(
                "degree {} < 2",
                coeffs.len() as i64 - 1
            )));
        }
        let g = coeffs.iter().fold(0, |g, &x| num_integer::gcd(g, x));
        if g != 1 {
            return Err(Error::Precondition(format!(
                "polynomial is not primitive (gcd {g})"
            )));
        }
        Ok(GenPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap()
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// `(−1)^{n(n−1)/2} · Res(f, f′) / a_n`, from the Sylvester determinant.
    pub fn disc(&self) -> Result<i128> {
        disc_n(self)
    }
}

impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let m = c.unsigned_abs();
            match i {
                0 => write!(f, "{m}")?,
                1 if m == 1 => write!(f, "x")?,
                1 => write!(f, "{m}x")?,
                _ if m == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{m}x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Discriminant of a polynomial of degree `n ≥ 2`.
pub fn disc_n(f: &GenPoly) -> Result<i128> {
    let n = f.degree();
    let desc: Vec<i128> = f.coeffs.iter().rev().map(|&c| c as i128).collect();
    let deriv: Vec<i128> = desc[..n]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (n - i) as i128)
        .collect();
    let res = sylvester_det(&desc, &deriv)?;
    let lead = desc[0];
    if res % lead != 0 {
        return Err(Error::Precondition(
            "resultant not divisible by the leading coefficient".into(),
        ));
    }
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(sign * (res / lead))
}

/// Determinant of the Sylvester matrix of `p` (degree `m`) and `q` (degree `k`),
/// both given with the leading coefficient first.
fn sylvester_det(p: &[i128], q: &[i128]) -> Result<i128> {
    let m = p.len() - 1;
    let k = q.len() - 1;
    let size = m + k;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..k {
        for (j, &x) in p.iter().enumerate() {
            mat[row][row + j] = BigInt::from(x);
        }
    }
    for row in 0..m {
        for (j, &x) in q.iter().enumerate() {
            mat[k + row][row + j] = BigInt::from(x);
        }
    }
    i128::try_from(bareiss_det(mat)).map_err(|_| Error::Overflow("discriminant exceeds 128 bits"))
}

/// Fraction-free Gaussian elimination; every intermediate is a minor of the
/// input, so the exact divisions never leave the integers.
fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// The degree-`n` height lower bound `c_n·|D_K|^{1/(2n−2)}` with `c_n = 1/(n√n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prop1Bound {
    pub degree: u32,
    pub field_disc: i64,
    /// `c_n = n^{−3/2}`, stored as the exponent pair `(−3, 2)` on `n`.
    pub coefficient_exponent: (i32, i32),
    /// `1/(2n−2)`, as `(numerator, denominator)`.
    pub disc_exponent: (u32, u32),
    pub value: f64,
}

impl Prop1Bound {
    /// Exact test of `height ≥ c_n |D_K|^{1/(2n−2)}`, i.e.
    /// `height^{2n−2} · n^{3(n−1)} ≥ |D_K|`.
    pub fn is_satisfied_by(&self, height: u64) -> bool {
        let n = self.degree as u128;
        let e = 2 * (self.degree - 1);
        let lhs = (height as u128).checked_pow(e).and_then(|h| {
            n.checked_pow(3 * (self.degree - 1))
                .and_then(|c| h.checked_mul(c))
        });
        match lhs {
            Some(v) => v >= self.field_disc.unsigned_abs() as u128,
            // anything overflowing u128 exceeds every 64-bit discriminant
            None => height > 0,
        }
    }
}

pub fn prop1_bound(n: u32, field_disc: i64) -> Result<Prop1Bound> {
    if n < 2 {
        return Err(Error::Precondition(format!("degree {n} < 2")));
    }
    if field_disc == 0 {
        return Err(Error::Zero);
    }
    let nf = n as f64;
    let e = 1.0 / (2.0 * nf - 2.0);
    let value = (field_disc.unsigned_abs() as f64).powf(e) / (nf * nf.sqrt());
    Ok(Prop1Bound {
        degree: n,
        field_disc,
        coefficient_exponent: (-3, 2),
        disc_exponent: (1, 2 * n - 2),
        value,
    })
}

/// `|disc(f)| ≤ n^{3(n−1)} · H(f)^{2n−2}`, decided in exact integers.
pub fn en_inequality_check(f: &GenPoly) -> Result<bool> {
    let disc = disc_n(f)?.unsigned_abs();
    let n = f.degree() as u32;
    let h = f.height() as u128;
    let rhs = (n as u128)
        .checked_pow(3 * (n - 1))
        .and_then(|e| h.checked_pow(2 * n - 2).and_then(|hp| e.checked_mul(hp)));
    Ok(match rhs {
        Some(r) => disc <= r,
        None => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(a: i64, b: i64, c: i64) -> QuadPoly {
        QuadPoly::new(a, b, c).unwrap()
    }

    #[test]
    fn heights() {
        assert_eq!(qp(1, 1, 41).height(), 41);
        assert_eq!(qp(10, 30, -41).height(), 41);
        assert_eq!(qp(1, 0, 1).height(), 1);
        assert_eq!(GenPoly::new(vec![7, 0, 0, -5]).unwrap().height(), 7);
    }

    #[test]
    fn disc2_examples() {
        assert_eq!(qp(1, 1, 41).disc(), -163);
        assert_eq!(qp(1, 15, -17).disc(), 293);
        assert_eq!(qp(1, 0, 1).disc(), -4);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            QuadPoly::new(2, 0, 2),
            Err(Error::NotPrimitive { gcd: 2, .. })
        ));
        assert!(matches!(
            QuadPoly::new(1, 0, -4),
            Err(Error::Reducible { disc: 16, .. })
        ));
        assert_eq!(QuadPoly::new(0, 1, 1), Err(Error::ZeroLeading));
        assert!(matches!(
            QuadPoly::new(1, i64::MAX, 1),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn field_index_examples() {
        // 80 = 4²·5
        let p = field_disc_and_index(&qp(1, 0, -20)).unwrap();
        assert_eq!((p.disc.get(), p.index), (5, 4));
        let p = field_disc_and_index(&qp(1, 1, 41)).unwrap();
        assert_eq!((p.disc.get(), p.index), (-163, 1));
        let p = field_disc_and_index(&qp(1, 0, -3)).unwrap();
        assert_eq!((p.disc.get(), p.index), (12, 1));
        let p = field_disc_and_index(&qp(1, 0, 12)).unwrap();
        assert_eq!((p.disc.get(), p.index), (-3, 4));
    }

    #[test]
    fn generator_examples() {
        assert!(is_generator_of(&qp(1, 1, 41), -163));
        assert!(is_generator_of(&qp(1, 0, -20), 5));
        assert!(!is_generator_of(&qp(1, 0, -20), 20));
        assert!(!is_generator_of(&qp(1, 0, -20), 8));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(qp(10, -30, -41).canonicalize(), qp(10, 30, -41));
        assert_eq!(qp(41, 1, 1).canonicalize(), qp(1, 1, 41));
        assert_eq!(qp(1, 0, 1).canonicalize(), qp(1, 0, 1));
        assert_eq!(qp(-10, 30, 41).canonicalize(), qp(10, 30, -41));
        assert_eq!(qp(-41, -30, 10).canonicalize(), qp(10, 30, -41));
    }

    #[test]
    fn disc_n_quadratic_and_binomial() {
        assert_eq!(disc_n(&qp(1, 1, 41).to_gen()).unwrap(), -163);
        // x³ + px + q → −4p³ − 27q²
        let f = GenPoly::new(vec![5, -2, 0, 1]).unwrap();
        assert_eq!(disc_n(&f).unwrap(), -4 * (-8) - 27 * 25);
        // 3x² + 5 → −60, 5x³ + 7 → −27·25·49
        assert_eq!(disc_n(&GenPoly::new(vec![5, 0, 3]).unwrap()).unwrap(), -60);
        assert_eq!(
            disc_n(&GenPoly::new(vec![7, 0, 0, 5]).unwrap()).unwrap(),
            -27 * 25 * 49
        );
    }

    #[test]
    fn gen_poly_rejects_bad_input() {
        assert!(GenPoly::new(vec![1, 2]).is_err());
        assert!(GenPoly::new(vec![1, 2, 0]).is_err());
        assert!(GenPoly::new(vec![2, 4, 6]).is_err());
        assert!(GenPoly::new(vec![]).is_err());
    }

    #[test]
    fn prop1_examples() {
        let b = prop1_bound(2, -163).unwrap();
        assert!((b.value - 163f64.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-12);
        assert!((b.value - 4.513).abs() < 1e-3);
        assert!(b.is_satisfied_by(41));
        assert!(!b.is_satisfied_by(4));
        let b = prop1_bound(2, 5).unwrap();
        assert!((b.value - 0.79).abs() < 0.01);
        assert!(b.is_satisfied_by(1));
        let b = prop1_bound(3, 1).unwrap();
        assert!((b.value - 1.0 / (3.0 * 3f64.sqrt())).abs() < 1e-12);
        assert_eq!(b.disc_exponent, (1, 4));
        assert!(prop1_bound(1, 5).is_err());
    }

    #[test]
    fn en_inequality_examples() {
        assert!(en_inequality_check(&qp(1, 1, 41).to_gen()).unwrap());
        assert!(en_inequality_check(&qp(1, 0, -2).to_gen()).unwrap());
    }

    #[test]
    fn display_gen_poly() {
        assert_eq!(
            GenPoly::new(vec![7, 0, 0, 5]).unwrap().to_string(),
            "5x^3 + 7"
        );
        assert_eq!(
            GenPoly::new(vec![-1, 3, 1]).unwrap().to_string(),
            "x^2 + 3x - 1"
        );
    }
}
