//! Reduced elements of quadratic fields.
//!
//! For `D < 0` these are the roots `z = (b + √D)/(2a)` lying in the standard
//! fundamental domain of the modular group, i.e. reduced binary quadratic
//! forms. For `D > 0` they are the `α = (b + √D)/(2a)` with `α > 1` and
//! `−1 < α′ < 0`; the continued-fraction step `α ↦ 1/(α − ⌊α⌋)` permutes them
//! in cycles.
//!
//! Every predicate in this module is decided with integer arithmetic. Floats
//! are only produced for reporting.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Discriminant;
use crate::intarith::{gcd3, isqrt_u64};
use crate::quadpoly::{is_generator_of, split_discriminant, QuadPoly};

/// Reduced form `(a, b, c)` with `b² − 4ac = D < 0`, `|b| ≤ a ≤ c` and
/// `b ≥ 0` whenever `|b| = a` or `a = c`.
///
/// Its root `z = (b + √D)/(2a)` lies in the fundamental domain; the minimal
/// polynomial of `z` is `a·x² − b·x + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ReducedPointIm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedPointIm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let fail = |reason| Err(Error::NotReduced { a, b, c, reason });
        if a <= 0 || c <= 0 {
            return fail("a and c must be positive");
        }
        if b.abs() > a || a > c {
            return fail("need |b| ≤ a ≤ c");
        }
        if (b.abs() == a || a == c) && b < 0 {
            return fail("boundary case requires b ≥ 0");
        }
        if gcd3(a, b, c) != 1 {
            return fail("not primitive");
        }
        let d = b as i128 * b as i128 - 4 * a as i128 * c as i128;
        if d >= 0 {
            return fail("discriminant must be negative");
        }
        Ok(ReducedPointIm { a, b, c })
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Largest absolute coefficient; with `|b| ≤ a ≤ c` this is `c`.
    pub fn height(&self) -> i64 {
        self.c
    }

    /// `(Re z, Im z)` as floats, for reporting.
    pub fn point(&self) -> (f64, f64) {
        let two_a = 2.0 * self.a as f64;
        (self.b as f64 / two_a, (-self.disc() as f64).sqrt() / two_a)
    }
}

/// All reduced forms of discriminant `d < 0`, in lexicographic order.
pub fn enumerate_imaginary(d: Discriminant) -> Result<Vec<ReducedPointIm>> {
    if !d.is_imaginary() {
        return Err(Error::Precondition(format!("need D < 0, got {d}")));
    }
    let abs_d = d.abs() as i64;
    let a_max = isqrt_u64(abs_d as u64 / 3) as i64;
    let parity = abs_d & 1;
    let mut out = Vec::new();
    for a in 1..=a_max {
        let mut b = -a + 1;
        if (b - parity).rem_euclid(2) != 0 {
            b += 1;
        }
        while b <= a {
            let num = b * b + abs_d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a && !((b.abs() == a || a == c) && b < 0) && gcd3(a, b, c) == 1 {
                    out.push(ReducedPointIm { a, b, c });
                }
            }
            b += 2;
        }
    }
    Ok(out)
}

/// Reduced real quadratic element `α = (b + √D)/(2a)`, `D = b² − 4ac > 0`.
///
/// The minimal polynomial of `α` is `a·x² − b·x + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ReducedPointRe {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedPointRe {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let fail = |reason| Err(Error::NotReduced { a, b, c, reason });
        if a <= 0 || b <= 0 || c >= 0 {
            return fail("need a > 0, b > 0, c < 0");
        }
        if gcd3(a, b, c) != 1 {
            return fail("not primitive");
        }
        let d = (b as i128 * b as i128 - 4 * a as i128 * c as i128) as u128;
        if d > u64::MAX as u128 {
            return Err(Error::Overflow("b² − 4ac"));
        }
        let s = isqrt_u64(d as u64) as i128;
        if s * s == d as i128 {
            return fail("discriminant is a perfect square");
        }
        let (a, b) = (a as i128, b as i128);
        // b < √D,  √D − b < 2a,  2a − b < √D
        if b > s || 2 * a + b <= s || 2 * a - b > s {
            return fail("α > 1 and −1 < α′ < 0 do not both hold");
        }
        Ok(ReducedPointRe {
            a: a as i64,
            b: b as i64,
            c,
        })
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn height(&self) -> i64 {
        self.a.max(self.b).max(-self.c)
    }

    /// `(α, α′)` as floats, for reporting.
    pub fn point(&self) -> (f64, f64) {
        let r = (self.disc() as f64).sqrt();
        let two_a = 2.0 * self.a as f64;
        ((self.b as f64 + r) / two_a, (self.b as f64 - r) / two_a)
    }

    /// Minimal polynomial `a·x² − b·x + c` of `α`.
    pub fn min_poly(&self) -> QuadPoly {
        QuadPoly::from_parts(self.a, -self.b, self.c)
    }
}

impl fmt::Display for ReducedPointRe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl fmt::Display for ReducedPointIm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Integer bounds on `a` for reduced elements with a given `b`: with
/// `s = ⌊√D⌋`, `√D − b < 2a < √D + b` is `s + 1 − b ≤ 2a ≤ s + b`.
#[inline]
pub(crate) fn reduced_a_range(s: i64, b: i64) -> (i64, i64) {
    let lo = ((s + 2 - b) / 2).max(1);
    let hi = (s + b) / 2;
    (lo, hi)
}

/// All reduced elements for `d > 0`, in lexicographic order of `(a, b, c)`.
pub fn enumerate_real(d: Discriminant) -> Result<Vec<ReducedPointRe>> {
    if !d.is_real() {
        return Err(Error::Precondition(format!("need D > 0, got {d}")));
    }
    let dv = d.get();
    let s = isqrt_u64(dv as u64) as i64;
    let mut out = Vec::new();
    let mut b = if dv % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = (dv - b * b) / 4;
        let (lo, hi) = reduced_a_range(s, b);
        for a in lo..=hi {
            if n % a == 0 {
                out.push(ReducedPointRe { a, b, c: -(n / a) });
            }
        }
        b += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// Number of reduced elements, without materialising them.
pub fn count_real(d: Discriminant) -> Result<u64> {
    if !d.is_real() {
        return Err(Error::Precondition(format!("need D > 0, got {d}")));
    }
    let dv = d.get();
    let s = isqrt_u64(dv as u64) as i64;
    let mut count = 0u64;
    let mut b = if dv % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let n = (dv - b * b) / 4;
        let (lo, hi) = reduced_a_range(s, b);
        count += (lo..=hi).filter(|a| n % a == 0).count() as u64;
        b += 2;
    }
    Ok(count)
}

/// `α ↦ 1/(α − ⌊α⌋)` on triples.
///
/// With `k = ⌊α⌋ = ⌊(b + ⌊√D⌋)/(2a)⌋` and `f(x) = a·x² − b·x + c`, the image
/// is `(−f(k), 2ak − b, −a)`.
pub fn rho(p: &ReducedPointRe) -> ReducedPointRe {
    let d = p.disc();
    let s = isqrt_u64(d as u64) as i64;
    let k = (p.b + s) / (2 * p.a);
    let b2 = 2 * p.a * k - p.b;
    let a2 = -(p.a * k * k - p.b * k + p.c);
    ReducedPointRe {
        a: a2,
        b: b2,
        c: -p.a,
    }
}

/// Partition of the reduced elements into `rho`-orbits.
///
/// Each cycle starts at its lexicographically least element and follows `rho`;
/// cycles are ordered by their leaders.
pub fn cycles(d: Discriminant) -> Result<Vec<Vec<ReducedPointRe>>> {
    let all = enumerate_real(d)?;
    let mut seen: BTreeMap<ReducedPointRe, bool> = all.iter().map(|&p| (p, false)).collect();
    let mut out = Vec::new();
    // `all` is sorted, so the first unseen element is its cycle's leader
    for &start in &all {
        if seen[&start] {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start, true);
        let mut cur = rho(&start);
        while cur != start {
            match seen.get_mut(&cur) {
                Some(flag) if !*flag => *flag = true,
                _ => {
                    return Err(Error::Precondition(format!(
                        "rho left the reduced set or revisited {cur} for D = {d}"
                    )))
                }
            }
            cycle.push(cur);
            cur = rho(&cur);
        }
        out.push(cycle);
    }
    Ok(out)
}

/// Exact arithmetic in `Q(√D)`: `(p + q√D)/r` with `r > 0`, in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Surd {
    p: i128,
    q: i128,
    r: i128,
    d: i128,
}

impl Surd {
    fn new(p: i128, q: i128, r: i128, d: i128) -> Surd {
        let g = num_integer::gcd(num_integer::gcd(p, q), r);
        let g = if r < 0 { -g } else { g };
        Surd {
            p: p / g,
            q: q / g,
            r: r / g,
            d,
        }
    }

    fn int(n: i64, d: i128) -> Surd {
        Surd::new(n as i128, 0, 1, d)
    }

    fn sqrt_d(d: i128) -> Surd {
        Surd::new(0, 1, 1, d)
    }

    fn conj(self) -> Surd {
        Surd::new(self.p, -self.q, self.r, self.d)
    }

    fn add(self, o: Surd) -> Surd {
        Surd::new(
            self.p * o.r + o.p * self.r,
            self.q * o.r + o.q * self.r,
            self.r * o.r,
            self.d,
        )
    }

    fn neg(self) -> Surd {
        Surd::new(-self.p, -self.q, self.r, self.d)
    }

    fn sub(self, o: Surd) -> Surd {
        self.add(o.neg())
    }

    fn mul(self, o: Surd) -> Surd {
        Surd::new(
            self.p * o.p + self.q * o.q * self.d,
            self.p * o.q + self.q * o.p,
            self.r * o.r,
            self.d,
        )
    }

    fn recip(self) -> Surd {
        // 1/((p + q√D)/r) = r(p − q√D)/(p² − q²D)
        let norm = self.p * self.p - self.q * self.q * self.d;
        Surd::new(self.r * self.p, -self.r * self.q, norm, self.d)
    }

    fn div(self, o: Surd) -> Surd {
        self.mul(o.recip())
    }
}

/// Verifies the height identity on one reduced element: with `α` and `α′` the
/// two roots of `a·x² − b·x + c`,
/// `a = √D/(α−α′)`, `b = √D(α+α′)/(α−α′)` and `−c = √D·α(−α′)/(α−α′)`,
/// hence `H(α)/√D` is the largest of the three ratios.
///
/// Fails for elements whose discriminant is not a field discriminant.
pub fn lemma4_check(p: &ReducedPointRe) -> Result<bool> {
    let pair = split_discriminant(p.disc())?;
    if pair.index != 1 {
        return Err(Error::Precondition(format!(
            "{p} has field index {} > 1",
            pair.index
        )));
    }
    let d = p.disc() as i128;
    let root = Surd::sqrt_d(d);
    let alpha = Surd::new(p.b as i128, 1, 2 * p.a as i128, d);
    let alpha_c = alpha.conj();
    let diff = alpha.sub(alpha_c);
    let sum = alpha.add(alpha_c);
    let neg_prod = alpha.mul(alpha_c).neg();

    let a_ok = root.div(diff) == Surd::int(p.a, d);
    let b_ok = root.mul(sum).div(diff) == Surd::int(p.b, d);
    let c_ok = root.mul(neg_prod).div(diff) == Surd::int(-p.c, d);
    let h_ok = p.min_poly().height() == p.a.max(p.b).max(-p.c);
    Ok(a_ok && b_ok && c_ok && h_ok)
}

/// Which of `α, α′, −α, −α′` turned out to be reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lemma3Variant {
    Alpha,
    Conjugate,
    Negated,
    NegatedConjugate,
}

/// For a generator `f` of `Q(√D)` with `H(f) ≤ 0.48√D` (checked as
/// `625·H² ≤ 144·D`), finds the variant of its root that is reduced.
pub fn lemma3_which_reduced(
    f: &QuadPoly,
    d: Discriminant,
) -> Result<Option<(Lemma3Variant, ReducedPointRe)>> {
    if !d.is_real() {
        return Err(Error::Precondition(format!("need D > 0, got {d}")));
    }
    if !is_generator_of(f, d.get()) {
        return Err(Error::Precondition(format!(
            "{f} does not generate Q(√{d})"
        )));
    }
    let h = f.height() as i128;
    if 625 * h * h > 144 * d.get() as i128 {
        return Err(Error::Precondition(format!(
            "H({f}) = {h} exceeds 0.48·√{d}"
        )));
    }
    let delta = f.disc();
    if delta != d.get() {
        // the height hypothesis forces index 1
        return Ok(None);
    }
    let (a, b) = (f.a(), f.b());
    // f = a·x² + b·x + c has root α = (−b + √D)/(2a); writing each variant as
    // (B + √D)/(2A):
    let variants = [
        (Lemma3Variant::Alpha, a, -b),
        (Lemma3Variant::Conjugate, -a, b),
        (Lemma3Variant::Negated, -a, -b),
        (Lemma3Variant::NegatedConjugate, a, b),
    ];
    for (tag, big_a, big_b) in variants {
        if big_a <= 0 {
            continue;
        }
        let num = big_b * big_b - delta;
        if num % (4 * big_a) != 0 {
            continue;
        }
        if let Ok(p) = ReducedPointRe::new(big_a, big_b, num / (4 * big_a)) {
            return Ok(Some((tag, p)));
        }
    }
    Ok(None)
}

/// Threshold `h ∈ (0, 1)` of the region `G_h`, stored as the exact square `h²`
/// so that irrational thresholds such as `1/√5` are representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GhThreshold {
    h_sq_num: i64,
    h_sq_den: i64,
}

impl GhThreshold {
    pub fn from_h(h: Ratio<i64>) -> Result<Self> {
        if *h.numer() <= 0 || h >= Ratio::from_integer(1) {
            return Err(Error::Precondition(format!("need 0 < h < 1, got {h}")));
        }
        Self::from_h_squared(h * h)
    }

    pub fn from_h_squared(h_sq: Ratio<i64>) -> Result<Self> {
        if *h_sq.numer() <= 0 || h_sq >= Ratio::from_integer(1) {
            return Err(Error::Precondition(format!("need 0 < h² < 1, got {h_sq}")));
        }
        Ok(GhThreshold {
            h_sq_num: *h_sq.numer(),
            h_sq_den: *h_sq.denom(),
        })
    }

    pub fn h_squared(&self) -> Ratio<i64> {
        Ratio::new(self.h_sq_num, self.h_sq_den)
    }

    /// `x ≤ h·√D` for `x ≥ 0`, i.e. `x²·den ≤ num·D`.
    fn below(&self, x: i64, d: i64) -> bool {
        let x = x as i128;
        x * x * self.h_sq_den as i128 <= self.h_sq_num as i128 * d as i128
    }
}

/// Membership of `(α, α′)` in `G_h`.
///
/// For a reduced element the three defining ratios `1/(α−α′)`, `(α+α′)/(α−α′)`
/// and `α(−α′)/(α−α′)` equal `a/√D`, `b/√D` and `−c/√D`, so each inequality
/// becomes a comparison of squares of non-negative integers.
pub fn g_h_contains(h: &GhThreshold, p: &ReducedPointRe) -> bool {
    let d = p.disc();
    h.below(p.a, d) && h.below(p.b, d) && h.below(-p.c, d)
}

pub fn g_h_scan(d: Discriminant, h: &GhThreshold) -> Result<Vec<ReducedPointRe>> {
    Ok(enumerate_real(d)?
        .into_iter()
        .filter(|p| g_h_contains(h, p))
        .collect())
}

/// Axis-aligned box `[x_lo, x_hi] × [y_lo, y_hi]` in the band
/// `−½ ≤ x ≤ ½`, `y ≥ 1` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HyperRect {
    pub x_lo: Ratio<i64>,
    pub x_hi: Ratio<i64>,
    pub y_lo: Ratio<i64>,
    pub y_hi: Ratio<i64>,
}

impl HyperRect {
    pub fn new(
        x_lo: Ratio<i64>,
        x_hi: Ratio<i64>,
        y_lo: Ratio<i64>,
        y_hi: Ratio<i64>,
    ) -> Result<Self> {
        let half = Ratio::new(1, 2);
        let one = Ratio::from_integer(1);
        if x_lo > x_hi || y_lo > y_hi {
            return Err(Error::Precondition("rectangle is inverted".into()));
        }
        if x_lo < -half || x_hi > half || y_lo < one {
            return Err(Error::Precondition(
                "rectangle must lie in −½ ≤ x ≤ ½, y ≥ 1".into(),
            ));
        }
        Ok(HyperRect {
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        })
    }

    /// Exact membership of the root of a reduced form.
    pub fn contains(&self, p: &ReducedPointIm) -> bool {
        let abs_d = -(p.disc() as i128);
        let two_a = 2 * p.a as i128;
        let b = p.b as i128;
        // x/q ≤ b/(2a)  ⇔  2a·x ≤ b·q
        let x_ge = |x: Ratio<i64>| two_a * *x.numer() as i128 <= b * *x.denom() as i128;
        let x_le = |x: Ratio<i64>| two_a * *x.numer() as i128 >= b * *x.denom() as i128;
        // y = √|D|/(2a); compare squares, both sides positive
        let y_sq_num = |y: Ratio<i64>| {
            let n = *y.numer() as i128;
            n * n * two_a * two_a
        };
        let y_sq_den = |y: Ratio<i64>| {
            let q = *y.denom() as i128;
            abs_d * q * q
        };
        x_ge(self.x_lo)
            && x_le(self.x_hi)
            && y_sq_num(self.y_lo) <= y_sq_den(self.y_lo)
            && y_sq_den(self.y_hi) <= y_sq_num(self.y_hi)
    }
}

/// Hyperbolic measure `(3/π)·dx·dy/y²` of a box, as an exact multiple of `1/π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Measure {
    pub over_pi: Ratio<i128>,
    pub value: f64,
}

pub fn mu_measure(r: &HyperRect) -> Measure {
    let widen = |x: Ratio<i64>| Ratio::new(*x.numer() as i128, *x.denom() as i128);
    let width = widen(r.x_hi) - widen(r.x_lo);
    let band = widen(r.y_lo).recip() - widen(r.y_hi).recip();
    let over_pi = Ratio::from_integer(3) * width * band;
    let value = *over_pi.numer() as f64 / *over_pi.denom() as f64 / std::f64::consts::PI;
    Measure { over_pi, value }
}

/// Reduced points of `D` falling in `r`, out of all reduced points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DukeStat {
    pub inside: u64,
    pub total: u64,
}

impl DukeStat {
    pub fn fraction(&self) -> Ratio<u64> {
        Ratio::new(self.inside, self.total)
    }

    pub fn as_f64(&self) -> f64 {
        self.inside as f64 / self.total as f64
    }
}

pub fn duke_statistic(d: Discriminant, r: &HyperRect) -> Result<DukeStat> {
    let pts = enumerate_imaginary(d)?;
    let inside = pts.iter().filter(|p| r.contains(p)).count() as u64;
    Ok(DukeStat {
        inside,
        total: pts.len() as u64,
    })
}
