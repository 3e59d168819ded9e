//! Minimal-height generator search and window scans.
//!
//! `hmin` is an exhaustive search over all primitive triples whose
//! discriminant is `m²·D`; `hmin_reduced` restricts to reduced elements.
//! Both feed `scan_max_ratio`, which finds the discriminant maximising
//! `H/√|D|` in a window.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::construct::prop2_generator;
use crate::error::{Error, Result};
use crate::field::{fundamental_range, Discriminant};
use crate::intarith::{gcd3, isqrt_u64};
use crate::quadpoly::QuadPoly;
use crate::reduced::{enumerate_imaginary, reduced_a_range, ReducedPointRe};

/// Largest search bound for which every intermediate stays inside `i64`.
const MAX_SEARCH_BOUND: i64 = 1_000_000_000;

/// Minimal height of a generator of `Q(√D)` and every canonical polynomial
/// attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HminResult {
    pub disc: Discriminant,
    pub height: i64,
    pub witnesses: Vec<QuadPoly>,
}

impl HminResult {
    /// Lexicographically least canonical witness.
    pub fn representative(&self) -> QuadPoly {
        self.witnesses[0]
    }

    pub fn ratio(&self) -> f64 {
        self.height as f64 / (self.disc.abs() as f64).sqrt()
    }

    pub fn ratio_4dp(&self) -> String {
        ratio_4dp(self.height, self.disc.abs())
    }
}

/// Minimal height over the reduced elements of a real quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedHmin {
    pub disc: Discriminant,
    pub height: i64,
    pub witnesses: Vec<ReducedPointRe>,
}

impl ReducedHmin {
    pub fn ratio(&self) -> f64 {
        self.height as f64 / (self.disc.abs() as f64).sqrt()
    }

    pub fn ratio_4dp(&self) -> String {
        ratio_4dp(self.height, self.disc.abs())
    }
}

/// Height of some explicit generator: the monic integral one for `D > 0`, the
/// smallest reduced form for `D < 0`.
pub fn upper_bound(d: Discriminant) -> Result<i64> {
    if d.is_real() {
        Ok(prop2_generator(d)?.height())
    } else {
        enumerate_imaginary(d)?
            .iter()
            .map(|p| p.height())
            .min()
            .ok_or_else(|| Error::Precondition(format!("no reduced form for {d}")))
    }
}

pub fn hmin(d: Discriminant) -> Result<HminResult> {
    hmin_with_bound(d, upper_bound(d)?)
}

/// Exhaustive search for the minimal height, starting from the bound `start`,
/// which must be at least the true minimum.
///
/// Triples are normalised to `a ≥ 1`, `b ≥ 0`; for a given index `m` and
/// leading coefficient `a`, only `b` with `|b² − m²D| ≤ 4a·U` can give
/// `|c| ≤ U`. The index is bounded by `m²|D| ≤ 4U²` (imaginary) or
/// `m²D ≤ 5U²` (real).
pub fn hmin_with_bound(d: Discriminant, start: i64) -> Result<HminResult> {
    if start < 1 {
        return Err(Error::Precondition(format!("search bound {start} < 1")));
    }
    if start > MAX_SEARCH_BOUND {
        return Err(Error::Overflow("hmin search bound"));
    }
    let dv = d.get();
    let imaginary = d.is_imaginary();
    let mut best = start;
    let mut found: BTreeSet<QuadPoly> = BTreeSet::new();

    let mut m: i64 = 1;
    loop {
        let mm = m.checked_mul(m).ok_or(Error::Overflow("index²"))?;
        let md = mm.checked_mul(dv).ok_or(Error::Overflow("m²·D"))?;
        let admissible = if imaginary {
            (-md) as i128 <= 4 * best as i128 * best as i128
        } else {
            md as i128 <= 5 * best as i128 * best as i128
        };
        if !admissible {
            break;
        }
        let parity = md.rem_euclid(2);
        // smallest a for which the b-window can be non-empty
        let a_start = if imaginary {
            div_ceil_pos(-md, 4 * best)
        } else {
            div_ceil_pos(md - best * best, 4 * best)
        }
        .max(1);
        let mut a = a_start;
        while a <= best {
            let lim = 4 * a * best;
            let hi_sq = md + lim;
            if hi_sq < 0 {
                a += 1;
                continue;
            }
            let lo_sq = (md - lim).max(0);
            let mut b_lo = ceil_sqrt_i64(lo_sq);
            let b_hi = best.min(isqrt_u64(hi_sq as u64) as i64);
            if b_lo % 2 != parity {
                b_lo += 1;
            }
            let four_a = 4 * a;
            let mut b = b_lo;
            while b <= b_hi {
                let num = b * b - md;
                if num % four_a == 0 {
                    let c = num / four_a;
                    if c != 0 && c.abs() <= best && gcd3(a, b, c) == 1 {
                        let h = a.max(b).max(c.abs());
                        if h < best {
                            best = h;
                            found.clear();
                        }
                        if h == best {
                            found.insert(QuadPoly::from_parts(a, b, c).canonicalize());
                        }
                    }
                }
                b += 2;
            }
            a += 1;
        }
        m += 1;
    }

    if found.is_empty() {
        return Err(Error::Precondition(format!(
            "no generator of height ≤ {start} for D = {d}"
        )));
    }
    Ok(HminResult {
        disc: d,
        height: best,
        witnesses: found.into_iter().collect(),
    })
}

/// Minimal height over the reduced elements, with every reduced element
/// attaining it.
///
/// Reduced elements all have height `< √D`. Scanning `b` upwards, the search
/// stops once `b` exceeds the best height; for fixed `b` only `a` with
/// `N/U ≤ a ≤ U` (`N = (D − b²)/4`) can improve on `U`.
pub fn hmin_reduced(d: Discriminant) -> Result<ReducedHmin> {
    if !d.is_real() {
        return Err(Error::Precondition(format!("need D > 0, got {d}")));
    }
    let dv = d.get();
    let s = isqrt_u64(dv as u64) as i64;
    let mut best = s;
    let mut found: Vec<ReducedPointRe> = Vec::new();
    let mut b = if dv % 2 == 0 { 2 } else { 1 };
    while b <= s && b <= best {
        let n = (dv - b * b) / 4;
        let (lo, hi) = reduced_a_range(s, b);
        let lo = lo.max(div_ceil_pos(n, best));
        let hi = hi.min(best);
        for a in lo..=hi {
            if n % a != 0 {
                continue;
            }
            let c = n / a;
            let h = a.max(b).max(c);
            if h < best {
                best = h;
                found.clear();
            }
            if h == best {
                found.push(ReducedPointRe { a, b, c: -c });
            }
        }
        b += 2;
    }
    found.sort_unstable();
    if found.is_empty() {
        return Err(Error::Precondition(format!(
            "no reduced element for D = {d}"
        )));
    }
    Ok(ReducedHmin {
        disc: d,
        height: best,
        witnesses: found,
    })
}

fn div_ceil_pos(num: i64, den: i64) -> i64 {
    if num <= 0 {
        0
    } else {
        (num + den - 1) / den
    }
}

fn ceil_sqrt_i64(n: i64) -> i64 {
    let r = isqrt_u64(n as u64) as i64;
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// `H/√|D|` rounded half-up to four decimals, decided exactly.
pub fn ratio_4dp(height: i64, abs_d: u64) -> String {
    let k = round_ratio_scaled(height, abs_d, 10_000);
    format!("{}.{:04}", k / 10_000, k % 10_000)
}

/// `⌊scale·H/√|D| + ½⌋` in exact integer arithmetic.
pub fn round_ratio_scaled(height: i64, abs_d: u64, scale: i64) -> i64 {
    let q = height as i128 * scale as i128;
    let d = abs_d as i128;
    // k ≤ q/√D + ½  ⇔  2k − 1 ≤ 0  or  (2k − 1)²·D ≤ 4q²
    let ok = |k: i128| {
        let t = 2 * k - 1;
        t <= 0 || t * t * d <= 4 * q * q
    };
    let mut k = (q as f64 / (d as f64).sqrt() + 0.5).floor() as i128;
    while ok(k + 1) {
        k += 1;
    }
    while !ok(k) {
        k -= 1;
    }
    k as i64
}

/// `H₁/√|D₁|` against `H₂/√|D₂|`, exactly.
pub fn cmp_ratio(h1: i64, d1: u64, h2: i64, d2: u64) -> Ordering {
    let l = h1 as i128 * h1 as i128 * d2 as i128;
    let r = h2 as i128 * h2 as i128 * d1 as i128;
    l.cmp(&r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    /// Minimal height over all generators.
    Generator,
    /// Minimal height over reduced elements only (`D > 0`).
    Reduced,
}

/// One row of a window scan: the discriminant maximising `H/√|D|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub window: (i64, i64),
    pub disc: i64,
    pub height: i64,
    /// Printed representative (lexicographically least witness).
    pub triple: (i64, i64, i64),
    /// Every witness attaining the height at `disc`.
    pub witnesses: Vec<(i64, i64, i64)>,
    /// Mean of `H/√D` over the window; reduced scans only.
    pub average: Option<f64>,
    /// Number of fundamental discriminants in the window.
    pub count: usize,
}

impl ScanRow {
    pub fn ratio_4dp(&self) -> String {
        ratio_4dp(self.height, self.disc.unsigned_abs())
    }

    pub fn average_4dp(&self) -> Option<String> {
        self.average.map(|x| format!("{x:.4}"))
    }
}

/// Per-discriminant outcome of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanPoint {
    pub disc: Discriminant,
    pub height: i64,
    pub witnesses: Vec<(i64, i64, i64)>,
}

pub fn scan_point(d: Discriminant, kind: ScanKind) -> Result<ScanPoint> {
    Ok(match kind {
        ScanKind::Generator => {
            let r = hmin(d)?;
            ScanPoint {
                disc: d,
                height: r.height,
                witnesses: r.witnesses.iter().map(|w| w.coeffs()).collect(),
            }
        }
        ScanKind::Reduced => {
            let r = hmin_reduced(d)?;
            ScanPoint {
                disc: d,
                height: r.height,
                witnesses: r.witnesses.iter().map(|w| (w.a, w.b, w.c)).collect(),
            }
        }
    })
}

/// Maximum of `H/√|D|` over the fundamental discriminants in `[lo, hi]`.
///
/// Ties go to the smaller `|D|`. Per-discriminant work runs on the current
/// rayon pool; the reduction is sequential in ascending `D`, so the row does
/// not depend on the number of workers.
pub fn scan_max_ratio(lo: i64, hi: i64, kind: ScanKind) -> Result<ScanRow> {
    let ds = fundamental_range(lo, hi);
    if ds.is_empty() {
        return Err(Error::EmptyWindow { lo, hi });
    }
    if kind == ScanKind::Reduced && ds[0].is_imaginary() {
        return Err(Error::Precondition(
            "reduced scans need a window of positive discriminants".into(),
        ));
    }
    let points: Vec<ScanPoint> = ds
        .par_iter()
        .map(|&d| scan_point(d, kind))
        .collect::<Result<_>>()?;
    Ok(reduce_window((lo, hi), &points, kind))
}

fn reduce_window(window: (i64, i64), points: &[ScanPoint], kind: ScanKind) -> ScanRow {
    let mut best = &points[0];
    for p in &points[1..] {
        let ord = cmp_ratio(p.height, p.disc.abs(), best.height, best.disc.abs());
        if ord == Ordering::Greater || (ord == Ordering::Equal && p.disc.abs() < best.disc.abs()) {
            best = p;
        }
    }
    let average = (kind == ScanKind::Reduced).then(|| {
        let sum: f64 = points
            .iter()
            .map(|p| p.height as f64 / (p.disc.abs() as f64).sqrt())
            .sum();
        sum / points.len() as f64
    });
    ScanRow {
        window,
        disc: best.disc.get(),
        height: best.height,
        triple: best.witnesses[0],
        witnesses: best.witnesses.clone(),
        average,
        count: points.len(),
    }
}

/// Splits `[lo, hi]` into consecutive windows of width `w`; the last window
/// absorbs the remainder and ends at `hi`.
pub fn windows(lo: i64, hi: i64, w: i64) -> Result<Vec<(i64, i64)>> {
    if lo >= hi {
        return Err(Error::Precondition(format!(
            "need lo < hi, got [{lo}, {hi}]"
        )));
    }
    if w <= 0 {
        return Err(Error::Precondition(format!(
            "window width {w} must be positive"
        )));
    }
    let k = (hi - lo + w - 1) / w;
    Ok((0..k)
        .map(|i| {
            let start = lo + i * w;
            let end = if i == k - 1 { hi } else { start + w - 1 };
            (start, end)
        })
        .collect())
}

/// One `ScanRow` per window of `[lo, hi]`.
pub fn scan_windows(lo: i64, hi: i64, w: i64, kind: ScanKind) -> Result<Vec<ScanRow>> {
    windows(lo, hi, w)?
        .into_iter()
        .map(|(a, b)| scan_max_ratio(a, b, kind))
        .collect()
}
