//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Table rows are checked through the `quadgen` binary; the property suite
//! calls the library directly. A criterion that cannot be met stays FAIL; the
//! test itself only fails when the set of failures differs from the
//! documented ones in `KNOWN_MISMATCHES`.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadgen_core::intarith::{is_prime, kronecker};
use quadgen_core::{
    class_number_imaginary, cycles, disc_n, en_inequality_check, enumerate_imaginary,
    enumerate_real, fundamental_range, g_h_scan, hmin, is_fundamental, lemma2_generator,
    lemma3_which_reduced, lemma4_check, prop2_generator, rho, Discriminant, GenPoly, GhThreshold,
    QuadPoly, Ratio, ReducedPointRe,
};

/// Printed ratios that disagree with the correctly rounded value of the
/// printed `H/√|D|`: (criterion, D, printed, exact).
const KNOWN_MISMATCHES: &[(u32, i64, &str, &str)] = &[
    // 173/√73747 = 0.637050…
    (1, -73747, "0.6372", "0.6371"),
    // 63/√8197 = 0.695845…
    (2, 8197, "0.6959", "0.6958"),
];

struct Row {
    d: i64,
    triple: (i64, i64, i64),
    ratio: &'static str,
    average: Option<&'static str>,
}

const fn row(d: i64, triple: (i64, i64, i64), ratio: &'static str) -> Row {
    Row {
        d,
        triple,
        ratio,
        average: None,
    }
}

const fn row_avg(d: i64, triple: (i64, i64, i64), ratio: &'static str, avg: &'static str) -> Row {
    Row {
        d,
        triple,
        ratio,
        average: Some(avg),
    }
}

/// Imaginary fields, windows of 10⁴ from 0 down to −10⁵.
const IMAGINARY_TABLE: &[Row] = &[
    row(-163, (1, 1, 41), "3.2114"),
    row(-17467, (47, 39, 101), "0.7642"),
    row(-21379, (55, 29, 101), "0.6908"),
    row(-36523, (73, 59, 137), "0.7169"),
    row(-47947, (83, 39, 149), "0.6805"),
    row(-50395, (89, 35, 145), "0.6459"),
    row(-68707, (127, 127, 167), "0.6371"),
    row(-73747, (109, 41, 173), "0.6372"),
    row(-81859, (121, 93, 187), "0.6536"),
    row(-91795, (127, 91, 197), "0.6502"),
];

/// Real fields, windows of 10³ up to 10⁴.
const REAL_TABLE: &[Row] = &[
    row(293, (1, 15, -17), "0.9932"),
    row(1592, (2, 36, -37), "0.9273"),
    row(2540, (10, 30, -41), "0.8135"),
    row(3053, (7, 43, -43), "0.7782"),
    row(4973, (17, 37, -53), "0.7516"),
    row(5885, (13, 55, -55), "0.7170"),
    row(6341, (17, 51, -55), "0.6907"),
    row(7229, (17, 53, -65), "0.7645"),
    row(8197, (23, 49, -63), "0.6959"),
    row(9037, (37, 3, -61), "0.6417"),
];

/// Reduced elements, windows of 10⁴ up to 10⁵.
const REDUCED_TABLE: &[Row] = &[
    row_avg(908, (1, 30, -2), "0.9956", "0.5238"),
    row_avg(14693, (19, 109, -37), "0.8992", "0.4976"),
    row_avg(24173, (23, 115, -119), "0.7654", "0.4904"),
    row_avg(37532, (38, 122, -149), "0.7691", "0.4881"),
    row_avg(49013, (37, 153, -173), "0.7814", "0.4847"),
    row_avg(54053, (47, 153, -163), "0.7011", "0.4836"),
    row_avg(69893, (97, 173, -103), "0.6544", "0.4820"),
    row_avg(79805, (95, 105, -181), "0.6407", "0.4814"),
    row_avg(87533, (79, 159, -197), "0.6659", "0.4801"),
    row_avg(95672, (106, 128, -187), "0.6046", "0.4794"),
];

/// Windows `[base, base + 10⁴]`.
const REDUCED_TABLE_EXTENDED: &[(i64, Row)] = &[
    (
        100_000,
        row_avg(104093, (83, 195, -199), "0.6168", "0.4791"),
    ),
    (
        1_000_000,
        row_avg(1006232, (463, 194, -523), "0.5214", "0.4668"),
    ),
    (
        10_000_000,
        row_avg(10000973, (1423, 1029, -1571), "0.4968", "0.4589"),
    ),
];

#[derive(Debug, Clone)]
struct ScanOut {
    d: i64,
    triple: (i64, i64, i64),
    ratio: String,
    average: String,
}

fn quadgen(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_quadgen"))
        .args(args)
        .env_remove("QUADGEN_JOBS")
        .output()
        .expect("spawn quadgen");
    assert!(
        out.status.success(),
        "quadgen {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn records(text: &str) -> Vec<csv::StringRecord> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap())
        .collect()
}

fn summary(text: &str, key: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .find_map(|l| l.strip_prefix(&format!("{key}=")).map(str::to_string))
}

fn scan(args: &[&str]) -> Vec<ScanOut> {
    records(&quadgen(args))
        .iter()
        .map(|r| ScanOut {
            d: r[2].parse().unwrap(),
            triple: (
                r[3].parse().unwrap(),
                r[4].parse().unwrap(),
                r[5].parse().unwrap(),
            ),
            ratio: r[6].to_string(),
            average: r[7].to_string(),
        })
        .collect()
}

fn canon(t: (i64, i64, i64)) -> QuadPoly {
    QuadPoly::new(t.0, t.1, t.2).unwrap().canonicalize()
}

/// Cell-by-cell comparison; returns the mismatches as text and as ratio
/// mismatches `(D, printed, computed)`.
fn compare(want: &[&Row], got: &[ScanOut]) -> (Vec<String>, Vec<(i64, String, String)>) {
    let mut other = Vec::new();
    let mut ratios = Vec::new();
    if want.len() != got.len() {
        other.push(format!(
            "{} rows expected, {} produced",
            want.len(),
            got.len()
        ));
        return (other, ratios);
    }
    for (w, g) in want.iter().zip(got) {
        if w.d != g.d {
            other.push(format!("D: expected {}, got {}", w.d, g.d));
            continue;
        }
        if canon(w.triple) != canon(g.triple) {
            other.push(format!(
                "D = {}: triple {:?} vs {:?}",
                w.d, w.triple, g.triple
            ));
        }
        if w.ratio != g.ratio {
            ratios.push((w.d, w.ratio.to_string(), g.ratio.clone()));
        }
        if let Some(a) = w.average {
            if a != g.average {
                other.push(format!("D = {}: average {} vs {}", w.d, a, g.average));
            }
        }
    }
    (other, ratios)
}

struct Report {
    lines: Vec<(u32, bool, String)>,
    unexpected: Vec<String>,
}

impl Report {
    fn record(&mut self, id: u32, pass: bool, detail: String) {
        let line = format!(
            "criterion {id}: {} — {detail}\n",
            if pass { "PASS" } else { "FAIL" }
        );
        // straight to the process stderr so the line survives output capture
        let _ = std::io::stderr().write_all(line.as_bytes());
        self.lines.push((id, pass, detail));
    }

    fn table(&mut self, id: u32, name: &str, want: &[&Row], got: &[ScanOut]) {
        let (other, ratios) = compare(want, got);
        let known: BTreeSet<(i64, String, String)> = KNOWN_MISMATCHES
            .iter()
            .filter(|k| k.0 == id)
            .map(|k| (k.1, k.2.to_string(), k.3.to_string()))
            .collect();
        let found: BTreeSet<(i64, String, String)> = ratios.iter().cloned().collect();
        for r in found.symmetric_difference(&known) {
            self.unexpected
                .push(format!("criterion {id}: undocumented ratio mismatch {r:?}"));
        }
        for o in &other {
            self.unexpected.push(format!("criterion {id}: {o}"));
        }
        let pass = other.is_empty() && ratios.is_empty();
        let mut detail = format!("{name}: {} rows", want.len());
        for (d, printed, exact) in &ratios {
            detail.push_str(&format!(
                "; D = {d} ratio printed {printed}, exact rounding gives {exact}"
            ));
        }
        for o in &other {
            detail.push_str(&format!("; {o}"));
        }
        self.record(id, pass, detail);
    }

    fn check(&mut self, id: u32, pass: bool, detail: String) {
        if !pass {
            self.unexpected.push(format!("criterion {id}: {detail}"));
        }
        self.record(id, pass, detail);
    }
}

fn property_suite() -> Vec<(&'static str, bool)> {
    let real_small = fundamental_range(5, 10_000);
    let imag_small = fundamental_range(-10_000, -3);
    let mut out = Vec::new();

    out.push((
        "bracketing 5H² ≥ D > H², D ≤ 10⁴",
        real_small.iter().all(|&d| {
            let h = hmin(d).unwrap().height as i128;
            let dv = d.get() as i128;
            5 * h * h >= dv && h * h < dv
        }),
    ));
    out.push((
        "4H² ≥ |D|, D ≥ −10⁴",
        imag_small.iter().all(|&d| {
            let h = hmin(d).unwrap().height as i128;
            4 * h * h >= d.abs() as i128
        }),
    ));
    out.push((
        "height identity on reduced elements, D ≤ 10⁴",
        real_small.iter().all(|&d| {
            enumerate_real(d)
                .unwrap()
                .iter()
                .all(|p| lemma4_check(p).unwrap())
        }),
    ));
    out.push((
        "ρ bijective and cycles partition Λ_D, D ≤ 5000",
        fundamental_range(5, 5000).iter().all(|&d| {
            let dom: BTreeSet<ReducedPointRe> = enumerate_real(d).unwrap().into_iter().collect();
            let img: BTreeSet<ReducedPointRe> = dom.iter().map(rho).collect();
            let cs = cycles(d).unwrap();
            let flat: Vec<ReducedPointRe> = cs.iter().flatten().copied().collect();
            let closed = cs
                .iter()
                .all(|c| (0..c.len()).all(|i| rho(&c[i]) == c[(i + 1) % c.len()]));
            dom == img
                && flat.len() == dom.len()
                && flat.iter().copied().collect::<BTreeSet<_>>() == dom
                && closed
        }),
    ));
    out.push((
        "small generators have a reduced variant, D ≤ 10⁴",
        real_small.iter().all(|&d| {
            hmin(d).unwrap().witnesses.iter().all(|f| {
                let h = f.height() as i128;
                625 * h * h > 144 * d.get() as i128 || lemma3_which_reduced(f, d).unwrap().is_some()
            })
        }),
    ));
    out.push((
        "#Λ_D = class number, D ≥ −10⁴",
        imag_small.iter().all(|&d| {
            enumerate_imaginary(d).unwrap().len() as u64 == class_number_imaginary(d).unwrap()
        }),
    ));
    let below = GhThreshold::from_h_squared(Ratio::new(199_999, 1_000_000)).unwrap();
    out.push((
        "G_h empty for h² < 1/5, D ≤ 10⁴",
        real_small
            .iter()
            .all(|&d| g_h_scan(d, &below).unwrap().is_empty()),
    ));
    out.push((
        "monic generator below √D, D ≤ 10⁶",
        fundamental_range(5, 1_000_000).iter().all(|&d| {
            let f = prop2_generator(d).unwrap();
            let h = f.height() as i128;
            f.disc() == d.get() && h * h < d.get() as i128
        }),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    let mut n = 0;
    while n < 10_000 {
        let dv = rng.gen_range(5i64..=2_000_000);
        if !is_fundamental(dv) {
            continue;
        }
        n += 1;
        let den = rng.gen_range(2i64..=100);
        let eps = Ratio::new(rng.gen_range(1..=den / 2), den);
        let d = Discriminant::new(dv).unwrap();
        if let Some(w) = lemma2_generator(d, eps).unwrap() {
            let p = w.p as i128;
            let (en, ed) = (*eps.numer() as i128, *eps.denom() as i128);
            ok &= is_prime(w.p)
                && kronecker(dv, w.p as i64) == 1
                && 4 * p * p >= dv as i128
                && 4 * p * p * ed * ed <= (ed + 2 * en).pow(2) * dv as i128
                && w.poly.disc() == dv
                && w.height_bound_holds();
        }
    }
    out.push(("prime-interval witnesses, 10⁴ random (D, ε)", ok));

    let mut ok = true;
    let mut n = 0;
    while n < 100_000 {
        let deg = rng.gen_range(2..=5);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-100..=100)).collect();
        let Ok(f) = GenPoly::new(coeffs) else {
            continue;
        };
        n += 1;
        ok &= en_inequality_check(&f).unwrap();
    }
    out.push(("e_n inequality, 10⁵ random polynomials", ok));

    let mut ok = true;
    for a in -30i64..=30 {
        for b in -30i64..=30 {
            for c in -30i64..=30 {
                if a == 0 || num_integer::gcd(num_integer::gcd(a, b), c) != 1 {
                    continue;
                }
                let f = GenPoly::new(vec![c, b, a]).unwrap();
                ok &= disc_n(&f).unwrap() == (b * b - 4 * a * c) as i128;
            }
        }
    }
    for _ in 0..10_000 {
        let (a, b, c, d) = (
            rng.gen_range(1i64..=50),
            rng.gen_range(-50i64..=50),
            rng.gen_range(-50i64..=50),
            rng.gen_range(-50i64..=50),
        );
        let Ok(f) = GenPoly::new(vec![d, c, b, a]) else {
            continue;
        };
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        ok &= disc_n(&f).unwrap()
            == b * b * c * c - 4 * a * c.pow(3) - 4 * b.pow(3) * d - 27 * a * a * d * d
                + 18 * a * b * c * d;
    }
    out.push(("disc_n against closed forms", ok));
    out
}

#[test]
fn acceptance() {
    let mut rep = Report {
        lines: Vec::new(),
        unexpected: Vec::new(),
    };

    // 1
    let mut t1 = scan(&["scan", "-100000", "0", "--window", "10000"]);
    // windows run upwards from −10⁵; the table lists them from 0 down
    t1.reverse();
    rep.table(
        1,
        "imaginary table",
        &IMAGINARY_TABLE.iter().collect::<Vec<_>>(),
        &t1,
    );

    // 2
    let t2 = scan(&["scan", "0", "10000", "--window", "1000"]);
    rep.table(2, "real table", &REAL_TABLE.iter().collect::<Vec<_>>(), &t2);

    // 3
    let mut t3 = scan(&[
        "scan", "1", "100000", "--kind", "reduced", "--window", "10000",
    ]);
    let mut want3: Vec<&Row> = REDUCED_TABLE.iter().collect();
    for (base, r) in REDUCED_TABLE_EXTENDED {
        let (lo, hi) = (base.to_string(), (base + 10_000).to_string());
        t3.extend(scan(&[
            "scan", &lo, &hi, "--kind", "reduced", "--window", "10000",
        ]));
        want3.push(r);
    }
    rep.table(
        3,
        "reduced table with averages, incl. 10⁵/10⁶/10⁷ rows",
        &want3,
        &t3,
    );

    // 4
    let m = quadgen(&["meps", "1100000", "--epsilon", "0.1"]);
    let largest = summary(&m, "largest_exception").unwrap_or_default();
    rep.check(
        4,
        largest == "981913",
        format!(
            "largest M_0.1 exception up to 1100000: {largest} ({} exceptions)",
            records(&m).len()
        ),
    );

    // 5
    let g = records(&quadgen(&["hmin", "2540"]));
    let g_h = g[0][1].to_string();
    let orbit = canon((10, 30, -41));
    let has_orbit = g.iter().any(|r| {
        canon((
            r[3].parse().unwrap(),
            r[4].parse().unwrap(),
            r[5].parse().unwrap(),
        )) == orbit
    });
    let red = records(&quadgen(&["hmin", "2540", "--reduced"]));
    let red_first = (
        red[0][3].to_string(),
        red[0][4].to_string(),
        red[0][5].to_string(),
    );
    rep.check(
        5,
        g_h == "41" && has_orbit && &red[0][1] == "50" && red_first == ("1".into(), "50".into(), "-10".into()),
        format!(
            "hmin(2540) = {g_h} (orbit of (10,30,-41) present: {has_orbit}); hmin_red(2540) = {} with ({},{},{})",
            &red[0][1], red_first.0, red_first.1, red_first.2
        ),
    );

    // 6
    let props = property_suite();
    let failed: Vec<&str> = props.iter().filter(|p| !p.1).map(|p| p.0).collect();
    rep.check(
        6,
        failed.is_empty(),
        if failed.is_empty() {
            format!("{} property checks", props.len())
        } else {
            format!("failed: {}", failed.join("; "))
        },
    );

    // 7
    let duke = quadgen(&["duke", "-100000", "-90000", "--rect", "0,0.25,1.02,1.5"]);
    let mean: f64 = summary(&duke, "mean_fraction").unwrap().parse().unwrap();
    let mu: f64 = summary(&duke, "mu").unwrap().parse().unwrap();
    let exact_mu = 4.0 / 17.0 / std::f64::consts::PI;
    rep.check(
        7,
        (mean - exact_mu).abs() <= 0.05 && (mu - exact_mu).abs() < 1e-6,
        format!(
            "mean fraction {mean:.6} vs μ = 4/(17π) = {exact_mu:.6}, deviation {:.6} (tolerance 0.05)",
            (mean - exact_mu).abs()
        ),
    );

    // 8
    let first1: f64 = t1[0].ratio.parse().unwrap();
    let tail1 = t1[1..]
        .iter()
        .all(|r| r.ratio.parse::<f64>().unwrap() < first1);
    let first3: f64 = t3[0].ratio.parse().unwrap();
    let tail3 = t3[1..]
        .iter()
        .all(|r| r.ratio.parse::<f64>().unwrap() < first3);
    let ext: Vec<&str> = t3[t3.len() - 3..]
        .iter()
        .map(|r| r.ratio.as_str())
        .collect();
    rep.check(
        8,
        tail1 && tail3,
        format!(
            "imaginary tail below {first1} (floor 0.5): {tail1}; reduced tail below {first3} (floor 0.4472): {tail3}; extended ratios {}",
            ext.join(" > ")
        ),
    );

    let passed = rep.lines.iter().filter(|l| l.1).count();
    let _ = std::io::stderr()
        .write_all(format!("acceptance: {passed}/{} criteria pass\n", rep.lines.len()).as_bytes());
    assert!(
        rep.unexpected.is_empty(),
        "unexpected acceptance failures:\n{}",
        rep.unexpected.join("\n")
    );
}
