use std::collections::BTreeSet;

use quadgen_core::{
    class_number_imaginary, cycles, enumerate_imaginary, enumerate_real, fundamental_range, hmin,
    lemma3_which_reduced, lemma4_check, rho, Discriminant, GhThreshold, Ratio, ReducedPointRe,
};
use quadgen_core::{g_h_contains, g_h_scan, is_generator_of};

#[test]
fn reduced_forms_count_the_class_group() {
    for d in fundamental_range(-10_000, -3) {
        let forms = enumerate_imaginary(d).unwrap();
        assert_eq!(
            forms.len() as u64,
            class_number_imaginary(d).unwrap(),
            "D = {d}"
        );
        for f in &forms {
            assert_eq!(f.b * f.b - 4 * f.a * f.c, d.get());
            assert!(f.b.abs() <= f.a && f.a <= f.c);
            if f.b.abs() == f.a || f.a == f.c {
                assert!(f.b >= 0);
            }
        }
    }
}

#[test]
fn rho_permutes_and_cycles_partition() {
    for d in fundamental_range(5, 5000) {
        let pts = enumerate_real(d).unwrap();
        let dom: BTreeSet<ReducedPointRe> = pts.iter().copied().collect();
        let img: BTreeSet<ReducedPointRe> = pts.iter().map(rho).collect();
        assert_eq!(dom, img, "D = {d}");

        let cs = cycles(d).unwrap();
        let mut seen = BTreeSet::new();
        for c in &cs {
            for (i, p) in c.iter().enumerate() {
                assert!(seen.insert(*p), "D = {d}: {p} in two cycles");
                assert_eq!(rho(p), c[(i + 1) % c.len()]);
            }
            assert_eq!(c[0], *c.iter().min().unwrap());
        }
        assert_eq!(seen, dom, "D = {d}");
    }
}

#[test]
fn lemma4_identity_everywhere() {
    for d in fundamental_range(5, 10_000) {
        for p in enumerate_real(d).unwrap() {
            assert!(lemma4_check(&p).unwrap(), "{p}");
        }
    }
}

#[test]
fn lemma3_never_empty() {
    let mut exercised = 0;
    for d in fundamental_range(5, 10_000) {
        for f in hmin(d).unwrap().witnesses {
            let h = f.height() as i128;
            if 625 * h * h > 144 * d.get() as i128 {
                continue;
            }
            assert!(is_generator_of(&f, d.get()));
            let got = lemma3_which_reduced(&f, d).unwrap();
            assert!(got.is_some(), "D = {d}, f = {f}");
            let (_, p) = got.unwrap();
            assert_eq!(p.disc(), d.get());
            exercised += 1;
        }
    }
    assert!(exercised > 100);
}

#[test]
fn g_h_empty_below_threshold() {
    // h² = 1/5 − 1/10⁶ and h² = 1/5 − 1/100
    for h_sq in [Ratio::new(199_999, 1_000_000), Ratio::new(19, 100)] {
        let t = GhThreshold::from_h_squared(h_sq).unwrap();
        for d in fundamental_range(5, 10_000) {
            assert!(g_h_scan(d, &t).unwrap().is_empty(), "D = {d}");
        }
    }
}

/// Float evaluation of the three `G_h` inequalities on `(α, α′)`.
fn g_h_float(h: f64, p: &ReducedPointRe) -> bool {
    let s = (p.disc() as f64).sqrt();
    let al = (p.b as f64 + s) / (2.0 * p.a as f64);
    let alc = (p.b as f64 - s) / (2.0 * p.a as f64);
    let diff = al - alc;
    1.0 / diff <= h && (al + alc) / diff <= h && al * -alc / diff <= h
}

#[test]
fn g_h_matches_float_oracle() {
    let mut agree = 0;
    for (num, den) in [(45i64, 100i64), (1, 2), (3, 5), (7, 10), (9, 10)] {
        let t = GhThreshold::from_h(Ratio::new(num, den)).unwrap();
        let h = num as f64 / den as f64;
        for d in fundamental_range(5, 3000) {
            for p in enumerate_real(d).unwrap() {
                let exact = g_h_contains(&t, &p);
                let approx = g_h_float(h, &p);
                // only a float tie at the boundary may disagree
                if exact != approx {
                    let s = (p.disc() as f64).sqrt();
                    let m = (p.a.max(p.b).max(-p.c)) as f64 / s;
                    assert!((m - h).abs() < 1e-9, "{p} at h = {h}");
                } else {
                    agree += 1;
                }
            }
        }
    }
    assert!(agree > 0);
}

#[test]
fn corollary_threshold_point() {
    // only x² − x − 1 lies in G_{1/√5}
    let t = GhThreshold::from_h_squared(Ratio::new(1, 5)).unwrap();
    let d5 = Discriminant::new(5).unwrap();
    assert_eq!(
        g_h_scan(d5, &t).unwrap(),
        vec![ReducedPointRe::new(1, 1, -1).unwrap()]
    );
}
