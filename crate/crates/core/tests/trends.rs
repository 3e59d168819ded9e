//! Report-only checks: printed, with soft gates.

use quadgen_core::{count_real, fundamental_range, g_h_scan, GhThreshold, Ratio};

#[test]
fn reduced_set_growth() {
    let mut xs: Vec<f64> = fundamental_range(1_000_000, 1_010_000)
        .into_iter()
        .map(|d| {
            let n = count_real(d).unwrap() as f64;
            n.ln() / (d.get() as f64).sqrt().ln()
        })
        .collect();
    xs.sort_by(f64::total_cmp);
    let median = xs[xs.len() / 2];
    eprintln!("median log #Λ_D / log √D over [10⁶, 10⁶+10⁴]: {median:.4}");
    assert!((0.85..=1.15).contains(&median));
}

#[test]
fn g_h_fraction_above_threshold() {
    let t = GhThreshold::from_h(Ratio::new(1, 2)).unwrap();
    let ds = fundamental_range(5, 20_000);
    let hit = ds
        .iter()
        .filter(|&&d| !g_h_scan(d, &t).unwrap().is_empty())
        .count();
    eprintln!(
        "D ≤ 20000 with a reduced element in G_(1/2): {hit}/{} ({:.4})",
        ds.len(),
        hit as f64 / ds.len() as f64
    );
}
