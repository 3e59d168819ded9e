use num_rational::Ratio;
use rayon::prelude::*;
use serde_json::{json, Value};

use quadgen_core::quadpoly::split_discriminant;
use quadgen_core::{
    cycles, degree_n_family, duke_statistic, fundamental_range, hmin, hmin_reduced,
    imaginary_family, is_generator_of, lemma1_integral, lemma2_generator, m_eps_exceptions,
    mu_measure, prop2_generator, real_family, scan_windows, Discriminant, HyperRect, QuadPoly,
};

use crate::args::{Command, ConstructKind};
use crate::decimal::{parse_decimal, parse_rect};
use crate::output::{OutputRecord, Table};
use crate::{CliError, CliResult};

pub fn execute(cmd: &Command) -> CliResult<OutputRecord> {
    match cmd {
        Command::Hmin { d, reduced, verify } => match verify {
            Some(spec) => cmd_verify(*d, spec),
            None if *reduced => cmd_hmin_reduced(*d),
            None => cmd_hmin(*d),
        },
        Command::Scan {
            lo,
            hi,
            kind,
            window,
        } => cmd_scan(*lo, *hi, (*kind).into(), *window),
        Command::Meps { limit, epsilon } => cmd_meps(*limit, epsilon),
        Command::Duke { lo, hi, rect } => cmd_duke(*lo, *hi, rect),
        Command::Cycles { d } => cmd_cycles(*d),
        Command::Construct { kind } => cmd_construct(kind),
    }
}

fn ratio_str(r: Ratio<i64>) -> String {
    r.to_string()
}

fn cmd_hmin(d: i64) -> CliResult<OutputRecord> {
    let d = Discriminant::new(d)?;
    let r = hmin(d)?;
    let mut t = Table::new(&["D", "H", "ratio", "a", "b", "c"]);
    let ratio = r.ratio_4dp();
    for w in &r.witnesses {
        t.push(vec![
            json!(d.get()),
            json!(r.height),
            json!(ratio),
            json!(w.a()),
            json!(w.b()),
            json!(w.c()),
        ]);
    }
    Ok(OutputRecord::new("hmin", t)
        .input("D", d.get())
        .input("reduced", false))
}

fn cmd_hmin_reduced(d: i64) -> CliResult<OutputRecord> {
    let d = Discriminant::new(d)?;
    let r = hmin_reduced(d)?;
    let mut t = Table::new(&["D", "H", "ratio", "a", "b", "c"]);
    let ratio = r.ratio_4dp();
    for w in &r.witnesses {
        t.push(vec![
            json!(d.get()),
            json!(r.height),
            json!(ratio),
            json!(w.a),
            json!(w.b),
            json!(w.c),
        ]);
    }
    Ok(OutputRecord::new("hmin", t)
        .input("D", d.get())
        .input("reduced", true))
}

fn parse_triple(s: &str) -> CliResult<(i64, i64, i64)> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("expected three integers a,b,c, got {s:?}")))?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(CliError::Usage(format!(
            "expected three integers a,b,c, got {s:?}"
        ))),
    }
}

fn cmd_verify(d: i64, spec: &str) -> CliResult<OutputRecord> {
    let d = Discriminant::new(d)?;
    let (a, b, c) = parse_triple(spec)?;
    let f = QuadPoly::new(a, b, c)?;
    if !is_generator_of(&f, d.get()) {
        return Err(CliError::Usage(format!(
            "{f} has discriminant {} and does not generate Q(√{d})",
            f.disc()
        )));
    }
    let pair = split_discriminant(f.disc())?;
    let mut t = Table::new(&["D", "a", "b", "c", "H", "index", "valid"]);
    t.push(vec![
        json!(d.get()),
        json!(a),
        json!(b),
        json!(c),
        json!(f.height()),
        json!(pair.index),
        json!(true),
    ]);
    Ok(OutputRecord::new("verify", t)
        .input("D", d.get())
        .input("polynomial", spec))
}

fn cmd_scan(lo: i64, hi: i64, kind: quadgen_core::ScanKind, w: i64) -> CliResult<OutputRecord> {
    let rows = scan_windows(lo, hi, w, kind)?;
    let mut t = Table::new(&[
        "window_lo",
        "window_hi",
        "D",
        "a",
        "b",
        "c",
        "ratio",
        "average",
    ]);
    for r in &rows {
        t.push(vec![
            json!(r.window.0),
            json!(r.window.1),
            json!(r.disc),
            json!(r.triple.0),
            json!(r.triple.1),
            json!(r.triple.2),
            json!(r.ratio_4dp()),
            r.average_4dp().map_or(Value::Null, Value::from),
        ]);
    }
    Ok(OutputRecord::new("scan", t)
        .input("lo", lo)
        .input("hi", hi)
        .input("kind", serde_json::to_value(kind).unwrap_or(Value::Null))
        .input("window", w))
}

fn cmd_meps(limit: i64, epsilon: &str) -> CliResult<OutputRecord> {
    let eps = parse_decimal(epsilon)?;
    let exceptions = m_eps_exceptions(limit, eps)?;
    // each exception is re-checked by the direct prime search
    let recheck: Vec<bool> = exceptions
        .par_iter()
        .map(|&d| lemma2_generator(d, eps).map(|w| w.is_none()))
        .collect::<Result<_, _>>()?;
    if let Some(i) = recheck.iter().position(|ok| !ok) {
        return Err(CliError::Internal(format!(
            "{} was reported as an exception but has a qualifying prime",
            exceptions[i]
        )));
    }
    let mut t = Table::new(&["D"]);
    for d in &exceptions {
        t.push(vec![json!(d.get())]);
    }
    let mut rec = OutputRecord::new("meps", t)
        .input("limit", limit)
        .input("epsilon", ratio_str(eps));
    rec.summarize("count", exceptions.len());
    rec.summarize(
        "largest_exception",
        exceptions.last().map_or(Value::Null, |d| json!(d.get())),
    );
    Ok(rec)
}

fn cmd_duke(lo: i64, hi: i64, rect: &str) -> CliResult<OutputRecord> {
    if lo > hi {
        return Err(CliError::Usage(format!("need lo ≤ hi, got [{lo}, {hi}]")));
    }
    if hi >= 0 {
        return Err(CliError::Usage(format!(
            "equidistribution needs negative discriminants, got hi = {hi}"
        )));
    }
    let [x0, x1, y0, y1] = parse_rect(rect)?;
    let r = HyperRect::new(x0, x1, y0, y1)?;
    let ds = fundamental_range(lo, hi);
    if ds.is_empty() {
        return Err(quadgen_core::Error::EmptyWindow { lo, hi }.into());
    }
    let stats = ds
        .par_iter()
        .map(|&d| duke_statistic(d, &r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["D", "reduced_count", "count_in", "fraction"]);
    let mut sum = 0.0;
    for (d, s) in ds.iter().zip(&stats) {
        sum += s.as_f64();
        t.push(vec![
            json!(d.get()),
            json!(s.total),
            json!(s.inside),
            json!(format!("{:.6}", s.as_f64())),
        ]);
    }
    let mean = sum / stats.len() as f64;
    let mu = mu_measure(&r);
    let mut rec = OutputRecord::new("duke", t)
        .input("lo", lo)
        .input("hi", hi)
        .input("rect", rect);
    rec.summarize("count", ds.len());
    rec.summarize("mean_fraction", format!("{mean:.6}"));
    rec.summarize("mu", format!("{:.6}", mu.value));
    rec.summarize("mu_times_pi", mu.over_pi.to_string());
    rec.summarize("deviation", format!("{:.6}", (mean - mu.value).abs()));
    Ok(rec)
}

fn cmd_cycles(d: i64) -> CliResult<OutputRecord> {
    let disc = Discriminant::new(d)?;
    if !disc.is_real() {
        return Err(CliError::Usage(format!("cycles needs D > 0, got {d}")));
    }
    let cs = cycles(disc)?;
    let mut t = Table::new(&["cycle", "position", "a", "b", "c"]);
    for (i, c) in cs.iter().enumerate() {
        for (j, p) in c.iter().enumerate() {
            t.push(vec![json!(i), json!(j), json!(p.a), json!(p.b), json!(p.c)]);
        }
    }
    let mut rec = OutputRecord::new("cycles", t).input("D", d);
    rec.summarize("cycles", cs.len());
    rec.summarize("reduced_count", cs.iter().map(Vec::len).sum::<usize>());
    Ok(rec)
}

const CONSTRUCT_COLUMNS: &[&str] = &["construction", "D", "polynomial", "H", "certificate"];

fn construct_row(kind: &str, d: i64, f: &QuadPoly, certificate: String) -> Table {
    let mut t = Table::new(CONSTRUCT_COLUMNS);
    t.push(vec![
        json!(kind),
        json!(d),
        json!(f.to_gen().to_string()),
        json!(f.height()),
        json!(certificate),
    ]);
    t
}

fn cmd_construct(kind: &ConstructKind) -> CliResult<OutputRecord> {
    Ok(match kind {
        ConstructKind::Prop2 { d } => {
            let disc = Discriminant::new(*d)?;
            let f = prop2_generator(disc)?;
            let h = f.height();
            let cert = format!("H^2 = {} < D = {}", h * h, d);
            OutputRecord::new("construct", construct_row("prop2", *d, &f, cert)).input("D", *d)
        }
        ConstructKind::Lemma2 { d, epsilon } => {
            let disc = Discriminant::new(*d)?;
            let eps = parse_decimal(epsilon)?;
            let rec = |t| {
                OutputRecord::new("construct", t)
                    .input("D", *d)
                    .input("epsilon", ratio_str(eps))
            };
            match lemma2_generator(disc, eps)? {
                Some(w) => {
                    let h = w.poly.height() as i128;
                    let e = Ratio::new(*eps.numer() as i128, *eps.denom() as i128);
                    let one = Ratio::from_integer(1);
                    let rhs = (one + e * 2) * (one + e * 2) * *d as i128;
                    let cert = format!(
                        "p = {}, 4p^2 = {} >= D, 4H^2 = {} <= (1+2e)^2 D = {}",
                        w.p,
                        4 * (w.p as i128).pow(2),
                        4 * h * h,
                        rhs
                    );
                    let mut r = rec(construct_row("lemma2", *d, &w.poly, cert));
                    r.summarize("p", w.p);
                    r
                }
                None => {
                    let mut r = rec(Table::new(CONSTRUCT_COLUMNS));
                    r.summarize("p", Value::Null);
                    r
                }
            }
        }
        ConstructKind::Lemma1 { d } => {
            let f = lemma1_integral(*d)?;
            let field = if d.rem_euclid(4) == 1 { *d } else { 4 * d };
            let cert = format!("4H = {} >= |D| = {}", 4 * f.height(), field.abs());
            OutputRecord::new("construct", construct_row("lemma1", field, &f, cert)).input("d", *d)
        }
        ConstructKind::FamilyIm { m } => {
            let (d, f) = imaginary_family(*m)?.ok_or_else(|| {
                CliError::Usage(format!("4m^2 - 1 is not squarefree for m = {m}"))
            })?;
            let h = f.height();
            let cert = format!("4H^2 = {} = |D| + 1", 4 * h * h);
            OutputRecord::new("construct", construct_row("family-im", d.get(), &f, cert))
                .input("m", *m)
        }
        ConstructKind::FamilyRe { m } => {
            let (d, f) = real_family(*m)?.ok_or_else(|| {
                CliError::Usage(format!("5m^2 - 2m + 1 is not squarefree for m = {m}"))
            })?;
            let h = f.height();
            let cert = format!(
                "5H^2 = {} = D + 2m - 1 = {}",
                5 * h * h,
                d.get() + 2 * m - 1
            );
            OutputRecord::new("construct", construct_row("family-re", d.get(), &f, cert))
                .input("m", *m)
        }
        ConstructKind::DegreeN { n, p, q } => {
            let (f, c) = degree_n_family(*n, *p, *q)?;
            let mut t = Table::new(&[
                "construction",
                "degree",
                "polynomial",
                "H",
                "disc",
                "certificate",
            ]);
            t.push(vec![
                json!("degree-n"),
                json!(n),
                json!(f.to_string()),
                json!(c.height),
                c.poly_disc.map_or(Value::Null, |x| json!(x.to_string())),
                json!(format!(
                    "q^2 = {} < 2pq = {}; H <= sqrt(2)|D_K|^(1/(2n-2)) if p and q ramify totally",
                    c.q_squared, c.two_pq
                )),
            ]);
            OutputRecord::new("construct", t)
                .input("n", *n)
                .input("p", *p)
                .input("q", *q)
        }
    })
}
