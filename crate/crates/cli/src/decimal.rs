use num_rational::Ratio;

use crate::{CliError, CliResult};

/// Parses `-1.25`, `3`, `.5` or `7/20` into an exact rational.
pub fn parse_decimal(s: &str) -> CliResult<Ratio<i64>> {
    let bad = || CliError::Usage(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 12 {
        return Err(bad());
    }
    let den = 10i64.pow(frac.len() as u32);
    let digits = format!("{int}{frac}");
    let num: i64 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let r = Ratio::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Parses `x0,x1,y0,y1`.
pub fn parse_rect(s: &str) -> CliResult<[Ratio<i64>; 4]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--rect needs four comma-separated values, got {s:?}"
        )));
    }
    Ok([
        parse_decimal(parts[0])?,
        parse_decimal(parts[1])?,
        parse_decimal(parts[2])?,
        parse_decimal(parts[3])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("0.1").unwrap(), Ratio::new(1, 10));
        assert_eq!(parse_decimal("1.02").unwrap(), Ratio::new(51, 50));
        assert_eq!(parse_decimal("-0.25").unwrap(), Ratio::new(-1, 4));
        assert_eq!(parse_decimal(".5").unwrap(), Ratio::new(1, 2));
        assert_eq!(parse_decimal("2").unwrap(), Ratio::from_integer(2));
        assert_eq!(parse_decimal("7/20").unwrap(), Ratio::new(7, 20));
        for s in ["", ".", "1e3", "abc", "1/0", "--1", "0.1.2"] {
            assert!(parse_decimal(s).is_err(), "{s}");
        }
    }

    #[test]
    fn rects() {
        let r = parse_rect("0,0.25,1.02,1.5").unwrap();
        assert_eq!(r[1], Ratio::new(1, 4));
        assert_eq!(r[3], Ratio::new(3, 2));
        assert!(parse_rect("0,1,2").is_err());
    }
}
