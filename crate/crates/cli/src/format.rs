//! Locale-independent number formatting and comma-list parsing.

use std::io::{self, Write};

use gauss_rd::RatePoint64;

/// Significant digits of every number written to a CSV or report.
pub const SIG_DIGITS: usize = 12;

pub const CURVE_HEADER: &str = "n_n,r_i,delta,tau,d0,d1,d2";

/// Formats `x` like C's `%.{digits}g`: fixed notation for decimal exponents
/// in `[−4, digits)`, scientific otherwise, trailing zeros removed.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let precision = digits.max(1) - 1;
    let sci = format!("{x:.precision$e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        );
    }
    let decimals = (precision as i32 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn num(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

/// Parses exactly `n` comma-separated finite numbers.
pub fn parse_list(s: &str, n: usize) -> Result<Vec<f64>, String> {
    let values = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", values.len()));
    }
    Ok(values)
}

pub fn write_curve_csv<W: Write>(out: &mut W, points: &[RatePoint64]) -> io::Result<()> {
    writeln!(out, "{CURVE_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            num(p.n_n),
            num(p.r_i),
            num(p.delta),
            num(p.tau),
            num(p.d.d0),
            num(p.d.d1),
            num(p.d.d2)
        )?;
    }
    Ok(())
}
