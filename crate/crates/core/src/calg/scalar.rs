//! Complex scalars and their text form.
//!
//! Literals look like `a+bi`, `a-bi`, `a`, `bi` or `i`; the real and
//! imaginary parts accept anything `f64::from_str` does, exponents included.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Primitive cube root of unity e^{2πi/3}.
pub fn omega() -> C64 {
    C64::new(-0.5, 3f64.sqrt() / 2.0)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn is_finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Shortest round-trip decimal form; switches to exponent form outside
/// `[1e-5, 1e16)` so goldens stay readable.
pub fn fmt_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Lossless `a+bi` form.
pub fn fmt_complex(z: C64) -> String {
    let im = fmt_real(z.im);
    if im.starts_with('-') {
        format!("{}{}i", fmt_real(z.re), im)
    } else {
        format!("{}+{}i", fmt_real(z.re), im)
    }
}

/// Rounds to `digits` significant digits and trims trailing zeros.
pub fn fmt_real_short(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let parsed: f64 = s.parse().unwrap_or(x);
    let a = parsed.abs();
    if (1e-5..1e16).contains(&a) {
        // `{}` prints the shortest string that round-trips the rounded value
        format!("{parsed}")
    } else {
        let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{exp}")
    }
}

/// Display form used by the CLI: `digits` significant digits, with parts
/// below `snap` in magnitude printed as zero.
pub fn fmt_complex_short(z: C64, digits: usize, snap: f64) -> String {
    let r = if z.re.abs() < snap { 0.0 } else { z.re };
    let i = if z.im.abs() < snap { 0.0 } else { z.im };
    let im = fmt_real_short(i, digits);
    if im.starts_with('-') {
        format!("{}{}i", fmt_real_short(r, digits), im)
    } else {
        format!("{}+{}i", fmt_real_short(r, digits), im)
    }
}

fn parse_f64(s: &str, whole: &str) -> Result<f64> {
    let v: f64 = s.parse().map_err(|_| Error::Parse(whole.to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Parse(whole.to_string()))
    }
}

fn parse_imag_coeff(s: &str, whole: &str) -> Result<f64> {
    match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => parse_f64(s, whole),
    }
}

pub fn parse_complex(input: &str) -> Result<C64> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse(input.to_string()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(re(parse_f64(s, input)?));
    };
    // split at the last sign that is not the leading one and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(C64::new(parse_f64(&body[..k], input)?, parse_imag_coeff(&body[k..], input)?)),
        None => Ok(C64::new(0.0, parse_imag_coeff(body, input)?)),
    }
}

/// Comma-separated list of complex literals.
pub fn parse_complex_list(input: &str) -> Result<Vec<C64>> {
    input.split(',').map(parse_complex).collect()
}
