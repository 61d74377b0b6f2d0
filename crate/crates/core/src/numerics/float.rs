//! Arbitrary-precision reals and their decimal text form.
//!
//! Accepted input: optional sign, digits, optional `.` followed by digits,
//! optional `e`/`E` with a signed integer exponent. At least one digit must
//! appear in the mantissa. No locale separators, no `inf`/`nan`.

use rug::float::Round;
use rug::Float;

use super::precision::PrecisionContext;
use crate::error::{Error, Result};

pub type BigFloat = Float;

/// Precision of error radii. Radii only need a few correct digits.
pub const RADIUS_BITS: u32 = 64;

pub fn radius<T>(val: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(RADIUS_BITS, val)
}

/// |x| rounded up to radius precision.
pub fn radius_of(x: &Float) -> Float {
    Float::with_val_round(RADIUS_BITS, x.abs_ref(), Round::Up).0
}

fn validate_decimal(s: &str) -> bool {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut mantissa_digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        mantissa_digits += i - frac_start;
    }
    if mantissa_digits == 0 {
        return false;
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return false;
        }
    }
    i == b.len()
}

/// Parses a decimal string at the context's working precision.
pub fn parse_decimal(s: &str, ctx: &PrecisionContext) -> Result<BigFloat> {
    parse_decimal_bits(s, ctx.bits())
}

pub fn parse_decimal_bits(s: &str, bits: u32) -> Result<BigFloat> {
    let s = s.trim();
    if !validate_decimal(s) {
        return Err(Error::Parse(s.to_string()));
    }
    let parsed = Float::parse(s).map_err(|_| Error::Parse(s.to_string()))?;
    Ok(Float::with_val(bits, parsed))
}

/// Fixed-point rendering with exactly `decimals` digits after the point,
/// rounded to nearest.
pub fn format_fixed(x: &Float, decimals: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.is_zero() {
        return if decimals == 0 { "0".into() } else { format!("0.{}", "0".repeat(decimals)) };
    }
    let scale_bits = x.prec().max(RADIUS_BITS) + (decimals as f64 * 3.33) as u32 + 16;
    let mut scaled = Float::with_val(scale_bits, x);
    scaled *= Float::with_val(scale_bits, Float::u_pow_u(10, decimals as u32));
    let int = scaled
        .to_integer_round(Round::Nearest)
        .map(|(i, _)| i)
        .expect("finite value");
    let neg = int < 0;
    let mut digits = int.abs().to_string();
    if digits.len() <= decimals {
        digits = format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits);
    }
    let split = digits.len() - decimals;
    let mut out = String::with_capacity(digits.len() + 2);
    if neg {
        out.push('-');
    }
    out.push_str(&digits[..split]);
    if decimals > 0 {
        out.push('.');
        out.push_str(&digits[split..]);
    }
    out
}

/// Scientific rendering with `sig` significant digits: `d.ddd…e±x`.
pub fn format_sig(x: &Float, sig: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.is_zero() {
        return "0".into();
    }
    let (neg, digits, exp) = x.to_sign_string_exp(10, Some(sig.max(1)));
    let exp = exp.expect("nonzero finite value") - 1;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&digits[..1]);
    if digits.len() > 1 {
        out.push('.');
        out.push_str(&digits[1..]);
    }
    out.push_str(&format!("e{exp}"));
    out
}

/// Rendering used for machine-readable output: fixed notation for values in
/// a readable range, scientific otherwise.
pub fn format_decimal(x: &Float, sig: usize) -> String {
    match x.get_exp() {
        Some(e) if (-8..=64).contains(&e) => {
            let int_digits = if e > 0 { (e as f64 * std::f64::consts::LOG10_2).ceil() as i64 } else { 0 };
            let lead_zeros = if e <= 0 { (-(e as f64) * std::f64::consts::LOG10_2).floor() as i64 } else { 0 };
            let decimals = (sig as i64 - int_digits + lead_zeros).max(0) as usize;
            format_fixed(x, decimals)
        }
        _ => format_sig(x, sig),
    }
}
