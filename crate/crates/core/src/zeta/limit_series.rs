//! Partial sums of Σ (-1)^{ν(n)} n^{-s} and Σ (-1)^{Ω(n)} n^{-s}, whose sums
//! are ((2^s-1)/(2^s+1))ζ(s) and ζ(2s)/ζ(s).

use rug::Float;

use super::dirichlet_series::{integral_tail, powers};
use super::EvalResult;
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, smallest_prime_factors, BigComplex, PrecisionContext};

fn signed_sum(s: &BigComplex, n: u64, ctx: &PrecisionContext, negative: impl Fn(usize) -> bool) -> Result<EvalResult> {
    let sigma = s.re.to_f64();
    if sigma <= 1.0 {
        return Err(Error::Domain(format!("series needs Re s > 1, got {sigma}")));
    }
    if n == 0 {
        return Err(Error::InvalidParams("series needs N ≥ 1".into()));
    }
    let (pow, _) = powers(s, n, ctx);
    let mut acc = BigComplex::zero(ctx.bits());
    for (k, z) in pow.iter().enumerate().skip(1) {
        acc = if negative(k) { &acc - z } else { &acc + z };
    }
    let [tail, _, _] = integral_tail(sigma, n);
    let rounding = Float::with_val(64, ctx.ulp() * radius(2 * n + 16)) * (radius_of(&acc.abs()) + radius(n));
    Ok(EvalResult::new(acc, tail + rounding))
}

/// Σ_{n≤N} (-1)^{ν(n)} n^{-s}, ν the exponent of 2 in n.
pub fn limit_series_half(s: &BigComplex, n: u64, ctx: &PrecisionContext) -> Result<EvalResult> {
    signed_sum(s, n, ctx, |k| k.trailing_zeros() % 2 == 1)
}

/// Σ_{n≤N} λ(n) n^{-s} with λ(n) = (-1)^{Ω(n)}.
pub fn limit_series_liouville(s: &BigComplex, n: u64, ctx: &PrecisionContext) -> Result<EvalResult> {
    let spf = smallest_prime_factors(n as usize);
    let mut odd = vec![false; n as usize + 1];
    for k in 2..=n as usize {
        odd[k] = !odd[k / spf[k] as usize];
    }
    signed_sum(s, n, ctx, |k| odd[k])
}
