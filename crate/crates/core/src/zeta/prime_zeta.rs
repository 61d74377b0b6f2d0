//! P(s) = Σ_p p^{-s} = Σ_{k≥1} μ(k)/k · log ζ(ks).
//!
//! Since |log ζ(s)| ≤ ζ(σ) - 1 ≤ 2^{-σ}(1 + 2/(σ-1)), the terms with k > K
//! contribute at most
//! 2^{-(K+1)σ}/(1 - 2^{-σ}) · (1 + 2/((K+1)σ - 1))/(K+1).

use rug::Float;

use super::log::log_zeta;
use super::EvalResult;
use crate::error::{Error, Result};
use crate::numerics::{mobius_table, radius, BigComplex, BigFloat, PrecisionContext};

/// Bound on |log ζ(s)| for Re s = σ > 1.
fn log_zeta_bound(sigma: f64) -> Float {
    radius(-sigma * std::f64::consts::LN_2).exp() * (1.0 + 2.0 / (sigma - 1.0))
}

/// Bound on Σ_{k>K} |log ζ(ks)|/k.
pub fn prime_zeta_tail_bound(sigma: f64, k: u32) -> Float {
    let k1 = (k + 1) as f64;
    let geom = 1.0 - (-sigma * std::f64::consts::LN_2).exp();
    log_zeta_bound(k1 * sigma) / (k1 * geom)
}

/// Smallest K with the Möbius tail below `eps`.
fn mobius_terms(sigma: f64, eps: &Float) -> u32 {
    let mut k = 1;
    while prime_zeta_tail_bound(sigma, k) >= *eps {
        k += 1;
    }
    k
}

/// ln ζ(jσ) for j = 1..=count. Once 2^{-jσ}(1 + 2/(jσ-1)) drops below
/// the working epsilon the value is replaced by 0 with that bound as radius.
pub fn log_zeta_real_multiples(sigma: &BigFloat, count: usize, ctx: &PrecisionContext) -> Result<Vec<EvalResult>> {
    if *sigma <= 1 {
        return Err(Error::Domain(format!("needs σ > 1, got {}", sigma.to_f64())));
    }
    let prec = ctx.bits();
    let eps = ctx.working_eps();
    let sf = sigma.to_f64();
    let mut out = Vec::with_capacity(count);
    for j in 1..=count {
        let bound = log_zeta_bound(j as f64 * sf);
        if bound < eps {
            out.push(EvalResult::new(BigComplex::zero(prec), bound));
            continue;
        }
        let x = BigComplex::real(Float::with_val(prec, sigma * j as u32));
        out.push(log_zeta(&x, ctx)?);
    }
    Ok(out)
}

/// P(jσ) for j = 1..=count, sharing one table of ln ζ(iσ).
pub fn prime_zeta_real_multiples(sigma: &BigFloat, count: usize, ctx: &PrecisionContext) -> Result<Vec<EvalResult>> {
    let js: Vec<usize> = (1..=count).collect();
    prime_zeta_real_at(sigma, &js, ctx)
}

/// P(jσ) for each listed multiple j ≥ 1.
pub fn prime_zeta_real_at(sigma: &BigFloat, js: &[usize], ctx: &PrecisionContext) -> Result<Vec<EvalResult>> {
    if js.contains(&0) {
        return Err(Error::InvalidParams("multiples must be positive".into()));
    }
    let sf = sigma.to_f64();
    let eps = ctx.working_eps();
    let prec = ctx.bits();
    let ks: Vec<u32> = js.iter().map(|&j| mobius_terms(j as f64 * sf, &eps)).collect();
    let needed = js.iter().zip(&ks).map(|(&j, &k)| j * k as usize).max().unwrap_or(0);
    let logs = log_zeta_real_multiples(sigma, needed, ctx)?;
    let mu = mobius_table(*ks.iter().max().unwrap_or(&1) as usize);
    let mut out = Vec::with_capacity(js.len());
    for (&j, &kmax) in js.iter().zip(&ks) {
        let mut acc = Float::new(prec);
        let mut rad = prime_zeta_tail_bound(j as f64 * sf, kmax);
        for k in 1..=kmax as usize {
            if mu[k] == 0 {
                continue;
            }
            let term = &logs[j * k - 1];
            let v = Float::with_val(prec, &term.value.re / k as u32);
            if mu[k] > 0 {
                acc += v;
            } else {
                acc -= v;
            }
            rad += Float::with_val(64, &term.error_radius / k as u32);
        }
        rad += ctx.ulp() * radius(4 * kmax + 4) * (radius(acc.to_f64().abs()) + 1u32);
        out.push(EvalResult::new(BigComplex::real(acc), rad));
    }
    Ok(out)
}

pub fn prime_zeta_real(sigma: &BigFloat, ctx: &PrecisionContext) -> Result<EvalResult> {
    Ok(prime_zeta_real_multiples(sigma, 1, ctx)?.remove(0))
}

/// Σ_p p^{-s} for Re s > 1.
pub fn prime_zeta(s: &BigComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    if s.re <= 1 {
        return Err(Error::Domain(format!("prime zeta needs Re s > 1, got {}", s.re.to_f64())));
    }
    if s.im.is_zero() {
        return prime_zeta_real(&s.re, ctx);
    }
    let sf = s.re.to_f64();
    let kmax = mobius_terms(sf, &ctx.working_eps());
    let mu = mobius_table(kmax as usize);
    let prec = ctx.bits();
    let mut acc = BigComplex::zero(prec);
    let mut rad = prime_zeta_tail_bound(sf, kmax);
    for k in 1..=kmax as usize {
        if mu[k] == 0 {
            continue;
        }
        let ks = BigComplex::new(Float::with_val(prec, &s.re * k as u32), Float::with_val(prec, &s.im * k as u32));
        let term = if log_zeta_bound(k as f64 * sf) < ctx.working_eps() {
            EvalResult::new(BigComplex::zero(prec), log_zeta_bound(k as f64 * sf))
        } else {
            log_zeta(&ks, ctx)?
        };
        let v = term.value.scale(&Float::with_val(prec, Float::with_val(prec, 1) / k as u32));
        acc = if mu[k] > 0 { &acc + &v } else { &acc - &v };
        rad += Float::with_val(64, &term.error_radius / k as u32);
    }
    rad += ctx.ulp() * radius(4 * kmax + 4) * (radius(acc.abs().to_f64()) + 1u32);
    Ok(EvalResult::new(acc, rad))
}
