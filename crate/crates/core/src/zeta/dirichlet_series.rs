//! Plain partial sums Σ_{n≤N} n^{-s} for Re s > 1.

use rug::Float;

use super::euler_maclaurin::phase_bits;
use super::jet::Jet;
use super::JetEval;
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, smallest_prime_factors, BigComplex, PrecisionContext};

/// Largest truncation chosen automatically.
pub const MAX_AUTO_TERMS: u64 = 1_000_000;

/// ∫_N^∞ (ln x)^m x^{-σ} dx for m = 0, 1, 2; bounds Σ_{n>N} (ln n)^m n^{-σ}
/// whenever σ ln N ≥ m (the integrand is then decreasing on [N, ∞)).
pub fn integral_tail(sigma: f64, n: u64) -> [Float; 3] {
    let s1 = sigma - 1.0;
    let l = (n as f64).ln();
    let base = radius((1.0 - sigma) * l).exp();
    [
        Float::with_val(64, &base / s1),
        Float::with_val(64, &base * (l / s1 + 1.0 / (s1 * s1))),
        Float::with_val(64, &base * (l * l / s1 + 2.0 * l / (s1 * s1) + 2.0 / (s1 * s1 * s1))),
    ]
}

/// Terms needed so that N^{1-σ}/(σ-1) falls below the working epsilon.
pub fn default_terms(sigma: f64, ctx: &PrecisionContext) -> u64 {
    let s1 = sigma - 1.0;
    let log_eps = -(ctx.working_digits() as f64) * std::f64::consts::LN_10;
    let ln_n = (s1.ln() + log_eps) / -s1;
    if !ln_n.is_finite() || ln_n > (MAX_AUTO_TERMS as f64).ln() {
        MAX_AUTO_TERMS
    } else {
        (ln_n.exp().ceil() as u64).max(16)
    }
}

/// Computes n^{-s} for 1 ≤ n ≤ N, with ln n alongside.
pub(crate) fn powers(s: &BigComplex, n: u64, ctx: &PrecisionContext) -> (Vec<BigComplex>, Vec<Float>) {
    let prec = ctx.bits();
    let wide = prec + phase_bits(s.im.to_f64().abs(), (n as f64).ln());
    let s_wide = s.with_prec(wide);
    let nn = n as usize;
    let spf = smallest_prime_factors(nn);
    let mut pow = Vec::with_capacity(nn + 1);
    let mut logs = Vec::with_capacity(nn + 1);
    pow.push(BigComplex::zero(prec));
    logs.push(Float::new(prec));
    if nn >= 1 {
        pow.push(BigComplex::one(prec));
        logs.push(Float::new(prec));
    }
    for k in 2..=nn {
        let p = spf[k] as usize;
        if p == k {
            let ln_p = Float::with_val(wide, k as u32).ln();
            pow.push(BigComplex::pow_neg_from_ln(&ln_p, &s_wide, prec));
            logs.push(Float::with_val(prec, &ln_p));
        } else {
            let z = &pow[p] * &pow[k / p];
            let l = Float::with_val(prec, &logs[p] + &logs[k / p]);
            pow.push(z);
            logs.push(l);
        }
    }
    (pow, logs)
}

pub(crate) fn jet(s: &BigComplex, n: u64, ctx: &PrecisionContext) -> Result<JetEval> {
    let sigma = s.re.to_f64();
    if sigma <= 1.0 {
        return Err(Error::Domain(format!("Dirichlet series needs Re s > 1, got {sigma}")));
    }
    if n < 3 {
        return Err(Error::InvalidParams("Dirichlet series truncation must be at least 3".into()));
    }
    let prec = ctx.bits();
    let (pow, logs) = powers(s, n, ctx);
    let mut acc = Jet::zero(prec);
    let mut abs_sums = [0f64; 3];
    for k in 1..=n as usize {
        let mag = pow[k].abs().to_f64();
        let lf = logs[k].to_f64();
        abs_sums[0] += mag;
        abs_sums[1] += mag * lf;
        abs_sums[2] += mag * lf * lf;
        acc.add_assign(&Jet::neg_power(pow[k].clone(), &logs[k]));
    }
    let tails = integral_tail(sigma, n);
    let ulp = ctx.ulp();
    let count = radius(n as f64 + 64.0);
    let radii = [0usize, 1, 2].map(|m| {
        let mag = radius(abs_sums[m]) + radius_of(&acc.order(m).abs()) + 1u32;
        Float::with_val(64, &tails[m] + Float::with_val(64, &ulp * &count) * mag)
    });
    Ok(JetEval { jet: acc, radii })
}
