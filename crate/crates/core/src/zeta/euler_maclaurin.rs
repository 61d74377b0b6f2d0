//! ζ and its first two derivatives by Euler–Maclaurin summation:
//!
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!        + Σ_{k=1}^{K} B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1} + R_K(s)
//!
//! with |R_K(s)| ≤ |T_{K+1}(s)| · |s+2K+1| / (σ+2K+1). The remainder is
//! entire in s, so derivative errors follow from the same bound taken on a
//! circle of radius [`CAUCHY_RADIUS`] and Cauchy's estimate.

use rug::ops::Pow;
use rug::Float;

use super::bernoulli::even_bernoulli;
use super::dirichlet_series::powers;
use super::jet::Jet;
use super::JetEval;
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, BigComplex, PrecisionContext};

const CAUCHY_RADIUS: f64 = 0.5;

/// Truncation N for the default rule: max(50, ⌈2|t|⌉), raised when the
/// working precision exceeds what e^{-2πN} can reach.
pub fn default_truncation(t_abs: f64, ctx: &PrecisionContext) -> u64 {
    let by_height = (2.0 * t_abs).ceil() as u64;
    let by_digits = (0.4 * ctx.working_digits() as f64).ceil() as u64 + 10;
    50u64.max(by_height).max(by_digits)
}

/// Extra bits needed so that t·ln n keeps `ctx` accuracy modulo 2π.
pub fn phase_bits(t_abs: f64, max_log: f64) -> u32 {
    let scale = t_abs * max_log.max(1.0) + 1.0;
    scale.log2().ceil().max(0.0) as u32 + 4
}

pub(crate) fn jet(s: &BigComplex, n: u64, max_terms: u32, ctx: &PrecisionContext) -> Result<JetEval> {
    if n < 2 {
        return Err(Error::InvalidParams("Euler–Maclaurin truncation must be at least 2".into()));
    }
    let sigma = s.re.to_f64();
    if sigma <= 0.0 {
        return Err(Error::Domain(format!("Euler–Maclaurin needs Re s > 0, got {sigma}")));
    }
    let prec = ctx.bits();
    let s_p = s.with_prec(prec);

    let (pow, logs) = powers(s, n, ctx);
    let nn = n as usize;

    let mut acc = Jet::zero(prec);
    let mut abs_sums = [0f64; 3];
    for k in 1..nn {
        let z = &pow[k];
        let l = &logs[k];
        let mag = z.abs().to_f64();
        let lf = l.to_f64();
        abs_sums[0] += mag;
        abs_sums[1] += mag * lf;
        abs_sums[2] += mag * lf * lf;
        acc.add_assign(&Jet::neg_power(z.clone(), l));
    }

    let ln_big_n = &logs[nn];
    let n_pow = Jet::neg_power(pow[nn].clone(), ln_big_n);
    let n_f = Float::with_val(prec, n);
    // N^{1-s}/(s-1)
    let integral = n_pow.scale(&n_f).mul(&Jet::variable(&s_p, -1).recip());
    acc.add_assign(&integral);
    acc.add_assign(&n_pow.scale(&Float::with_val(prec, 0.5)));

    // Bernoulli corrections
    let s_abs = s.abs().to_f64();
    let two_pi = 2.0 * std::f64::consts::PI;
    let rho = CAUCHY_RADIUS;
    let n_inv = Float::with_val(prec, 1) / &n_f;
    let n_inv2 = Float::with_val(prec, n_inv.square_ref());
    let mut poch = Jet::variable(&s_p, 0); // s(s+1)…(s+2k-2)
    let mut n_term = n_pow.scale(&n_inv); // N^{-s-2k+1}
    // running magnitudes for the remainder bound, in 64-bit floats
    let mut prod_at = radius(s.abs()); // Π_{j=0}^{2k-2} |s+j|
    let mut prod_circle = radius(s_abs + rho); // Π (|s|+ρ+j)
    let ln_n = (n as f64).ln();
    let target = ctx.working_eps();
    let max_terms = if max_terms == 0 { (4 * n).min(4000) as u32 } else { max_terms };

    let mut best: Option<[Float; 3]> = None;
    let mut k = 0u32;
    let mut bern = even_bernoulli(64);
    while k < max_terms {
        k += 1;
        if bern.len() < k as usize {
            bern = even_bernoulli(2 * k as usize);
        }
        let coeff = Float::with_val(prec, &bern[k as usize - 1]) / Float::with_val(prec, Float::factorial(2 * k));
        acc.add_assign(&poch.mul(&n_term).scale(&coeff));

        // extend products to index 2k for the remainder bound of T_{k+1}
        let j1 = (2 * k - 1) as f64;
        let j2 = (2 * k) as f64;
        let s1 = s_p.add_real(&Float::with_val(prec, j1)).abs();
        let s2 = s_p.add_real(&Float::with_val(prec, j2)).abs();
        prod_at *= radius(&s1) * radius(&s2);
        prod_circle *= radius(s_abs + rho + j1) * radius(s_abs + rho + j2);

        let bern_bound = radius(4) / radius(two_pi).pow(2 * k as i32 + 2i32);
        let exp_at = -(sigma + 2.0 * k as f64 + 1.0);
        let exp_circle = -(sigma - rho + 2.0 * k as f64 + 1.0);
        let tail_factor_at = radius(s_p.add_real(&Float::with_val(prec, 2 * k + 1)).abs()) / (sigma + 2.0 * k as f64 + 1.0);
        let tail_factor_circle = radius(s_abs + rho + 2.0 * k as f64 + 1.0) / (sigma - rho + 2.0 * k as f64 + 1.0);
        let r0 = Float::with_val(64, &bern_bound * &prod_at) * radius(exp_at * ln_n).exp() * &tail_factor_at;
        let m = Float::with_val(64, &bern_bound * &prod_circle) * radius(exp_circle * ln_n).exp() * &tail_factor_circle;
        let r1 = Float::with_val(64, &m / rho);
        let r2 = Float::with_val(64, &m * 2.0) / (rho * rho);
        let bounds = [r0, r1, r2];

        let worse = best.as_ref().map_or(false, |b| bounds[0] > b[0]);
        if worse {
            // asymptotic series started to diverge; the previous bound stays valid
            // for the previous partial sum, so undo the term just added
            acc.sub_assign(&poch.mul(&n_term).scale(&coeff));
            break;
        }
        let done = bounds.iter().all(|b| *b < target);
        best = Some(bounds);
        if done {
            break;
        }

        let a = Jet::variable(&s_p, 2 * k as i64 - 1);
        let b = Jet::variable(&s_p, 2 * k as i64);
        poch = poch.mul(&a).mul(&b);
        n_term = n_term.scale(&n_inv2);
    }
    let truncation = best.expect("at least one correction term");

    let ulp = ctx.ulp();
    let count = radius(n as f64 + 64.0 + 4.0 * k as f64);
    let radii = [0, 1, 2].map(|m| {
        let mag = radius(abs_sums[m]) + radius_of(&acc.order(m).abs()) + 1u32;
        let rounding = Float::with_val(64, &ulp * &count) * mag;
        Float::with_val(64, &truncation[m] + &rounding)
    });
    Ok(JetEval { jet: acc, radii })
}
