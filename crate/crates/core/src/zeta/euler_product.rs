//! Truncated Euler product over primes ≤ P with explicit prime-tail bounds.
//!
//! Tails are bounded with the Rosser–Schoenfeld estimates
//! π(x) < 1.25506 x / ln x and θ(x) < 1.01624 x, which give for σ > 1
//!
//! Σ_{p>P} p^{-σ}          ≤ 1.25506 σ P^{1-σ} / ((σ-1) ln P)
//! Σ_{p>P} ln p · p^{-σ}   ≤ 1.01624 σ P^{1-σ} / (σ-1)
//! Σ_{p>P} ln²p · p^{-σ}   ≤ 1.01624 σ P^{1-σ} (ln P/(σ-1) + 1/(σ-1)²)

use rug::Float;

use super::euler_maclaurin::phase_bits;
use super::jet::Jet;
use super::JetEval;
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, shared_table, BigComplex, PrecisionContext};

const PI_BOUND: f64 = 1.25506;
const THETA_BOUND: f64 = 1.01624;

/// Upper bounds for Σ_{p>P} (ln p)^m p^{-σ}, m = 0, 1, 2.
pub fn prime_tail_bounds(sigma: f64, limit: u64) -> [Float; 3] {
    let s1 = sigma - 1.0;
    let ln_p = (limit as f64).ln();
    let base = radius((1.0 - sigma) * ln_p).exp();
    let b0 = Float::with_val(64, &base * (PI_BOUND * sigma / (s1 * ln_p)));
    let b1 = Float::with_val(64, &base * (THETA_BOUND * sigma / s1));
    let b2 = Float::with_val(64, &base * (THETA_BOUND * sigma * (ln_p / s1 + 1.0 / (s1 * s1))));
    [b0, b1, b2]
}

/// Bounds on the neglected parts of log ζ, (log ζ)′ and (log ζ)″.
pub fn log_tail_bounds(sigma: f64, limit: u64) -> [Float; 3] {
    let [s0, s1, s2] = prime_tail_bounds(sigma, limit);
    let q = 1.0 - (limit as f64).powf(-sigma);
    [s0 / q, s1 / q, s2 / (q * q)]
}

pub(crate) struct ProductSums {
    /// ζ_P(s) = Π_{p≤P} (1 - p^{-s})^{-1}
    pub zeta: BigComplex,
    /// -Σ ln p · p^{-s}/(1 - p^{-s})
    pub log_d1: BigComplex,
    /// Σ ln²p · p^{-s}/(1 - p^{-s})²
    pub log_d2: BigComplex,
    pub primes: usize,
}

pub(crate) fn product_sums(s: &BigComplex, limit: u64, ctx: &PrecisionContext) -> Result<ProductSums> {
    let table = shared_table(limit)?;
    let prec = ctx.bits();
    let t_abs = s.im.to_f64().abs();
    let wide = prec + phase_bits(t_abs, (limit as f64).ln());
    let s_wide = s.with_prec(wide);
    let mut q = BigComplex::one(prec);
    let mut d1 = BigComplex::zero(prec);
    let mut d2 = BigComplex::zero(prec);
    let one = BigComplex::one(prec);
    for p in table.iter() {
        let ln_p = Float::with_val(wide, p).ln();
        let z = BigComplex::pow_neg_from_ln(&ln_p, &s_wide, prec);
        let w = &one - &z;
        q = &q * &w;
        let r = z.div(&w);
        let lp = Float::with_val(prec, &ln_p);
        d1 = &d1 - &r.scale(&lp);
        let r1 = &r * &(&one + &r);
        let lp2 = Float::with_val(prec, lp.square_ref());
        d2 = &d2 + &r1.scale(&lp2);
    }
    Ok(ProductSums { zeta: q.recip(), log_d1: d1, log_d2: d2, primes: table.len() })
}

pub(crate) fn jet(s: &BigComplex, limit: u64, ctx: &PrecisionContext) -> Result<JetEval> {
    let sigma = s.re.to_f64();
    if sigma <= 1.0 {
        return Err(Error::Domain(format!("Euler product needs Re s > 1, got {sigma}")));
    }
    if limit < 100 {
        return Err(Error::InvalidParams(format!("Euler product prime limit {limit} below 100")));
    }
    let sums = product_sums(s, limit, ctx)?;
    let z = sums.zeta;
    let l1 = sums.log_d1;
    let q = &l1.square() + &sums.log_d2;
    let jet = Jet { v: z.clone(), d1: &z * &l1, d2: &z * &q };

    let [t0, t1, t2] = log_tail_bounds(sigma, limit);
    let zabs = radius_of(&z.abs());
    let l1abs = radius_of(&l1.abs());
    let qabs = radius_of(&q.abs());
    let e0 = Float::with_val(64, t0.exp_m1_ref());
    let dz = Float::with_val(64, &zabs * &e0);
    let r1 = Float::with_val(64, &dz * Float::with_val(64, &l1abs + &t1)) + Float::with_val(64, &zabs * &t1);
    let dq = Float::with_val(64, &l1abs * 2u32) * &t1 + Float::with_val(64, t1.square_ref()) + &t2;
    let r2 = Float::with_val(64, &dz * Float::with_val(64, &qabs + &dq)) + Float::with_val(64, &zabs * &dq);

    let ulp = ctx.ulp();
    let count = radius(8 * sums.primes as u64 + 64);
    let tails = [dz, r1, r2];
    let radii = [0usize, 1, 2].map(|m| {
        let mag = radius_of(&jet.order(m).abs()) + 1u32;
        let rounding = Float::with_val(64, &ulp * &count) * mag;
        Float::with_val(64, &tails[m] + &rounding)
    });
    Ok(JetEval { jet, radii })
}
