use rug::Float;

use super::euler_product::{log_tail_bounds, product_sums};
use super::{quotient_radius, zeta_jet, EvalMethod, EvalResult};
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, shared_table, BigComplex, PrecisionContext};

/// Prime cutoffs tried when splitting log ζ into a finite prime part and a
/// tail small enough for the principal logarithm.
const SPLIT_LADDER: [u64; 5] = [100, 1_000, 10_000, 100_000, 1_000_000];

fn require_half_plane(s: &BigComplex) -> Result<()> {
    if s.re <= 1 {
        return Err(Error::Domain(format!("needs Re s > 1, got {}", s.re.to_f64())));
    }
    Ok(())
}

/// log ζ(s) on Re s > 1, the branch given by Σ_p Σ_k p^{-ks}/k.
///
/// For real s this is ln ζ(σ). Otherwise log ζ is split as
/// Σ_{p≤Q} -Log(1 - p^{-s}) + Log(ζ(s) Π_{p≤Q}(1 - p^{-s})), with Q chosen
/// so the neglected prime tail has modulus below 1; the principal logarithm
/// of the second factor is then the correct branch.
pub fn log_zeta(s: &BigComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    require_half_plane(s)?;
    let method = EvalMethod::default_for(s);
    let z = zeta_jet(s, &method, ctx)?.result(0);
    let prec = ctx.bits();
    if s.im.is_zero() {
        let zr = &z.value.re;
        let r = &z.error_radius;
        if *zr <= *r {
            return Err(Error::Domain("ζ(σ) not separated from zero".into()));
        }
        let value = BigComplex::real(Float::with_val(prec, zr.ln_ref()));
        let rad = Float::with_val(64, r / Float::with_val(64, zr - r));
        return Ok(EvalResult::new(value, rad));
    }

    let sigma = s.re.to_f64();
    let q = SPLIT_LADDER
        .iter()
        .copied()
        .find(|&q| log_tail_bounds(sigma, q)[0] < 1)
        .ok_or_else(|| Error::Domain(format!("Re s = {sigma} too close to 1 for a certified branch")))?;

    let table = shared_table(q)?;
    let wide = prec + super::phase_bits(s.im.to_f64().abs(), (q as f64).ln());
    let s_wide = s.with_prec(wide);
    let one = BigComplex::one(prec);
    let mut partial_log = BigComplex::zero(prec);
    let mut partial_prod = BigComplex::one(prec);
    for p in table.iter() {
        let ln_p = Float::with_val(wide, p).ln();
        let w = &one - &BigComplex::pow_neg_from_ln(&ln_p, &s_wide, prec);
        partial_log = &partial_log - &w.ln();
        partial_prod = &partial_prod * &w;
    }
    let rest = &z.value * &partial_prod;
    let d_rest = Float::with_val(64, &z.error_radius * radius_of(&partial_prod.abs()));
    let rest_abs = radius_of(&rest.abs());
    if d_rest >= rest_abs {
        return Err(Error::Domain("ζ(s) not separated from zero".into()));
    }
    let value = &partial_log + &rest.ln();
    let branch_err = Float::with_val(64, &d_rest / Float::with_val(64, &rest_abs - &d_rest));
    let rounding = Float::with_val(64, ctx.ulp() * radius(8 * table.len() as u64 + 64)) * (radius_of(&value.abs()) + 1u32);
    Ok(EvalResult::new(value, branch_err + rounding))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogDerivativePath {
    /// ζ′(s)/ζ(s) from the jet of ζ.
    Ratio,
    /// -Σ_{p≤limit} ln p/(p^s - 1) plus a prime-tail bound.
    PrimeSum { limit: u64 },
}

pub fn zeta_log_derivative_via(s: &BigComplex, path: LogDerivativePath, ctx: &PrecisionContext) -> Result<EvalResult> {
    require_half_plane(s)?;
    match path {
        LogDerivativePath::Ratio => {
            let j = zeta_jet(s, &EvalMethod::default_for(s), ctx)?;
            let value = j.jet.d1.div(&j.jet.v);
            let rad = quotient_radius(&j.jet.d1, &j.radii[1], &j.jet.v, &j.radii[0])
                .ok_or_else(|| Error::Domain("ζ(s) not separated from zero".into()))?;
            Ok(EvalResult::new(value, rad))
        }
        LogDerivativePath::PrimeSum { limit } => {
            let sums = product_sums(s, limit, ctx)?;
            let tail = log_tail_bounds(s.re.to_f64(), limit)[1].clone();
            let rounding = Float::with_val(64, ctx.ulp() * radius(8 * sums.primes as u64 + 64))
                * (radius_of(&sums.log_d1.abs()) + 1u32);
            Ok(EvalResult::new(sums.log_d1, tail + rounding))
        }
    }
}

/// ζ′(s)/ζ(s) by the ratio path.
pub fn zeta_log_derivative(s: &BigComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    zeta_log_derivative_via(s, LogDerivativePath::Ratio, ctx)
}

/// ζ′(s)/ζ(s) = -Σ_p ln p/(p^s - 1) summed over primes ≤ `limit`.
pub fn zeta_log_derivative_prime_sum(s: &BigComplex, limit: u64, ctx: &PrecisionContext) -> Result<EvalResult> {
    zeta_log_derivative_via(s, LogDerivativePath::PrimeSum { limit }, ctx)
}
