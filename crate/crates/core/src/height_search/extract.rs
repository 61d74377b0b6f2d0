use std::collections::BTreeMap;

use rug::float::Constant;
use rug::{Float, Integer, Rational};
use serde_json::{json, Value};

use super::lattice::{LatticeBasis, LatticeParams};
use crate::error::{Error, Result};
use crate::numerics::{format_decimal, BigFloat, PrimeTable};

#[derive(Debug, Clone)]
pub struct HeightCandidate {
    /// Last coordinate of the generating row, made positive.
    pub x: Integer,
    pub r: u32,
    /// x / 2^r exactly
    pub t: Rational,
    pub t_float: BigFloat,
    /// Reduced row (with the sentinel coordinate positive) that produced x.
    pub row: Vec<Integer>,
    /// True when x came out negative and the candidate was conjugated.
    pub conjugated: bool,
    /// t log p_j - θ_j reduced to (-π, π], against the conjugated targets
    /// when `conjugated` is set.
    pub residuals: Vec<BigFloat>,
    pub score: BigFloat,
    pub weighted_score: BigFloat,
}

/// Reduces an angle to (-π, π].
fn reduce_angle(x: &Float) -> Float {
    let p = x.prec();
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let pi = Float::with_val(p, Constant::Pi);
    let k = Float::with_val(p, x / &two_pi).round();
    let mut y = Float::with_val(p, x - Float::with_val(p, &k * &two_pi));
    if y <= -pi.clone() {
        y += &two_pi;
    } else if y > pi {
        y -= &two_pi;
    }
    y
}

/// Residuals t log p_j - θ_j in (-π, π], computed with `bits` plus the bits
/// of t so the phase stays accurate.
fn residuals(t: &Rational, thetas: &[BigFloat], primes: &[u64], bits: u32) -> Vec<BigFloat> {
    let mag = t.numer().significant_bits().saturating_sub(t.denom().significant_bits()) + 8;
    let wide = bits + mag;
    let tf = Float::with_val(wide, t);
    primes
        .iter()
        .zip(thetas)
        .map(|(&p, th)| {
            let ph = Float::with_val(wide, Float::with_val(wide, p).ln() * &tf) - th;
            Float::with_val(bits, reduce_angle(&ph))
        })
        .collect()
}

impl HeightCandidate {
    fn new(row: Vec<Integer>, params: &LatticeParams) -> Self {
        let n = params.n;
        let bits = params.bits();
        let raw = row[n + 1].clone();
        let conjugated = raw < 0;
        let x = Integer::from(raw.abs_ref());
        let t = Rational::from((x.clone(), Integer::from(1) << params.r));
        let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
        // under s ↦ s̄ the targets θ become -θ (mod 2π)
        let thetas: Vec<BigFloat> = if conjugated {
            params
                .thetas
                .iter()
                .map(|th| if th.is_zero() { th.clone() } else { Float::with_val(bits, &two_pi - th) })
                .collect()
        } else {
            params.thetas.clone()
        };
        let res = residuals(&t, &thetas, &params.primes(), bits);
        let score = res.iter().map(|r| Float::with_val(bits, r.abs_ref())).max_by(|a, b| a.partial_cmp(b).expect("finite")).unwrap();
        let weighted_score = res
            .iter()
            .zip(&params.weights)
            .map(|(r, w)| Float::with_val(bits, r.abs_ref()) * w)
            .max_by(|a, b| a.partial_cmp(b).expect("finite"))
            .unwrap();
        Self { t_float: Float::with_val(bits, &t), x, r: params.r, t, row, conjugated, residuals: res, score, weighted_score }
    }

    pub fn to_json(&self, params: &LatticeParams) -> Value {
        json!({
            "x": self.x.to_string(),
            "r": self.r,
            "t": format_decimal(&self.t_float, 40),
            "conjugated": self.conjugated,
            "residuals": self.residuals.iter().map(|r| format_decimal(r, 20)).collect::<Vec<_>>(),
            "score": format_decimal(&self.score, 20),
            "weighted_score": format_decimal(&self.weighted_score, 20),
            "params": {
                "n": params.n,
                "nu": params.nu,
                "r": params.r,
                "weights_base": params.weights_base,
            },
        })
    }
}

/// Candidates from every reduced row whose (n+1)-th coordinate is ±2^ν n⁴,
/// sorted by score.
pub fn extract_heights(reduced: &LatticeBasis, params: &LatticeParams) -> Result<Vec<HeightCandidate>> {
    let n = params.n;
    let sentinel = params.sentinel();
    let mut out: Vec<HeightCandidate> = reduced
        .rows
        .iter()
        .filter_map(|row| {
            let c = &row[n];
            if *c == sentinel {
                Some(row.clone())
            } else if Integer::from(-c) == sentinel {
                Some(row.iter().map(|x| Integer::from(-x)).collect())
            } else {
                None
            }
        })
        .map(|row| HeightCandidate::new(row, params))
        .collect();
    if out.is_empty() {
        return Err(Error::NoSentinelRow);
    }
    out.sort_by(|a, b| a.score.partial_cmp(&b.score).expect("finite").then_with(|| a.x.cmp(&b.x)));
    Ok(out)
}

/// |2^{it} + 1| for p = 2 and |p^{it} - 1| for odd p in the table.
pub fn diagnose_limits(t: &BigFloat, primes: &PrimeTable, bits: u32) -> BTreeMap<u64, BigFloat> {
    let wide = bits + t.get_exp().unwrap_or(0).max(0) as u32 + 8;
    let tw = Float::with_val(wide, t);
    primes
        .iter()
        .map(|p| {
            let half = Float::with_val(wide, Float::with_val(wide, p).ln() * &tw) / 2u32;
            // |e^{iφ} + 1| = 2|cos(φ/2)|, |e^{iφ} - 1| = 2|sin(φ/2)|
            let v = if p == 2 { half.cos() } else { half.sin() };
            (p, Float::with_val(bits, v.abs() * 2u32))
        })
        .collect()
}

/// Bound on |ζ(σ+it) - ζ(σ)(2^σ-1)/(2^σ+1)| for phases within `residuals` of
/// the default targets on the first primes: with x = p^{-σ}, each residual ε
/// moves log(1 - x e^{iφ}) by at most |ε| x/(1-x), and each later prime by at
/// most 2|log(1 - x)|. `log_zeta_sigma` is log ζ(σ); `limit` is f(σ).
pub fn phase_perturbation_bound(sigma: f64, residuals: &[f64], log_zeta_sigma: f64, limit: f64) -> f64 {
    let primes = crate::numerics::primes_up_to(1000).expect("limit ≥ 2");
    let mut head = 0.0;
    let mut local = 0.0;
    for (&p, e) in primes.primes().iter().zip(residuals) {
        let x = (p as f64).powf(-sigma);
        head += e.abs() * x / (1.0 - x);
        local += -(1.0 - x).ln();
    }
    let tail = 2.0 * (log_zeta_sigma - local).max(0.0);
    limit.abs() * ((head + tail).exp() - 1.0)
}
