//! f, g, U, H and the turning-point comparison u(t).

use rug::float::Constant;
use rug::Float;

use crate::constants::{verified_bisect, CertifiedFn, CertifiedRoot, RealEval};
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, BigComplex, BigFloat, PrecisionContext};
use crate::zeta::zeta_log_derivative;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgMode {
    /// Partial sums with this many terms.
    Series(u32),
    Closed,
}

fn ln2(p: u32) -> Float {
    Float::with_val(p, Constant::Log2)
}

/// 2^σ and cos, sin of t log 2.
fn parts(sigma: &BigFloat, t: &BigFloat, p: u32) -> (Float, Float, Float) {
    let wide = p + t.get_exp().unwrap_or(0).max(0) as u32;
    let phi = Float::with_val(wide, t * ln2(wide));
    let (s, c) = phi.sin_cos(Float::new(p));
    let two_s = Float::with_val(p, Float::with_val(p, sigma * ln2(p)).exp());
    (two_s, c, s)
}

/// f(σ,t) = Σ sin(k t log 2)/(k 2^{kσ}) and g = ∂f/∂t.
pub fn f_g_eval(sigma: &BigFloat, t: &BigFloat, mode: FgMode, ctx: &PrecisionContext) -> Result<(BigFloat, BigFloat)> {
    if *sigma <= 0 {
        return Err(Error::Domain(format!("f, g need σ > 0, got {}", sigma.to_f64())));
    }
    let p = ctx.bits();
    let l2 = ln2(p);
    match mode {
        FgMode::Closed => {
            let (two_s, c, s) = parts(sigma, t, p);
            let f = Float::with_val(p, &s / Float::with_val(p, &two_s - &c)).atan();
            // -(1 - 2^σ cos)·log 2 / (1 + 4^σ - 2^{1+σ} cos)
            let num = Float::with_val(p, Float::with_val(p, &two_s * &c) - 1u32) * &l2;
            let den = Float::with_val(p, two_s.square_ref()) + 1u32 - Float::with_val(p, &two_s * &c) * 2u32;
            Ok((f, num / den))
        }
        FgMode::Series(n) => {
            let wide = p + t.get_exp().unwrap_or(0).max(0) as u32 + 32;
            let phi = Float::with_val(wide, t * ln2(wide));
            let x = Float::with_val(p, -Float::with_val(p, sigma * &l2)).exp();
            let mut xk = Float::with_val(p, 1);
            let mut f = Float::new(p);
            let mut g = Float::new(p);
            for k in 1..=n {
                xk *= &x;
                let (s, c) = Float::with_val(wide, &phi * k).sin_cos(Float::new(p));
                f += Float::with_val(p, &s * &xk) / k;
                g += Float::with_val(p, &c * &xk);
            }
            Ok((f, g * l2))
        }
    }
}

/// Bound 2^{-Nσ}/(1 - 2^{-σ}) on the series tail of f after N terms (times
/// log 2 for g).
pub fn fg_series_tail(sigma: f64, n: u32) -> f64 {
    let x = (-sigma * std::f64::consts::LN_2).exp();
    x.powi(n as i32) * x / (1.0 - x)
}

/// U(σ,t) = 4^σ f² + (2^σ/log 2)² g².
pub fn u_eval(sigma: &BigFloat, t: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
    let p = ctx.bits();
    let (f, g) = f_g_eval(sigma, t, FgMode::Closed, ctx)?;
    let two_s = Float::with_val(p, Float::with_val(p, sigma * ln2(p)).exp());
    let a = Float::with_val(p, &two_s * &f);
    let b = Float::with_val(p, &two_s * &g) / ln2(p);
    Ok(Float::with_val(p, a.square_ref()) + Float::with_val(p, b.square_ref()))
}

/// H(σ) = (2^σ/log 2)² (ζ′(σ)/ζ(σ) + log 2/(2^σ - 1))² and a bound on its error.
pub fn h_eval_with_radius(sigma: &BigFloat, ctx: &PrecisionContext) -> Result<(BigFloat, Float)> {
    if *sigma <= 1 {
        return Err(Error::Domain(format!("H needs σ > 1, got {}", sigma.to_f64())));
    }
    let p = ctx.bits();
    let s = BigComplex::real(Float::with_val(p, sigma));
    let q = zeta_log_derivative(&s, ctx)?;
    let two_s = Float::with_val(p, Float::with_val(p, sigma * ln2(p)).exp());
    let inner = Float::with_val(p, &q.value.re + Float::with_val(p, ln2(p) / Float::with_val(p, &two_s - 1u32)));
    let scale = Float::with_val(p, &two_s / ln2(p));
    let a = Float::with_val(p, &scale * &inner);
    let h = Float::with_val(p, a.square_ref());
    // d(a²) = 2|a| scale·dq + (scale dq)²
    let sd = Float::with_val(64, radius_of(&scale) * &q.error_radius);
    let r = Float::with_val(64, radius_of(&a) * &sd) * 2u32 + Float::with_val(64, sd.square_ref());
    let r = r + Float::with_val(64, ctx.ulp() * 16u32) * radius_of(&h);
    Ok((h, r))
}

pub fn h_eval(sigma: &BigFloat, ctx: &PrecisionContext) -> Result<BigFloat> {
    Ok(h_eval_with_radius(sigma, ctx)?.0)
}

/// U(σ,t) - H(σ) as a function of σ.
pub struct UMinusH {
    pub t: BigFloat,
}

impl CertifiedFn for UMinusH {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let u = u_eval(x, &self.t, ctx)?;
        let (h, rh) = h_eval_with_radius(x, ctx)?;
        let value = Float::with_val(ctx.bits(), &u - &h);
        let radius = rh + Float::with_val(64, ctx.ulp() * 64u32) * (radius_of(&u) + radius(1));
        Ok(RealEval { value, radius, derivative: None })
    }
}

/// Scan step for the descent towards u(t).
const SCAN_STEP: f64 = 0.01;
const SCAN_TOP: f64 = 4.0;

/// u(t): the largest σ > 1 with U(σ,t) = H(σ).
pub fn solve_u_of_t(t: &BigFloat, digits: u32) -> Result<CertifiedRoot> {
    if !t.is_finite() {
        return Err(Error::UndefinedInput("t must be finite".into()));
    }
    let ctx = PrecisionContext::new(20)?;
    let f = UMinusH { t: t.clone() };
    let bits = crate::numerics::digits_to_bits(digits + 20);
    let at = |x: f64| -> Result<Option<std::cmp::Ordering>> {
        Ok(f.eval(&Float::with_val(bits, x), &ctx)?.certified_sign())
    };
    if at(SCAN_TOP)? != Some(std::cmp::Ordering::Greater) {
        return Err(Error::Domain(format!("U ≤ H at σ = {SCAN_TOP}")));
    }
    let mut hi = SCAN_TOP;
    loop {
        let lo = hi - SCAN_STEP;
        if lo <= 1.0 {
            return Err(Error::Domain("no crossing of U and H above σ = 1".into()));
        }
        match at(lo)? {
            Some(std::cmp::Ordering::Greater) => hi = lo,
            _ => {
                return verified_bisect(&f, &Float::with_val(bits, lo), &Float::with_val(bits, hi), digits);
            }
        }
    }
}

/// 2π/log 2, the period of f and g in t.
pub fn period(prec: u32) -> BigFloat {
    Float::with_val(prec, Constant::Pi) * 2u32 / ln2(prec)
}

/// A violation of the inequality u(x,φ) ≥ (x/(1+x))².
#[derive(Debug, Clone)]
pub struct A3Violation {
    pub x: BigFloat,
    pub phi: BigFloat,
    pub lhs: BigFloat,
    pub rhs: BigFloat,
}

/// u(x,φ) = arctan²(x sin φ/(1 - x cos φ)) + (x(x - cos φ)/(1 + x² - 2x cos φ))².
pub fn a3_lhs(x: &BigFloat, phi: &BigFloat, prec: u32) -> BigFloat {
    let (s, c) = Float::with_val(prec, phi).sin_cos(Float::new(prec));
    let xc = Float::with_val(prec, x * &c);
    let a = Float::with_val(prec, Float::with_val(prec, x * &s) / Float::with_val(prec, 1 - &xc)).atan();
    let den = Float::with_val(prec, x.square_ref()) + 1u32 - Float::with_val(prec, &xc * 2u32);
    let b = Float::with_val(prec, Float::with_val(prec, x * Float::with_val(prec, x - &c)) / den);
    Float::with_val(prec, a.square_ref()) + Float::with_val(prec, b.square_ref())
}

pub fn a3_rhs(x: &BigFloat, prec: u32) -> BigFloat {
    let q = Float::with_val(prec, x / Float::with_val(prec, x + 1u32));
    Float::with_val(prec, q.square_ref())
}

/// Checks the inequality on the interior grid x = i/(gx+1), φ = 2πj/(gφ+1).
pub fn check_inequality_a3(grid_x: u32, grid_phi: u32, ctx: &PrecisionContext) -> Result<Vec<A3Violation>> {
    if grid_x < 10 || grid_phi < 10 {
        return Err(Error::InvalidParams("grids need at least 10 points".into()));
    }
    let p = ctx.bits();
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let tol = Float::with_val(64, ctx.ulp() * 64u32);
    let mut out = Vec::new();
    for i in 1..=grid_x {
        let x = Float::with_val(p, i) / (grid_x + 1);
        let rhs = a3_rhs(&x, p);
        for j in 1..=grid_phi {
            let phi = Float::with_val(p, &two_pi * j) / (grid_phi + 1);
            let lhs = a3_lhs(&x, &phi, p);
            if Float::with_val(p, &rhs - &lhs) > Float::with_val(64, &tol * &rhs) {
                out.push(A3Violation { x: x.clone(), phi, lhs, rhs: rhs.clone() });
            }
        }
    }
    Ok(out)
}

/// Grid points (σ, t) with U(σ,t) < U(σ, π/log 2), for σ = 1 + 3i/gσ and t
/// spread over one period.
pub fn check_u_minimum(grid_sigma: u32, grid_t: u32, ctx: &PrecisionContext) -> Result<Vec<(BigFloat, BigFloat)>> {
    if grid_sigma < 10 || grid_t < 10 {
        return Err(Error::InvalidParams("grids need at least 10 points".into()));
    }
    let p = ctx.bits();
    let per = period(p);
    let half = Float::with_val(p, &per / 2u32);
    let tol = Float::with_val(64, ctx.ulp() * 64u32);
    let mut out = Vec::new();
    for i in 1..=grid_sigma {
        let sigma = Float::with_val(p, 3 * i) / grid_sigma + 1u32;
        let base = u_eval(&sigma, &half, ctx)?;
        let floor = Float::with_val(p, &base - Float::with_val(p, &base * &tol));
        for j in 1..=grid_t {
            let t = Float::with_val(p, &per * j) / grid_t;
            if u_eval(&sigma, &t, ctx)? < floor {
                out.push((sigma.clone(), t));
            }
        }
    }
    Ok(out)
}

/// Indices k where H(σ_k) > H(σ_{k+1}) cannot be certified, on σ_k = 1.05 + 0.04k.
pub fn check_h_decreasing(points: u32, ctx: &PrecisionContext) -> Result<Vec<u32>> {
    let vals = (0..points)
        .map(|k| h_eval_with_radius(&Float::with_val(ctx.bits(), 1.05 + 0.04 * k as f64), ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..points.saturating_sub(1))
        .filter(|&k| {
            let (a, ra) = &vals[k as usize];
            let (b, rb) = &vals[k as usize + 1];
            Float::with_val(ctx.bits(), a - b) <= Float::with_val(64, ra + rb)
        })
        .collect())
}
