//! Defining functions of σ(1), E, A and σ(a), and their solvers.

use rug::{Float, Integer};

use super::bisect::{verified_bisect, CertifiedFn, CertifiedRoot, RealEval};
use super::dual::Dual;
use crate::error::{Error, Result};
use crate::numerics::{radius, BigFloat, PrecisionContext};
use crate::zeta::prime_zeta_real_at;

fn to_eval(d: Dual) -> RealEval {
    RealEval { value: d.v, radius: d.r, derivative: Some(d.d) }
}

fn float(x: f64, digits: u32) -> BigFloat {
    Float::with_val(crate::numerics::digits_to_bits(digits + 20), x)
}

/// Which algebraic form of the σ(1) equation to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaOneForm {
    /// ζ(σ) - (2^σ+1)/(2^σ-1)
    Quotient,
    /// (2^σ-1)ζ(σ) - 2^σ - 1
    Product,
}

pub struct SigmaOneEquation(pub SigmaOneForm);

impl CertifiedFn for SigmaOneEquation {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let z = Dual::zeta_at(x, 1, ctx)?;
        let p2 = Dual::int_pow(2, x, ctx);
        let f = match self.0 {
            SigmaOneForm::Quotient => z.sub(&p2.add_const(1).div(&p2.add_const(-1))?),
            SigmaOneForm::Product => p2.add_const(-1).mul(&z).sub(&p2).add_const(-1),
        };
        Ok(to_eval(f))
    }
}

/// 2^{σ+1} log 2/(4^σ - 1) + ζ′(σ)/ζ(σ).
pub struct TurningEquation;

impl CertifiedFn for TurningEquation {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let p = ctx.bits();
        let s = crate::numerics::BigComplex::real(Float::with_val(p, x));
        let j = crate::zeta::zeta_jet(&s, &crate::zeta::EvalMethod::euler_maclaurin(), ctx)?;
        // ζ′/ζ as a dual: value ζ′/ζ, derivative (ζ″ζ - ζ′²)/ζ²
        let z = Dual::constant(j.jet.v.re.clone(), j.radii[0].clone(), ctx);
        let zp = Dual::constant(j.jet.d1.re.clone(), j.radii[1].clone(), ctx);
        let mut q = zp.div(&z)?;
        let z2 = Float::with_val(p, j.jet.v.re.square_ref());
        q.d = (Float::with_val(p, &j.jet.d2.re * &j.jet.v.re) - Float::with_val(p, j.jet.d1.re.square_ref())) / z2;

        let ln2 = Float::with_val(p, 2).ln();
        let p2 = Dual::int_pow(2, x, ctx);
        let p4 = Dual::int_pow(4, x, ctx);
        let c = p2.scale(&Float::with_val(p, &ln2 * 2u32)).div(&p4.add_const(-1))?;
        Ok(to_eval(c.add(&q)))
    }
}

/// c_m = C(2m, m)/(4^m (2m+1)), the coefficients of arcsin x = Σ c_m x^{2m+1}.
pub fn arcsin_coefficients(count: usize, prec: u32) -> Vec<BigFloat> {
    (0..count as u32)
        .map(|m| {
            let binom = Integer::from(Integer::binomial_u(2 * m, m));
            let den = Integer::from(Integer::u_pow_u(4, m)) * (2 * m + 1);
            Float::with_val(prec, binom) / Float::with_val(prec, den)
        })
        .collect()
}

/// Terms of Σ_m c_m P((2m+1)σ) needed for the tail
/// 2^{-(2M+3)σ}/(1 - 4^{-σ}) · (1 + 2/((2M+3)σ - 1)) to drop below eps.
fn arcsin_depth(sigma: f64, eps: &Float) -> (usize, Float) {
    let mut m = 0usize;
    loop {
        let x = (2 * m + 3) as f64 * sigma;
        let tail = radius(-x * std::f64::consts::LN_2).exp() * ((1.0 + 2.0 / (x - 1.0)) / (1.0 - (-2.0 * sigma * std::f64::consts::LN_2).exp()));
        if tail < *eps {
            return (m + 1, tail);
        }
        m += 1;
    }
}

/// Σ_p arcsin(p^{-σ}) - π/2, through the prime zeta function.
pub struct RealPartEquation;

impl CertifiedFn for RealPartEquation {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let p = ctx.bits();
        let (terms, tail) = arcsin_depth(x.to_f64(), &ctx.working_eps());
        let coeffs = arcsin_coefficients(terms, p);
        let js: Vec<usize> = (0..terms).map(|m| 2 * m + 1).collect();
        let values = prime_zeta_real_at(x, &js, ctx)?;
        let mut acc = Float::new(p);
        let mut rad = tail;
        for (c, v) in coeffs.iter().zip(&values) {
            acc += Float::with_val(p, c * &v.value.re);
            rad += Float::with_val(64, &v.error_radius * c);
        }
        let half_pi = Float::with_val(p, rug::float::Constant::Pi) / 2u32;
        acc -= half_pi;
        rad += ctx.ulp() * radius(4 * terms as u64 + 8);
        Ok(RealEval { value: acc, radius: rad, derivative: None })
    }
}

/// ζ(σ) - a for a > 1, ζ(2σ)/ζ(σ) - a for 0 < a < 1.
pub struct SigmaOfAEquation {
    pub a: BigFloat,
}

impl CertifiedFn for SigmaOfAEquation {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let z = Dual::zeta_at(x, 1, ctx)?;
        let a = Dual::constant(Float::with_val(ctx.bits(), &self.a), radius(0), ctx);
        let f = if self.a > 1 { z.sub(&a) } else { Dual::zeta_at(x, 2, ctx)?.div(&z)?.sub(&a) };
        Ok(to_eval(f))
    }
}

/// Finds [lo, hi] with the function positive at lo and negative at hi (or
/// the reverse when `increasing`), starting just right of σ = 1.
pub(crate) fn bracket_right_of_one(f: &dyn CertifiedFn, increasing: bool, digits: u32) -> Result<(BigFloat, BigFloat)> {
    let ctx = PrecisionContext::new(20)?;
    let want_lo = if increasing { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater };
    let sign = |x: f64| -> Result<Option<std::cmp::Ordering>> { Ok(f.eval(&float(x, digits), &ctx)?.certified_sign()) };
    let mut gap = 0.5;
    let mut lo = None;
    for _ in 0..60 {
        if sign(1.0 + gap)? == Some(want_lo) {
            lo = Some(1.0 + gap);
            break;
        }
        gap /= 2.0;
    }
    let lo = lo.ok_or_else(|| Error::Domain("no sign change near σ = 1".into()))?;
    let mut hi = lo.max(1.5) + 0.5;
    for _ in 0..12 {
        if sign(hi)? == Some(want_lo.reverse()) {
            return Ok((float(lo, digits), float(hi, digits)));
        }
        hi = 1.0 + 2.0 * (hi - 1.0);
    }
    Err(Error::Domain("root lies beyond σ = 4000".into()))
}

pub fn solve_sigma_a(a: &BigFloat, digits: u32) -> Result<CertifiedRoot> {
    if *a <= 0 {
        return Err(Error::Domain(format!("σ(a) needs a > 0, got {}", a.to_f64())));
    }
    if *a == 1 {
        return Err(Error::Redirect("solve_sigma_one"));
    }
    let f = SigmaOfAEquation { a: a.clone() };
    let (lo, hi) = bracket_right_of_one(&f, *a < 1, digits)?;
    verified_bisect(&f, &lo, &hi, digits)
}

pub fn solve_sigma_one_form(form: SigmaOneForm, digits: u32) -> Result<CertifiedRoot> {
    verified_bisect(&SigmaOneEquation(form), &float(1.5, digits), &float(2.5, digits), digits)
}

/// σ(1): the root of ζ(σ) = (2^σ+1)/(2^σ-1).
pub fn solve_sigma_one(digits: u32) -> Result<CertifiedRoot> {
    solve_sigma_one_form(SigmaOneForm::Quotient, digits)
}

/// E: the root of 2^{σ+1} log 2/(4^σ - 1) = -ζ′(σ)/ζ(σ) in (2, 3).
pub fn solve_e(digits: u32) -> Result<CertifiedRoot> {
    verified_bisect(&TurningEquation, &float(2.0, digits), &float(3.0, digits), digits)
}

/// A: the root of Σ_p arcsin(p^{-σ}) = π/2.
pub fn solve_a(digits: u32) -> Result<CertifiedRoot> {
    verified_bisect(&RealPartEquation, &float(1.1, digits), &float(1.3, digits), digits)
}
