//! Root enclosure for real functions with certified signs: bisection to
//! width 10^{-6}, Newton (or secant) with precision doubling, then a final
//! sign check on both sides of the result.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{format_decimal, radius_of, BigFloat, PrecisionContext};

/// Digits used for the bisection phase.
const COARSE_DIGITS: u32 = 20;
const BISECT_WIDTH: f64 = 1e-6;
const MAX_NEWTON_STEPS: usize = 60;
/// Extra precision tried before giving up on an uncertain sign.
const ESCALATION_STEPS: u32 = 3;

/// f(x) with a bound on its error; `derivative` is optional and need not be
/// certified (it only steers Newton).
#[derive(Debug, Clone)]
pub struct RealEval {
    pub value: BigFloat,
    pub radius: Float,
    pub derivative: Option<BigFloat>,
}

impl RealEval {
    /// Sign of the true value if the radius allows deciding it.
    pub fn certified_sign(&self) -> Option<Ordering> {
        if self.value.is_zero() && self.radius.is_zero() {
            return Some(Ordering::Equal);
        }
        if radius_of(&self.value) > self.radius {
            self.value.cmp0()
        } else {
            None
        }
    }
}

pub trait CertifiedFn {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval>;
}

/// Wraps a closure computing (value, derivative) with plain rounding error.
pub struct ExactFn<F>(pub F);

impl<F> CertifiedFn for ExactFn<F>
where
    F: Fn(&BigFloat, u32) -> (BigFloat, BigFloat),
{
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let (value, d) = (self.0)(x, ctx.bits());
        let radius = Float::with_val(64, ctx.ulp() * 16u32) * radius_of(&value);
        Ok(RealEval { value, radius, derivative: Some(d) })
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    pub value: BigFloat,
    pub enclosure_width: BigFloat,
    pub bracket: (BigFloat, BigFloat),
    pub residual: BigFloat,
    pub digits: u32,
}

impl CertifiedRoot {
    pub fn contains(&self, x: &BigFloat) -> bool {
        self.bracket.0 <= *x && *x <= self.bracket.1
    }

    /// Whether the two enclosures share no point.
    pub fn disjoint(&self, o: &Self) -> bool {
        self.bracket.1 < o.bracket.0 || o.bracket.1 < self.bracket.0
    }

    pub fn to_decimal(&self) -> String {
        format_decimal(&self.value, self.digits as usize + 1)
    }
}

fn ctx_for(digits: u32) -> PrecisionContext {
    PrecisionContext::new(digits.max(crate::numerics::MIN_DIGITS)).expect("valid digits")
}

/// Sign at x, raising precision a few times when undecided.
fn sign_at(f: &dyn CertifiedFn, x: &BigFloat, ctx: &PrecisionContext) -> Result<(Ordering, RealEval)> {
    let mut c = *ctx;
    for _ in 0..=ESCALATION_STEPS {
        let e = f.eval(x, &c)?;
        if let Some(sg) = e.certified_sign() {
            return Ok((sg, e));
        }
        c = c.raised(c.digits() / 2 + 5);
    }
    Err(Error::PrecisionEscalation { required_digits: c.digits() })
}

fn no_sign_change(lo: &BigFloat, hi: &BigFloat) -> Error {
    Error::NoSignChange { lo: format_decimal(lo, 20), hi: format_decimal(hi, 20) }
}

/// Root of f in [lo, hi] to `digits` decimals.
pub fn verified_bisect(f: &dyn CertifiedFn, lo: &BigFloat, hi: &BigFloat, digits: u32) -> Result<CertifiedRoot> {
    if lo >= hi {
        return Err(Error::InvalidParams("bracket must satisfy lo < hi".into()));
    }
    let fine = ctx_for(digits + 5);
    let coarse = ctx_for(COARSE_DIGITS.min(digits + 5));
    let cp = coarse.bits();

    let mut a = Float::with_val(fine.bits(), lo);
    let mut b = Float::with_val(fine.bits(), hi);
    let (sa, ea) = sign_at(f, &a, &coarse)?;
    let (sb, eb) = sign_at(f, &b, &coarse)?;
    if sa == Ordering::Equal {
        return finish(f, a, digits, &fine);
    }
    if sb == Ordering::Equal {
        return finish(f, b, digits, &fine);
    }
    if sa == sb {
        return Err(no_sign_change(lo, hi));
    }
    let mut fa = ea.value;
    let mut fb = eb.value;

    let mut x = None;
    while Float::with_val(cp, &b - &a) > BISECT_WIDTH {
        let m = Float::with_val(fine.bits(), &a + &b) / 2u32;
        let e = f.eval(&m, &coarse)?;
        match e.certified_sign() {
            Some(Ordering::Equal) | None => {
                // |f(m)| is at coarse rounding level: m is already close
                x = Some(m);
                break;
            }
            Some(s) if s == sa => {
                a = m;
                fa = e.value;
            }
            Some(_) => {
                b = m;
                fb = e.value;
            }
        }
    }
    // start from the secant point of the final bracket
    let mut x = x.unwrap_or_else(|| {
        let slope = Float::with_val(cp, &fb - &fa) / Float::with_val(cp, &b - &a);
        let step = Float::with_val(fine.bits(), &fa / &slope);
        Float::with_val(fine.bits(), &a - &step)
    });
    if x <= a || x >= b {
        x = Float::with_val(fine.bits(), &a + &b) / 2u32;
    }

    let mut prev: Option<(BigFloat, BigFloat)> = None;
    let mut level = COARSE_DIGITS.min(digits + 5);
    let mut steps = 0;
    loop {
        let ctx = ctx_for(level);
        let stop = Float::with_val(64, crate::numerics::pow10_neg(level.saturating_sub(3)));
        loop {
            steps += 1;
            if steps > MAX_NEWTON_STEPS {
                return Err(Error::PrecisionEscalation { required_digits: fine.digits() * 2 });
            }
            let e = f.eval(&x, &ctx)?;
            let slope = match (&e.derivative, &prev) {
                (Some(d), _) => d.clone(),
                (None, Some((px, pv))) if *px != x => {
                    Float::with_val(fine.bits(), &e.value - pv) / Float::with_val(fine.bits(), &x - px)
                }
                _ => Float::with_val(fine.bits(), &fb - &fa) / Float::with_val(fine.bits(), &b - &a),
            };
            if slope.is_zero() || !slope.is_finite() {
                return Err(Error::PrecisionEscalation { required_digits: fine.digits() * 2 });
            }
            let step = Float::with_val(fine.bits(), &e.value / &slope);
            prev = Some((x.clone(), e.value));
            let mut next = Float::with_val(fine.bits(), &x - &step);
            if next <= a || next >= b {
                next = Float::with_val(fine.bits(), &a + &b) / 2u32;
            }
            x = next;
            if step.is_zero() || radius_of(&step) < stop {
                break;
            }
        }
        if level >= digits + 5 {
            break;
        }
        level = (level * 2).min(digits + 5);
    }
    finish(f, x, digits, &fine)
}

/// Certifies opposite signs at x ± 0.4·10^{-digits}.
fn finish(f: &dyn CertifiedFn, x: BigFloat, digits: u32, fine: &PrecisionContext) -> Result<CertifiedRoot> {
    let p = fine.bits();
    let half = Float::with_val(p, Float::with_val(p, 10).pow(-(digits as i32))) * Float::with_val(p, 0.4);
    let lo = Float::with_val(p, &x - &half);
    let hi = Float::with_val(p, &x + &half);
    let (slo, _) = sign_at(f, &lo, fine)?;
    let (shi, _) = sign_at(f, &hi, fine)?;
    if slo == shi || slo == Ordering::Equal || shi == Ordering::Equal {
        return Err(no_sign_change(&lo, &hi));
    }
    let at = f.eval(&x, fine)?;
    Ok(CertifiedRoot {
        enclosure_width: Float::with_val(p, &hi - &lo),
        bracket: (lo, hi),
        residual: Float::with_val(64, at.value.abs_ref()),
        value: x,
        digits,
    })
}
