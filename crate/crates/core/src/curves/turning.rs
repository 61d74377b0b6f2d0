//! Turning points: solutions of Im f(s) = 0, Re f′(s) = 0.

use rug::Float;
use serde_json::{json, Value};

use super::analytic::AnalyticFn;
use crate::error::{Error, Result};
use crate::numerics::{format_decimal, pow10_neg, radius_of, BigComplex, BigFloat, PrecisionContext};

const MAX_NEWTON_STEPS: usize = 50;
const MAX_STEP: f64 = 0.25;

#[derive(Debug, Clone)]
pub struct WindingCertificate {
    pub center: BigComplex,
    pub radius: BigFloat,
    pub winding: i64,
}

#[derive(Debug, Clone)]
pub struct TurningPoint {
    pub location: BigComplex,
    pub residual_im_f: BigFloat,
    pub residual_re_f_prime: BigFloat,
    pub certificate: Option<WindingCertificate>,
}

impl TurningPoint {
    pub fn to_json(&self) -> Value {
        let (re, im) = self.location.to_decimal_pair(30);
        json!({
            "re": re,
            "im": im,
            "residual_im_f": format_decimal(&self.residual_im_f, 6),
            "residual_re_f_prime": format_decimal(&self.residual_re_f_prime, 6),
            "winding": self.certificate.as_ref().map(|c| c.winding),
        })
    }
}

/// Newton on F(σ,t) = (Im f, Re f′). By Cauchy–Riemann the Jacobian is
/// [[Im f′, Re f′], [Re f″, -Im f″]].
pub fn find_turning_point(seed: &BigComplex, f: &dyn AnalyticFn, ctx: &PrecisionContext) -> Result<TurningPoint> {
    let extra = (seed.im.to_f64().abs() + 1.0).log10().ceil() as u32 + 1;
    let work = ctx.raised(extra);
    let p = work.bits();
    let tol = pow10_neg(ctx.digits() / 2);
    let mut s = seed.with_prec(p);
    for _ in 0..MAX_NEWTON_STEPS {
        let [v, d1, d2] = f.jet(&s, &work)?;
        let (f1, f2) = (v.im, d1.re.clone());
        if radius_of(&f1) < tol && radius_of(&f2) < tol {
            // one more step tightens the point without changing the test
            let (ds, dt) = newton_step(&f1, &f2, &d1, &d2, p)?;
            let next = BigComplex::new(Float::with_val(p, &s.re - &ds), Float::with_val(p, &s.im - &dt));
            let [v2, e1, _] = f.jet(&next, &work)?;
            let (r1, r2) = (radius_of(&v2.im), radius_of(&e1.re));
            let (s, r1, r2) = if r1 <= radius_of(&f1) && r2 <= radius_of(&f2) { (next, r1, r2) } else { (s, radius_of(&f1), radius_of(&f2)) };
            return Ok(TurningPoint { location: s, residual_im_f: r1, residual_re_f_prime: r2, certificate: None });
        }
        let (mut ds, mut dt) = newton_step(&f1, &f2, &d1, &d2, p)?;
        let len = Float::with_val(64, ds.hypot_ref(&dt)).to_f64();
        if len > MAX_STEP {
            ds *= MAX_STEP / len;
            dt *= MAX_STEP / len;
        }
        s = BigComplex::new(Float::with_val(p, &s.re - &ds), Float::with_val(p, &s.im - &dt));
    }
    Err(Error::NoTurningPoint(format!("no convergence in {MAX_NEWTON_STEPS} Newton steps")))
}

/// Solves J (ds, dt) = (f1, f2), falling back to a damped least-squares step
/// when J is singular.
fn newton_step(f1: &Float, f2: &Float, d1: &BigComplex, d2: &BigComplex, p: u32) -> Result<(Float, Float)> {
    let (a, b) = (d1.im.clone(), d1.re.clone());
    let (c, d) = (d2.re.clone(), Float::with_val(p, -&d2.im));
    let det = Float::with_val(p, &a * &d) - Float::with_val(p, &b * &c);
    let scale = Float::with_val(p, a.square_ref()) + Float::with_val(p, b.square_ref()) + Float::with_val(p, c.square_ref()) + Float::with_val(p, d.square_ref());
    if scale.is_zero() {
        return Err(Error::NoTurningPoint("Jacobian vanishes".into()));
    }
    let rel = Float::with_val(64, det.square_ref()) / Float::with_val(64, scale.square_ref());
    if rel > pow10_neg(2 * (p / 4)) {
        let ds = (Float::with_val(p, &d * f1) - Float::with_val(p, &b * f2)) / &det;
        let dt = (Float::with_val(p, &a * f2) - Float::with_val(p, &c * f1)) / &det;
        return Ok((ds, dt));
    }
    // (JᵀJ + λI)^{-1} Jᵀ F
    let lam = Float::with_val(p, &scale * Float::with_val(64, pow10_neg(p / 8)));
    let g1 = Float::with_val(p, &a * f1) + Float::with_val(p, &c * f2);
    let g2 = Float::with_val(p, &b * f1) + Float::with_val(p, &d * f2);
    let m11 = Float::with_val(p, a.square_ref()) + Float::with_val(p, c.square_ref()) + &lam;
    let m22 = Float::with_val(p, b.square_ref()) + Float::with_val(p, d.square_ref()) + &lam;
    let m12 = Float::with_val(p, &a * &b) + Float::with_val(p, &c * &d);
    let mdet = Float::with_val(p, &m11 * &m22) - Float::with_val(p, m12.square_ref());
    let ds = (Float::with_val(p, &m22 * &g1) - Float::with_val(p, &m12 * &g2)) / &mdet;
    let dt = (Float::with_val(p, &m11 * &g2) - Float::with_val(p, &m12 * &g1)) / &mdet;
    Ok((ds, dt))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindingMode {
    /// Winding of f itself around 0 (argument principle).
    Direct,
    /// Winding of h = Im f + i Re f′, whose zeros are the turning points.
    TurningIndicator,
}

const INITIAL_SAMPLES: usize = 64;
const MAX_SUBDIVISION: u32 = 24;

#[derive(Clone)]
struct Sample {
    phi: f64,
    h: (f64, f64),
    /// rough bound on |dh/dφ| near the sample
    speed: f64,
}

fn sample(center: &BigComplex, r: &BigFloat, phi: f64, f: &dyn AnalyticFn, mode: WindingMode, ctx: &PrecisionContext) -> Result<Sample> {
    let p = ctx.bits();
    let ph = Float::with_val(p, phi);
    let z = &BigComplex::cis(&ph).scale(r) + center;
    let [v, d1, d2] = f.jet(&z, ctx)?;
    let rf = r.to_f64();
    let (h, speed) = match mode {
        WindingMode::Direct => (v.to_f64_pair(), rf * d1.abs().to_f64()),
        WindingMode::TurningIndicator => {
            ((v.im.to_f64(), d1.re.to_f64()), rf * (d1.abs().to_f64() + d2.abs().to_f64()))
        }
    };
    Ok(Sample { phi, h, speed })
}

fn arg(h: (f64, f64)) -> f64 {
    h.1.atan2(h.0)
}

fn wrap(d: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut d = d % tau;
    if d > std::f64::consts::PI {
        d -= tau;
    } else if d <= -std::f64::consts::PI {
        d += tau;
    }
    d
}

/// Winding number of φ ↦ h(center + r e^{iφ}) around 0. Each arc is
/// subdivided until its argument increment is below π/2 and the endpoint
/// moduli exceed the speed bound times half the arc, so h cannot reach 0
/// in between.
pub fn winding_number(center: &BigComplex, radius: &BigFloat, f: &dyn AnalyticFn, mode: WindingMode, ctx: &PrecisionContext) -> Result<i64> {
    winding_number_sampled(center, radius, f, mode, INITIAL_SAMPLES, ctx)
}

/// `winding_number` starting from `samples` equally spaced points.
pub fn winding_number_sampled(
    center: &BigComplex,
    radius: &BigFloat,
    f: &dyn AnalyticFn,
    mode: WindingMode,
    samples: usize,
    ctx: &PrecisionContext,
) -> Result<i64> {
    if samples < 4 {
        return Err(Error::InvalidParams("need at least 4 samples".into()));
    }
    if *radius <= 0 {
        return Err(Error::InvalidParams("radius must be positive".into()));
    }
    let tau = std::f64::consts::TAU;
    let mut ring = Vec::with_capacity(samples + 1);
    for k in 0..samples {
        ring.push(sample(center, radius, tau * k as f64 / samples as f64, f, mode, ctx)?);
    }
    ring.push(Sample { phi: tau, ..ring[0].clone() });
    let mut stack: Vec<(Sample, Sample, u32)> = ring.windows(2).map(|w| (w[0].clone(), w[1].clone(), 0)).collect();
    let mut total = 0.0;
    while let Some((a, b, depth)) = stack.pop() {
        let d = wrap(arg(b.h) - arg(a.h));
        let ma = a.h.0.hypot(a.h.1);
        let mb = b.h.0.hypot(b.h.1);
        let reach = 2.0 * a.speed.max(b.speed) * (b.phi - a.phi) / 2.0;
        if d.abs() < std::f64::consts::FRAC_PI_2 && ma.min(mb) > reach {
            total += d;
            continue;
        }
        if depth >= MAX_SUBDIVISION || ma == 0.0 || mb == 0.0 {
            return Err(Error::ZeroOnContour(format!("|h| = {:e} at φ = {}", ma.min(mb), a.phi)));
        }
        let m = sample(center, radius, 0.5 * (a.phi + b.phi), f, mode, ctx)?;
        stack.push((a, m.clone(), depth + 1));
        stack.push((m, b, depth + 1));
    }
    Ok((total / tau).round() as i64)
}

/// Attaches a winding certificate on a circle of the given radius.
pub fn certify_turning_point(tp: &mut TurningPoint, radius: &BigFloat, f: &dyn AnalyticFn, ctx: &PrecisionContext) -> Result<()> {
    let w = winding_number(&tp.location, radius, f, WindingMode::TurningIndicator, ctx)?;
    tp.certificate = Some(WindingCertificate { center: tp.location.clone(), radius: radius.clone(), winding: w });
    Ok(())
}

#[derive(Debug, Clone)]
pub struct TurningBoundEntry {
    pub location: BigComplex,
    /// Re b - E
    pub excess: BigFloat,
    /// Re b exceeds E by more than the tolerance.
    pub violation: bool,
}

#[derive(Debug, Clone, Default)]
pub struct TurningBoundReport {
    pub entries: Vec<TurningBoundEntry>,
}

impl TurningBoundReport {
    pub fn falsified(&self) -> bool {
        self.entries.iter().any(|e| e.violation)
    }
}

/// Compares each Re b with E; a value above E + tol is a violation.
pub fn verify_turning_bound(points: &[TurningPoint], e: &BigFloat, tol: f64) -> TurningBoundReport {
    let entries = points
        .iter()
        .map(|tp| {
            let excess = Float::with_val(tp.location.prec(), &tp.location.re - e);
            let violation = excess > tol;
            TurningBoundEntry { location: tp.location.clone(), excess, violation }
        })
        .collect();
    TurningBoundReport { entries }
}
