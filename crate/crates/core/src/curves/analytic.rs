use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, PrecisionContext};
use crate::zeta::{zeta_jet, EvalMethod, JetEval};

/// A holomorphic function evaluated with its first two derivatives.
pub trait AnalyticFn: Sync {
    fn jet(&self, s: &BigComplex, ctx: &PrecisionContext) -> Result<[BigComplex; 3]>;

    fn value(&self, s: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
        let [v, _, _] = self.jet(s, ctx)?;
        Ok(v)
    }
}

/// Largest |t| accepted by the Euler–Maclaurin strip mode.
pub const HEAVY_MAX_HEIGHT: f64 = 1e4;
/// Smallest σ accepted by the Euler–Maclaurin strip mode.
pub const HEAVY_MIN_SIGMA: f64 = 0.1;
/// Smallest σ accepted by the default evaluators.
pub const DEFAULT_MIN_SIGMA: f64 = 1.05;

/// ζ(s). The default mode picks the evaluator by height and is limited to
/// σ ≥ 1.05; `heavy` forces Euler–Maclaurin and allows σ ≥ 0.1, |t| ≤ 10^4.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZetaFn {
    pub heavy: bool,
}

impl ZetaFn {
    pub fn min_sigma(&self) -> f64 {
        if self.heavy {
            HEAVY_MIN_SIGMA
        } else {
            DEFAULT_MIN_SIGMA
        }
    }

    fn method(&self, s: &BigComplex) -> Result<EvalMethod> {
        let (sigma, t) = (s.re.to_f64(), s.im.to_f64());
        if sigma < self.min_sigma() {
            return Err(Error::Domain(format!("σ = {sigma} below {} for this evaluator mode", self.min_sigma())));
        }
        if self.heavy {
            if t.abs() > HEAVY_MAX_HEIGHT {
                return Err(Error::Domain(format!("|t| = {} above {HEAVY_MAX_HEIGHT} in heavy mode", t.abs())));
            }
            return Ok(EvalMethod::euler_maclaurin());
        }
        Ok(EvalMethod::default_for(s))
    }
}

fn jet_values(j: JetEval) -> [BigComplex; 3] {
    [j.jet.v, j.jet.d1, j.jet.d2]
}

impl AnalyticFn for ZetaFn {
    fn jet(&self, s: &BigComplex, ctx: &PrecisionContext) -> Result<[BigComplex; 3]> {
        Ok(jet_values(zeta_jet(s, &self.method(s)?, ctx)?))
    }
}

/// The limit function ((2^s - 1)/(2^s + 1)) ζ(s).
#[derive(Debug, Clone, Copy, Default)]
pub struct LimitFn;

impl AnalyticFn for LimitFn {
    fn jet(&self, s: &BigComplex, ctx: &PrecisionContext) -> Result<[BigComplex; 3]> {
        let p = ctx.bits();
        let [z, z1, z2] = ZetaFn { heavy: false }.jet(s, ctx)?;
        // q = (w - 1)/(w + 1) with w = 2^s: q′ = 2 w ln2/(w+1)², q″ = 2 ln²2 w (1 - w)/(w+1)³
        let l = Float::with_val(p, rug::float::Constant::Log2);
        let w = BigComplex::pow_neg_from_ln(&l, &BigComplex::new(Float::with_val(p, -&s.re), Float::with_val(p, -&s.im)), p);
        let one = BigComplex::one(p);
        let wp = &w + &one;
        let wm = &w - &one;
        let q = wm.div(&wp);
        let wp2 = wp.square();
        let two_l = Float::with_val(p, &l * 2u32);
        let q1 = w.scale(&two_l).div(&wp2);
        let q2 = (&w * &(&one - &w)).scale(&Float::with_val(p, &two_l * &l)).div(&(&wp2 * &wp));
        let two = Float::with_val(p, 2);
        let v = &q * &z;
        let d1 = &(&q1 * &z) + &(&q * &z1);
        let d2 = &(&(&q2 * &z) + &(&q1 * &z1).scale(&two)) + &(&q * &z2);
        Ok([v, d1, d2])
    }
}

/// A polynomial with real coefficients, lowest degree first.
#[derive(Debug, Clone)]
pub struct PolyFn(pub Vec<f64>);

impl AnalyticFn for PolyFn {
    fn jet(&self, s: &BigComplex, ctx: &PrecisionContext) -> Result<[BigComplex; 3]> {
        let p = ctx.bits();
        let mut v = BigComplex::zero(p);
        let mut d1 = BigComplex::zero(p);
        let mut d2 = BigComplex::zero(p);
        // Horner on the value and both derivatives
        for c in self.0.iter().rev() {
            d2 = &(&d2 * s) + &d1.scale(&Float::with_val(p, 2));
            d1 = &(&d1 * s) + &v;
            v = (&v * s).add_real(&Float::with_val(p, *c));
        }
        Ok([v, d1, d2])
    }
}
