//! Real values carried with a first derivative and an error radius on the
//! value, enough to build the defining functions of the constants.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, BigComplex, BigFloat, PrecisionContext};
use crate::zeta::{zeta_jet, EvalMethod};

#[derive(Debug, Clone)]
pub struct Dual {
    pub v: BigFloat,
    pub d: BigFloat,
    /// bound on |v - true value|; the derivative is not certified
    pub r: Float,
    ulp: Float,
}

impl Dual {
    /// The independent variable σ, exact.
    pub fn variable(x: &BigFloat, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        Self { v: Float::with_val(p, x), d: Float::with_val(p, 1), r: radius(0), ulp: ctx.ulp() }
    }

    pub fn constant(c: BigFloat, r: Float, ctx: &PrecisionContext) -> Self {
        Self { d: Float::new(ctx.bits()), v: c, r, ulp: ctx.ulp() }
    }

    fn rounded(v: BigFloat, d: BigFloat, r: Float, ulp: &Float, ops: u32) -> Self {
        let r = r + Float::with_val(64, ulp * ops) * radius_of(&v);
        Self { v, d, r, ulp: ulp.clone() }
    }

    /// ζ(kσ) with derivative k·ζ′(kσ).
    pub fn zeta_at(x: &BigFloat, k: u32, ctx: &PrecisionContext) -> Result<Self> {
        let p = ctx.bits();
        let s = BigComplex::real(Float::with_val(p, x * k));
        let j = zeta_jet(&s, &EvalMethod::euler_maclaurin(), ctx)?;
        let d = Float::with_val(p, &j.jet.d1.re * k);
        Ok(Self { v: j.jet.v.re, d, r: j.radii[0].clone(), ulp: ctx.ulp() })
    }

    /// b^{σ} for an integer base b ≥ 2, σ the variable at `x`.
    pub fn int_pow(b: u64, x: &BigFloat, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        let lb = Float::with_val(p, b).ln();
        let v = Float::with_val(p, x * &lb).exp();
        let d = Float::with_val(p, &v * &lb);
        Self::rounded(v, d, radius(0), &ctx.ulp(), 8)
    }

    /// b^{-σ}.
    pub fn int_pow_neg(b: u64, x: &BigFloat, ctx: &PrecisionContext) -> Self {
        let p = ctx.bits();
        let neg = Float::with_val(p, -x);
        let lb = Float::with_val(p, b).ln();
        let v = Float::with_val(p, &neg * &lb).exp();
        let d = -Float::with_val(p, &v * &lb);
        Self::rounded(v, d, radius(0), &ctx.ulp(), 8)
    }

    pub fn add(&self, o: &Self) -> Self {
        let v = Float::with_val(self.v.prec(), &self.v + &o.v);
        let d = Float::with_val(self.v.prec(), &self.d + &o.d);
        Self::rounded(v, d, Float::with_val(64, &self.r + &o.r), &self.ulp, 1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { v: Float::with_val(self.v.prec(), -&self.v), d: Float::with_val(self.d.prec(), -&self.d), r: self.r.clone(), ulp: self.ulp.clone() }
    }

    pub fn add_const(&self, c: i64) -> Self {
        let v = Float::with_val(self.v.prec(), &self.v + c);
        Self::rounded(v, self.d.clone(), self.r.clone(), &self.ulp, 1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.v.prec();
        let v = Float::with_val(p, &self.v * &o.v);
        let d = Float::with_val(p, &self.d * &o.v) + Float::with_val(p, &self.v * &o.d);
        let r = Float::with_val(64, radius_of(&self.v) * &o.r)
            + Float::with_val(64, radius_of(&o.v) * &self.r)
            + Float::with_val(64, &self.r * &o.r);
        Self::rounded(v, d, r, &self.ulp, 1)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let p = self.v.prec();
        let babs = radius_of(&o.v);
        if babs <= o.r {
            return Err(Error::Domain("divisor not separated from zero".into()));
        }
        let v = Float::with_val(p, &self.v / &o.v);
        // (a/b)' = (a' - (a/b) b')/b
        let d = Float::with_val(p, &self.d - Float::with_val(p, &v * &o.d)) / &o.v;
        let num = Float::with_val(64, &self.r + Float::with_val(64, radius_of(&v) * &o.r));
        let r = num / Float::with_val(64, &babs - &o.r);
        Ok(Self::rounded(v, d, r, &self.ulp, 2))
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        let p = self.v.prec();
        let v = Float::with_val(p, &self.v * k);
        let d = Float::with_val(p, &self.d * k);
        Self::rounded(v, d, Float::with_val(64, &self.r * radius_of(k)), &self.ulp, 1)
    }
}
