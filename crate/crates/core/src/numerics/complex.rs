use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

use super::float::{format_decimal, BigFloat};

/// Complex number over two MPFR reals sharing one precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {:+}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        let prec = re.prec().max(im.prec());
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn with_val<R, I>(prec: u32, re: R, im: I) -> Self
    where
        Float: rug::Assign<R> + rug::Assign<I>,
    {
        Self { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn real(x: BigFloat) -> Self {
        let im = Float::new(x.prec());
        Self { re: x, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::with_val(prec, 1, 0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec();
        let a = Float::with_val(p, self.re.square_ref());
        a + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> BigFloat {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    /// Principal argument in (-π, π].
    pub fn arg(&self) -> BigFloat {
        let p = self.prec();
        Float::with_val(p, self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn scale_i(&self, k: i64) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn add_real(&self, x: &BigFloat) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re + x), im: self.im.clone() }
    }

    pub fn mul_i(&self) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, -&self.im), im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re / &d), im: Float::with_val(p, -&self.im) / &d }
    }

    pub fn div(&self, other: &Self) -> Self {
        // Scale by the larger component to avoid overflow in |other|^2.
        let p = self.prec().max(other.prec());
        let d = other.norm_sqr();
        let re = Float::with_val(p, &self.re * &other.re) + Float::with_val(p, &self.im * &other.im);
        let im = Float::with_val(p, &self.im * &other.re) - Float::with_val(p, &self.re * &other.im);
        Self { re: re / &d, im: im / &d }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// e^{iθ}.
    pub fn cis(theta: &BigFloat) -> Self {
        let p = theta.prec();
        let (s, c) = Float::with_val(p, theta).sin_cos(Float::new(p));
        Self { re: c, im: s }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let z = Self::cis(&self.im);
        z.scale(&m)
    }

    /// Principal logarithm, imaginary part in (-π, π].
    pub fn ln(&self) -> Self {
        let p = self.prec();
        let r = self.abs().ln();
        Self { re: Float::with_val(p, r), im: self.arg() }
    }

    /// base^{-s} for a positive real base given via its logarithm.
    ///
    /// `ln_base` must carry enough bits that `t · ln_base` keeps the phase
    /// accurate; the result is rounded to `prec`.
    pub fn pow_neg_from_ln(ln_base: &BigFloat, s: &BigComplex, prec: u32) -> Self {
        let wide = ln_base.prec().max(s.prec());
        let mag = Float::with_val(wide, &s.re * ln_base);
        let mag = Float::with_val(prec, -mag).exp();
        let phase = Float::with_val(wide, &s.im * ln_base);
        let (sin, cos) = phase.sin_cos(Float::new(wide));
        Self {
            re: Float::with_val(prec, &cos * &mag),
            im: Float::with_val(prec, -(sin * &mag)),
        }
    }

    pub fn i(prec: u32) -> Self {
        Self::with_val(prec, 0, 1)
    }

    pub fn pi(prec: u32) -> BigFloat {
        Float::with_val(prec, Constant::Pi)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Decimal rendering `re,im` with `sig` significant digits each.
    pub fn to_decimal_pair(&self, sig: usize) -> (String, String) {
        (format_decimal(&self.re, sig), format_decimal(&self.im, sig))
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        BigComplex { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &BigComplex) -> BigComplex {
        let p = self.prec().max(o.prec());
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        BigComplex { re, im }
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, o: BigComplex) -> BigComplex {
        &self + &o
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, o: BigComplex) -> BigComplex {
        &self - &o
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, o: BigComplex) -> BigComplex {
        &self * &o
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex { re: -self.re, im: -self.im }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        self.clone().neg()
    }
}
