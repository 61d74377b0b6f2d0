//! Dirichlet characters mod 4 and 7, L-functions, and the L-bound equations.

use rug::Float;

use super::bisect::{verified_bisect, CertifiedFn, CertifiedRoot, RealEval};
use super::dual::Dual;
use super::equations::bracket_right_of_one;
use crate::error::{Error, Result};
use crate::numerics::{prime_divisors, radius, radius_of, BigComplex, BigFloat, PrecisionContext};
use crate::zeta::{hurwitz_zeta, EvalResult};

/// A character mod q with values e^{2πi·k/order} on units, 0 elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCharacter {
    pub modulus: u64,
    pub order: u32,
    /// `exponents[r]` is k with χ(r) = e^{2πi k/order}, None when gcd(r, q) > 1
    pub exponents: Vec<Option<u32>>,
}

impl DirichletCharacter {
    pub fn value(&self, n: u64, prec: u32) -> BigComplex {
        match self.exponents[(n % self.modulus) as usize] {
            None => BigComplex::zero(prec),
            Some(k) => {
                let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
                BigComplex::cis(&(two_pi * k / self.order))
            }
        }
    }

    pub fn value_f64(&self, n: u64) -> (f64, f64) {
        self.value(n, 64).to_f64_pair()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|e| matches!(e, None | Some(0)))
    }
}

/// All φ(q) characters mod q for q ∈ {4, 7}, principal first.
pub fn character_table(q: u64) -> Result<Vec<DirichletCharacter>> {
    // a generator of (Z/q)^* and the group order
    let (g, phi) = match q {
        4 => (3u64, 2u32),
        7 => (3, 6),
        _ => return Err(Error::Domain(format!("characters implemented for q ∈ {{4, 7}}, got {q}"))),
    };
    // discrete log table
    let mut log = vec![None; q as usize];
    let mut x = 1u64;
    for e in 0..phi {
        log[x as usize] = Some(e);
        x = x * g % q;
    }
    Ok((0..phi)
        .map(|k| DirichletCharacter {
            modulus: q,
            order: phi,
            exponents: log.iter().map(|l| l.map(|e| (e * k) % phi)).collect(),
        })
        .collect())
}

/// L(s, χ) = q^{-s} Σ_{a=1}^{q} χ(a) ζ(s, a/q) for Re s > 1.
pub fn l_function(s: &BigComplex, chi: &DirichletCharacter, ctx: &PrecisionContext) -> Result<EvalResult> {
    if s.re <= 1 {
        return Err(Error::Domain(format!("L-function needs Re s > 1, got {}", s.re.to_f64())));
    }
    let prec = ctx.bits();
    let q = chi.modulus;
    let mut acc = BigComplex::zero(prec);
    let mut rad = radius(0);
    for a in 1..=q {
        if chi.exponents[a as usize % q as usize].is_none() {
            continue;
        }
        let h = hurwitz_zeta(s, a, q, ctx)?;
        acc = &acc + &(&chi.value(a, prec) * &h.value);
        rad += &h.error_radius;
    }
    let wide = prec + crate::zeta::phase_bits(s.im.to_f64().abs(), (q as f64).ln());
    let qs = BigComplex::pow_neg_from_ln(&Float::with_val(wide, q).ln(), &s.with_prec(wide), prec);
    let value = &acc * &qs;
    let scale = radius_of(&qs.abs());
    let rounding = Float::with_val(64, ctx.ulp() * radius(8 * q)) * (radius_of(&value.abs()) + 1u32);
    Ok(EvalResult::new(value, rad * scale + rounding))
}

/// The L-bound equation for modulus q and level a ∈ (0, 1].
pub struct LBoundEquation {
    pub q: u64,
    pub a: BigFloat,
    p0: u64,
    divisors: Vec<u64>,
}

impl LBoundEquation {
    pub fn new(q: u64, a: &BigFloat) -> Result<Self> {
        if q < 3 {
            return Err(Error::Domain(format!("modulus {q} has no nontrivial character")));
        }
        if *a <= 0 || *a > 1 {
            return Err(Error::Domain(format!("a must lie in (0, 1], got {}", a.to_f64())));
        }
        let divisors = prime_divisors(q);
        let p0 = (2..).find(|&p| q % p != 0 && prime_divisors(p) == [p]).expect("some prime avoids q");
        Ok(Self { q, a: a.clone(), p0, divisors })
    }

    /// Smallest prime not dividing q.
    pub fn p0(&self) -> u64 {
        self.p0
    }
}

impl CertifiedFn for LBoundEquation {
    fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
        let f = if self.a == 1 {
            // ζ(σ)(1 - p0^{-σ}) Π_{p|q}(1 - p^{-σ}) - (1 + p0^{-σ})
            let p0 = Dual::int_pow_neg(self.p0, x, ctx);
            let mut g = p0.neg().add_const(1);
            for &p in &self.divisors {
                g = g.mul(&Dual::int_pow_neg(p, x, ctx).neg().add_const(1));
            }
            Dual::zeta_at(x, 1, ctx)?.mul(&g).sub(&p0.add_const(1))
        } else {
            // Π_{p|q}(1 + p^{-σ}) ζ(2σ)/ζ(σ) - a
            let mut h = Dual::zeta_at(x, 2, ctx)?.div(&Dual::zeta_at(x, 1, ctx)?)?;
            for &p in &self.divisors {
                h = h.mul(&Dual::int_pow_neg(p, x, ctx).add_const(1));
            }
            h.sub(&Dual::constant(Float::with_val(ctx.bits(), &self.a), radius(0), ctx))
        };
        Ok(RealEval { value: f.v, radius: f.r, derivative: Some(f.d) })
    }
}

pub fn solve_l_bound(q: u64, a: &BigFloat, digits: u32) -> Result<CertifiedRoot> {
    let f = LBoundEquation::new(q, a)?;
    let increasing = *a < 1;
    let (lo, hi) = bracket_right_of_one(&f, increasing, digits)?;
    verified_bisect(&f, &lo, &hi, digits)
}
