//! Hurwitz zeta ζ(s, a/q) = Σ_{n≥0} (n + a/q)^{-s} at rational shifts, by
//! Euler–Maclaurin with the same remainder bound as for ζ(s).

use rug::ops::Pow;
use rug::Float;

use super::bernoulli::even_bernoulli;
use super::euler_maclaurin::{default_truncation, phase_bits};
use super::EvalResult;
use crate::error::{Error, Result};
use crate::numerics::{radius, radius_of, BigComplex, PrecisionContext};

pub fn hurwitz_zeta(s: &BigComplex, a: u64, q: u64, ctx: &PrecisionContext) -> Result<EvalResult> {
    if q == 0 || a == 0 || a > q {
        return Err(Error::InvalidParams(format!("Hurwitz shift {a}/{q} not in (0, 1]")));
    }
    let sigma = s.re.to_f64();
    if sigma <= 0.0 {
        return Err(Error::Domain(format!("Hurwitz zeta needs Re s > 0, got {sigma}")));
    }
    super::check_pole(s, ctx)?;
    let prec = ctx.bits();
    let n = default_truncation(s.im.to_f64().abs(), ctx);
    let wide = prec + phase_bits(s.im.to_f64().abs(), ((n + 1) as f64).ln());
    let s_w = s.with_prec(wide);
    let s_p = s.with_prec(prec);
    let ln_q = Float::with_val(wide, q).ln();

    // (n + a/q)^{-s} with ln(n + a/q) = ln(nq + a) - ln q
    let term = |k: u64| -> (BigComplex, Float) {
        let l = Float::with_val(wide, k * q + a).ln() - &ln_q;
        (BigComplex::pow_neg_from_ln(&l, &s_w, prec), l)
    };

    let mut acc = BigComplex::zero(prec);
    let mut abs_sum = 0f64;
    for k in 0..n {
        let (z, _) = term(k);
        abs_sum += z.abs().to_f64();
        acc = &acc + &z;
    }
    let (zn, _) = term(n);
    let x = Float::with_val(prec, n * q + a) / q;
    let one = Float::with_val(prec, 1);
    // x^{1-s}/(s-1) + x^{-s}/2
    let sm1 = s_p.add_real(&Float::with_val(prec, -&one));
    acc = &acc + &zn.scale(&x).div(&sm1);
    acc = &acc + &zn.scale(&Float::with_val(prec, 0.5));

    let x_inv = Float::with_val(prec, one / &x);
    let x_inv2 = Float::with_val(prec, x_inv.square_ref());
    let mut poch = s_p.clone();
    let mut x_term = zn.scale(&x_inv);
    let s_abs = s.abs().to_f64();
    let ln_x = x.to_f64().ln();
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut prod = radius(s_abs);
    let target = ctx.working_eps();
    let bern = even_bernoulli(2 * (n as usize).min(2000));
    let mut best: Option<Float> = None;
    let mut k = 0u32;
    while (k as usize) < bern.len() {
        k += 1;
        let coeff = Float::with_val(prec, &bern[k as usize - 1]) / Float::with_val(prec, Float::factorial(2 * k));
        let t = (&poch * &x_term).scale(&coeff);
        acc = &acc + &t;
        for j in [2 * k - 1, 2 * k] {
            prod *= radius(s_p.add_real(&Float::with_val(prec, j)).abs());
        }
        let bern_bound = radius(4) / radius(two_pi).pow(2 * k as i32 + 2i32);
        let tail = radius(s_p.add_real(&Float::with_val(prec, 2 * k + 1)).abs()) / (sigma + 2.0 * k as f64 + 1.0);
        let r = Float::with_val(64, &bern_bound * &prod) * radius(-(sigma + 2.0 * k as f64 + 1.0) * ln_x).exp() * tail;
        if best.as_ref().map_or(false, |b| r > *b) {
            acc = &acc - &t;
            break;
        }
        let done = r < target;
        best = Some(r);
        if done {
            break;
        }
        poch = &(&poch * &s_p.add_real(&Float::with_val(prec, 2 * k - 1))) * &s_p.add_real(&Float::with_val(prec, 2 * k));
        x_term = x_term.scale(&x_inv2);
    }
    let truncation = best.expect("at least one correction term");
    let rounding = Float::with_val(64, ctx.ulp() * radius(n + 64 + 4 * k as u64)) * (radius(abs_sum) + radius_of(&acc.abs()) + 1u32);
    Ok(EvalResult::new(acc, truncation + rounding))
}
