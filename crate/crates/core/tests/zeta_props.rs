use proptest::prelude::*;
use rug::Float;

use zeta_extremal::numerics::{primes_up_to, BigComplex, PrecisionContext};
use zeta_extremal::zeta::{
    limit_series_half, limit_series_liouville, log_zeta, prime_zeta, prime_zeta_real, zeta, zeta_derivative, zeta_log_derivative, EvalMethod,
    EvalResult,
};

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d).unwrap()
}

fn point(sigma: f64, t: f64, c: &PrecisionContext) -> BigComplex {
    BigComplex::with_val(c.bits(), sigma, t)
}

/// The true value lies in both discs, so the centres are within the sum of radii.
fn discs_meet(a: &EvalResult, b: &EvalResult) -> bool {
    let p = b.value.prec();
    let d = (&a.value.with_prec(p) - &b.value).abs();
    d <= Float::with_val(64, &a.error_radius + &b.error_radius) * 1.000001
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn radius_is_honest(sigma in 1.1f64..5.0, t in -100.0f64..100.0, d in 15u32..40) {
        let lo = ctx(d);
        let hi = ctx(2 * d);
        let m = EvalMethod::euler_maclaurin();
        let a = zeta(&point(sigma, t, &lo), &m, &lo).unwrap();
        let b = zeta(&point(sigma, t, &hi), &m, &hi).unwrap();
        prop_assert!(discs_meet(&a, &b));
        prop_assert!(a.error_radius.to_f64() < 10f64.powi(-(d as i32)) * a.value.abs().to_f64().max(1.0));
    }

    #[test]
    fn derivative_matches_difference_quotient(sigma in 1.2f64..4.0, t in -50.0f64..50.0) {
        let c = ctx(40);
        let m = EvalMethod::euler_maclaurin();
        let s = point(sigma, t, &c);
        let h = Float::with_val(c.bits(), 1e-10);
        let up = zeta(&s.add_real(&h), &m, &c).unwrap().value;
        let down = zeta(&s.add_real(&Float::with_val(c.bits(), -&h)), &m, &c).unwrap().value;
        let fd = (&up - &down).scale(&Float::with_val(c.bits(), Float::with_val(c.bits(), &h * 2u32).recip()));
        let d1 = zeta_derivative(&s, 1, &m, &c).unwrap().value;
        prop_assert!((&fd - &d1).abs().to_f64() < 1e-15);
    }

    #[test]
    fn exp_log_zeta_is_zeta(sigma in 1.1f64..4.0, t in -60.0f64..60.0) {
        let c = ctx(30);
        let s = point(sigma, t, &c);
        let z = zeta(&s, &EvalMethod::euler_maclaurin(), &c).unwrap();
        let l = log_zeta(&s, &c).unwrap();
        let back = l.value.exp();
        prop_assert!((&back - &z.value).abs().to_f64() < 1e-25 * z.value.abs().to_f64());
    }

    #[test]
    fn log_derivative_is_quotient(sigma in 1.1f64..4.0, t in -60.0f64..60.0) {
        let c = ctx(30);
        let s = point(sigma, t, &c);
        let m = EvalMethod::euler_maclaurin();
        let q = zeta_derivative(&s, 1, &m, &c).unwrap().value.div(&zeta(&s, &m, &c).unwrap().value);
        let ld = zeta_log_derivative(&s, &c).unwrap();
        prop_assert!((&q - &ld.value).abs().to_f64() < 1e-24 * q.abs().to_f64().max(1.0));
    }
}

#[test]
fn euler_maclaurin_and_euler_product_agree() {
    let c = ctx(20);
    let points = [
        (1.5, 0.0),
        (1.5, 17.0),
        (1.6, -300.0),
        (1.75, 1234.5),
        (2.0, 9999.0),
        (2.0, -14.1),
        (2.2, 500.0),
        (2.5, 2718.28),
        (3.0, 100.0),
        (3.0, -7777.0),
        (3.5, 42.0),
        (4.0, 6000.0),
        (1.55, 250.0),
        (1.8, -60.0),
        (2.7, 3141.59),
        (5.0, 1.0),
        (1.65, 888.0),
        (2.05, -4321.0),
        (4.5, 90.0),
        (1.95, 10000.0),
    ];
    for (sigma, t) in points {
        let s = point(sigma, t, &c);
        let a = zeta(&s, &EvalMethod::euler_maclaurin(), &c).unwrap();
        let b = zeta(&s, &EvalMethod::euler_product(100_000), &c).unwrap();
        assert!(discs_meet(&a, &b), "{sigma} + {t}i: radius {}", b.error_radius.to_f64());
        let bound = if sigma >= 2.0 { 1e-5 } else { 1e-2 };
        assert!(b.error_radius.to_f64() < bound, "{sigma} + {t}i: radius {}", b.error_radius.to_f64());
    }
}

#[test]
fn prime_zeta_matches_direct_sum() {
    let c = ctx(25);
    let limit = 2_000_000u64;
    let primes = primes_up_to(limit).unwrap();
    for sigma in [1.5f64, 2.0, 3.0] {
        let direct: f64 = primes.primes().iter().rev().map(|&p| (p as f64).powf(-sigma)).sum();
        // Σ_{p > N} p^{-σ} ≤ ∫_N^∞ x^{-σ}/log x dx · 1.3 by the prime number theorem with room
        let n = limit as f64;
        let tail = 1.3 * n.powf(1.0 - sigma) / ((sigma - 1.0) * n.ln());
        let p = prime_zeta_real(&Float::with_val(c.bits(), sigma), &c).unwrap();
        let v = p.value.re.to_f64();
        assert!(v >= direct - 1e-12 && v <= direct + tail, "σ = {sigma}: {v} vs {direct} + {tail:e}");
        let z = prime_zeta(&point(sigma, 0.0, &c), &c).unwrap();
        assert!((z.value.re.to_f64() - v).abs() < 1e-15);
    }
}

#[test]
fn dirichlet_series_with_closed_forms() {
    let c = ctx(25);
    for (sigma, t) in [(2.0, 0.0), (3.0, 0.0), (2.5, 7.0)] {
        let s = point(sigma, t, &c);
        let z = zeta(&s, &EvalMethod::euler_maclaurin(), &c).unwrap().value;
        let two_s = BigComplex::pow_neg_from_ln(&Float::with_val(c.bits(), 2).ln(), &(&BigComplex::zero(c.bits()) - &s), c.bits());
        let one = BigComplex::one(c.bits());
        let half = (&two_s - &one).div(&(&two_s + &one));
        let expect_half = &half * &z;
        let z2 = zeta(&(&s + &s), &EvalMethod::euler_maclaurin(), &c).unwrap().value;
        let expect_liouville = z2.div(&z);
        let a = limit_series_half(&s, 100_000, &c).unwrap();
        let b = limit_series_liouville(&s, 100_000, &c).unwrap();
        assert!(a.contains(&expect_half, 1e-20), "{sigma} + {t}i");
        assert!(b.contains(&expect_liouville, 1e-20), "{sigma} + {t}i");
        // the bound is not vacuous
        assert!(a.error_radius.to_f64() < 1e-3 && b.error_radius.to_f64() < 1e-3);
    }
}

#[test]
fn pole_and_domain_errors() {
    let c = ctx(20);
    let one = point(1.0, 0.0, &c);
    assert!(zeta(&one, &EvalMethod::euler_maclaurin(), &c).is_err());
    assert!(zeta(&point(1.2, 10.0, &c), &EvalMethod::euler_product(1000), &c).is_err());
    assert!(zeta(&point(2.0, 1.0, &c), &EvalMethod::euler_product(1), &c).is_err());
}
