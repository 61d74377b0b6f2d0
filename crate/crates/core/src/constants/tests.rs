use rug::ops::Pow;
use rug::Float;

use super::*;
use crate::numerics::{parse_decimal_bits, primes_up_to, BigComplex, PrecisionContext};
use crate::zeta::prime_tail_bounds;

fn big(x: &str) -> BigFloat {
    parse_decimal_bits(x, 400).unwrap()
}

fn agrees(root: &CertifiedRoot, expected: &str, tol: f64) {
    let d = Float::with_val(400, &root.value - big(expected)).abs().to_f64();
    assert!(d < tol, "{} vs {expected}: {d:e}", root.to_decimal());
}

#[test]
fn bisect_trivial_functions() {
    let sq = ExactFn(|x: &BigFloat, p: u32| (Float::with_val(p, x.square_ref()) - 2u32, Float::with_val(p, x * 2u32)));
    let r = verified_bisect(&sq, &big("1"), &big("2"), 30).unwrap();
    agrees(&r, "1.41421356237309504880168872420969807856967187537694", 1e-30);
    assert!(r.enclosure_width <= crate::numerics::pow10_neg(30));

    let lin = ExactFn(|x: &BigFloat, p: u32| (Float::with_val(p, x - 1u32), Float::with_val(p, 1)));
    let r = verified_bisect(&lin, &big("0"), &big("2"), 20).unwrap();
    assert_eq!(r.value, 1);
    assert!(r.contains(&big("1")));

    assert!(matches!(verified_bisect(&lin, &big("2"), &big("3"), 20), Err(Error::NoSignChange { .. })));
}

#[test]
fn bisect_reports_uncertifiable_sign() {
    struct Fuzzy;
    impl CertifiedFn for Fuzzy {
        fn eval(&self, x: &BigFloat, ctx: &PrecisionContext) -> Result<RealEval> {
            Ok(RealEval { value: Float::with_val(ctx.bits(), x - 1u32), radius: crate::numerics::radius(10), derivative: None })
        }
    }
    assert!(matches!(verified_bisect(&Fuzzy, &big("0"), &big("2"), 20), Err(Error::PrecisionEscalation { .. })));
}

#[test]
fn sigma_one_both_forms() {
    let a = solve_sigma_one_form(SigmaOneForm::Quotient, 40).unwrap();
    let b = solve_sigma_one_form(SigmaOneForm::Product, 40).unwrap();
    agrees(&a, "1.94010168374362528601746939052554887823024760", 1e-40);
    assert!(!a.disjoint(&b));
    assert!(a.residual.to_f64() < 1e-38);
    let c = PrecisionContext::new(30).unwrap();
    let f = SigmaOneEquation(SigmaOneForm::Quotient);
    let lo = f.eval(&big("1.5"), &c).unwrap();
    let hi = f.eval(&big("2.5"), &c).unwrap();
    assert!(lo.value > 0 && hi.value < 0);
}

#[test]
fn turning_bound() {
    let e = solve_e(30).unwrap();
    agrees(&e, "2.813014020252898367527255401216686963846140560", 1e-30);
    assert!(e.value > 2 && e.value < 3);
    // split form: log2/(2^σ+1) + log2/(2^σ-1) = Σ_p log p/(p^σ-1) = -ζ′/ζ
    let c = PrecisionContext::new(30).unwrap();
    let s = BigComplex::real(Float::with_val(c.bits(), &e.value));
    let lhs = {
        let p2 = Float::with_val(c.bits(), Float::with_val(c.bits(), 2).pow(&e.value));
        let ln2 = Float::with_val(c.bits(), 2).ln();
        Float::with_val(c.bits(), &ln2 / Float::with_val(c.bits(), &p2 + 1u32)) + Float::with_val(c.bits(), &ln2 / (p2 - 1u32))
    };
    let rhs = crate::zeta::zeta_log_derivative_prime_sum(&s, 1_000_000, &c).unwrap();
    let d = Float::with_val(c.bits(), &lhs + &rhs.value.re).abs();
    assert!(d <= rhs.error_radius, "{d}");
}

#[test]
fn real_part_bound() {
    let a = solve_a(30).unwrap();
    agrees(&a, "1.192347337186193202897504427425597883401119230", 1e-30);
}

/// Σ_{p ≤ 10^6} arcsin(p^{-σ}) with the tail Σ_{p>P} arcsin(p^{-σ}) ≤ (π/2) Σ_{p>P} p^{-σ}.
fn direct_arcsin_sum(sigma: f64) -> (f64, f64) {
    let t = primes_up_to(1_000_000).unwrap();
    let s: f64 = t.primes().iter().rev().map(|&p| (p as f64).powf(-sigma).asin()).sum();
    let tail = prime_tail_bounds(sigma, 1_000_000)[0].to_f64() * std::f64::consts::FRAC_PI_2;
    (s, tail)
}

#[test]
fn real_part_bound_direct_oracle() {
    let a = solve_a(15).unwrap().value.to_f64();
    let half_pi = std::f64::consts::FRAC_PI_2;
    // find σ where the certified lower and upper bounds straddle π/2
    let (lo_s, lo_t) = direct_arcsin_sum(a - 0.05);
    let (hi_s, _) = direct_arcsin_sum(a + 0.05);
    assert!(lo_s + lo_t > half_pi && lo_s > half_pi);
    assert!(hi_s < half_pi);
    let mut last = f64::INFINITY;
    for k in 0..=10 {
        let (s, _) = direct_arcsin_sum(1.1 + 0.02 * k as f64);
        assert!(s < last);
        last = s;
    }
}

#[test]
fn sigma_of_a() {
    let two = solve_sigma_a(&big("2"), 25).unwrap();
    agrees(&two, "1.72864723899818361813510301029769146423410984933503573232129", 1e-25);
    let half = solve_sigma_a(&big("0.5"), 25).unwrap();
    agrees(&half, "1.57801706303436662003929685980484379019917102592197753073435", 1e-25);
    assert!(matches!(solve_sigma_a(&big("1"), 20), Err(Error::Redirect(_))));
    assert!(matches!(solve_sigma_a(&big("-1"), 20), Err(Error::Domain(_))));
    assert!(matches!(solve_sigma_a(&big("0"), 20), Err(Error::Domain(_))));
}

#[test]
fn sigma_of_a_inverts_zeta() {
    let z = Float::with_val(400, 1.5).zeta();
    let r = solve_sigma_a(&z, 30).unwrap();
    assert!(r.contains(&big("1.5")));
}

#[test]
fn sigma_of_a_is_continuous() {
    for a in ["0.3", "0.7", "1.5", "3"] {
        let x = solve_sigma_a(&big(a), 12).unwrap().value;
        let shifted = Float::with_val(400, big(a) + 1e-6);
        let y = solve_sigma_a(&shifted, 12).unwrap().value;
        assert!(Float::with_val(400, &x - &y).abs() < 1e-4, "a = {a}");
    }
}

#[test]
fn l_bounds() {
    let r = solve_l_bound(4, &big("1"), 30).unwrap();
    agrees(&r, "1.8877909267081189271963215420351166682234701260", 1e-30);
    let r = solve_l_bound(7, &big("1"), 30).unwrap();
    agrees(&r, "1.8384345030973149401669429967608206780491613150", 1e-30);
    let r = solve_l_bound(4, &big("0.5"), 30).unwrap();
    agrees(&r, "1.3353871957453111331201066998785750083328782900", 1e-30);
    assert!(matches!(solve_l_bound(2, &big("1"), 20), Err(Error::Domain(_))));
    assert!(matches!(solve_l_bound(4, &big("1.5"), 20), Err(Error::Domain(_))));
    assert_eq!(LBoundEquation::new(4, &big("1")).unwrap().p0(), 3);
    assert_eq!(LBoundEquation::new(7, &big("1")).unwrap().p0(), 2);
    assert_eq!(LBoundEquation::new(6, &big("1")).unwrap().p0(), 5);
}

#[test]
fn characters() {
    let t4 = character_table(4).unwrap();
    assert_eq!(t4.len(), 2);
    assert!(t4[0].is_principal());
    let chi = &t4[1];
    assert_eq!(chi.value_f64(3).0, -1.0);
    assert_eq!(chi.value_f64(2), (0.0, 0.0));
    assert_eq!(chi.value_f64(5).0, 1.0);

    let t7 = character_table(7).unwrap();
    assert_eq!(t7.len(), 6);
    let col: (f64, f64) = t7.iter().map(|c| c.value_f64(3)).fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    assert!(col.0.abs() < 1e-12 && col.1.abs() < 1e-12);
    for c in &t7 {
        for a in 1..7u64 {
            for b in 1..7u64 {
                let (x, y) = (c.value(a, 64), c.value(b, 64));
                let prod = &x * &y;
                let ab = c.value(a * b, 64);
                assert!((&prod - &ab).abs().to_f64() < 1e-12);
            }
        }
        assert_eq!(c.value_f64(7), (0.0, 0.0));
        assert_eq!(c.value_f64(10), c.value_f64(3));
    }
    assert!(matches!(character_table(5), Err(Error::Domain(_))));
}

#[test]
fn l_function_values() {
    let c = PrecisionContext::new(30).unwrap();
    let t4 = character_table(4).unwrap();
    let two = BigComplex::real(Float::with_val(c.bits(), 2));
    let catalan = l_function(&two, &t4[1], &c).unwrap();
    // Σ (-1)^k/(2k+1)² with Leibniz tail bound, in f64
    let mut s = 0f64;
    for k in (0..200_000u64).rev() {
        let t = 1.0 / ((2 * k + 1) as f64).powi(2);
        s += if k % 2 == 0 { t } else { -t };
    }
    assert!((catalan.value.re.to_f64() - s).abs() < 1e-10 + 1.0 / (400_001f64).powi(2));
    assert!(catalan.contains(&BigComplex::real(big("0.915965594177219015054603514932384110774149374281672134266498")), 1e-30));

    let principal = l_function(&two, &t4[0], &c).unwrap();
    let z2 = Float::with_val(c.bits(), Float::with_val(c.bits(), 2).zeta()) * 0.75f64;
    assert!(principal.contains(&BigComplex::real(z2), 1e-28));

    let forty = BigComplex::real(Float::with_val(c.bits(), 40));
    for chi in character_table(7).unwrap() {
        let l = l_function(&forty, &chi, &c).unwrap();
        let mut approx = BigComplex::one(c.bits());
        for n in [2u64, 3] {
            let w = Float::with_val(c.bits(), Float::u_pow_u(n as u32, 40)).recip();
            approx = &approx + &chi.value(n, c.bits()).scale(&w);
        }
        assert!((&l.value - &approx).abs().to_f64() < 1e-11);
    }
    assert!(l_function(&BigComplex::real(Float::with_val(c.bits(), 1)), &t4[1], &c).is_err());
}

#[test]
fn constant_spec_dispatch() {
    let r = ConstantSpec::new(ConstantKind::TurningBoundE, 12).solve().unwrap();
    assert!(r.to_decimal().starts_with("2.81301402025"));
    assert!(matches!(ConstantSpec::new(ConstantKind::SigmaOne, 5).solve(), Err(Error::InvalidPrecision(_))));
}
