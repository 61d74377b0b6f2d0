use std::cmp::Ordering;

use proptest::prelude::*;
use rug::Float;

use zeta_extremal::constants::{
    solve_a, solve_e, solve_l_bound, solve_sigma_a, solve_sigma_one, solve_sigma_one_form, CertifiedFn, CertifiedRoot, RealPartEquation,
    SigmaOfAEquation, SigmaOneEquation, SigmaOneForm, TurningEquation,
};
use zeta_extremal::numerics::{parse_decimal_bits, PrecisionContext};
use zeta_extremal::zeta::zeta_real;
use zeta_extremal::Error;

/// ζ(σ) in f64: 1000 terms plus the Euler–Maclaurin tail to B_6.
fn zeta_f64(s: f64) -> f64 {
    let n = 1000.0f64;
    let head: f64 = (1..1000).rev().map(|k| (k as f64).powf(-s)).sum();
    let ns = n.powf(-s);
    head + n * ns / (s - 1.0) + ns / 2.0 + s * ns / n / 12.0 - s * (s + 1.0) * (s + 2.0) * ns / n.powi(3) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * ns / n.powi(5) / 30240.0
}

fn bisect_f64(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn dec(x: &str) -> Float {
    parse_decimal_bits(x, 200).unwrap()
}

fn ratio(sigma: f64, c: &PrecisionContext) -> Float {
    let a = zeta_real(&Float::with_val(c.bits(), 2.0 * sigma), c).unwrap().value.re;
    let b = zeta_real(&Float::with_val(c.bits(), sigma), c).unwrap().value.re;
    a / b
}

fn signs_opposite(f: &dyn CertifiedFn, root: &CertifiedRoot) {
    let c = PrecisionContext::new(root.digits).unwrap();
    let lo = f.eval(&root.bracket.0, &c).unwrap().certified_sign();
    let hi = f.eval(&root.bracket.1, &c).unwrap().certified_sign();
    assert!(lo.is_some() && hi.is_some(), "uncertified sign at a bracket end");
    assert_eq!(lo.unwrap(), hi.unwrap().reverse());
    assert_ne!(lo.unwrap(), Ordering::Equal);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zeta_ratio_increasing(a in 1.05f64..10.0, b in 1.05f64..10.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let c = PrecisionContext::new(25).unwrap();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(ratio(lo, &c) < ratio(hi, &c));
    }

    #[test]
    fn sigma_a_inverts_zeta(sigma in 1.2f64..6.0) {
        let c = PrecisionContext::new(30).unwrap();
        let a = zeta_real(&Float::with_val(c.bits(), sigma), &c).unwrap().value.re;
        let r = solve_sigma_a(&a, 25).unwrap();
        prop_assert!((r.value.to_f64() - sigma).abs() < 1e-20);
    }
}

#[test]
fn zeta_ratio_grid() {
    let c = PrecisionContext::new(25).unwrap();
    let vals: Vec<Float> = (0..100).map(|k| ratio(1.05 + 8.95 * k as f64 / 99.0, &c)).collect();
    assert!(vals.windows(2).all(|w| w[0] < w[1]));
    assert!(vals[0] > 0 && vals[99] < 1);
}

#[test]
fn sigma_a_continuous_on_each_branch() {
    for a in ["0.3", "0.7", "1.5", "3"] {
        let x = dec(a);
        let y = Float::with_val(200, &x + 1e-6);
        let u = solve_sigma_a(&x, 20).unwrap().value.to_f64();
        let v = solve_sigma_a(&y, 20).unwrap().value.to_f64();
        assert!((u - v).abs() < 1e-4, "a = {a}: {u} vs {v}");
    }
}

#[test]
fn sigma_a_against_series_oracle() {
    let half = bisect_f64(|s| zeta_f64(2.0 * s) / zeta_f64(s) - 0.5, 1.05, 3.0);
    let r = solve_sigma_a(&dec("0.5"), 30).unwrap();
    assert!((r.value.to_f64() - half).abs() < 1e-11, "{} vs {half}", r.to_decimal());
    assert!(r.to_decimal().starts_with("1.5780170630"), "{}", r.to_decimal());

    let two = bisect_f64(|s| zeta_f64(s) - 2.0, 1.2, 3.0);
    let r = solve_sigma_a(&dec("2"), 30).unwrap();
    assert!((r.value.to_f64() - two).abs() < 1e-11);
    assert!(r.to_decimal().starts_with("1.7286472389"));

    let one = bisect_f64(|s| zeta_f64(s) - (2f64.powf(s) + 1.0) / (2f64.powf(s) - 1.0), 1.5, 2.5);
    assert!((solve_sigma_one(20).unwrap().value.to_f64() - one).abs() < 1e-11);
}

#[test]
fn sigma_a_rejects_bad_levels() {
    assert!(matches!(solve_sigma_a(&dec("1"), 20), Err(Error::Redirect(_))));
    assert!(matches!(solve_sigma_a(&dec("0"), 20), Err(Error::Domain(_))));
    assert!(matches!(solve_sigma_a(&dec("-3"), 20), Err(Error::Domain(_))));
}

#[test]
fn ordering_with_disjoint_enclosures() {
    let a = solve_a(40).unwrap();
    let s1 = solve_sigma_one(40).unwrap();
    let e = solve_e(40).unwrap();
    assert!(a.bracket.1 < s1.bracket.0 && s1.bracket.1 < e.bracket.0);
    assert!(a.disjoint(&s1) && s1.disjoint(&e) && a.disjoint(&e));
    assert!(e.value > 2 && e.value < 3);
}

#[test]
fn brackets_have_certified_opposite_signs() {
    for digits in [20, 45] {
        signs_opposite(&SigmaOneEquation(SigmaOneForm::Quotient), &solve_sigma_one(digits).unwrap());
        signs_opposite(&TurningEquation, &solve_e(digits).unwrap());
        signs_opposite(&RealPartEquation, &solve_a(digits).unwrap());
        let half = dec("0.5");
        signs_opposite(&SigmaOfAEquation { a: half.clone() }, &solve_sigma_a(&half, digits).unwrap());
        let eps = zeta_extremal::numerics::pow10_neg(digits);
        for r in [solve_sigma_one(digits).unwrap(), solve_e(digits).unwrap(), solve_l_bound(4, &dec("1"), digits).unwrap()] {
            assert!(r.enclosure_width <= eps);
            assert!(r.contains(&r.value));
        }
    }
}

#[test]
fn sigma_one_forms_intersect() {
    let q = solve_sigma_one_form(SigmaOneForm::Quotient, 30).unwrap();
    let p = solve_sigma_one_form(SigmaOneForm::Product, 30).unwrap();
    assert!(!q.disjoint(&p));
}
