use proptest::prelude::*;
use rug::{Float, Integer, Rational};

use zeta_extremal::height_search::{
    basis_coordinates, build_lattice, extract_heights, gram_determinant, is_lll_reduced, lll_reduce, lll_reduce_default, phase_perturbation_bound,
    refine_root, HeightCandidate, LatticeBasis, LatticeParams, RootKind,
};
use zeta_extremal::numerics::{BigComplex, PrecisionContext};
use zeta_extremal::zeta::{zeta, zeta_real, EvalMethod};

fn candidates(n: usize, nu: u32, r: u32) -> (LatticeBasis, Vec<HeightCandidate>) {
    let p = LatticeParams::new(n, nu, r).unwrap();
    let basis = build_lattice(&p).unwrap();
    let red = lll_reduce_default(&basis).unwrap();
    (basis, extract_heights(&red, &p).unwrap())
}

fn square_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..6).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-40i64..40, d), d))
}

/// Residual of t log p - θ reduced to (-π, π], at 300 bits.
fn phase_oracle(t: &Rational, p: u64, theta: f64) -> f64 {
    let bits = 300;
    let x = Float::with_val(bits, t) * Float::with_val(bits, p).ln() - theta;
    let tau = Float::with_val(bits, rug::float::Constant::Pi) * 2u32;
    let k = Float::with_val(bits, &x / &tau).round();
    let r = x - k * tau;
    r.to_f64()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lll_output_is_reduced_and_unimodular(rows in square_matrix()) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let basis = LatticeBasis::from_i64(&refs);
        let det = gram_determinant(&basis);
        prop_assume!(det != 0);
        let delta = Rational::from((3, 4));
        let red = lll_reduce(&basis, &delta).unwrap();
        prop_assert!(is_lll_reduced(&red, &delta));
        prop_assert_eq!(gram_determinant(&red), det);
        for row in &red.rows {
            prop_assert!(basis_coordinates(&basis, row).is_some());
        }
        for row in &basis.rows {
            prop_assert!(basis_coordinates(&red, row).is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn refine_is_idempotent(sigma in 1.4f64..1.9, t in 5.0f64..300.0) {
        let ctx = PrecisionContext::new(24).unwrap();
        let seed = BigComplex::with_val(ctx.bits(), sigma, t);
        if let Ok(r) = refine_root(RootKind::ZetaEqualsOne, &seed, &ctx) {
            prop_assume!(r.root.re > 1.1);
            let again = refine_root(RootKind::ZetaEqualsOne, &r.root, &ctx).unwrap();
            prop_assert!((&again.root - &r.root).abs().to_f64() < 1e-12);
            prop_assert!(r.root.re.to_f64() <= 1.9401016837436253 + 1e-10);
        }
    }
}

#[test]
fn candidates_are_exact_lattice_points() {
    for (n, nu, r) in [(3, 20, 5), (4, 30, 10), (6, 50, 16)] {
        let (basis, cands) = candidates(n, nu, r);
        assert!(!cands.is_empty());
        for c in &cands {
            assert_eq!(c.t, Rational::from((c.x.clone(), Integer::from(1) << c.r)));
            assert!(c.t > 0);
            assert!(basis_coordinates(&basis, &c.row).is_some());
            let primes = [2u64, 3, 5, 7, 11, 13];
            for (j, res) in c.residuals.iter().enumerate() {
                let theta = if j == 0 { std::f64::consts::PI } else { 0.0 };
                let theta = if c.conjugated { -theta } else { theta };
                let o = phase_oracle(&c.t, primes[j], theta);
                let d = (o - res.to_f64()).abs();
                assert!(d < 1e-12 || (d - std::f64::consts::TAU).abs() < 1e-12, "p = {}: {o} vs {}", primes[j], res.to_f64());
            }
        }
    }
}

#[test]
fn larger_nu_never_worsens_score() {
    for (n, nu, r) in [(4, 30, 10), (5, 40, 13), (6, 50, 16)] {
        let a = candidates(n, nu, r).1[0].score.clone();
        let b = candidates(n, 2 * nu, 2 * r).1[0].score.clone();
        assert!(b <= a, "n = {n}: ν = {nu} gives {}, ν = {} gives {}", a.to_f64(), 2 * nu, b.to_f64());
    }
}

#[test]
fn score_bounds_distance_to_limit_function() {
    let (_, cands) = candidates(10, 90, 30);
    let best = &cands[0];
    assert!(best.score < 0.1);
    let res: Vec<f64> = best.residuals.iter().map(|r| r.to_f64()).collect();
    let ctx = PrecisionContext::new(20).unwrap();
    let bits = ctx.bits() + 64;
    for sigma in [1.5, 1.75, 2.0, 2.5, 3.0] {
        let zs = zeta_real(&Float::with_val(bits, sigma), &ctx).unwrap().value.re.to_f64();
        let two = 2f64.powf(sigma);
        let limit = zs * (two - 1.0) / (two + 1.0);
        let bound = phase_perturbation_bound(sigma, &res, zs.ln(), limit);
        let s = BigComplex::new(Float::with_val(bits, sigma), best.t_float.clone());
        let z = zeta(&s, &EvalMethod::euler_product(100_000), &ctx).unwrap();
        let (re, im) = z.value.to_f64_pair();
        let dist = (re - limit).hypot(im);
        assert!(dist <= bound + z.error_radius.to_f64(), "σ = {sigma}: {dist} > {bound}");
    }
}
