use rug::Float;
use serde_json::{json, Value};

use super::extract::{extract_heights, HeightCandidate};
use super::lattice::{build_lattice, LatticeParams};
use super::lll::lll_reduce_default;
use crate::constants::{solve_e, solve_sigma_one};
use crate::error::{Error, Result};
use crate::numerics::{format_decimal, pow10_neg, radius, radius_of, BigComplex, BigFloat, PrecisionContext};
use crate::zeta::{zeta_jet, EvalMethod, MethodKind, DEFAULT_PRIME_LIMIT, EULER_PRODUCT_MIN_SIGMA};

const MAX_NEWTON_STEPS: usize = 50;
/// Largest Newton step; keeps the iteration near its seed.
const MAX_STEP: f64 = 0.5;
const MIN_SIGMA: f64 = 1.05;
/// Past this real part ζ is 1 to working precision and Newton has diverged.
const DIVERGED_SIGMA: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// ζ(s) = 1
    ZetaEqualsOne,
    /// ζ′(s) = 0
    ZetaPrimeZero,
}

#[derive(Debug, Clone)]
pub struct RefinedRoot {
    pub root: BigComplex,
    /// Upper bound on |ζ(root) - 1| or |ζ′(root)|, evaluator error included.
    pub residual: BigFloat,
    pub iterations: usize,
    pub method: MethodKind,
}

impl RefinedRoot {
    pub fn to_json(&self) -> Value {
        let (re, im) = self.root.to_decimal_pair(30);
        json!({ "re": re, "im": im, "residual": format_decimal(&self.residual, 6), "iterations": self.iterations })
    }
}

/// Context whose precision also resolves the fractional part of Im s.
fn context_for_height(t: f64, ctx: &PrecisionContext) -> PrecisionContext {
    ctx.raised((t.abs() + 1.0).log10().ceil() as u32 + 1)
}

fn method_at(s: &BigComplex) -> Result<EvalMethod> {
    let m = EvalMethod::default_for(s);
    if m.kind == MethodKind::EulerProduct && s.re.to_f64() < EULER_PRODUCT_MIN_SIGMA {
        return Err(Error::OutOfRegion(format!(
            "Re s = {} below the Euler product range at height {:e}",
            s.re.to_f64(),
            s.im.to_f64()
        )));
    }
    Ok(m)
}

/// Prime limits tried before the full Euler product; early iterations only
/// need a rough function.
const STAGED_LIMITS: [u64; 2] = [10_000, 100_000];
/// Step size that ends an intermediate stage.
const STAGE_STOP: f64 = 1e-6;

/// Newton iteration for ζ(s) = 1 or ζ′(s) = 0 from `seed`, stopping once a
/// step is below 10^{-digits/2}.
pub fn refine_root(kind: RootKind, seed: &BigComplex, ctx: &PrecisionContext) -> Result<RefinedRoot> {
    refine_root_limited(kind, seed, DEFAULT_PRIME_LIMIT, ctx)
}

/// As [`refine_root`], with `prime_limit` primes in the Euler product used
/// above the Euler–Maclaurin range. The iteration runs first against
/// shorter products.
pub fn refine_root_limited(kind: RootKind, seed: &BigComplex, prime_limit: u64, ctx: &PrecisionContext) -> Result<RefinedRoot> {
    if prime_limit < 2 {
        return Err(Error::InvalidParams(format!("prime limit {prime_limit} < 2")));
    }
    if seed.re <= 1.1 {
        return Err(Error::Domain(format!("seed needs Re s > 1.1, got {}", seed.re.to_f64())));
    }
    let work = context_for_height(seed.im.to_f64(), ctx);
    let mut s = seed.with_prec(work.bits());
    let mut iterations = 0;
    if EvalMethod::default_for(&s).kind == MethodKind::EulerProduct {
        for limit in STAGED_LIMITS.into_iter().filter(|&l| l < prime_limit) {
            let (next, it) = newton(kind, &s, limit, &radius(STAGE_STOP), &work)?;
            s = next;
            iterations += it;
        }
    }
    let (root, it) = newton(kind, &s, prime_limit, &pow10_neg(ctx.digits() / 2), &work)?;
    iterations += it;
    let sigma = root.re.to_f64();
    if sigma < MIN_SIGMA || root.re <= 1 {
        return Err(Error::OutOfRegion(format!("root at Re s = {sigma}")));
    }
    let (f, _, rad, method) = residual_at(kind, &root, prime_limit, &work)?;
    let residual = Float::with_val(64, radius_of(&f.abs()) + rad);
    Ok(RefinedRoot { root, residual, iterations, method })
}

/// F, F′, the radius of F and the method used, with `limit` primes when the
/// Euler product applies.
fn residual_at(
    kind: RootKind,
    s: &BigComplex,
    limit: u64,
    work: &PrecisionContext,
) -> Result<(BigComplex, BigComplex, Float, MethodKind)> {
    let mut m = method_at(s)?;
    if m.kind == MethodKind::EulerProduct {
        m = EvalMethod::euler_product(limit);
    }
    let j = zeta_jet(s, &m, work)?;
    let p = work.bits();
    Ok(match kind {
        RootKind::ZetaEqualsOne => (&j.jet.v - &BigComplex::one(p), j.jet.d1, j.radii[0].clone(), m.kind),
        RootKind::ZetaPrimeZero => (j.jet.d1, j.jet.d2, j.radii[1].clone(), m.kind),
    })
}

fn newton(kind: RootKind, start: &BigComplex, limit: u64, stop: &Float, work: &PrecisionContext) -> Result<(BigComplex, usize)> {
    let p = work.bits();
    let mut s = start.clone();
    for it in 1..=MAX_NEWTON_STEPS {
        let sigma = s.re.to_f64();
        if sigma < MIN_SIGMA {
            return Err(Error::OutOfRegion(format!("Re s = {sigma} < {MIN_SIGMA}")));
        }
        if sigma > DIVERGED_SIGMA {
            return Err(Error::NoRoot(format!("iteration diverged to Re s = {sigma}")));
        }
        let (f, df, _, _) = residual_at(kind, &s, limit, work)?;
        if df.is_zero() {
            return Err(Error::NoRoot("vanishing Newton derivative".into()));
        }
        let mut step = f.div(&df);
        let len = step.abs().to_f64();
        if len > MAX_STEP {
            step = step.scale(&Float::with_val(p, MAX_STEP / len));
        }
        s = &s - &step;
        if radius_of(&step.abs()) < *stop {
            return Ok((s, it));
        }
    }
    Err(Error::NoRoot(format!("no convergence in {MAX_NEWTON_STEPS} Newton steps")))
}

#[derive(Debug, Clone)]
pub struct ExtremalPair {
    pub s_one: RefinedRoot,
    pub rho: RefinedRoot,
    /// rho - s_one
    pub delta: BigComplex,
}

#[derive(Debug, Clone)]
pub struct PairedSearch {
    pub candidates: Vec<HeightCandidate>,
    pub pair: ExtremalPair,
    pub sigma_one: BigFloat,
    pub turning_bound: BigFloat,
    /// |Re delta - (E - σ(1))|
    pub gap_error: BigFloat,
}

impl PairedSearch {
    pub fn best(&self) -> &HeightCandidate {
        &self.candidates[0]
    }

    pub fn to_json(&self, params: &LatticeParams) -> Value {
        let gap = Float::with_val(self.turning_bound.prec(), &self.turning_bound - &self.sigma_one);
        let (dre, dim) = self.pair.delta.to_decimal_pair(20);
        json!({
            "best": self.best().to_json(params),
            "s_one": self.pair.s_one.to_json(),
            "rho": self.pair.rho.to_json(),
            "delta": { "re": dre, "im": dim },
            "limit_gap": format_decimal(&gap, 20),
            "gap_error": format_decimal(&self.gap_error, 10),
        })
    }
}

/// A seed σ + it built at a precision that keeps t exact enough.
fn seed(sigma: &BigFloat, t: &BigFloat, ctx: &PrecisionContext) -> BigComplex {
    let p = context_for_height(t.to_f64(), ctx).bits();
    BigComplex::new(Float::with_val(p, sigma), Float::with_val(p.max(t.prec()), t))
}

/// Runs the lattice search and refines ζ(s) = 1 from σ(1) + it and ζ′(s) = 0
/// from E + it at the best height.
pub fn paired_search(params: &LatticeParams, prime_limit: u64, ctx: &PrecisionContext) -> Result<PairedSearch> {
    let basis = build_lattice(params)?;
    let reduced = lll_reduce_default(&basis)?;
    let candidates = extract_heights(&reduced, params)?;
    let sigma_one = solve_sigma_one(15)?.value;
    let turning_bound = solve_e(15)?.value;
    let t = &candidates[0].t_float;
    let (s_one, rho) = std::thread::scope(|sc| {
        let a = sc.spawn(|| refine_root_limited(RootKind::ZetaEqualsOne, &seed(&sigma_one, t, ctx), prime_limit, ctx));
        let b = refine_root_limited(RootKind::ZetaPrimeZero, &seed(&turning_bound, t, ctx), prime_limit, ctx);
        (a.join().expect("refinement thread"), b)
    });
    let (s_one, rho) = (s_one?, rho?);
    let delta = &rho.root - &s_one.root;
    let p = delta.prec();
    let gap = Float::with_val(p, &turning_bound - &sigma_one);
    let gap_error = Float::with_val(64, Float::with_val(p, &delta.re - &gap).abs());
    Ok(PairedSearch { candidates, pair: ExtremalPair { s_one, rho, delta }, sigma_one, turning_bound, gap_error })
}

#[derive(Debug, Clone)]
pub struct HeightVerification {
    pub height: BigFloat,
    /// Distinct roots of ζ(s) = 1 found, largest real part first.
    pub roots: Vec<RefinedRoot>,
}

impl HeightVerification {
    pub fn best(&self) -> Option<&RefinedRoot> {
        self.roots.first()
    }
}

/// Scans seeds σ(1) + i(h + k·step) for |k·step| ≤ half_width and keeps the
/// roots of ζ(s) = 1 that Newton reaches.
pub fn verify_height(h: &BigFloat, half_width: f64, step: f64, prime_limit: u64, ctx: &PrecisionContext) -> Result<HeightVerification> {
    if !(half_width > 0.0 && step > 0.0) {
        return Err(Error::InvalidParams("half width and step must be positive".into()));
    }
    if prime_limit < 2 {
        return Err(Error::InvalidParams(format!("prime limit {prime_limit} < 2")));
    }
    let sigma_one = solve_sigma_one(15)?.value;
    let count = (half_width / step).floor() as i64;
    let p = context_for_height(h.to_f64(), ctx).bits();
    let seeds: Vec<BigComplex> = (-count..=count)
        .map(|k| {
            let t = Float::with_val(p, h + k as f64 * step);
            seed(&sigma_one, &t, ctx)
        })
        .collect();
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(seeds.len());
    let mut found: Vec<RefinedRoot> = std::thread::scope(|sc| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let seeds = &seeds;
                sc.spawn(move || {
                    seeds
                        .iter()
                        .skip(w)
                        .step_by(threads)
                        .filter_map(|s| refine_root_limited(RootKind::ZetaEqualsOne, s, prime_limit, ctx).ok())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("scan thread")).collect()
    });
    found.sort_by(|a, b| b.root.re.partial_cmp(&a.root.re).expect("finite").then_with(|| a.root.im.partial_cmp(&b.root.im).expect("finite")));
    let tol = pow10_neg(ctx.digits() / 4);
    let mut roots: Vec<RefinedRoot> = Vec::new();
    for r in found {
        if roots.iter().all(|q| radius_of(&(&q.root - &r.root).abs()) > tol) {
            roots.push(r);
        }
    }
    Ok(HeightVerification { height: h.clone(), roots })
}
