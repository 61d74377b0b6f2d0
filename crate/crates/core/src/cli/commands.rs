use std::fmt::Write as _;

use rug::Float;
use serde_json::{json, Value};

use super::{render, CheckArgs, ConstantsArgs, Format, LBoundArgs, Outcome, SearchArgs, SigmaAArgs, Suite, TraceArgs, Which};
use super::{EXIT_FALSIFIED, EXIT_PRECISION};
use crate::constants::{solve_a, solve_e, solve_l_bound, solve_sigma_a, solve_sigma_one, CertifiedRoot};
use crate::curves::{
    check_h_decreasing, check_inequality_a3, check_u_minimum, find_turning_point, period, render_svg, segment_csv,
    solve_u_of_t, trace_level_curves, trace_real_curves, verify_turning_bound, Component, CurveSegment, TurningPoint,
    Window, ZetaFn,
};
use crate::error::{Error, Result};
use crate::height_search::{
    build_lattice, diagnose_limits, extract_heights, lll_reduce_default, paired_search, verify_height, HeightCandidate,
    LatticeParams,
};
use crate::numerics::{format_decimal, parse_decimal_bits, pow10_neg, primes_up_to, radius_of, BigComplex, PrecisionContext};
use crate::zeta::{limit_series_half, limit_series_liouville, zeta, EvalMethod, EvalResult};

/// Seeds for the direct verification scan: t = h + k/4, |k/4| ≤ 3.
const VERIFY_HALF_WIDTH: f64 = 3.0;
const VERIFY_STEP: f64 = 0.25;
/// Slack allowed above a proven bound before a result counts as a violation.
const BOUND_SLACK: f64 = 1e-10;

fn root_json(name: &str, r: &CertifiedRoot) -> Value {
    let sig = r.digits as usize + 3;
    json!({
        "name": name,
        "value": r.to_decimal(),
        "lower": format_decimal(&r.bracket.0, sig),
        "upper": format_decimal(&r.bracket.1, sig),
        "enclosure_width": format_decimal(&r.enclosure_width, 3),
        "residual": format_decimal(&r.residual, 3),
    })
}

fn text_lines(roots: &[(&str, &CertifiedRoot)]) -> String {
    let mut s = String::new();
    for (name, r) in roots {
        let _ = writeln!(s, "{name} = {}  (width {})", r.to_decimal(), format_decimal(&r.enclosure_width, 3));
    }
    s
}

fn usage(msg: String) -> Error {
    Error::InvalidParams(msg)
}

fn json_or_text(format: Format) -> Result<()> {
    match format {
        Format::Json | Format::Text => Ok(()),
        f => Err(usage(format!("--format {} is not available for this command", f.as_str()))),
    }
}

/// Wider than 10^{-digits}: the certificate is too weak for the request.
fn too_wide(r: &CertifiedRoot) -> bool {
    r.enclosure_width > pow10_neg(r.digits)
}

pub fn run_constants(a: &ConstantsArgs) -> Result<Outcome> {
    json_or_text(a.format)?;
    let names: Vec<&str> = match a.which {
        Which::SigmaOne => vec!["sigma1"],
        Which::E => vec!["E"],
        Which::A => vec!["A"],
        Which::All => vec!["sigma1", "E", "A"],
    };
    let d = a.digits;
    let solved: Vec<Result<CertifiedRoot>> = std::thread::scope(|sc| {
        let handles: Vec<_> = names
            .iter()
            .map(|&n| {
                sc.spawn(move || match n {
                    "sigma1" => solve_sigma_one(d),
                    "E" => solve_e(d),
                    _ => solve_a(d),
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread")).collect()
    });
    let roots = solved.into_iter().collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(&str, &CertifiedRoot)> = names.iter().copied().zip(roots.iter()).collect();
    let output = match a.format {
        Format::Text => text_lines(&pairs),
        _ => render(&json!({
            "command": "constants",
            "flags": { "which": names, "digits": d.to_string() },
            "constants": pairs.iter().map(|(n, r)| root_json(n, r)).collect::<Vec<_>>(),
        })),
    };
    let code = if roots.iter().any(too_wide) { EXIT_PRECISION } else { super::EXIT_OK };
    Ok(Outcome::with_code(output, code))
}

pub fn run_sigma_a(a: &SigmaAArgs) -> Result<Outcome> {
    json_or_text(a.format)?;
    let bits = crate::numerics::digits_to_bits(a.digits + 20);
    let level = parse_decimal_bits(&a.a, bits)?;
    let r = solve_sigma_a(&level, a.digits)?;
    Ok(Outcome::ok(match a.format {
        Format::Text => text_lines(&[("sigma(a)", &r)]),
        _ => render(&json!({
            "command": "sigma-a",
            "flags": { "a": a.a, "digits": a.digits.to_string() },
            "result": root_json("sigma(a)", &r),
        })),
    }))
}

pub fn run_l_bound(a: &LBoundArgs) -> Result<Outcome> {
    json_or_text(a.format)?;
    let bits = crate::numerics::digits_to_bits(a.digits + 20);
    let level = parse_decimal_bits(&a.a, bits)?;
    let r = solve_l_bound(a.q, &level, a.digits)?;
    Ok(Outcome::ok(match a.format {
        Format::Text => text_lines(&[("l-bound", &r)]),
        _ => render(&json!({
            "command": "l-bound",
            "flags": { "q": a.q.to_string(), "a": a.a, "digits": a.digits.to_string() },
            "result": root_json("l-bound", &r),
        })),
    }))
}

fn lattice_params(a: &SearchArgs) -> Result<LatticeParams> {
    let p = LatticeParams::with_weights_base(a.n, a.nu, a.r, &a.weights_base)?;
    match &a.theta {
        None => {
            p.validate()?;
            Ok(p)
        }
        Some(list) => {
            let bits = p.bits();
            let thetas = list.split(',').map(|x| parse_decimal_bits(x.trim(), bits)).collect::<Result<Vec<_>>>()?;
            p.with_thetas(thetas)
        }
    }
}

/// Distances of the phases at t to their limits, per lattice prime.
fn diagnostics(best: &HeightCandidate, params: &LatticeParams) -> Result<Value> {
    let primes = params.primes();
    let table = primes_up_to(*primes.last().expect("n ≥ 2"))?;
    let d = diagnose_limits(&best.t_float, &table, params.bits());
    Ok(json!({
        "t": format_decimal(&best.t_float, 40),
        "distances": d.iter().map(|(p, v)| json!({ "p": p.to_string(), "distance": format_decimal(v, 10) })).collect::<Vec<_>>(),
    }))
}

fn search_flags(a: &SearchArgs) -> Value {
    json!({
        "n": a.n.to_string(),
        "nu": a.nu.to_string(),
        "r": a.r.to_string(),
        "weights_base": a.weights_base,
        "theta": a.theta,
        "prime_limit": a.prime_limit.to_string(),
        "digits": a.digits.to_string(),
        "refine": !a.no_refine,
        "verify_height": a.verify_height,
    })
}

pub fn run_search_height(a: &SearchArgs) -> Result<Outcome> {
    json_or_text(a.format)?;
    let ctx = PrecisionContext::new(a.digits)?;
    if let Some(h) = &a.verify_height {
        return verify(a, h, &ctx);
    }
    let params = lattice_params(a)?;
    let mut report = json!({ "command": "search-height", "flags": search_flags(a) });
    let mut code = super::EXIT_OK;
    let mut text = String::new();
    if a.no_refine {
        let candidates = extract_heights(&lll_reduce_default(&build_lattice(&params)?)?, &params)?;
        report["candidates"] = json!(candidates.iter().map(|c| c.to_json(&params)).collect::<Vec<_>>());
        report["diagnostics"] = diagnostics(&candidates[0], &params)?;
        let _ = writeln!(text, "t = {}  score {}", format_decimal(&candidates[0].t_float, 30), format_decimal(&candidates[0].score, 6));
    } else {
        let run = paired_search(&params, a.prime_limit, &ctx)?;
        report["candidates"] = json!(run.candidates.iter().map(|c| c.to_json(&params)).collect::<Vec<_>>());
        report["diagnostics"] = diagnostics(run.best(), &params)?;
        report["pair"] = run.to_json(&params);
        let above_sigma_one = Float::with_val(64, &run.pair.s_one.root.re - &run.sigma_one) > BOUND_SLACK;
        let above_e = Float::with_val(64, &run.pair.rho.root.re - &run.turning_bound) > BOUND_SLACK;
        report["bounds"] = json!({ "s_one_within_sigma1": !above_sigma_one, "rho_within_E": !above_e });
        if above_sigma_one || above_e {
            code = EXIT_FALSIFIED;
        }
        let (sr, si) = run.pair.s_one.root.to_decimal_pair(20);
        let (rr, ri) = run.pair.rho.root.to_decimal_pair(20);
        let _ = writeln!(text, "t = {}  score {}", format_decimal(&run.best().t_float, 30), format_decimal(&run.best().score, 6));
        let _ = writeln!(text, "s_one = {sr} + {si}i");
        let _ = writeln!(text, "rho = {rr} + {ri}i");
    }
    let output = if a.format == Format::Text { text } else { render(&report) };
    Ok(Outcome::with_code(output, code))
}

fn verify(a: &SearchArgs, h: &str, ctx: &PrecisionContext) -> Result<Outcome> {
    let height = parse_decimal_bits(h, crate::numerics::digits_to_bits(a.digits + 30))?;
    let v = verify_height(&height, VERIFY_HALF_WIDTH, VERIFY_STEP, a.prime_limit, ctx)?;
    let best = v.best().ok_or_else(|| Error::NoRoot(format!("no root of ζ(s) = 1 reached from seeds near t = {h}")))?;
    let sigma_one = solve_sigma_one(15)?.value;
    let falsified = v.roots.iter().any(|r| Float::with_val(64, &r.root.re - &sigma_one) > BOUND_SLACK);
    let output = if a.format == Format::Text {
        let (re, im) = best.root.to_decimal_pair(20);
        format!("s_one = {re} + {im}i\n")
    } else {
        render(&json!({
            "command": "search-height",
            "flags": search_flags(a),
            "height": h,
            "scan": { "half_width": VERIFY_HALF_WIDTH.to_string(), "step": VERIFY_STEP.to_string() },
            "s_one": best.to_json(),
            "roots": v.roots.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "bounds": { "s_one_within_sigma1": !falsified },
        }))
    };
    Ok(Outcome::with_code(output, if falsified { EXIT_FALSIFIED } else { super::EXIT_OK }))
}

/// Points where σ turns back along a traced Im ζ = 0 curve; there the
/// tangent is vertical, so Re ζ′ = 0.
fn turning_seeds(segments: &[CurveSegment]) -> Vec<BigComplex> {
    let mut out = Vec::new();
    for seg in segments.iter().filter(|s| s.component == Component::Im) {
        for w in seg.points.windows(3) {
            let d1 = Float::with_val(64, &w[1].re - &w[0].re);
            let d2 = Float::with_val(64, &w[2].re - &w[1].re);
            if Float::with_val(64, &d1 * &d2) < 0 {
                out.push(w[1].clone());
            }
        }
    }
    out
}

fn turning_points(segments: &[CurveSegment], f: &ZetaFn, window: &Window, ctx: &PrecisionContext) -> Vec<TurningPoint> {
    let [s0, s1, t0, t1] = window.to_f64();
    let tol = window.grid_step.to_f64() / 10.0;
    let mut found: Vec<TurningPoint> = Vec::new();
    for seed in turning_seeds(segments) {
        let Ok(tp) = find_turning_point(&seed, f, ctx) else { continue };
        let (x, y) = tp.location.to_f64_pair();
        let inside = (s0..=s1).contains(&x) && (t0..=t1).contains(&y);
        let known = found.iter().any(|q| {
            let (a, b) = q.location.to_f64_pair();
            (a - x).abs() < tol && (b - y).abs() < tol
        });
        if inside && !known {
            found.push(tp);
        }
    }
    found.sort_by(|a, b| a.location.im.partial_cmp(&b.location.im).expect("finite"));
    found
}

pub fn run_trace(a: &TraceArgs) -> Result<Outcome> {
    if !matches!(a.format, Format::Csv | Format::Svg) {
        return Err(usage(format!("trace writes csv or svg, not {}", a.format.as_str())));
    }
    let ctx = PrecisionContext::new(a.digits)?;
    let window = Window::parse(&a.window, &a.grid_step, ctx.bits())?;
    let f = ZetaFn { heavy: a.heavy };
    let mut segments = trace_real_curves(&window, &f, &ctx)?;
    if a.overlay_re_zero {
        segments.extend(trace_level_curves(&window, &f, Component::Re, &ctx)?);
    }
    let tps = if a.turning_points { turning_points(&segments, &f, &window, &ctx) } else { Vec::new() };
    let mut code = super::EXIT_OK;
    if !tps.is_empty() {
        let e = solve_e(20)?.value;
        if verify_turning_bound(&tps, &e, BOUND_SLACK).falsified() {
            code = EXIT_FALSIFIED;
        }
    }
    let output = match a.format {
        Format::Svg => {
            let markers: Vec<BigComplex> = tps.iter().map(|t| t.location.clone()).collect();
            render_svg(&window, &segments, &markers)
        }
        _ => {
            let mut s = format!(
                "# trace window={} grid_step={} digits={} heavy={} overlay_re_zero={} turning_points={}\n",
                a.window, a.grid_step, a.digits, a.heavy, a.overlay_re_zero, a.turning_points
            );
            for seg in &segments {
                s.push_str(&segment_csv(seg, 15));
            }
            if a.turning_points {
                s.push_str("# turning_points\nsigma,t\n");
                for tp in &tps {
                    let (re, im) = tp.location.to_decimal_pair(20);
                    let _ = writeln!(s, "{re},{im}");
                }
            }
            s
        }
    };
    Ok(Outcome::with_code(output, code))
}

/// One entry of a check report.
fn entry(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "name": name, "pass": pass, "detail": detail })
}

fn suite_a3() -> Result<Vec<Value>> {
    let ctx = PrecisionContext::new(20)?;
    let v = check_inequality_a3(100, 100, &ctx)?;
    Ok(vec![entry("a3", v.is_empty(), json!({ "grid": "100x100", "violations": v.len().to_string() }))])
}

fn suite_u_bound() -> Result<Vec<Value>> {
    let ctx = PrecisionContext::new(20)?;
    let e = solve_e(35)?;
    let p = crate::numerics::digits_to_bits(60);
    let half = Float::with_val(p, period(p) / 2u32);
    let at_half = solve_u_of_t(&half, 35)?;
    let gap = Float::with_val(p, &at_half.value - &e.value).abs();
    let mut out = vec![entry(
        "u_at_pi_over_log2_equals_E",
        gap < 1e-30,
        json!({ "u": at_half.to_decimal(), "E": e.to_decimal(), "difference": format_decimal(&gap, 3) }),
    )];
    let ceiling = Float::with_val(p, &e.value + BOUND_SLACK);
    let mut samples = serde_json::Map::new();
    let mut ok = true;
    for t in ["0.5", "1", "2", "3"] {
        let u = solve_u_of_t(&parse_decimal_bits(t, p)?, 15)?;
        ok &= u.value <= ceiling;
        samples.insert(t.to_string(), json!(u.to_decimal()));
    }
    out.push(entry("u_below_E", ok, Value::Object(samples)));
    let v = check_u_minimum(50, 50, &ctx)?;
    out.push(entry("u_minimum_at_pi_over_log2", v.is_empty(), json!({ "grid": "50x50", "violations": v.len().to_string() })));
    let v = check_h_decreasing(100, &ctx)?;
    out.push(entry("h_decreasing", v.is_empty(), json!({ "points": "100", "violations": v.len().to_string() })));
    Ok(out)
}

/// (2^s-1)/(2^s+1)·ζ(s) with an error radius.
fn half_closed_form(s: &BigComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let p = ctx.bits();
    let z = zeta(s, &EvalMethod::euler_maclaurin(), ctx)?;
    let two_s = s.scale(&Float::with_val(p, rug::float::Constant::Log2)).exp();
    let one = BigComplex::one(p);
    let q = (&two_s - &one).div(&(&two_s + &one));
    let v = &q * &z.value;
    let r = Float::with_val(64, radius_of(&q.abs()) * &z.error_radius) + Float::with_val(64, ctx.ulp() * 64u32) * radius_of(&v.abs());
    Ok(EvalResult::new(v, r))
}

/// ζ(2s)/ζ(s) with an error radius.
fn liouville_closed_form(s: &BigComplex, ctx: &PrecisionContext) -> Result<EvalResult> {
    let p = ctx.bits();
    let z1 = zeta(s, &EvalMethod::euler_maclaurin(), ctx)?;
    let z2 = zeta(&s.scale(&Float::with_val(p, 2)), &EvalMethod::euler_maclaurin(), ctx)?;
    let v = z2.value.div(&z1.value);
    let den = Float::with_val(64, radius_of(&z1.value.abs()) - &z1.error_radius);
    let num = Float::with_val(64, &z2.error_radius + Float::with_val(64, radius_of(&v.abs()) * &z1.error_radius));
    let r = num / den + Float::with_val(64, ctx.ulp() * 64u32) * radius_of(&v.abs());
    Ok(EvalResult::new(v, r))
}

const ORACLE_TERMS: u64 = 100_000;

fn suite_series() -> Result<Vec<Value>> {
    let ctx = PrecisionContext::new(30)?;
    let p = ctx.bits();
    let points = [("2", "0"), ("3", "0"), ("2.5", "7")];
    let mut out = Vec::new();
    for (name, series, closed) in [
        ("series_half", limit_series_half as fn(&BigComplex, u64, &PrecisionContext) -> Result<EvalResult>, half_closed_form as fn(&BigComplex, &PrecisionContext) -> Result<EvalResult>),
        ("series_liouville", limit_series_liouville, liouville_closed_form),
    ] {
        let mut ok = true;
        let mut rows = Vec::new();
        for (re, im) in points {
            let s = BigComplex::new(parse_decimal_bits(re, p)?, parse_decimal_bits(im, p)?);
            let a = series(&s, ORACLE_TERMS, &ctx)?;
            let b = closed(&s, &ctx)?;
            let diff = Float::with_val(64, radius_of(&(&a.value - &b.value).abs()));
            let bound = Float::with_val(64, &a.error_radius + &b.error_radius);
            ok &= diff <= bound;
            rows.push(json!({ "s": format!("{re}+{im}i"), "difference": format_decimal(&diff, 3), "bound": format_decimal(&bound, 3) }));
        }
        out.push(entry(name, ok, json!({ "terms": ORACLE_TERMS.to_string(), "points": rows })));
    }
    Ok(out)
}

pub fn run_check(a: &CheckArgs) -> Result<Outcome> {
    json_or_text(a.format)?;
    let mut checks = Vec::new();
    if matches!(a.suite, Suite::A3 | Suite::All) {
        checks.extend(suite_a3()?);
    }
    if matches!(a.suite, Suite::UBound | Suite::All) {
        checks.extend(suite_u_bound()?);
    }
    if matches!(a.suite, Suite::SeriesOracles | Suite::All) {
        checks.extend(suite_series()?);
    }
    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    let suite = match a.suite {
        Suite::A3 => "a3",
        Suite::UBound => "u-bound",
        Suite::SeriesOracles => "series-oracles",
        Suite::All => "all",
    };
    let output = if a.format == Format::Text {
        let mut s = String::new();
        for c in &checks {
            let _ = writeln!(s, "{}: {}", c["name"].as_str().unwrap_or("?"), if c["pass"] == json!(true) { "pass" } else { "FAIL" });
        }
        s
    } else {
        render(&json!({ "command": "check", "flags": { "suite": suite }, "checks": checks, "pass": pass }))
    };
    Ok(Outcome::with_code(output, if pass { super::EXIT_OK } else { EXIT_FALSIFIED }))
}
