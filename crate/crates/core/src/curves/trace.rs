//! Level curves Im f = 0 (or Re f = 0): marching squares on a grid, edge
//! crossings polished by Newton, a corrected midpoint between neighbours.

use std::collections::HashMap;
use std::fmt::Write;

use rug::Float;

use super::analytic::AnalyticFn;
use crate::error::{Error, Result};
use crate::numerics::{format_decimal, parse_decimal_bits, pow10_neg, BigComplex, BigFloat, PrecisionContext};

#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub sigma_min: BigFloat,
    pub sigma_max: BigFloat,
    pub t_min: BigFloat,
    pub t_max: BigFloat,
    pub grid_step: BigFloat,
}

impl Window {
    pub fn new(sigma_min: BigFloat, sigma_max: BigFloat, t_min: BigFloat, t_max: BigFloat, grid_step: BigFloat) -> Result<Self> {
        let w = Self { sigma_min, sigma_max, t_min, t_max, grid_step };
        w.validate()?;
        Ok(w)
    }

    pub fn from_f64(sigma: (f64, f64), t: (f64, f64), step: f64) -> Result<Self> {
        let f = |x: f64| Float::with_val(128, x);
        Self::new(f(sigma.0), f(sigma.1), f(t.0), f(t.1), f(step))
    }

    /// Parses "a,b,c,d" as σ_min, σ_max, t_min, t_max.
    pub fn parse(spec: &str, step: &str, bits: u32) -> Result<Self> {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(spec.to_string()));
        }
        let v: Vec<BigFloat> = parts.iter().map(|p| parse_decimal_bits(p, bits)).collect::<Result<_>>()?;
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), parse_decimal_bits(step, bits)?)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [&self.sigma_min, &self.sigma_max, &self.t_min, &self.t_max, &self.grid_step];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("window bounds must be finite".into()));
        }
        if self.sigma_min >= self.sigma_max || self.t_min >= self.t_max {
            return Err(Error::InvalidParams("window needs σ_min < σ_max and t_min < t_max".into()));
        }
        let width = Float::with_val(self.sigma_min.prec(), &self.sigma_max - &self.sigma_min);
        if self.grid_step <= 0 || self.grid_step > width / 10u32 {
            return Err(Error::InvalidParams("grid step must lie in (0, (σ_max - σ_min)/10]".into()));
        }
        Ok(())
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.sigma_min.to_f64(), self.sigma_max.to_f64(), self.t_min.to_f64(), self.t_max.to_f64()]
    }

    /// The window reflected in the real axis.
    pub fn conjugate(&self) -> Self {
        Self {
            t_min: Float::with_val(self.t_max.prec(), -&self.t_max),
            t_max: Float::with_val(self.t_min.prec(), -&self.t_min),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    I1,
    I2,
    Unknown,
}

impl SegmentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SegmentKind::I1 => "I1",
            SegmentKind::I2 => "I2",
            SegmentKind::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    Im,
    Re,
}

#[derive(Debug, Clone)]
pub struct CurveSegment {
    pub points: Vec<BigComplex>,
    pub kind: SegmentKind,
    pub window: Window,
    pub closed: bool,
    pub component: Component,
}

fn component(v: &BigComplex, c: Component) -> &BigFloat {
    match c {
        Component::Im => &v.im,
        Component::Re => &v.re,
    }
}

/// Derivative of the component along σ (dir = 0) or t (dir = 1).
fn directional(d1: &BigComplex, c: Component, dir: usize) -> Float {
    let p = d1.prec();
    match (c, dir) {
        (Component::Im, 0) => d1.im.clone(),
        (Component::Im, _) => d1.re.clone(),
        (Component::Re, 0) => d1.re.clone(),
        (Component::Re, _) => Float::with_val(p, -&d1.im),
    }
}

struct Grid<'a> {
    w: &'a Window,
    nx: usize,
    ny: usize,
    hx: BigFloat,
    hy: BigFloat,
    prec: u32,
}

impl Grid<'_> {
    fn sigma(&self, i: usize) -> BigFloat {
        if i == self.nx {
            return Float::with_val(self.prec, &self.w.sigma_max);
        }
        Float::with_val(self.prec, &self.w.sigma_min + Float::with_val(self.prec, &self.hx * i as u64))
    }

    fn t(&self, j: usize) -> BigFloat {
        if j == self.ny {
            return Float::with_val(self.prec, &self.w.t_max);
        }
        Float::with_val(self.prec, &self.w.t_min + Float::with_val(self.prec, &self.hy * j as u64))
    }

    fn node(&self, i: usize, j: usize) -> BigComplex {
        BigComplex::new(self.sigma(i), self.t(j))
    }
}

/// Horizontal edge (i,j)-(i+1,j) or vertical edge (i,j)-(i,j+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

struct Tracer<'a> {
    f: &'a dyn AnalyticFn,
    ctx: PrecisionContext,
    comp: Component,
    tol: Float,
}

impl Tracer<'_> {
    fn eval(&self, s: &BigComplex) -> Result<(Float, BigComplex)> {
        let [v, d1, _] = self.f.jet(s, &self.ctx)?;
        Ok((component(&v, self.comp).clone(), d1))
    }

    /// Zero of the component on the segment a + x (b - a), x ∈ [0, 1], given
    /// opposite signs ga, gb (zero counts as positive).
    fn on_edge(&self, a: &BigComplex, b: &BigComplex, ga: f64, gb: f64, dir: usize) -> Result<BigComplex> {
        let p = a.prec();
        let len = if dir == 0 { Float::with_val(p, &b.re - &a.re) } else { Float::with_val(p, &b.im - &a.im) };
        let at = |x: &Float| -> BigComplex {
            let d = Float::with_val(p, &len * x);
            if dir == 0 {
                BigComplex::new(Float::with_val(p, &a.re + &d), a.im.clone())
            } else {
                BigComplex::new(a.re.clone(), Float::with_val(p, &a.im + &d))
            }
        };
        if ga == 0.0 {
            return Ok(a.clone());
        }
        let (mut lo, mut hi) = (Float::with_val(p, 0), Float::with_val(p, 1));
        let lo_sign = ga > 0.0;
        let mut x = Float::with_val(p, ga / (ga - gb));
        for _ in 0..60 {
            let s = at(&x);
            let (g, d1) = self.eval(&s)?;
            if g.is_zero() || Float::with_val(64, g.abs_ref()) < self.tol {
                return Ok(s);
            }
            if (g > 0) == lo_sign {
                lo = x.clone();
            } else {
                hi = x.clone();
            }
            let slope = Float::with_val(p, directional(&d1, self.comp, dir) * &len);
            let mut next = if slope.is_zero() { Float::with_val(p, &lo + &hi) / 2u32 } else { Float::with_val(p, &x - Float::with_val(p, &g / &slope)) };
            if next <= lo || next >= hi {
                next = Float::with_val(p, &lo + &hi) / 2u32;
            }
            x = next;
        }
        Ok(at(&x))
    }

    /// Newton along the gradient of the component from s.
    fn correct(&self, s: &BigComplex) -> Result<BigComplex> {
        let p = s.prec();
        let mut s = s.clone();
        for _ in 0..20 {
            let (g, d1) = self.eval(&s)?;
            if Float::with_val(64, g.abs_ref()) < self.tol {
                return Ok(s);
            }
            let gx = directional(&d1, self.comp, 0);
            let gy = directional(&d1, self.comp, 1);
            let n2 = Float::with_val(p, gx.square_ref()) + Float::with_val(p, gy.square_ref());
            if n2.is_zero() {
                break;
            }
            let k = Float::with_val(p, &g / &n2);
            s = BigComplex::new(Float::with_val(p, &s.re - Float::with_val(p, &k * &gx)), Float::with_val(p, &s.im - Float::with_val(p, &k * &gy)));
        }
        Err(Error::NoRoot("corrector did not reach the curve".into()))
    }
}

/// Traces Im f = 0 in the window.
pub fn trace_real_curves(window: &Window, f: &dyn AnalyticFn, ctx: &PrecisionContext) -> Result<Vec<CurveSegment>> {
    trace_level_curves(window, f, Component::Im, ctx)
}

pub fn trace_level_curves(window: &Window, f: &dyn AnalyticFn, comp: Component, ctx: &PrecisionContext) -> Result<Vec<CurveSegment>> {
    window.validate()?;
    let hmax = window.t_min.to_f64().abs().max(window.t_max.to_f64().abs());
    let work = ctx.raised((hmax + 1.0).log10().ceil() as u32);
    let prec = work.bits();
    let sw = Float::with_val(prec, &window.sigma_max - &window.sigma_min);
    let tw = Float::with_val(prec, &window.t_max - &window.t_min);
    let nx = Float::with_val(prec, &sw / &window.grid_step).ceil().to_f64() as usize;
    let ny = Float::with_val(prec, &tw / &window.grid_step).ceil().to_f64() as usize;
    let grid = Grid { w: window, nx, ny, hx: sw / nx as u64, hy: tw / ny as u64, prec };
    let tracer = Tracer { f, ctx: work, comp, tol: pow10_neg(ctx.digits() / 2) };

    // node values, zero treated as positive
    let mut vals = vec![vec![0f64; ny + 1]; nx + 1];
    for (i, col) in vals.iter_mut().enumerate() {
        for (j, v) in col.iter_mut().enumerate() {
            *v = tracer.eval(&grid.node(i, j))?.0.to_f64();
        }
    }
    let pos = |i: usize, j: usize| vals[i][j] >= 0.0;

    let mut crossings: HashMap<Edge, BigComplex> = HashMap::new();
    let mut crossing = |e: Edge| -> Result<()> {
        if crossings.contains_key(&e) {
            return Ok(());
        }
        let ((i0, j0), (i1, j1), dir) = match e {
            Edge::H(i, j) => ((i, j), (i + 1, j), 0),
            Edge::V(i, j) => ((i, j), (i, j + 1), 1),
        };
        let pt = tracer.on_edge(&grid.node(i0, j0), &grid.node(i1, j1), vals[i0][j0], vals[i1][j1], dir)?;
        crossings.insert(e, pt);
        Ok(())
    };

    let mut links: Vec<(Edge, Edge)> = Vec::new();
    for i in 0..nx {
        for j in 0..ny {
            let corner = [pos(i, j), pos(i + 1, j), pos(i + 1, j + 1), pos(i, j + 1)];
            let edges = [Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j)];
            // edge k joins corners k and k+1
            let cut: Vec<usize> = (0..4).filter(|&k| corner[k] != corner[(k + 1) % 4]).collect();
            match cut.len() {
                0 => {}
                2 => links.push((edges[cut[0]], edges[cut[1]])),
                _ => {
                    let c = BigComplex::new(
                        Float::with_val(prec, grid.sigma(i) + grid.sigma(i + 1)) / 2u32,
                        Float::with_val(prec, grid.t(j) + grid.t(j + 1)) / 2u32,
                    );
                    let centre = tracer.eval(&c)?.0 >= 0;
                    // isolate the corners whose sign differs from the centre
                    for k in 0..4 {
                        if corner[k] != centre {
                            links.push((edges[(k + 3) % 4], edges[k]));
                        }
                    }
                }
            }
            for &k in &cut {
                crossing(edges[k])?;
            }
        }
    }

    // chain links into polylines
    let mut adj: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in links.iter().enumerate() {
        adj.entry(*a).or_default().push(k);
        adj.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; links.len()];
    let mut starts: Vec<Edge> = adj.iter().filter(|(_, v)| v.len() == 1).map(|(e, _)| *e).collect();
    starts.sort();
    let mut all_edges: Vec<Edge> = adj.keys().copied().collect();
    all_edges.sort();
    let mut chains: Vec<(Vec<Edge>, bool)> = Vec::new();
    for (start, open) in starts.into_iter().map(|e| (e, true)).chain(all_edges.into_iter().map(|e| (e, false))) {
        let Some(&first) = adj[&start].iter().find(|&&k| !used[k]) else { continue };
        let mut chain = vec![start];
        let mut cur = start;
        let mut link = Some(first);
        while let Some(k) = link {
            used[k] = true;
            let (a, b) = links[k];
            cur = if a == cur { b } else { a };
            chain.push(cur);
            link = adj[&cur].iter().copied().find(|&k2| !used[k2]);
        }
        let closed = !open && chain.first() == chain.last();
        chains.push((chain, closed));
    }

    let mut out = Vec::new();
    for (chain, closed) in chains {
        let mut points: Vec<BigComplex> = Vec::with_capacity(2 * chain.len());
        for w in chain.windows(2) {
            let a = &crossings[&w[0]];
            let b = &crossings[&w[1]];
            if points.is_empty() {
                points.push(a.clone());
            }
            let mid = BigComplex::new(Float::with_val(prec, &a.re + &b.re) / 2u32, Float::with_val(prec, &a.im + &b.im) / 2u32);
            if let Ok(m) = tracer.correct(&mid) {
                points.push(m);
            }
            points.push(b.clone());
        }
        let mut seg = CurveSegment { points, kind: SegmentKind::Unknown, window: window.clone(), closed, component: comp };
        seg.kind = classify_segment(&seg);
        out.push(seg);
    }
    Ok(out)
}

/// I2 when both ends lie on the left edge, I1 when the ends lie on the left
/// and right edges, unknown otherwise (including closed loops).
pub fn classify_segment(seg: &CurveSegment) -> SegmentKind {
    if seg.closed || seg.points.len() < 2 {
        return SegmentKind::Unknown;
    }
    let w = &seg.window;
    let eps = Float::with_val(64, &w.grid_step) * 1e-6;
    let near = |x: &BigFloat, y: &BigFloat| Float::with_val(x.prec(), x - y).abs() < eps;
    let left = |s: &BigComplex| near(&s.re, &w.sigma_min);
    let right = |s: &BigComplex| near(&s.re, &w.sigma_max);
    let (a, b) = (&seg.points[0], seg.points.last().unwrap());
    if left(a) && left(b) {
        SegmentKind::I2
    } else if (left(a) && right(b)) || (right(a) && left(b)) {
        SegmentKind::I1
    } else {
        SegmentKind::Unknown
    }
}

/// sigma,t rows under a comment header naming the kind and window.
pub fn segment_csv(seg: &CurveSegment, digits: usize) -> String {
    let [a, b, c, d] = seg.window.to_f64();
    let mut s = format!("# kind={} closed={} window={a},{b},{c},{d}\nsigma,t\n", seg.kind.as_str(), seg.closed);
    for p in &seg.points {
        let _ = writeln!(s, "{},{}", format_decimal(&p.re, digits), format_decimal(&p.im, digits));
    }
    s
}

/// One path per segment: solid for Im f = 0, dashed for Re f = 0, circles at
/// the given marker points, dotted vertical lines at σ = 0 and σ = 1 when
/// they fall inside the window.
pub fn render_svg(window: &Window, segments: &[CurveSegment], markers: &[BigComplex]) -> String {
    let [s0, s1, t0, t1] = window.to_f64();
    let (w, h) = (600.0, 600.0);
    let x = |s: f64| (s - s0) / (s1 - s0) * w;
    // t relative to the window start keeps precision at large heights
    let y = |p: &BigComplex| {
        let dt = Float::with_val(p.prec(), &p.im - &window.t_min).to_f64();
        h - dt / (t1 - t0) * h
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\" stroke=\"black\"/>\n"
    );
    for sref in [0.0, 1.0] {
        if sref >= s0 && sref <= s1 {
            let _ = writeln!(out, "<line x1=\"{0:.3}\" y1=\"0\" x2=\"{0:.3}\" y2=\"{h}\" stroke=\"gray\" stroke-dasharray=\"2,4\"/>", x(sref));
        }
    }
    for seg in segments {
        let d: Vec<String> = seg
            .points
            .iter()
            .enumerate()
            .map(|(k, p)| format!("{}{:.3},{:.3}", if k == 0 { "M" } else { "L" }, x(p.re.to_f64()), y(p)))
            .collect();
        let style = match seg.component {
            Component::Im => "stroke=\"black\"",
            Component::Re => "stroke=\"red\" stroke-dasharray=\"6,3\"",
        };
        let _ = writeln!(out, "<path d=\"{}{}\" fill=\"none\" {style} class=\"{}\"/>", d.join(" "), if seg.closed { " Z" } else { "" }, seg.kind.as_str());
    }
    for m in markers {
        let _ = writeln!(out, "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"blue\"/>", x(m.re.to_f64()), y(m));
    }
    out.push_str("</svg>\n");
    out
}
