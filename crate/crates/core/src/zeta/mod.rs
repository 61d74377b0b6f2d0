//! Evaluation of ζ(s), its derivatives, log ζ, ζ′/ζ, the prime zeta
//! function and two Dirichlet series with closed forms, each paired with a
//! bound on |computed − true|.

mod bernoulli;
mod dirichlet_series;
mod euler_maclaurin;
mod euler_product;
mod hurwitz;
mod jet;
mod limit_series;
mod log;
mod prime_zeta;

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{radius_of, BigComplex, BigFloat, PrecisionContext};

pub use bernoulli::even_bernoulli;
pub use dirichlet_series::integral_tail;
pub use euler_maclaurin::{default_truncation, phase_bits};
pub use euler_product::{log_tail_bounds, prime_tail_bounds};
pub use hurwitz::hurwitz_zeta;
pub use jet::Jet;
pub use limit_series::{limit_series_half, limit_series_liouville};
pub use log::{log_zeta, zeta_log_derivative, zeta_log_derivative_prime_sum, zeta_log_derivative_via, LogDerivativePath};
pub use prime_zeta::{
    log_zeta_real_multiples, prime_zeta, prime_zeta_real, prime_zeta_real_at, prime_zeta_real_multiples, prime_zeta_tail_bound,
};

/// Heights up to which Euler–Maclaurin is the default evaluator.
pub const EULER_MACLAURIN_MAX_HEIGHT: f64 = 1e5;
/// Smallest real part at which the truncated Euler product is accepted.
pub const EULER_PRODUCT_MIN_SIGMA: f64 = 1.5;
pub const DEFAULT_PRIME_LIMIT: u64 = 1_000_000;

/// A value together with a bound on its distance from the true value.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: BigComplex,
    pub error_radius: BigFloat,
}

impl EvalResult {
    pub fn new(value: BigComplex, error_radius: BigFloat) -> Self {
        Self { value, error_radius }
    }

    /// Whether the true value may lie within `tol` of `other`, i.e. the
    /// distance is at most the radius plus `tol`.
    pub fn contains(&self, other: &BigComplex, tol: f64) -> bool {
        let d = radius_of(&(&self.value - other).abs());
        d <= Float::with_val(64, &self.error_radius + tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    EulerMaclaurin,
    DirichletSeries,
    EulerProduct,
    PrimeZetaMobius,
}

/// How ζ is evaluated. A zero `truncation` or `correction_terms` selects the
/// automatic choice for the argument and precision.
///
/// `truncation` is N (terms) for the series methods and the prime limit for
/// the Euler product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalMethod {
    pub kind: MethodKind,
    pub truncation: u64,
    pub correction_terms: u32,
}

impl EvalMethod {
    pub fn euler_maclaurin() -> Self {
        Self { kind: MethodKind::EulerMaclaurin, truncation: 0, correction_terms: 0 }
    }

    pub fn dirichlet_series() -> Self {
        Self { kind: MethodKind::DirichletSeries, truncation: 0, correction_terms: 0 }
    }

    pub fn euler_product(prime_limit: u64) -> Self {
        Self { kind: MethodKind::EulerProduct, truncation: prime_limit, correction_terms: 0 }
    }

    pub fn with_truncation(mut self, n: u64) -> Self {
        self.truncation = n;
        self
    }

    pub fn with_correction_terms(mut self, k: u32) -> Self {
        self.correction_terms = k;
        self
    }

    /// Euler–Maclaurin up to height 10^5, the truncated Euler product above.
    pub fn default_for(s: &BigComplex) -> Self {
        if s.im.to_f64().abs() <= EULER_MACLAURIN_MAX_HEIGHT {
            Self::euler_maclaurin()
        } else {
            Self::euler_product(DEFAULT_PRIME_LIMIT)
        }
    }
}

/// ζ, ζ′, ζ″ at one point with one radius per order.
#[derive(Debug, Clone)]
pub struct JetEval {
    pub jet: Jet,
    pub radii: [BigFloat; 3],
}

impl JetEval {
    pub fn result(&self, order: usize) -> EvalResult {
        EvalResult::new(self.jet.order(order).clone(), self.radii[order].clone())
    }
}

fn check_pole(s: &BigComplex, ctx: &PrecisionContext) -> Result<()> {
    let one = Float::with_val(s.prec(), 1);
    let d = BigComplex::new(Float::with_val(s.prec(), &s.re - &one), s.im.clone()).abs();
    if d < ctx.target_eps() {
        return Err(Error::PoleProximity(format!("1e-{}", ctx.digits())));
    }
    Ok(())
}

/// ζ and its first two derivatives.
pub fn zeta_jet(s: &BigComplex, method: &EvalMethod, ctx: &PrecisionContext) -> Result<JetEval> {
    if !s.is_finite() {
        return Err(Error::Domain("non-finite argument".into()));
    }
    check_pole(s, ctx)?;
    let sigma = s.re.to_f64();
    match method.kind {
        MethodKind::EulerMaclaurin => {
            let n = if method.truncation == 0 {
                default_truncation(s.im.to_f64().abs(), ctx)
            } else {
                method.truncation
            };
            euler_maclaurin::jet(s, n, method.correction_terms, ctx)
        }
        MethodKind::DirichletSeries => {
            if sigma <= 1.0 {
                return Err(Error::Domain(format!("Dirichlet series needs Re s > 1, got {sigma}")));
            }
            let n = if method.truncation == 0 { dirichlet_series::default_terms(sigma, ctx) } else { method.truncation };
            dirichlet_series::jet(s, n, ctx)
        }
        MethodKind::EulerProduct => {
            if sigma < EULER_PRODUCT_MIN_SIGMA {
                return Err(Error::Domain(format!(
                    "Euler product needs Re s ≥ {EULER_PRODUCT_MIN_SIGMA}, got {sigma}"
                )));
            }
            let limit = if method.truncation == 0 { DEFAULT_PRIME_LIMIT } else { method.truncation };
            euler_product::jet(s, limit, ctx)
        }
        MethodKind::PrimeZetaMobius => {
            Err(Error::Domain("the prime-zeta Möbius series evaluates P(s), not ζ(s)".into()))
        }
    }
}

pub fn zeta(s: &BigComplex, method: &EvalMethod, ctx: &PrecisionContext) -> Result<EvalResult> {
    Ok(zeta_jet(s, method, ctx)?.result(0))
}

/// ζ′ (order 1) or ζ″ (order 2).
pub fn zeta_derivative(s: &BigComplex, order: u8, method: &EvalMethod, ctx: &PrecisionContext) -> Result<EvalResult> {
    if !(1..=2).contains(&order) {
        return Err(Error::InvalidParams(format!("derivative order {order} not in {{1, 2}}")));
    }
    Ok(zeta_jet(s, method, ctx)?.result(order as usize))
}

/// ζ at a real point with the default method.
pub fn zeta_real(sigma: &BigFloat, ctx: &PrecisionContext) -> Result<EvalResult> {
    let s = BigComplex::real(Float::with_val(ctx.bits(), sigma));
    zeta(&s, &EvalMethod::default_for(&s), ctx)
}

/// Radius of a/b given radii of a and b. Fails if b's disc contains zero.
pub(crate) fn quotient_radius(a: &BigComplex, ra: &Float, b: &BigComplex, rb: &Float) -> Option<Float> {
    let babs = radius_of(&b.abs());
    if babs <= *rb {
        return None;
    }
    let q = radius_of(&a.div(b).abs());
    let num = Float::with_val(64, ra + Float::with_val(64, &q * rb));
    let den = Float::with_val(64, &babs - rb);
    Some(num / den)
}
