//! Turning points of ζ: the comparison functions f, g, U, H and u(t), the
//! tracing of real curves Im ζ = 0, Newton for turning points and winding
//! numbers.

mod analytic;
mod functions;
mod trace;
mod turning;

pub use analytic::{AnalyticFn, LimitFn, PolyFn, ZetaFn, DEFAULT_MIN_SIGMA, HEAVY_MAX_HEIGHT, HEAVY_MIN_SIGMA};
pub use functions::{
    a3_lhs, a3_rhs, check_h_decreasing, check_inequality_a3, check_u_minimum, f_g_eval, fg_series_tail, h_eval, h_eval_with_radius, period, solve_u_of_t, u_eval,
    A3Violation, FgMode, UMinusH,
};
pub use trace::{classify_segment, render_svg, segment_csv, trace_level_curves, trace_real_curves, Component, CurveSegment, SegmentKind, Window};
pub use turning::{
    certify_turning_point, find_turning_point, verify_turning_bound, winding_number, winding_number_sampled, TurningBoundEntry, TurningBoundReport,
    TurningPoint, WindingCertificate, WindingMode,
};
