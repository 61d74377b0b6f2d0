//! C interface. Functions return a `ZeStatus`; on failure the message is
//! kept per thread and read with `ze_last_error`. Strings handed out by this
//! library must be released with `ze_string_free`, handles with their own
//! free function.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rug::Float;
use zeta_extremal::cli::exit_code;
use zeta_extremal::constants::{solve_a, solve_e, solve_l_bound, solve_sigma_a, solve_sigma_one, CertifiedRoot};
use zeta_extremal::curves::{check_inequality_a3, winding_number, PolyFn, WindingMode};
use zeta_extremal::height_search::{paired_search, verify_height, LatticeParams};
use zeta_extremal::numerics::{digits_to_bits, format_decimal, parse_decimal_bits, BigComplex, PrecisionContext};
use zeta_extremal::zeta::{zeta, EvalMethod, DEFAULT_PRIME_LIMIT};
use zeta_extremal::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Precision = 3,
    Pipeline = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeConstant {
    SigmaOne = 0,
    TurningBound = 1,
    RealPartBound = 2,
}

/// Precision settings for evaluations.
pub struct ZeContext {
    ctx: PrecisionContext,
}

/// A certified real root with its enclosure.
pub struct ZeRoot {
    root: CertifiedRoot,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ZeStatus {
    match exit_code(e) {
        3 => ZeStatus::Precision,
        4 => ZeStatus::Pipeline,
        _ => ZeStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (ZeStatus, String)>) -> ZeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZeStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside zeta-extremal".into());
            ZeStatus::Panic
        }
    }
}

fn lib<T>(r: zeta_extremal::Result<T>) -> Result<T, (ZeStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (ZeStatus, String) {
    (ZeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (ZeStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ZeStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

unsafe fn write_out<T>(out: *mut T, v: T, what: &str) -> Result<(), (ZeStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = v;
    Ok(())
}

/// The message of the last failed call on this thread, or NULL. Free it
/// with `ze_string_free`.
#[no_mangle]
pub extern "C" fn ze_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ze_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ze_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// A context with `digits` decimal digits (at least 10).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ze_context_new(digits: u32, out: *mut *mut ZeContext) -> ZeStatus {
    guard(|| {
        let ctx = lib(PrecisionContext::new(digits))?;
        write_out(out, Box::into_raw(Box::new(ZeContext { ctx })), "out")
    })
}

/// # Safety
/// `ctx` must come from `ze_context_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ze_context_free(ctx: *mut ZeContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// ζ(s) for s = re + i·im given as decimal strings. The value parts and an
/// error radius come back as strings to free with `ze_string_free`.
///
/// # Safety
/// All pointers must be valid; the strings NUL terminated.
#[no_mangle]
pub unsafe extern "C" fn ze_zeta(
    ctx: *const ZeContext,
    re: *const c_char,
    im: *const c_char,
    out_re: *mut *mut c_char,
    out_im: *mut *mut c_char,
    out_radius: *mut *mut c_char,
) -> ZeStatus {
    guard(|| {
        let ctx = ctx.as_ref().ok_or_else(|| null("ctx"))?.ctx;
        let bits = ctx.bits() + 64;
        let s = BigComplex::new(lib(parse_decimal_bits(read_str(re, "re")?, bits))?, lib(parse_decimal_bits(read_str(im, "im")?, bits))?);
        let z = lib(zeta(&s, &EvalMethod::default_for(&s), &ctx))?;
        let (a, b) = z.value.to_decimal_pair(ctx.digits() as usize);
        if out_re.is_null() || out_im.is_null() || out_radius.is_null() {
            return Err(null("output pointer"));
        }
        *out_re = out_string(a);
        *out_im = out_string(b);
        *out_radius = out_string(format_decimal(&z.error_radius, 3));
        Ok(())
    })
}

/// Solves for σ(1), E or A to `digits` decimals.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ze_solve_constant(which: ZeConstant, digits: u32, out: *mut *mut ZeRoot) -> ZeStatus {
    guard(|| {
        if digits < 10 {
            return Err((ZeStatus::InvalidArgument, format!("digits = {digits}, need at least 10")));
        }
        let root = lib(match which {
            ZeConstant::SigmaOne => solve_sigma_one(digits),
            ZeConstant::TurningBound => solve_e(digits),
            ZeConstant::RealPartBound => solve_a(digits),
        })?;
        write_out(out, Box::into_raw(Box::new(ZeRoot { root })), "out")
    })
}

/// σ(a) for a decimal string a > 0, a ≠ 1.
///
/// # Safety
/// `a` must be a NUL terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ze_sigma_a(a: *const c_char, digits: u32, out: *mut *mut ZeRoot) -> ZeStatus {
    guard(|| {
        let level = lib(parse_decimal_bits(read_str(a, "a")?, digits_to_bits(digits + 20)))?;
        let root = lib(solve_sigma_a(&level, digits))?;
        write_out(out, Box::into_raw(Box::new(ZeRoot { root })), "out")
    })
}

/// The L-function bound for modulus q ≥ 3 and level a ∈ (0, 1].
///
/// # Safety
/// `a` must be a NUL terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ze_l_bound(q: u64, a: *const c_char, digits: u32, out: *mut *mut ZeRoot) -> ZeStatus {
    guard(|| {
        let level = lib(parse_decimal_bits(read_str(a, "a")?, digits_to_bits(digits + 20)))?;
        let root = lib(solve_l_bound(q, &level, digits))?;
        write_out(out, Box::into_raw(Box::new(ZeRoot { root })), "out")
    })
}

/// The root as a decimal string.
///
/// # Safety
/// `root` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn ze_root_value(root: *const ZeRoot) -> *mut c_char {
    match root.as_ref() {
        Some(r) => out_string(r.root.to_decimal()),
        None => ptr::null_mut(),
    }
}

/// Lower and upper ends of the certified enclosure.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ze_root_bracket(root: *const ZeRoot, lo: *mut *mut c_char, hi: *mut *mut c_char) -> ZeStatus {
    guard(|| {
        let r = &root.as_ref().ok_or_else(|| null("root"))?.root;
        if lo.is_null() || hi.is_null() {
            return Err(null("output pointer"));
        }
        let sig = r.digits as usize + 3;
        *lo = out_string(format_decimal(&r.bracket.0, sig));
        *hi = out_string(format_decimal(&r.bracket.1, sig));
        Ok(())
    })
}

/// # Safety
/// `root` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ze_root_free(root: *mut ZeRoot) {
    if !root.is_null() {
        drop(Box::from_raw(root));
    }
}

/// Runs the lattice search with weights base^(40-j) and refines the pair
/// of roots; the report is JSON.
///
/// # Safety
/// `weights_base` must be a NUL terminated string and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ze_search_height(
    n: usize,
    nu: u32,
    r: u32,
    weights_base: *const c_char,
    digits: u32,
    out_json: *mut *mut c_char,
) -> ZeStatus {
    guard(|| {
        let params = lib(LatticeParams::with_weights_base(n, nu, r, read_str(weights_base, "weights_base")?))?;
        lib(params.validate())?;
        let ctx = lib(PrecisionContext::new(digits))?;
        let run = lib(paired_search(&params, DEFAULT_PRIME_LIMIT, &ctx))?;
        write_out(out_json, out_string(run.to_json(&params).to_string()), "out_json")
    })
}

/// Looks for a root of ζ(s) = 1 with Im s within 3 of `height`; the
/// report is JSON with the roots found, largest real part first.
///
/// # Safety
/// `height` must be a NUL terminated string and `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn ze_verify_height(height: *const c_char, digits: u32, out_json: *mut *mut c_char) -> ZeStatus {
    guard(|| {
        let h = lib(parse_decimal_bits(read_str(height, "height")?, digits_to_bits(digits + 30)))?;
        let ctx = lib(PrecisionContext::new(digits))?;
        let v = lib(verify_height(&h, 3.0, 0.25, DEFAULT_PRIME_LIMIT, &ctx))?;
        let roots: Vec<_> = v.roots.iter().map(|r| r.to_json()).collect();
        write_out(out_json, out_string(serde_json::Value::from(roots).to_string()), "out_json")
    })
}

/// Number of grid points violating the (x, φ) inequality.
///
/// # Safety
/// `out_violations` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ze_check_a3(grid_x: u32, grid_phi: u32, out_violations: *mut usize) -> ZeStatus {
    guard(|| {
        let ctx = lib(PrecisionContext::new(20))?;
        let v = lib(check_inequality_a3(grid_x, grid_phi, &ctx))?;
        write_out(out_violations, v.len(), "out_violations")
    })
}

/// Winding number of Σ c_k z^k around the circle |z - c| = radius. With
/// `turning` set, winds Im f + i·Re f′, whose zeros are the turning points.
///
/// # Safety
/// `coeffs` must point to `len` doubles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn ze_winding_number(
    coeffs: *const f64,
    len: usize,
    center_re: f64,
    center_im: f64,
    radius: f64,
    turning: bool,
    out: *mut i64,
) -> ZeStatus {
    guard(|| {
        if coeffs.is_null() || len == 0 {
            return Err((ZeStatus::InvalidArgument, "empty coefficient list".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err((ZeStatus::InvalidArgument, format!("radius {radius} must be positive")));
        }
        let f = PolyFn(std::slice::from_raw_parts(coeffs, len).to_vec());
        let ctx = lib(PrecisionContext::new(20))?;
        let c = BigComplex::with_val(ctx.bits(), center_re, center_im);
        let mode = if turning { WindingMode::TurningIndicator } else { WindingMode::Direct };
        let w = lib(winding_number(&c, &Float::with_val(ctx.bits(), radius), &f, mode, &ctx))?;
        write_out(out, w, "out")
    })
}
