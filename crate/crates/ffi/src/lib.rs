//! C ABI over the nullray library: Bessel functions, eigenmodes, the V
//! transform, grid export and the check harness.
//!
//! Every function returns an [`NrStatus`]; on failure the message is kept in
//! thread-local storage and read with [`nr_last_error_message`]. Handles are
//! opaque and released with their `_free` function.

use nullray::diffops::Helicity;
use nullray::eigenmodes::{eval_u, eval_w, u_field, WaveMode};
use nullray::field::{Point3, ScalarField};
use nullray::grid::{emit_grid, Plane, Quantity};
use nullray::harness::{run_suite, CheckReport, Profile, SuiteConfig};
use nullray::raytransforms::{apply_v_at, QuadratureSpec};
use nullray::specfun::{bessel_j, BesselOrder};
use nullray::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    NrOk = 0,
    NrNullPointer = 1,
    NrInvalidArgument = 2,
    NrUnsupportedOrder = 3,
    NrDomainError = 4,
    NrAxisSingularity = 5,
    NrQuadratureFailure = 6,
    NrConfigError = 7,
    NrIoError = 8,
    NrPanic = 9,
}

/// A wave mode u_{s,k}.
pub struct NrMode {
    mode: WaveMode,
    field: ScalarField,
}

/// A finished check report with its JSON rendering.
pub struct NrReport {
    report: CheckReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> NrStatus {
    match e {
        Error::UnsupportedOrder(_) => NrStatus::NrUnsupportedOrder,
        Error::DomainError(_) => NrStatus::NrDomainError,
        Error::AxisSingularity { .. } => NrStatus::NrAxisSingularity,
        Error::QuadratureFailure { .. } => NrStatus::NrQuadratureFailure,
        Error::ConfigError(_) => NrStatus::NrConfigError,
        Error::IoError(_) => NrStatus::NrIoError,
    }
}

fn guard<F: FnOnce() -> Result<(), NrStatus>>(f: F) -> NrStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NrStatus::NrOk,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside nullray");
            NrStatus::NrPanic
        }
    }
}

fn fail(e: Error) -> NrStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> NrStatus {
    set_error(&format!("{what} is a null pointer"));
    NrStatus::NrNullPointer
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, NrStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("{what} is not valid UTF-8"));
        NrStatus::NrInvalidArgument
    })
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), NrStatus> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = v;
    Ok(())
}

/// Message of the last failure on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn nr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// J_ν(x) with ν = two_nu / 2.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn nr_bessel_j(two_nu: i64, x: f64, out: *mut f64) -> NrStatus {
    guard(|| {
        let order = BesselOrder::from_two_nu(two_nu).map_err(fail)?;
        let v = bessel_j(order, x).map_err(fail)?;
        write(out, v, "out")
    })
}

/// Creates the mode with helicity two_s / 2 and wave vector (kx, ky, kz).
///
/// # Safety
/// `out` must be a valid pointer; the handle it receives is freed with [`nr_mode_free`].
#[no_mangle]
pub unsafe extern "C" fn nr_mode_new(two_s: i64, kx: f64, ky: f64, kz: f64, out: *mut *mut NrMode) -> NrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = Helicity::from_two_s(two_s).map_err(fail)?;
        let mode = WaveMode::new(s, Point3::new(kx, ky, kz)).map_err(fail)?;
        let handle = Box::new(NrMode { mode, field: u_field(mode) });
        *out = Box::into_raw(handle);
        Ok(())
    })
}

/// Releases a mode; null is ignored.
///
/// # Safety
/// `mode` must come from [`nr_mode_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nr_mode_free(mode: *mut NrMode) {
    if !mode.is_null() {
        drop(Box::from_raw(mode));
    }
}

unsafe fn mode_ref<'a>(mode: *const NrMode) -> Result<&'a NrMode, NrStatus> {
    mode.as_ref().ok_or_else(|| null("mode"))
}

/// u_{s,k}(x, y, z).
///
/// # Safety
/// `mode` must be a live handle and `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nr_mode_eval_u(
    mode: *const NrMode,
    x: f64,
    y: f64,
    z: f64,
    re: *mut f64,
    im: *mut f64,
) -> NrStatus {
    guard(|| {
        let m = mode_ref(mode)?;
        let v = eval_u(&m.mode, Point3::new(x, y, z)).map_err(fail)?;
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// (V u_{s,k})(x, y, z) by ray quadrature.
///
/// # Safety
/// `mode` must be a live handle and `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nr_mode_apply_v(
    mode: *const NrMode,
    x: f64,
    y: f64,
    z: f64,
    re: *mut f64,
    im: *mut f64,
) -> NrStatus {
    guard(|| {
        let m = mode_ref(mode)?;
        let v = apply_v_at(&m.field, Point3::new(x, y, z), &QuadratureSpec::default()).map_err(fail)?.value;
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// w_{s,(0,0,k)}(x, y, z) in closed form.
///
/// # Safety
/// `re` and `im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nr_eval_w(two_s: i64, k: f64, x: f64, y: f64, z: f64, re: *mut f64, im: *mut f64) -> NrStatus {
    guard(|| {
        let s = Helicity::from_two_s(two_s).map_err(fail)?;
        let v = eval_w(s, k, Point3::new(x, y, z)).map_err(fail)?;
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// Writes a CSV grid; `plane` is "xz" or "xy", `quantity` one of "re", "im", "abs", "phase".
///
/// # Safety
/// The string arguments must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn nr_grid_write(
    two_s: i64,
    k: f64,
    plane: *const c_char,
    extent: f64,
    n: usize,
    quantity: *const c_char,
    path: *const c_char,
) -> NrStatus {
    guard(|| {
        let s = Helicity::from_two_s(two_s).map_err(fail)?;
        let plane: Plane = read_str(plane, "plane")?.parse().map_err(fail)?;
        let quantity: Quantity = read_str(quantity, "quantity")?.parse().map_err(fail)?;
        let path = PathBuf::from(read_str(path, "path")?);
        emit_grid(s, k, plane, extent, n, quantity, &path).map_err(fail)?;
        Ok(())
    })
}

/// Runs the comma-separated `suites` ("all" for every suite) under `profile`.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings and `out` a valid
/// pointer; the report is freed with [`nr_report_free`].
#[no_mangle]
pub unsafe extern "C" fn nr_report_run(
    suites: *const c_char,
    profile: *const c_char,
    seed: u64,
    out: *mut *mut NrReport,
) -> NrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let names: Vec<&str> = read_str(suites, "suites")?.split(',').map(str::trim).collect();
        let profile: Profile = read_str(profile, "profile")?.parse().map_err(fail)?;
        let report = run_suite(&SuiteConfig::new(&names, profile, seed)).map_err(fail)?;
        let json = CString::new(report.to_json()).map_err(|_| NrStatus::NrInvalidArgument)?;
        *out = Box::into_raw(Box::new(NrReport { report, json }));
        Ok(())
    })
}

/// Number of passed checks; 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_report_passed(report: *const NrReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.summary.passed)
}

/// Number of failed checks; 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_report_failed(report: *const NrReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.summary.failed)
}

/// JSON text of the report, owned by the handle; null for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_report_json(report: *const NrReport) -> *const c_char {
    report.as_ref().map_or(std::ptr::null(), |r| r.json.as_ptr())
}

/// Releases a report; null is ignored.
///
/// # Safety
/// `report` must come from [`nr_report_run`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nr_report_free(report: *mut NrReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
