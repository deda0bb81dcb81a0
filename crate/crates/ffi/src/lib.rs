//! C interface to `ybw-core`.
//!
//! Every function returns a [`YbwStatus`]. On failure the message is kept in
//! thread-local storage and can be fetched with [`ybw_last_error_message`].
//! Strings handed out by this library must be released with
//! [`ybw_string_free`]; handles with their matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ybw_core::construct::build_couple;
use ybw_core::couple::YangBaxterCouple;
use ybw_core::hirai::{closed_form_character, is_yb_admissible, HiraiParams};
use ybw_core::io::{couple_parts_from_json, couple_to_json, element_from_json, params_from_json, parse_json, rmatrix_from_json, to_pretty};
use ybw_core::rmatrix::{char_cycle, extract_thoma, verify_rmatrix, RMatrix};
use ybw_core::{CycloScalar, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbwStatus {
    Ok = 0,
    InvalidArgument = 1,
    Malformed = 2,
    VerificationFailed = 3,
    Internal = 4,
    Panic = 5,
}

/// Certified R-matrix.
pub struct YbwRMatrix(RMatrix);

/// Validated parameter set over a finite group.
pub struct YbwParams(HiraiParams);

/// Certified couple (R, pi).
pub struct YbwCouple(YangBaxterCouple);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(YbwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Schema { .. } | Error::UnknownCatalogName(_) => YbwStatus::Malformed,
            Error::Internal(_) => YbwStatus::Internal,
            _ => YbwStatus::VerificationFailed,
        };
        Failure(status, format!("{}: {e}", e.kind()))
    }
}

fn invalid(msg: &str) -> Failure {
    Failure(YbwStatus::InvalidArgument, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> YbwStatus {
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => (YbwStatus::Ok, None),
        Ok(Err(Failure(s, m))) => (s, Some(m)),
        Err(payload) => {
            let m = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            (YbwStatus::Panic, Some(format!("panic: {m}")))
        }
    };
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
    status
}

unsafe fn input<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| invalid(&format!("{what} is null")))
}

unsafe fn emit<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(YbwStatus::Internal, "string contains NUL".into()))?;
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(c.into_raw());
    Ok(())
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(std::ptr::null_mut())
}

/// Message for the last failed call on this thread, or null. Free with
/// `ybw_string_free`.
#[no_mangle]
pub extern "C" fn ybw_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone()).map_or(std::ptr::null_mut(), string_out)
}

/// Library version. Free with `ybw_string_free`.
#[no_mangle]
pub extern "C" fn ybw_version() -> *mut c_char {
    string_out(env!("CARGO_PKG_VERSION").to_string())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ybw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and certifies an R-matrix from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_rmatrix_from_json(json: *const c_char, out: *mut *mut YbwRMatrix) -> YbwStatus {
    guard(|| {
        let v = parse_json(input(json, "json")?, "<input>")?;
        let (m, d) = rmatrix_from_json(&v, "$")?;
        let r = verify_rmatrix(m, d)?;
        emit(out, Box::into_raw(Box::new(YbwRMatrix(r))))
    })
}

/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_rmatrix_dim(r: *const YbwRMatrix, out: *mut usize) -> YbwStatus {
    guard(|| emit(out, handle(r, "r")?.0.dim()))
}

/// Thoma parameters of `r`, as `alpha = [..], beta = [..]`.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_rmatrix_thoma(r: *const YbwRMatrix, out: *mut *mut c_char) -> YbwStatus {
    guard(|| {
        let t = extract_thoma(&handle(r, "r")?.0)?;
        emit_string(out, t.to_string())
    })
}

/// Normalized character of the n-cycle, as an exact rational string.
///
/// # Safety
/// `r` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_rmatrix_char_cycle(r: *const YbwRMatrix, n: u32, out: *mut *mut c_char) -> YbwStatus {
    guard(|| {
        let v = char_cycle(&handle(r, "r")?.0, n)?;
        emit_string(out, ybw_core::cyclo::format_rational(&v))
    })
}

/// # Safety
/// `r` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ybw_rmatrix_free(r: *mut YbwRMatrix) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Parses and validates a parameter file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_params_from_json(json: *const c_char, out: *mut *mut YbwParams) -> YbwStatus {
    guard(|| {
        let v = parse_json(input(json, "json")?, "<input>")?;
        let p = params_from_json(&v, "$")?;
        emit(out, Box::into_raw(Box::new(YbwParams(p))))
    })
}

/// Smallest d for which a couple can be built. Fails with
/// `VERIFICATION_FAILED` when the parameters are not admissible.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_params_minimal_d(p: *const YbwParams, out: *mut u64) -> YbwStatus {
    guard(|| {
        let adm = is_yb_admissible(&handle(p, "p")?.0);
        match adm.minimal_d {
            Some(d) if adm.verdict => emit(out, d),
            _ => Err(Failure(YbwStatus::VerificationFailed, format!("not admissible: {}", adm.violations.join(", ")))),
        }
    })
}

/// Closed-form character value at a wreath element given as JSON.
///
/// # Safety
/// `p` must be a live handle; `element` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_params_closed_form(p: *const YbwParams, element: *const c_char, out: *mut *mut c_char) -> YbwStatus {
    guard(|| {
        let p = &handle(p, "p")?.0;
        let v = parse_json(input(element, "element")?, "<element>")?;
        let g = element_from_json(&v, p.group().clone(), "$")?;
        emit_string(out, closed_form_character(p, &g)?.to_string())
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ybw_params_free(p: *mut YbwParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds and certifies a couple realizing `p`. `d = 0` selects the minimal d.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_couple_build(p: *const YbwParams, d: usize, out: *mut *mut YbwCouple) -> YbwStatus {
    guard(|| {
        let (c, _) = build_couple(&handle(p, "p")?.0, (d > 0).then_some(d))?;
        emit(out, Box::into_raw(Box::new(YbwCouple(c))))
    })
}

/// Parses and certifies a couple bundle.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_couple_from_json(json: *const c_char, out: *mut *mut YbwCouple) -> YbwStatus {
    guard(|| {
        let v = parse_json(input(json, "json")?, "<input>")?;
        let c = couple_parts_from_json(&v, "$")?.certify()?;
        emit(out, Box::into_raw(Box::new(YbwCouple(c))))
    })
}

/// Serializes a couple to its JSON bundle.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_couple_to_json(c: *const YbwCouple, out: *mut *mut c_char) -> YbwStatus {
    guard(|| emit_string(out, to_pretty(&couple_to_json(&handle(c, "c")?.0))))
}

/// Trace character at a wreath element. The exact value goes to `out`; `re`
/// and `im` receive a floating-point rendering and may be null.
///
/// # Safety
/// `c` must be a live handle; `element` a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ybw_couple_character(
    c: *const YbwCouple,
    element: *const c_char,
    out: *mut *mut c_char,
    re: *mut f64,
    im: *mut f64,
) -> YbwStatus {
    guard(|| {
        let c = &handle(c, "c")?.0;
        let v = parse_json(input(element, "element")?, "<element>")?;
        let g = element_from_json(&v, c.group().clone(), "$")?;
        let chi: CycloScalar = c.character(&g)?;
        let z = chi.to_complex();
        emit_string(out, chi.to_string())?;
        if !re.is_null() {
            re.write(z.re);
        }
        if !im.is_null() {
            im.write(z.im);
        }
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ybw_couple_free(c: *mut YbwCouple) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
