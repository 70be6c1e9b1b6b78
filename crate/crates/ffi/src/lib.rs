//! C ABI over the `freudenthal` library.
//!
//! Elements are passed as opaque handles created from JSON and released with the
//! matching `*_free`. Every call returns an [`FdStatus`]; on failure the message is
//! available from [`fd_last_error`]. Strings returned through `char **` outputs are
//! owned by the caller and released with [`fd_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use freudenthal::archimedean::kbessel;
use freudenthal::coefficients::{a_theta, e6_pullback_coeff, e7_pullback_coeff};
use freudenthal::composition::AlgebraKind;
use freudenthal::freudenthal::FreudenthalElement;
use freudenthal::jordan::JordanElement;
use freudenthal::rational;
use freudenthal::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

/// A Freudenthal-space element.
pub struct FdW {
    inner: FreudenthalElement,
}

/// An Albert-algebra element.
pub struct FdJordan {
    inner: JordanElement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> FdStatus {
    let status = if e.is_usage() { FdStatus::Parse } else { FdStatus::Domain };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> FdStatus) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            FdStatus::Panic
        }
    }
}

/// # Safety
/// `s` is NULL or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, FdStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(FdStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        FdStatus::InvalidUtf8
    })
}

/// # Safety
/// `s` is NULL or a NUL-terminated string.
unsafe fn read_kind(s: *const c_char) -> Result<AlgebraKind, FdStatus> {
    if s.is_null() {
        return Ok(AlgebraKind::Theta0);
    }
    AlgebraKind::from_name(read_str(s)?).map_err(fail)
}

/// # Safety
/// `out` is NULL or valid for a write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> FdStatus {
    if out.is_null() {
        set_error("null output pointer");
        return FdStatus::NullPointer;
    }
    *out = CString::new(s).expect("JSON has no NULs").into_raw();
    FdStatus::Ok
}

/// # Safety
/// `out` is NULL or valid for a write.
unsafe fn write<T>(out: *mut T, v: T) -> FdStatus {
    if out.is_null() {
        set_error("null output pointer");
        return FdStatus::NullPointer;
    }
    *out = v;
    FdStatus::Ok
}

/// # Safety
/// `h` is NULL or a live handle.
unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, FdStatus> {
    h.as_ref().ok_or_else(|| {
        set_error("null handle");
        FdStatus::NullPointer
    })
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Human-readable message for the last failed call on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"a", "b", "c", "d"}`; `algebra` may be NULL for `theta0`.
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_w_from_json(json: *const c_char, algebra: *const c_char, out: *mut *mut FdW) -> FdStatus {
    guard(|| {
        let text = try_ffi!(read_str(json));
        let kind = try_ffi!(read_kind(algebra));
        let v: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return FdStatus::Parse;
            }
        };
        match FreudenthalElement::from_json(&v, kind) {
            Ok(inner) => write(out, Box::into_raw(Box::new(FdW { inner }))),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `w` is NULL or a handle from [`fd_w_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_w_free(w: *mut FdW) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// # Safety
/// `w` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_w_to_json(w: *const FdW, out: *mut *mut c_char) -> FdStatus {
    guard(|| write_string(out, try_ffi!(handle(w)).inner.to_json().to_string()))
}

/// # Safety
/// `w` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_w_rank(w: *const FdW, out: *mut u8) -> FdStatus {
    guard(|| write(out, try_ffi!(handle(w)).inner.rank()))
}

/// The quartic form as a rational string such as `"-4"` or `"3/2"`.
///
/// # Safety
/// `w` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_w_quartic(w: *const FdW, out: *mut *mut c_char) -> FdStatus {
    guard(|| write_string(out, rational::to_text(&try_ffi!(handle(w)).inner.quartic())))
}

/// # Safety
/// `x`, `y` are live handles; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_w_symp(x: *const FdW, y: *const FdW, out: *mut *mut c_char) -> FdStatus {
    guard(|| {
        let (x, y) = (try_ffi!(handle(x)), try_ffi!(handle(y)));
        match x.inner.symp(&y.inner) {
            Ok(v) => write_string(out, rational::to_text(&v)),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `w` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_w_content(w: *const FdW, out: *mut u64) -> FdStatus {
    guard(|| match try_ffi!(handle(w)).inner.content() {
        Ok(c) => write(out, c),
        Err(e) => fail(e),
    })
}

/// `a_θ(ω)` for an integral element over the octonion order.
///
/// # Safety
/// `w` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_a_theta(w: *const FdW, out: *mut u64) -> FdStatus {
    guard(|| match a_theta(&try_ffi!(handle(w)).inner) {
        Ok(v) => write(out, v),
        Err(e) => fail(e),
    })
}

/// E₇ pullback coefficient of an element over `hurwitz`; `complete` may be NULL.
///
/// # Safety
/// `w` is a live handle; `value` is valid for a write; `complete` is NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn fd_e7_pullback(w: *const FdW, height: u64, value: *mut u64, complete: *mut bool) -> FdStatus {
    guard(|| match e7_pullback_coeff(&try_ffi!(handle(w)).inner, height) {
        Ok(v) => {
            if !complete.is_null() {
                *complete = v.complete;
            }
            write(value, v.value)
        }
        Err(e) => fail(e),
    })
}

/// E₆ pullback coefficient of an element over `gauss`; `complete` may be NULL.
///
/// # Safety
/// `w` is a live handle; `value` is valid for a write; `complete` is NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn fd_e6_pullback(w: *const FdW, height: u64, value: *mut u64, complete: *mut bool) -> FdStatus {
    guard(|| match e6_pullback_coeff(&try_ffi!(handle(w)).inner, height) {
        Ok(v) => {
            if !complete.is_null() {
                *complete = v.complete;
            }
            write(value, v.value)
        }
        Err(e) => fail(e),
    })
}

/// Parses `{"algebra", "diag", "off"}` or a bare rational; `algebra` may be NULL.
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_jordan_from_json(
    json: *const c_char,
    algebra: *const c_char,
    out: *mut *mut FdJordan,
) -> FdStatus {
    guard(|| {
        let text = try_ffi!(read_str(json));
        let kind = try_ffi!(read_kind(algebra));
        let v: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                set_error(e.to_string());
                return FdStatus::Parse;
            }
        };
        match JordanElement::from_json(&v, kind) {
            Ok(inner) => write(out, Box::into_raw(Box::new(FdJordan { inner }))),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `x` is NULL or a handle from [`fd_jordan_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_jordan_free(x: *mut FdJordan) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// # Safety
/// `x` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_jordan_norm(x: *const FdJordan, out: *mut *mut c_char) -> FdStatus {
    guard(|| write_string(out, rational::to_text(&try_ffi!(handle(x)).inner.norm())))
}

/// # Safety
/// `x` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_jordan_adjoint(x: *const FdJordan, out: *mut *mut c_char) -> FdStatus {
    guard(|| write_string(out, try_ffi!(handle(x)).inner.adjoint().to_json().to_string()))
}

/// # Safety
/// `x` is a live handle; `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_jordan_rank(x: *const FdJordan, out: *mut u8) -> FdStatus {
    guard(|| write(out, try_ffi!(handle(x)).inner.rank()))
}

/// `K_v(y)` for `y > 0`.
///
/// # Safety
/// `out` is valid for a write.
#[no_mangle]
pub unsafe extern "C" fn fd_kbessel(v: f64, y: f64, out: *mut f64) -> FdStatus {
    guard(|| match kbessel(v, y) {
        Ok(k) => write(out, k),
        Err(e) => fail(e),
    })
}

/// Runs the command-line front end on `argv[0..argc]` (without the program name).
/// `stdout_json` receives the output text; `exit_code` the process status it would exit with.
///
/// # Safety
/// `argv` holds `argc` NUL-terminated strings; the outputs are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fd_cli_run(
    argv: *const *const c_char,
    argc: c_int,
    stdout_json: *mut *mut c_char,
    exit_code: *mut c_int,
) -> FdStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            set_error("null argv");
            return FdStatus::NullPointer;
        }
        let mut args = vec!["freudenthal".to_string()];
        for i in 0..argc.max(0) as usize {
            args.push(try_ffi!(read_str(*argv.add(i))).to_string());
        }
        let out = freudenthal::cli::run(args);
        if !out.stderr.is_empty() {
            set_error(out.stderr.trim_end());
        }
        try_ffi!(match write(exit_code, out.code as c_int) {
            FdStatus::Ok => Ok(()),
            s => Err(s),
        });
        write_string(stdout_json, out.stdout)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_handles_are_rejected() {
        let mut r = 0u8;
        assert_eq!(unsafe { fd_w_rank(ptr::null(), &mut r) }, FdStatus::NullPointer);
        assert!(!fd_last_error().is_null());
    }
}
