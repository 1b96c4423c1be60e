//! C ABI for `idem2`.
//!
//! Matrices and specs are opaque heap handles created and freed by this
//! library. Every fallible call returns an [`Idem2Status`]; on failure the
//! message is available from [`idem2_last_error`] on the same thread.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`idem2_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use idem2::{Error, IdempotentSpec, Mat2, Mat2Json, SpecJson};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Idem2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidSpec = 4,
    NotIdempotent = 5,
    ShapeViolation = 6,
    BudgetExceeded = 7,
    ContextMismatch = 8,
    InvalidArgument = 9,
    Panic = 255,
}

impl From<&Error> for Idem2Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => Idem2Status::ParseError,
            Error::InvalidSpec(_) => Idem2Status::InvalidSpec,
            Error::NotIdempotent => Idem2Status::NotIdempotent,
            Error::ShapeViolation { .. } => Idem2Status::ShapeViolation,
            Error::BudgetExceeded { .. } => Idem2Status::BudgetExceeded,
            Error::ContextMismatch(_) | Error::ModulusMismatch { .. } => {
                Idem2Status::ContextMismatch
            }
            _ => Idem2Status::InvalidArgument,
        }
    }
}

/// Opaque 2x2 matrix over a truncated series ring.
pub struct Idem2Matrix(Mat2);

/// Opaque idempotent spec (split plus parameters).
pub struct Idem2Spec(IdempotentSpec);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: Idem2Status, msg: impl Into<String>) -> Idem2Status {
    set_error(msg);
    status
}

fn from_error(e: Error) -> Idem2Status {
    fail(Idem2Status::from(&e), format!("{}: {e}", e.kind()))
}

fn guard(f: impl FnOnce() -> Idem2Status) -> Idem2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(Idem2Status::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Idem2Status> {
    if s.is_null() {
        return Err(fail(Idem2Status::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(Idem2Status::InvalidUtf8, "input is not UTF-8"))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Idem2Status> {
    serde_json::from_str(text).map_err(|e| fail(Idem2Status::ParseError, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Idem2Status {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            Idem2Status::Ok
        }
        Err(_) => fail(Idem2Status::InvalidArgument, "interior NUL in output"),
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(Idem2Status::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn idem2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn idem2_status_name(status: Idem2Status) -> *const c_char {
    let name: &'static CStr = match status {
        Idem2Status::Ok => c"Ok",
        Idem2Status::NullPointer => c"NullPointer",
        Idem2Status::InvalidUtf8 => c"InvalidUtf8",
        Idem2Status::ParseError => c"ParseError",
        Idem2Status::InvalidSpec => c"InvalidSpec",
        Idem2Status::NotIdempotent => c"NotIdempotent",
        Idem2Status::ShapeViolation => c"ShapeViolation",
        Idem2Status::BudgetExceeded => c"BudgetExceeded",
        Idem2Status::ContextMismatch => c"ContextMismatch",
        Idem2Status::InvalidArgument => c"InvalidArgument",
        Idem2Status::Panic => c"Panic",
    };
    name.as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idem2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a spec from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_spec_from_json(
    json: *const c_char,
    out: *mut *mut Idem2Spec,
) -> Idem2Status {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(json));
        let parsed: SpecJson = try_status!(parse(text));
        match IdempotentSpec::from_json(&parsed) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(Idem2Spec(spec)));
                Idem2Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `spec` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_spec_to_json(
    spec: *const Idem2Spec,
    out: *mut *mut c_char,
) -> Idem2Status {
    guard(|| {
        non_null!(spec, out);
        let json = serde_json::to_string(&(*spec).0.to_json()).expect("spec serializes");
        write_string(out, json)
    })
}

/// Writes whether the spec satisfies `alpha (1 - alpha) = beta gamma` mod P.
///
/// # Safety
/// `spec` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_spec_validate(spec: *const Idem2Spec, out: *mut bool) -> Idem2Status {
    guard(|| {
        non_null!(spec, out);
        *out = idem2::validate_spec(&(*spec).0);
        Idem2Status::Ok
    })
}

/// # Safety
/// `spec` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idem2_spec_free(spec: *mut Idem2Spec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

unsafe fn build(
    spec: *const Idem2Spec,
    out: *mut *mut Idem2Matrix,
    f: fn(&IdempotentSpec) -> idem2::Result<Mat2>,
) -> Idem2Status {
    guard(|| {
        non_null!(spec, out);
        match f(&(*spec).0) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(Idem2Matrix(m)));
                Idem2Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds the idempotent of a spec from the closed per-case formulas.
///
/// # Safety
/// `spec` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_construct(
    spec: *const Idem2Spec,
    out: *mut *mut Idem2Matrix,
) -> Idem2Status {
    build(spec, out, idem2::construct_case)
}

/// Builds the idempotent of a spec by CRT gluing of its residue matrices.
///
/// # Safety
/// `spec` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_construct_crt(
    spec: *const Idem2Spec,
    out: *mut *mut Idem2Matrix,
) -> Idem2Status {
    build(spec, out, idem2::construct_crt)
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_matrix_from_json(
    json: *const c_char,
    out: *mut *mut Idem2Matrix,
) -> Idem2Status {
    guard(|| {
        non_null!(out);
        let text = try_status!(read_str(json));
        let parsed: Mat2Json = try_status!(parse(text));
        match Mat2::from_json(&parsed) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(Idem2Matrix(m)));
                Idem2Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `matrix` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_matrix_to_json(
    matrix: *const Idem2Matrix,
    out: *mut *mut c_char,
) -> Idem2Status {
    guard(|| {
        non_null!(matrix, out);
        let json = serde_json::to_string(&(*matrix).0.to_json()).expect("matrix serializes");
        write_string(out, json)
    })
}

/// # Safety
/// `matrix` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_matrix_is_idempotent(
    matrix: *const Idem2Matrix,
    out: *mut bool,
) -> Idem2Status {
    guard(|| {
        non_null!(matrix, out);
        *out = (*matrix).0.is_idempotent();
        Idem2Status::Ok
    })
}

/// Writes 1 when both handles hold the same matrix.
///
/// # Safety
/// Both handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_matrix_equal(
    a: *const Idem2Matrix,
    b: *const Idem2Matrix,
    out: *mut bool,
) -> Idem2Status {
    guard(|| {
        non_null!(a, b, out);
        *out = (*a).0 == (*b).0;
        Idem2Status::Ok
    })
}

/// # Safety
/// `matrix` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn idem2_matrix_free(matrix: *mut Idem2Matrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Recovers the canonical spec of an idempotent matrix.
///
/// # Safety
/// `matrix` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_classify(
    matrix: *const Idem2Matrix,
    out: *mut *mut Idem2Spec,
) -> Idem2Status {
    guard(|| {
        non_null!(matrix, out);
        match idem2::classify(&(*matrix).0) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(Idem2Spec(spec)));
                Idem2Status::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Enumerates every idempotent over `Z_n` with `vars` variables truncated
/// above total degree `trunc`, writing the census JSON (as printed by
/// `idem2 enumerate`). A `budget` of 0 selects the default.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn idem2_enumerate_json(
    n: u64,
    vars: u32,
    trunc: u32,
    with_oracle: bool,
    budget: u64,
    out: *mut *mut c_char,
) -> Idem2Status {
    guard(|| {
        non_null!(out);
        let budget = if budget == 0 {
            idem2::DEFAULT_BUDGET
        } else {
            budget as u128
        };
        match idem2::cli::cmd_enumerate(n, vars as usize, trunc, with_oracle, false, budget) {
            Ok((value, _)) => write_string(out, value.to_string()),
            Err(e) => {
                let detail = e.to_json();
                let status = match detail["kind"].as_str() {
                    Some("BudgetExceeded") => Idem2Status::BudgetExceeded,
                    Some("ParseError") => Idem2Status::ParseError,
                    _ => Idem2Status::InvalidArgument,
                };
                fail(status, detail.to_string())
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn null_arguments_are_reported() {
        unsafe {
            let mut spec = ptr::null_mut();
            assert_eq!(
                idem2_spec_from_json(ptr::null(), &mut spec),
                Idem2Status::NullPointer
            );
            assert_eq!(
                idem2_construct(ptr::null(), ptr::null_mut()),
                Idem2Status::NullPointer
            );
            let msg = CStr::from_ptr(idem2_last_error()).to_str().unwrap();
            assert!(msg.contains("null"));
        }
    }

    #[test]
    fn status_names() {
        let name = unsafe { CStr::from_ptr(idem2_status_name(Idem2Status::ShapeViolation)) };
        assert_eq!(name.to_str().unwrap(), "ShapeViolation");
    }
}
