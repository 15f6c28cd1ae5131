//! C interface to `efb-core`.
//!
//! Multivectors cross the boundary as opaque [`EfbMultivector`] handles.
//! Every fallible call returns an [`EfbStatus`]; on failure a description is
//! available from [`efb_last_error_message`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`efb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use efb_core::gamma::{efb_to_gamma, gamma_to_efb};
use efb_core::matrix::to_matrix;
use efb_core::spinor::{annihilator, is_simple, Spinor};
use efb_core::text::{format_efb, format_gamma, parse_efb, parse_gamma};
use efb_core::{AlgebraConfig, EfbError, Multivector, Rational, Scalar, ScalarMode};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Mismatch = 5,
    SizeCap = 6,
    Unsupported = 7,
    Invariant = 8,
    Panic = 9,
}

/// Which basis a string is written in.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfbBasis {
    Efb = 0,
    Gamma = 1,
}

#[derive(Debug, Clone)]
enum Value {
    Exact(Multivector<Rational>),
    Float(Multivector<f64>),
}

/// Opaque multivector handle.
pub struct EfbMultivector {
    value: Value,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(EfbStatus, String);

impl From<EfbError> for Failure {
    fn from(e: EfbError) -> Self {
        let status = match &e {
            EfbError::Parse { .. } => EfbStatus::Parse,
            EfbError::ConfigMismatch { .. }
            | EfbError::SignatureLength { .. }
            | EfbError::MixedSpaces => EfbStatus::Mismatch,
            EfbError::SizeCap { .. } => EfbStatus::SizeCap,
            EfbError::Invariant(_) => EfbStatus::Invariant,
            _ => EfbStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EfbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            EfbStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EfbStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(EfbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(p: *const EfbMultivector, what: &str) -> Result<&'a EfbMultivector, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(EfbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s)
        .map_err(|_| Failure(EfbStatus::Invariant, "interior NUL in output".into()))?;
    put(out, c.into_raw(), "out")
}

fn parse_value<S: Scalar>(
    src: &str,
    basis: EfbBasis,
    config: AlgebraConfig,
) -> efb_core::Result<Multivector<S>> {
    match basis {
        EfbBasis::Efb => parse_efb(src, config),
        EfbBasis::Gamma => parse_gamma(src, config).map(|g| gamma_to_efb(&g)),
    }
}

fn format_value<S: Scalar>(a: &Multivector<S>, basis: EfbBasis) -> String {
    match basis {
        EfbBasis::Efb => format_efb(a),
        EfbBasis::Gamma => format_gamma(&efb_to_gamma(a)),
    }
}

fn exact(a: &EfbMultivector) -> Result<&Multivector<Rational>, Failure> {
    match &a.value {
        Value::Exact(x) => Ok(x),
        Value::Float(_) => Err(Failure(
            EfbStatus::Unsupported,
            "spinor analysis requires exact mode".into(),
        )),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn efb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Description of the last failure on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn efb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parses `src` in `basis` for `Cl(m,m)`; exact rationals unless `float_mode`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a writable pointer.
/// The handle written to `out` must be released with [`efb_multivector_free`].
#[no_mangle]
pub unsafe extern "C" fn efb_parse(
    m: u32,
    float_mode: bool,
    basis: EfbBasis,
    src: *const c_char,
    out: *mut *mut EfbMultivector,
) -> EfbStatus {
    guard(|| {
        let src = text(src, "src")?;
        let mode = if float_mode {
            ScalarMode::Float64
        } else {
            ScalarMode::ExactRational
        };
        let config = AlgebraConfig::new(m, mode)?;
        let value = if float_mode {
            Value::Float(parse_value(src, basis, config)?)
        } else {
            Value::Exact(parse_value(src, basis, config)?)
        };
        put(
            out,
            Box::into_raw(Box::new(EfbMultivector { value })),
            "out",
        )
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `a` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn efb_multivector_free(a: *mut EfbMultivector) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Writes the product `a b` as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn efb_mul(
    a: *const EfbMultivector,
    b: *const EfbMultivector,
    out: *mut *mut EfbMultivector,
) -> EfbStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let value = match (&a.value, &b.value) {
            (Value::Exact(x), Value::Exact(y)) => Value::Exact(x.product(y)?),
            (Value::Float(x), Value::Float(y)) => Value::Float(x.product(y)?),
            _ => {
                return Err(Failure(
                    EfbStatus::Mismatch,
                    "operands use different scalar modes".into(),
                ))
            }
        };
        put(
            out,
            Box::into_raw(Box::new(EfbMultivector { value })),
            "out",
        )
    })
}

/// Number of stored EFB terms, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn efb_term_count(a: *const EfbMultivector) -> usize {
    match a.as_ref().map(|a| &a.value) {
        Some(Value::Exact(x)) => x.len(),
        Some(Value::Float(x)) => x.len(),
        None => 0,
    }
}

/// Formats `a` in `basis`.
///
/// # Safety
/// `a` must be a live handle and `out` a writable pointer; release the
/// string with [`efb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn efb_to_string(
    a: *const EfbMultivector,
    basis: EfbBasis,
    out: *mut *mut c_char,
) -> EfbStatus {
    guard(|| {
        let s = match &handle(a, "a")?.value {
            Value::Exact(x) => format_value(x, basis),
            Value::Float(x) => format_value(x, basis),
        };
        put_string(out, s)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn efb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Matrix image of `a` as JSON `{"m":…,"entries":[[…]]}`.
///
/// # Safety
/// `a` must be a live handle and `out` a writable pointer; release the
/// string with [`efb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn efb_matrix_json(
    a: *const EfbMultivector,
    out: *mut *mut c_char,
) -> EfbStatus {
    guard(|| {
        let json = match &handle(a, "a")?.value {
            Value::Exact(x) => to_matrix(x)?.to_json(),
            Value::Float(x) => to_matrix(x)?.to_json(),
        };
        put_string(out, json.to_string())
    })
}

/// Eigenvalues of the volume element: `right` for `Γa`, `left` for `aΓ`.
/// Each is `+1`, `-1`, or `0` when `a` is not an eigenvector on that side.
///
/// # Safety
/// `a` must be a live handle; `right` and `left` must be writable.
#[no_mangle]
pub unsafe extern "C" fn efb_gamma_eigen(
    a: *const EfbMultivector,
    right: *mut i8,
    left: *mut i8,
) -> EfbStatus {
    guard(|| {
        let eigen = match &handle(a, "a")?.value {
            Value::Exact(x) => x.gamma_eigen()?,
            Value::Float(x) => x.gamma_eigen()?,
        };
        put(right, eigen.right.unwrap_or(0), "right")?;
        put(left, eigen.left.unwrap_or(0), "left")
    })
}

/// Whether `a`, which must lie in one spinor space, is a simple spinor.
///
/// # Safety
/// `a` must be a live exact-mode handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn efb_is_simple(a: *const EfbMultivector, out: *mut bool) -> EfbStatus {
    guard(|| {
        let spinor = Spinor::infer_from_multivector(exact(handle(a, "a")?)?)?;
        put(out, is_simple(&spinor)?, "out")
    })
}

/// Annihilating totally null plane of the spinor `a`, as text
/// `span{…}`, with its dimension in `dim`.
///
/// # Safety
/// `a` must be a live exact-mode handle; `dim` and `out` must be writable.
/// Release the string with [`efb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn efb_annihilator(
    a: *const EfbMultivector,
    dim: *mut u32,
    out: *mut *mut c_char,
) -> EfbStatus {
    guard(|| {
        let spinor = Spinor::infer_from_multivector(exact(handle(a, "a")?)?)?;
        let plane = annihilator(&spinor)?;
        if out.is_null() {
            return Err(null("out"));
        }
        put(dim, plane.dim() as u32, "dim")?;
        put_string(out, plane.to_string())
    })
}
