//! C ABI for the eigenscheme toolkit.
//!
//! Tensors and minor tuples live behind opaque handles. Structured results are
//! returned as JSON strings allocated here and released with
//! [`es_string_free`]. Every fallible call returns an [`EsStatus`]; the message
//! of the last failure on the calling thread is available from
//! [`es_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use eigenscheme::algorithms::{characterize, fit_tensor_to_points};
use eigenscheme::geometry::collinearity_report;
use eigenscheme::hilbert::hilbert_table;
use eigenscheme::sample::random_tensor;
use eigenscheme::solver::{fermat_eigenpoints, solve_eigenpoints_p1, solve_eigenpoints_p2};
use eigenscheme::tensor::{is_eigenpoint, w_count, AnyTensor, DetTuple};
use eigenscheme::{io, Error};
use serde_json::{json, Value};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    PositiveDimensional = 4,
    Indeterminate = 5,
    NotDecomposable = 6,
    Numeric = 7,
    Unsupported = 8,
    Panic = 9,
}

/// Opaque tensor handle.
pub struct EsTensor {
    inner: AnyTensor,
}

/// Opaque handle for a tuple of 2x2 minors.
pub struct EsTuple {
    inner: DetTuple,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> EsStatus {
    match e {
        Error::PositiveDimensional => EsStatus::PositiveDimensional,
        Error::Indeterminate => EsStatus::Indeterminate,
        Error::NotDecomposable { .. } => EsStatus::NotDecomposable,
        Error::Numeric(_) => EsStatus::Numeric,
        _ => EsStatus::InvalidInput,
    }
}

struct Fail(EsStatus, String);

type Call<T> = Result<T, Fail>;

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and the thread's
/// last-error message.
fn guard(f: impl FnOnce() -> Call<()>) -> EsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            EsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Call<&'a str> {
    if s.is_null() {
        return Err(Fail(EsStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(EsStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn read_json(s: *const c_char) -> Call<Value> {
    let text = read_str(s)?;
    serde_json::from_str(text).map_err(|e| Fail(EsStatus::InvalidInput, format!("invalid JSON: {e}")))
}

unsafe fn handle<'a, T>(p: *const T) -> Call<&'a T> {
    p.as_ref().ok_or_else(|| Fail(EsStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Call<()> {
    if out.is_null() {
        return Err(Fail(EsStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Call<()> {
    let s = CString::new(v.to_string()).map_err(|_| Fail(EsStatus::Panic, "interior NUL in output".into()))?;
    write_out(out, s.into_raw())
}

/// Message of the last failure on this thread; empty if none. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn es_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn es_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of eigenpoints of a general tensor. Fails if it exceeds 64 bits.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_count(n: usize, d: u32, out: *mut u64) -> EsStatus {
    guard(|| {
        let w = w_count(n, d)?;
        let w = u64::try_from(w).map_err(|_| Fail(EsStatus::Unsupported, format!("w({n},{d}) exceeds 64 bits")))?;
        write_out(out, w)
    })
}

/// Parses a tensor from JSON (`{"n","d","kind","forms"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_from_json(json: *const c_char, out: *mut *mut EsTensor) -> EsStatus {
    guard(|| {
        let t = io::tensor_from_json(&read_json(json)?)?;
        write_out(out, Box::into_raw(Box::new(EsTensor { inner: t })))
    })
}

/// Random tensor with integer coefficients in `[-bound, bound]`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_random(
    n: usize,
    d: u32,
    symmetric: bool,
    seed: u64,
    bound: i64,
    out: *mut *mut EsTensor,
) -> EsStatus {
    guard(|| {
        let t = random_tensor(n, d, symmetric, seed, bound)?;
        write_out(out, Box::into_raw(Box::new(EsTensor { inner: t })))
    })
}

/// # Safety
/// `t` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_free(t: *mut EsTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_to_json(t: *const EsTensor, out: *mut *mut c_char) -> EsStatus {
    guard(|| write_json(out, &io::tensor_to_json(&handle(t)?.inner)))
}

/// The tuple of 2x2 minors of a tensor.
///
/// # Safety
/// `t` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_generators(t: *const EsTensor, out: *mut *mut EsTuple) -> EsStatus {
    guard(|| {
        let f = handle(t)?.inner.det_tuple();
        write_out(out, Box::into_raw(Box::new(EsTuple { inner: f })))
    })
}

/// Tests whether a point (JSON coordinate array) is an eigenpoint; floating
/// points are compared with `tol`.
///
/// # Safety
/// `t` must be a live handle, `point_json` a NUL-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_is_eigenpoint(
    t: *const EsTensor,
    point_json: *const c_char,
    tol: f64,
    out: *mut bool,
) -> EsStatus {
    guard(|| {
        let p = io::point_from_json(&read_json(point_json)?)?;
        let m = is_eigenpoint(&handle(t)?.inner.to_partially_symmetric(), &p, tol)?;
        write_out(out, m.is_eigenpoint)
    })
}

/// Eigenpoints of a tensor with `n` equal to 1 or 2, as JSON.
///
/// # Safety
/// `t` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tensor_solve(t: *const EsTensor, tol: f64, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let ps = handle(t)?.inner.to_partially_symmetric();
        let set = match ps.n() {
            1 => solve_eigenpoints_p1(&ps)?,
            2 => solve_eigenpoints_p2(&ps, tol)?,
            n => return Err(Fail(EsStatus::Unsupported, format!("no numeric solver for n = {n}"))),
        };
        write_json(out, &serde_json::to_value(&set).expect("serializable"))
    })
}

/// Parses a minor tuple from JSON (`{"n","d","entries"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tuple_from_json(json: *const c_char, out: *mut *mut EsTuple) -> EsStatus {
    guard(|| {
        let f = io::tuple_from_json(&read_json(json)?)?;
        write_out(out, Box::into_raw(Box::new(EsTuple { inner: f })))
    })
}

/// # Safety
/// `f` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn es_tuple_free(f: *mut EsTuple) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tuple_to_json(f: *const EsTuple, out: *mut *mut c_char) -> EsStatus {
    guard(|| write_json(out, &io::tuple_to_json(&handle(f)?.inner)))
}

/// Checks the Koszul and de Rham identities and recovers a tensor:
/// `{"koszul", "derham", "recovered"}`.
///
/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tuple_characterize(f: *const EsTuple, symmetric: bool, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let v = characterize(&handle(f)?.inner, symmetric);
        write_json(
            out,
            &json!({
                "koszul": v.koszul_ok,
                "derham": v.derham_ok,
                "recovered": v.recovered.as_ref().map(io::tensor_to_json),
            }),
        )
    })
}

/// Predicted and actual Hilbert function for degrees `0..=window`; a window of
/// zero selects the default range.
///
/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_tuple_hilbert(f: *const EsTuple, window: u32, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let rows = hilbert_table(&handle(f)?.inner, (window > 0).then_some(window))?;
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| json!({"e": r.degree, "predicted": r.predicted.to_string(), "actual": r.actual.to_string(), "agree": r.agree}))
            .collect();
        write_json(out, &Value::Array(rows))
    })
}

/// Eigenpoints of the Fermat tensor, as JSON.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_fermat_eigenpoints(n: usize, d: u32, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let set = fermat_eigenpoints(n, d)?;
        write_json(out, &serde_json::to_value(&set).expect("serializable"))
    })
}

/// Interpolates a tensor of order `d` through points given as JSON.
///
/// # Safety
/// `points_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_fit_points(
    points_json: *const c_char,
    d: u32,
    symmetric: bool,
    out: *mut *mut c_char,
) -> EsStatus {
    guard(|| {
        let pts = io::points_from_json(&read_json(points_json)?)?;
        let r = fit_tensor_to_points(&pts, d, symmetric)?;
        write_json(
            out,
            &json!({
                "found": r.found,
                "kernel_dim": r.kernel_dim,
                "trivial_dim": r.trivial_dim,
                "witness": r.witness.as_ref().map(io::tensor_to_json),
            }),
        )
    })
}

/// Lines through `d + 1` or more of the points, and lines through exactly `d`.
///
/// # Safety
/// `points_json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_collinearity_report(points_json: *const c_char, d: u32, out: *mut *mut c_char) -> EsStatus {
    guard(|| {
        let pts = io::points_from_json(&read_json(points_json)?)?;
        let r = collinearity_report(&pts, d)?;
        write_json(out, &serde_json::to_value(&r).expect("serializable"))
    })
}
