//! C interface to `choicelens`.
//!
//! Datasets live behind an opaque [`ClDataset`] handle. Every fallible call
//! returns a [`ClStatus`]; on failure the message is available from
//! [`cl_last_error`] on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with [`cl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use choicelens::classify::{classify_models, Analysis, ModelId};
use choicelens::domain::ChoiceFunction;
use choicelens::parse::{load_dataset, parse_dataset};
use choicelens::{report, Error};

/// Result of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidDataset = 3,
    BoundExceeded = 4,
    UnknownModel = 5,
    NotInModel = 6,
    Internal = 7,
}

/// Opaque handle to a parsed choice dataset.
pub struct ClDataset {
    inner: ChoiceFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> ClStatus {
    match e {
        _ if e.is_dataset_error() => ClStatus::InvalidDataset,
        _ if e.is_bound_error() => ClStatus::BoundExceeded,
        Error::UnknownModel(_) => ClStatus::UnknownModel,
        Error::NotInModel { .. } => ClStatus::NotInModel,
        _ => ClStatus::Internal,
    }
}

fn fail(status: ClStatus, message: impl Into<String>) -> ClStatus {
    set_error(message);
    status
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), ClStatus>) -> ClStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(ClStatus::Internal, "internal panic"),
    }
}

fn lib_err(e: Error) -> ClStatus {
    fail(status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, ClStatus> {
    if p.is_null() {
        return Err(fail(ClStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ClStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn handle<'a>(p: *const ClDataset) -> Result<&'a ChoiceFunction, ClStatus> {
    p.as_ref()
        .map(|d| &d.inner)
        .ok_or_else(|| fail(ClStatus::NullArgument, "null dataset handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), ClStatus> {
    if out.is_null() {
        return Err(fail(ClStatus::NullArgument, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), ClStatus> {
    let text = value.to_string();
    let c = CString::new(text).map_err(|_| fail(ClStatus::Internal, "NUL in output"))?;
    write_out(out, c.into_raw())
}

/// Parses dataset text into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_dataset_parse(
    text: *const c_char,
    out: *mut *mut ClDataset,
) -> ClStatus {
    guard(|| {
        let text = read_str(text)?;
        let c = parse_dataset(text).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(ClDataset { inner: c })))
    })
}

/// Reads and parses a dataset file into a new handle stored in `*out`.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cl_dataset_load(
    path: *const c_char,
    out: *mut *mut ClDataset,
) -> ClStatus {
    guard(|| {
        let path = read_str(path)?;
        let c = load_dataset(path).map_err(lib_err)?;
        write_out(out, Box::into_raw(Box::new(ClDataset { inner: c })))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `dataset` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_dataset_free(dataset: *mut ClDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Number of items in the ground set, or 0 for a null handle.
///
/// # Safety
/// `dataset` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cl_dataset_item_count(dataset: *const ClDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.n())
}

/// Classifies the dataset and stores a JSON object keyed by model name in
/// `*out_json`. `models` is a comma-separated list, or null for all models.
///
/// # Safety
/// `dataset` must be a live handle; `models` null or NUL-terminated;
/// `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_classify_json(
    dataset: *const ClDataset,
    models: *const c_char,
    out_json: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let c = handle(dataset)?;
        let models = if models.is_null() {
            ModelId::standard_list(c.n())
        } else {
            ModelId::parse_list(read_str(models)?).map_err(lib_err)?
        };
        let r = classify_models(c, &models).map_err(lib_err)?;
        write_json(out_json, &report::classification_json(c.ground(), &r))
    })
}

/// Elicits a verified explanation for `model` and stores it as JSON in
/// `*out_json`. Returns `NotInModel` when the dataset is outside the model.
///
/// # Safety
/// `dataset` must be a live handle; `model` NUL-terminated; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_elicit_json(
    dataset: *const ClDataset,
    model: *const c_char,
    out_json: *mut *mut c_char,
) -> ClStatus {
    guard(|| {
        let c = handle(dataset)?;
        let m: ModelId = read_str(model)?.parse().map_err(lib_err)?;
        let e = Analysis::new(c).elicit(m).map_err(lib_err)?;
        write_json(out_json, &report::explanation_json(&e))
    })
}

/// Decides a single model, storing 1 in `*out_holds` if the dataset is in it
/// and 0 otherwise.
///
/// # Safety
/// `dataset` must be a live handle; `model` NUL-terminated; `out_holds` writable.
#[no_mangle]
pub unsafe extern "C" fn cl_decide(
    dataset: *const ClDataset,
    model: *const c_char,
    out_holds: *mut i32,
) -> ClStatus {
    guard(|| {
        let c = handle(dataset)?;
        let m: ModelId = read_str(model)?.parse().map_err(lib_err)?;
        let v = Analysis::new(c).decide(m).map_err(lib_err)?;
        write_out(out_holds, v.holds as i32)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn cl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
