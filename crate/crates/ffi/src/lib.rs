//! C interface to the `etf` crate.
//!
//! Frames cross the boundary as opaque [`EtfFrame`] handles. Every fallible
//! function returns an [`EtfStatus`]; on failure a description is available
//! from [`etf_last_error`] until the next call on the same thread. Strings
//! returned by the library must be released with [`etf_string_free`] and
//! frames with [`etf_frame_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use etf::conditions::Verdict;
use etf::frames::{self, Frame};
use etf::{registry, Error};

/// Opaque frame handle.
pub struct EtfFrame(Frame);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotConstructible = 3,
    Numerical = 4,
    Format = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtfVerdict {
    Plausible = 0,
    DoesNotExist = 1,
    Trivial = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> EtfStatus {
    match e {
        Error::NotPositiveSemidefinite(_) | Error::NoConvergence(_) | Error::RankMismatch { .. } => {
            EtfStatus::Numerical
        }
        Error::Format(_) | Error::Json(_) | Error::Io(_) | Error::Csv(_) => EtfStatus::Format,
        Error::Precondition(_) => EtfStatus::NotConstructible,
        _ => EtfStatus::InvalidArgument,
    }
}

/// Runs `body`, recording errors and converting panics.
fn guard(body: impl FnOnce() -> Result<(), (EtfStatus, String)>) -> EtfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => EtfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            EtfStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (EtfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (EtfStatus, String) {
    (EtfStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (EtfStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (EtfStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn frame_ref<'a>(f: *const EtfFrame) -> Result<&'a Frame, (EtfStatus, String)> {
    f.as_ref().map(|h| &h.0).ok_or_else(|| null("frame"))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), (EtfStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn verdict_code(v: &Verdict) -> EtfVerdict {
    match v {
        Verdict::Plausible => EtfVerdict::Plausible,
        Verdict::Dne(_) => EtfVerdict::DoesNotExist,
        Verdict::Trivial => EtfVerdict::Trivial,
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn etf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Welch bound for `n` unit vectors in dimension `m`.
///
/// # Safety
/// `out` must be NULL or valid for a write.
#[no_mangle]
pub unsafe extern "C" fn etf_welch_bound(m: usize, n: usize, out: *mut f64) -> EtfStatus {
    guard(|| put(out, frames::welch_bound(m, n).map_err(lib_err)?, "out"))
}

/// Real and complex existence verdicts for `(m, n)`.
///
/// # Safety
/// `real_verdict` and `complex_verdict` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn etf_check(
    m: u64,
    n: u64,
    real_verdict: *mut EtfVerdict,
    complex_verdict: *mut EtfVerdict,
) -> EtfStatus {
    guard(|| {
        let report = etf::conditions::check(m, n).map_err(lib_err)?;
        put(real_verdict, verdict_code(&report.real_verdict), "real_verdict")?;
        put(
            complex_verdict,
            verdict_code(&report.complex_verdict),
            "complex_verdict",
        )
    })
}

fn boxed(f: Frame) -> *mut EtfFrame {
    Box::into_raw(Box::new(EtfFrame(f)))
}

/// Builds the frame of a registry family from its table label, for
/// example `"Paley(2)"` or `"Steiner BIBD(7,3,1)"`.
///
/// # Safety
/// `label` must be NULL or a NUL-terminated string; `out` must be NULL or
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn etf_construct(label: *const c_char, out: *mut *mut EtfFrame) -> EtfStatus {
    guard(|| {
        let label = read_str(label, "label")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let fd = registry::find(label)
            .ok_or_else(|| (EtfStatus::InvalidArgument, format!("no family labelled {label:?}")))?;
        let frame = registry::try_construct(&fd).map_err(|e| (EtfStatus::NotConstructible, e.to_string()))?;
        put(out, boxed(frame), "out")
    })
}

/// Parses a frame from its JSON form.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
/// valid for a write.
#[no_mangle]
pub unsafe extern "C" fn etf_frame_from_json(json: *const c_char, out: *mut *mut EtfFrame) -> EtfStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let frame = frames::from_json_str(text).map_err(lib_err)?;
        put(out, boxed(frame), "out")
    })
}

/// JSON form of a frame, or NULL on failure. Release with
/// [`etf_string_free`].
///
/// # Safety
/// `frame` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn etf_frame_to_json(frame: *const EtfFrame) -> *mut c_char {
    let mut result = ptr::null_mut();
    guard(|| {
        let text = frames::to_json_string(frame_ref(frame)?);
        result = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(())
    });
    result
}

/// # Safety
/// `frame` must be NULL or a live handle; `m` and `n` must be NULL or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn etf_frame_dims(frame: *const EtfFrame, m: *mut usize, n: *mut usize) -> EtfStatus {
    guard(|| {
        let f = frame_ref(frame)?;
        put(m, f.m(), "m")?;
        put(n, f.n(), "n")
    })
}

/// Entry `(i, j)` of the `m x n` synthesis matrix.
///
/// # Safety
/// `frame` must be NULL or a live handle; `re` and `im` must be NULL or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn etf_frame_entry(
    frame: *const EtfFrame,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> EtfStatus {
    guard(|| {
        let f = frame_ref(frame)?;
        if i >= f.m() || j >= f.n() {
            return Err((
                EtfStatus::InvalidArgument,
                format!("entry ({i}, {j}) outside {} x {}", f.m(), f.n()),
            ));
        }
        let z = f.entry(i, j);
        put(re, z.re, "re")?;
        put(im, z.im, "im")
    })
}

/// Checks unit norms, tightness and equiangularity at tolerance `tol`.
///
/// # Safety
/// `frame` must be NULL or a live handle; `is_etf` must be NULL or valid
/// for a write; `coherence` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn etf_verify(
    frame: *const EtfFrame,
    tol: f64,
    is_etf: *mut bool,
    coherence: *mut f64,
) -> EtfStatus {
    guard(|| {
        let f = frame_ref(frame)?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err((
                EtfStatus::InvalidArgument,
                format!("tolerance must be positive, got {tol}"),
            ));
        }
        let report = frames::verify_etf(f, tol);
        put(is_etf, report.is_etf(), "is_etf")?;
        if !coherence.is_null() {
            coherence.write(report.coherence);
        }
        Ok(())
    })
}

/// Naimark complement of a tight frame with `n > m`.
///
/// # Safety
/// `frame` must be NULL or a live handle; `out` must be NULL or valid for a
/// write.
#[no_mangle]
pub unsafe extern "C" fn etf_naimark(frame: *const EtfFrame, out: *mut *mut EtfFrame) -> EtfStatus {
    guard(|| {
        let complement = frames::naimark_complement(frame_ref(frame)?).map_err(lib_err)?;
        put(out, boxed(complement), "out")
    })
}

/// # Safety
/// `frame` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn etf_frame_free(frame: *mut EtfFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn etf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
