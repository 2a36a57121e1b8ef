//! C ABI over `phaselab`.
//!
//! Frames and arrangements are loaded from the same JSON formats as the CLI
//! and held behind opaque handles. Every function returns a [`PlStatus`];
//! on failure the message is available from [`pl_last_error`] on the same
//! thread. Strings handed out by the library must be released with
//! [`pl_string_free`], handles with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use phaselab::error::Error;
use phaselab::field::{Backend, Field, Rational};
use phaselab::frames::{self, Frame};
use phaselab::io::{parse_vector, ArrangementFile, FrameFile};
use phaselab::poly::{self, Interval};
use phaselab::subspaces::{self, Arrangement};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    GuardExceeded = 5,
    Panic = 6,
}

enum FrameInner {
    Exact(Frame<Rational>),
    Float(Frame<f64>),
}

enum ArrangementInner {
    Exact(Arrangement<Rational>),
    Float(Arrangement<f64>),
}

/// Opaque frame handle.
pub struct PlFrame(FrameInner);

/// Opaque subspace arrangement handle.
pub struct PlArrangement(ArrangementInner);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: PlStatus, msg: &str) -> PlStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PlStatus {
    let status = match e {
        Error::Parse(_) => PlStatus::ParseError,
        Error::Guard(_) => PlStatus::GuardExceeded,
        _ => PlStatus::InvalidInput,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, converting panics into [`PlStatus::Panic`].
fn guarded(f: impl FnOnce() -> PlStatus) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(PlStatus::Panic, &format!("internal panic: {msg}"))
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PlStatus> {
    if s.is_null() {
        return Err(fail(PlStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(PlStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

macro_rules! out_ptr {
    ($p:expr) => {
        match unsafe { $p.as_mut() } {
            Some(r) => r,
            None => return fail(PlStatus::NullPointer, "null output pointer"),
        }
    };
}

macro_rules! handle {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(r) => &r.0,
            None => return fail(PlStatus::NullPointer, "null handle"),
        }
    };
}

macro_rules! try_str {
    ($p:expr) => {
        match unsafe { read_str($p) } {
            Ok(s) => s,
            Err(status) => return status,
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a frame file. The backend follows the file's `scalars` field.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_from_json(json: *const c_char, out: *mut *mut PlFrame) -> PlStatus {
    guarded(|| {
        let out = out_ptr!(out);
        *out = ptr::null_mut();
        let text = try_str!(json);
        let built = FrameFile::parse(text).and_then(|f| match f.backend() {
            Backend::Exact => f.build().map(FrameInner::Exact),
            Backend::Float => f.build().map(FrameInner::Float),
        });
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PlFrame(inner)));
                PlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `frame` must be null or a handle from [`pl_frame_from_json`], freed once.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_free(frame: *mut PlFrame) {
    if !frame.is_null() {
        drop(Box::from_raw(frame));
    }
}

/// Number of vectors and ambient dimension.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_shape(frame: *const PlFrame, len: *mut usize, dim: *mut usize) -> PlStatus {
    guarded(|| {
        let f = handle!(frame);
        let (len, dim) = (out_ptr!(len), out_ptr!(dim));
        (*len, *dim) = match f {
            FrameInner::Exact(f) => (f.len(), f.dim()),
            FrameInner::Float(f) => (f.len(), f.dim()),
        };
        PlStatus::Ok
    })
}

fn frame_bool(
    frame: &FrameInner,
    out: &mut bool,
    exact: impl FnOnce(&Frame<Rational>) -> Result<bool, Error>,
    float: impl FnOnce(&Frame<f64>) -> Result<bool, Error>,
) -> PlStatus {
    let r = match frame {
        FrameInner::Exact(f) => exact(f),
        FrameInner::Float(f) => float(f),
    };
    match r {
        Ok(v) => {
            *out = v;
            PlStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

mod checks {
    use super::*;

    pub fn full_spark<T: Field>(f: &Frame<T>) -> Result<bool, Error> {
        frames::full_spark(f).map(|r| r.full_spark)
    }

    pub fn complement_property<T: Field>(f: &Frame<T>) -> Result<bool, Error> {
        frames::complement_property(f).map(|r| r.holds)
    }

    pub fn phase_retrieval<T: Field>(f: &Frame<T>) -> Result<bool, Error> {
        frames::does_phase_retrieval(f).map(|r| r.holds)
    }

    pub fn tight<T: Field>(f: &Frame<T>) -> Result<bool, Error> {
        Ok(frames::is_tight(f).is_some())
    }

    pub fn scalable<T: Field>(f: &Frame<T>) -> Result<bool, Error> {
        frames::scalability(f).map(|c| c.is_some())
    }
}

/// Every `d`-subset is a basis.
///
/// # Safety
/// `frame` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_full_spark(frame: *const PlFrame, out: *mut bool) -> PlStatus {
    guarded(|| {
        let inner = handle!(frame);
        let out = out_ptr!(out);
        frame_bool(inner, out, checks::full_spark, checks::full_spark)
    })
}

/// Complement property by subset enumeration.
///
/// # Safety
/// `frame` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_complement_property(frame: *const PlFrame, out: *mut bool) -> PlStatus {
    guarded(|| {
        let inner = handle!(frame);
        let out = out_ptr!(out);
        frame_bool(inner, out, checks::complement_property, checks::complement_property)
    })
}

/// Phase retrieval (complement property, with the `2d − 1` count shortcut).
///
/// # Safety
/// `frame` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_phase_retrieval(frame: *const PlFrame, out: *mut bool) -> PlStatus {
    guarded(|| {
        let inner = handle!(frame);
        let out = out_ptr!(out);
        frame_bool(inner, out, checks::phase_retrieval, checks::phase_retrieval)
    })
}

/// Frame operator is a multiple of the identity.
///
/// # Safety
/// `frame` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_is_tight(frame: *const PlFrame, out: *mut bool) -> PlStatus {
    guarded(|| {
        let inner = handle!(frame);
        let out = out_ptr!(out);
        frame_bool(inner, out, checks::tight, checks::tight)
    })
}

/// Nonnegative weights making the frame tight exist.
///
/// # Safety
/// `frame` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_frame_scalable(frame: *const PlFrame, out: *mut bool) -> PlStatus {
    guarded(|| {
        let inner = handle!(frame);
        let out = out_ptr!(out);
        frame_bool(inner, out, checks::scalable, checks::scalable)
    })
}

/// Parses an arrangement file. The backend follows the file's `scalars` field.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_arrangement_from_json(json: *const c_char, out: *mut *mut PlArrangement) -> PlStatus {
    guarded(|| {
        let out = out_ptr!(out);
        *out = ptr::null_mut();
        let text = try_str!(json);
        let built = ArrangementFile::parse(text).and_then(|f| match f.backend() {
            Backend::Exact => f.build().map(ArrangementInner::Exact),
            Backend::Float => f.build().map(ArrangementInner::Float),
        });
        match built {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(PlArrangement(inner)));
                PlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `arrangement` must be null or a handle from [`pl_arrangement_from_json`], freed once.
#[no_mangle]
pub unsafe extern "C" fn pl_arrangement_free(arrangement: *mut PlArrangement) {
    if !arrangement.is_null() {
        drop(Box::from_raw(arrangement));
    }
}

fn verify<T: Field>(arr: &Arrangement<T>, x: &str) -> Result<(bool, usize), Error> {
    let x = parse_vector::<T>(&[x.to_string()])?;
    subspaces::edidin_verify_witness(arr, &x).map(|w| (w.deficient(), w.rank))
}

/// Rank of `{P_i x}` for `x` given as comma-separated scalars such as `"1,1,-1/2"`.
/// `deficient` is true when the rank is below the dimension, which proves
/// the arrangement fails phase retrieval.
///
/// # Safety
/// `arrangement` must be a live handle, `x` a NUL-terminated string and the
/// outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pl_arrangement_edidin_verify(
    arrangement: *const PlArrangement,
    x: *const c_char,
    deficient: *mut bool,
    rank: *mut usize,
) -> PlStatus {
    guarded(|| {
        let arr = handle!(arrangement);
        let (deficient, rank) = (out_ptr!(deficient), out_ptr!(rank));
        let x = try_str!(x);
        let r = match arr {
            ArrangementInner::Exact(a) => verify(a, x),
            ArrangementInner::Float(a) => verify(a, x),
        };
        match r {
            Ok((d, k)) => {
                (*deficient, *rank) = (d, k);
                PlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Seeded numerical search for a deficient `{P_i x}`. `witness_found` is
/// set only for exactly verified witnesses; `min_sigma` is the smallest
/// singular value reached.
///
/// # Safety
/// `arrangement` must be a live handle and the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pl_arrangement_edidin_search(
    arrangement: *const PlArrangement,
    restarts: usize,
    seed: u64,
    witness_found: *mut bool,
    min_sigma: *mut f64,
) -> PlStatus {
    guarded(|| {
        let arr = handle!(arrangement);
        let (found, sigma) = (out_ptr!(witness_found), out_ptr!(min_sigma));
        (*found, *sigma) = match arr {
            ArrangementInner::Exact(a) => {
                let r = subspaces::edidin_numeric_falsify(a, restarts, seed);
                (r.witness.is_some(), r.min_sigma)
            }
            ArrangementInner::Float(a) => {
                let r = subspaces::edidin_numeric_falsify(a, restarts, seed);
                (r.witness.is_some(), r.min_sigma)
            }
        };
        PlStatus::Ok
    })
}

/// Number of distinct real roots of `f₀(1, t)` for the built-in degree-10
/// eliminant of the six hyperplanes in `R⁴`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_f0_real_root_count(out: *mut usize) -> PlStatus {
    guarded(|| {
        let out = out_ptr!(out);
        let p = poly::f0_dataset().specialize_x34_one();
        match poly::count_real_roots(&p, &Interval::Real) {
            Ok(n) => {
                *out = n;
                PlStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs one CLI command in-process. `args` are the arguments after the
/// program name; `stdin_text` may be null. The JSON report lines and the
/// human summary are returned through `out_stdout` and `out_stderr`
/// (either may be null if not wanted) and must be freed with
/// [`pl_string_free`]. `exit_code` receives the CLI exit code.
///
/// # Safety
/// `args` must point to `argc` NUL-terminated strings; other pointers must
/// be valid or null where allowed.
#[no_mangle]
pub unsafe extern "C" fn pl_run(
    args: *const *const c_char,
    argc: usize,
    stdin_text: *const c_char,
    exit_code: *mut i32,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> PlStatus {
    guarded(|| {
        let code = out_ptr!(exit_code);
        if args.is_null() && argc > 0 {
            return fail(PlStatus::NullPointer, "null argument array");
        }
        let mut words: Vec<&str> = Vec::with_capacity(argc);
        for i in 0..argc {
            words.push(try_str!(*args.add(i)));
        }
        let input = if stdin_text.is_null() { "" } else { try_str!(stdin_text) };
        let (c, out, err) = phaselab::cli::run_captured(&words, input);
        *code = c;
        for (dst, text) in [(out_stdout, out), (out_stderr, err)] {
            if let Some(dst) = dst.as_mut() {
                *dst = CString::new(text.replace('\0', " "))
                    .expect("nul bytes removed")
                    .into_raw();
            }
        }
        PlStatus::Ok
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn pl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
