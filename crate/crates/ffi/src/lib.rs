//! C ABI over the laxforge engine.
//!
//! Every entry point returns an [`LfStatus`]; on failure the message is
//! available from [`lf_last_error`] on the same thread. Strings handed out
//! by the library must be released with [`lf_string_free`], handles with
//! their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use laxforge::gradedmat::{build_vector_rep, Representation};
use laxforge::laxengine::{assemble_r, extend_sigma, init_simple_sigma, SigmaSet};
use laxforge::qring::Rational;
use laxforge::shell::Suite;
use laxforge::spectral::{build_spectral_r, check_spectral, SpectralKind};
use laxforge::superroot::{build_algebra, AlgebraData};
use laxforge::verifier::{reports_to_json, run_check};
use laxforge::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidInput = 2,
    UnsupportedRank = 3,
    Parse = 4,
    Schema = 5,
    Pole = 6,
    RelationViolation = 7,
    CheckFailed = 8,
    Io = 9,
    Internal = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfSpectralKind {
    Untwisted = 0,
    Twisted = 1,
}

/// Opaque handle to the root data of `osp(m|n)`.
pub struct LfAlgebra {
    alg: AlgebraData,
}

/// Opaque handle to a complete set of `σ̂` operators on some module.
pub struct LfSigma {
    sigma: SigmaSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LfStatus {
    match e {
        Error::UnsupportedRank { .. } => LfStatus::UnsupportedRank,
        Error::InvalidInput(_) | Error::DimensionMismatch(_) | Error::Sampling(_) => LfStatus::InvalidInput,
        Error::Parse(_) => LfStatus::Parse,
        Error::Schema(_) | Error::Json(_) => LfStatus::Schema,
        Error::Pole { .. } => LfStatus::Pole,
        Error::RelationViolation { .. } => LfStatus::RelationViolation,
        Error::Io(_) => LfStatus::Io,
        Error::Internal(_) => LfStatus::Internal,
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail::Core(e.into())
    }
}

/// Runs `f`, mapping errors and panics to a status and the last-error slot.
fn guard(f: impl FnOnce() -> Result<LfStatus, Fail>) -> LfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            LfStatus::NullArgument
        }
        Ok(Err(Fail::Core(e))) => {
            let s = status_of(&e);
            set_error(e.to_string());
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            LfStatus::Panic
        }
    }
}

fn null(what: &'static str) -> Fail {
    Fail::Null(what)
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::InvalidInput(format!("{what} is not UTF-8")).into())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Error> {
    let c = CString::new(s).map_err(|_| Error::Internal("string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(null("output pointer"))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn lf_algebra_new(m: i64, n: i64, out: *mut *mut LfAlgebra) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let alg = build_algebra(m, n)?;
        *out = Box::into_raw(Box::new(LfAlgebra { alg }));
        Ok(LfStatus::Ok)
    })
}

/// # Safety
/// `a` must be null or a handle from [`lf_algebra_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lf_algebra_free(a: *mut LfAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension `m + n` of the vector module; 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lf_algebra_dim(a: *const LfAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.alg.dim())
}

/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_algebra_to_json(a: *const LfAlgebra, out: *mut *mut c_char) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        put_string(out, serde_json::to_string_pretty(&a.alg)?)?;
        Ok(LfStatus::Ok)
    })
}

fn build_sigma(rep: &Representation) -> Result<SigmaSet, Error> {
    extend_sigma(init_simple_sigma(rep)?)
}

/// Operators on the vector module.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_sigma_vector(a: *const LfAlgebra, out: *mut *mut LfSigma) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        let sigma = build_sigma(&build_vector_rep(&a.alg)?)?;
        *out = Box::into_raw(Box::new(LfSigma { sigma }));
        Ok(LfStatus::Ok)
    })
}

/// Operators on a module given as a representation JSON document.
///
/// # Safety
/// `rep_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_sigma_from_rep_json(rep_json: *const c_char, out: *mut *mut LfSigma) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let rep = Representation::from_json(read_str(rep_json, "rep_json")?)?;
        let sigma = build_sigma(&rep)?;
        *out = Box::into_raw(Box::new(LfSigma { sigma }));
        Ok(LfStatus::Ok)
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lf_sigma_free(s: *mut LfSigma) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_sigma_to_json(s: *const LfSigma, out: *mut *mut c_char) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let s = s.as_ref().ok_or_else(|| null("sigma"))?;
        put_string(out, s.sigma.to_json())?;
        Ok(LfStatus::Ok)
    })
}

/// The R-matrix assembled from `s`, as JSON.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_r_matrix_json(s: *const LfSigma, out: *mut *mut c_char) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let s = s.as_ref().ok_or_else(|| null("sigma"))?;
        let r = assemble_r(&s.sigma)?;
        let doc = r.to_json_value(s.sigma.algebra(), &s.sigma.rep.name);
        put_string(out, serde_json::to_string_pretty(&doc)?)?;
        Ok(LfStatus::Ok)
    })
}

/// Runs the comma-separated `suites` (or `all`). The JSON report is written
/// to `report` in every case; the status is `CheckFailed` when any suite
/// fails. Spectral suites use 20 samples and `seed`.
///
/// # Safety
/// `s` must be a live handle, `suites` a nul-terminated string and `report`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_verify(
    s: *const LfSigma,
    suites: *const c_char,
    seed: u64,
    report: *mut *mut c_char,
) -> LfStatus {
    guard(|| {
        check_out(report)?;
        let s = s.as_ref().ok_or_else(|| null("sigma"))?;
        let list = Suite::parse_list(read_str(suites, "suites")?)?;
        let alg = s.sigma.algebra();
        let reports = list
            .iter()
            .map(|suite| match suite {
                Suite::Check(c) => run_check(*c, &s.sigma),
                Suite::Spectral(k) => check_spectral(alg, *k, 20, seed),
            })
            .collect::<Result<Vec<_>, _>>()?;
        put_string(report, serde_json::to_string_pretty(&reports_to_json(&reports))?)?;
        if reports.iter().all(|r| r.passed()) {
            Ok(LfStatus::Ok)
        } else {
            set_error(format!(
                "suite {} failed",
                reports.iter().find(|r| !r.passed()).map_or("?", |r| r.check.as_str())
            ));
            Ok(LfStatus::CheckFailed)
        }
    })
}

/// Exact value of the spectral R-matrix at `s = q^{1/2}` and `z`, given as
/// rational strings such as `"3/2"`. Output entries are `[row, col, "p/q"]`,
/// 1-based.
///
/// # Safety
/// `a` must be a live handle, `s` and `z` nul-terminated strings and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lf_spectral_eval(
    a: *const LfAlgebra,
    kind: LfSpectralKind,
    s: *const c_char,
    z: *const c_char,
    out: *mut *mut c_char,
) -> LfStatus {
    guard(|| {
        check_out(out)?;
        let a = a.as_ref().ok_or_else(|| null("algebra"))?;
        let s0: Rational = read_str(s, "s")?.parse()?;
        let z0: Rational = read_str(z, "z")?.parse()?;
        let kind = match kind {
            LfSpectralKind::Untwisted => SpectralKind::Untwisted,
            LfSpectralKind::Twisted => SpectralKind::Twisted,
        };
        let v = build_spectral_r(&a.alg, kind)?.eval(&s0, &z0)?;
        let entries: Vec<(usize, usize, String)> =
            v.to_triples().into_iter().map(|(r, c, x)| (r, c, x.to_string())).collect();
        let doc = serde_json::json!({"kind": kind, "s": s0, "z": z0, "entries": entries});
        put_string(out, serde_json::to_string_pretty(&doc)?)?;
        Ok(LfStatus::Ok)
    })
}
