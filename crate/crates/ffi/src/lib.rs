//! C ABI for `tvsa`.
//!
//! Every fallible function returns a [`TvsaStatus`]; on failure the message is
//! available from [`tvsa_last_error`] on the same thread. Handles are opaque
//! and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use tvsa::annealer::{accept_prob, check_cooling, CoolingSchedule, CoolingValidity};
use tvsa::harness::{Experiment, ExperimentConfig, RunOptions};
use tvsa::sequences::{radical_inverse, DriverConfig, DriverPoint, RetainedDigits, SequenceDriver};
use tvsa::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvsaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Runtime = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvsaCoolingFamily {
    /// `t0 * n^-rate`.
    Power = 0,
    /// `t0 / (n * log(n + e)^rate)`.
    PowerLog = 1,
}

/// Passed as `retained` to request `R = inf`.
pub const TVSA_RETAINED_ALL: i64 = -1;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TvsaStatus {
    match e {
        Error::Config(_) => TvsaStatus::Config,
        Error::InvalidParameter(_) | Error::InvalidInput(_) => TvsaStatus::InvalidArgument,
        _ => TvsaStatus::Runtime,
    }
}

fn guard<F: FnOnce() -> Result<(), (TvsaStatus, String)>>(f: F) -> TvsaStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TvsaStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TvsaStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (TvsaStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TvsaStatus, String) {
    (TvsaStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: String) -> (TvsaStatus, String) {
    (TvsaStatus::InvalidArgument, msg)
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TvsaStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

fn retained_digits(r: i64) -> Result<RetainedDigits, (TvsaStatus, String)> {
    match r {
        TVSA_RETAINED_ALL => Ok(RetainedDigits::All),
        r if (0..=u32::MAX as i64).contains(&r) => Ok(RetainedDigits::Finite(r as u32)),
        r => Err(invalid(format!("retained digits must be >= 0 or TVSA_RETAINED_ALL, got {r}"))),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn tvsa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tvsa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Base-`b` radical inverse of `n`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn tvsa_radical_inverse(n: u64, base: u32, out: *mut f64) -> TvsaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if base < 2 {
            return Err(invalid(format!("base must be at least 2, got {base}")));
        }
        *out = radical_inverse(n, base);
        Ok(())
    })
}

/// Whether `sum_n T_n log n` converges; writes 1 (valid) or 0 to `valid`.
/// `family` is a [`TvsaCoolingFamily`] value.
///
/// # Safety
/// `valid` must be null or valid for writing one `int32_t`.
#[no_mangle]
pub unsafe extern "C" fn tvsa_check_cooling(family: u32, t0: f64, rate: f64, valid: *mut i32) -> TvsaStatus {
    guard(|| {
        if valid.is_null() {
            return Err(null("valid"));
        }
        let s = match family {
            f if f == TvsaCoolingFamily::Power as u32 => CoolingSchedule::power(t0, rate),
            f if f == TvsaCoolingFamily::PowerLog as u32 => CoolingSchedule::power_log(t0, rate),
            f => return Err(invalid(format!("unknown cooling family {f}"))),
        }
        .map_err(lib_err)?;
        *valid = (check_cooling(&s) == CoolingValidity::Valid) as i32;
        Ok(())
    })
}

/// Metropolis acceptance probability `exp((phi_y - phi_x) / t) ∧ 1`.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn tvsa_accept_prob(phi_y: f64, phi_x: f64, t: f64, out: *mut f64) -> TvsaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = accept_prob(phi_y, phi_x, t).map_err(lib_err)?;
        Ok(())
    })
}

/// Opaque `(t,d)_R` driver.
pub struct TvsaDriver {
    inner: SequenceDriver,
    point: DriverPoint,
}

/// Creates a base-2 driver of dimension `dim`. `retained` is `R`, or
/// [`TVSA_RETAINED_ALL`] for the deterministic sequence.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn tvsa_driver_new(dim: usize, retained: i64, seed: u64, out: *mut *mut TvsaDriver) -> TvsaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let r = retained_digits(retained)?;
        let config = DriverConfig::new(dim, r, seed).map_err(lib_err)?;
        let inner = SequenceDriver::new(config).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TvsaDriver { inner, point: DriverPoint::zeros(dim) }));
        Ok(())
    })
}

/// Writes the next driver point: `dim` proposal coordinates into `proposal`
/// and the acceptance coordinate into `accept`.
///
/// # Safety
/// `driver` must come from [`tvsa_driver_new`]; `proposal` must hold `len`
/// doubles; `accept` must be valid for one double.
#[no_mangle]
pub unsafe extern "C" fn tvsa_driver_next(
    driver: *mut TvsaDriver,
    proposal: *mut f64,
    len: usize,
    accept: *mut f64,
) -> TvsaStatus {
    guard(|| {
        let d = driver.as_mut().ok_or_else(|| null("driver"))?;
        if proposal.is_null() || accept.is_null() {
            return Err(null("output buffer"));
        }
        let dim = d.inner.config().dim;
        if len != dim {
            return Err(invalid(format!("buffer holds {len} values, driver dimension is {dim}")));
        }
        d.inner.next_into(&mut d.point).map_err(lib_err)?;
        std::slice::from_raw_parts_mut(proposal, len).copy_from_slice(&d.point.proposal);
        *accept = d.point.accept;
        Ok(())
    })
}

/// # Safety
/// `driver` must be null or come from [`tvsa_driver_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tvsa_driver_free(driver: *mut TvsaDriver) {
    if !driver.is_null() {
        drop(Box::from_raw(driver));
    }
}

/// Opaque validated experiment.
pub struct TvsaExperiment {
    inner: Experiment,
}

/// Parses and validates an experiment from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tvsa_experiment_from_json(json: *const c_char, out: *mut *mut TvsaExperiment) -> TvsaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let config = ExperimentConfig::from_json(text).map_err(lib_err)?;
        let inner = Experiment::new(&config).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TvsaExperiment { inner }));
        Ok(())
    })
}

/// Runs every replication and writes traces and the summary into `out_dir`.
///
/// # Safety
/// `experiment` must come from [`tvsa_experiment_from_json`]; `out_dir` must
/// be a NUL-terminated path.
#[no_mangle]
pub unsafe extern "C" fn tvsa_experiment_run(
    experiment: *const TvsaExperiment,
    out_dir: *const c_char,
    workers: usize,
    stride: u64,
) -> TvsaStatus {
    guard(|| {
        let e = experiment.as_ref().ok_or_else(|| null("experiment"))?;
        let dir = PathBuf::from(read_str(out_dir, "out_dir")?);
        e.inner.run(&RunOptions { out_dir: dir, workers, stride }).map_err(lib_err)?;
        Ok(())
    })
}

/// Runs replication `r` in memory and writes its final best value.
///
/// # Safety
/// `experiment` must come from [`tvsa_experiment_from_json`]; `best` must be
/// valid for one double.
#[no_mangle]
pub unsafe extern "C" fn tvsa_experiment_best_value(
    experiment: *const TvsaExperiment,
    replication: u32,
    best: *mut f64,
) -> TvsaStatus {
    guard(|| {
        let e = experiment.as_ref().ok_or_else(|| null("experiment"))?;
        if best.is_null() {
            return Err(null("best"));
        }
        let mut sink = String::new();
        let res = e.inner.run_replication(replication, u64::MAX, &mut sink).map_err(lib_err)?;
        *best = res.last.best_value;
        Ok(())
    })
}

/// # Safety
/// `experiment` must be null or come from [`tvsa_experiment_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tvsa_experiment_free(experiment: *mut TvsaExperiment) {
    if !experiment.is_null() {
        drop(Box::from_raw(experiment));
    }
}
