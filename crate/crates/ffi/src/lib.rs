//! C interface. Objects are handed out as opaque pointers and released with
//! the matching `*_free` function. Every fallible call returns a
//! [`DcStatus`]; the message for the last failure on the calling thread is
//! available from [`dc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diophcolor::arith::{padic_abs_i64, Surd};
use diophcolor::cayley::{self, GenSet};
use diophcolor::cf::{self, CfExpansion};
use diophcolor::witness::{self, Certificate};
use diophcolor::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcStatus {
    Ok = 0,
    NullPointer = 1,
    NotPrime = 2,
    InvalidSurd = 3,
    RationalInput = 4,
    OutOfRange = 5,
    NotUnimodular = 6,
    Precondition = 7,
    BudgetExceeded = 8,
    BelowThreshold = 9,
    Internal = 10,
    Panic = 11,
}

impl From<&Error> for DcStatus {
    fn from(e: &Error) -> DcStatus {
        match e {
            Error::NotPrime(_) => DcStatus::NotPrime,
            Error::InvalidSurd(_) => DcStatus::InvalidSurd,
            Error::RationalInput => DcStatus::RationalInput,
            Error::OutOfRange(_) => DcStatus::OutOfRange,
            Error::NotUnimodular(_) => DcStatus::NotUnimodular,
            Error::Precondition(_) => DcStatus::Precondition,
            Error::BudgetExceeded(_) => DcStatus::BudgetExceeded,
            Error::BelowThreshold(_) => DcStatus::BelowThreshold,
            Error::Inconsistency(_) => DcStatus::Internal,
        }
    }
}

/// A quadratic surd `(P + sqrt D)/Q`.
pub struct DcSurd(Surd);

/// An eventually periodic continued fraction.
pub struct DcCf(CfExpansion);

/// The records of a witness sweep.
pub struct DcSweep(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, recording the error message and mapping panics to `Panic`.
fn guard(f: impl FnOnce() -> Result<(), (DcStatus, String)>) -> DcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside diophcolor".into());
            DcStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (DcStatus, String) {
    (DcStatus::from(&e), e.to_string())
}

fn null(what: &str) -> (DcStatus, String) {
    (DcStatus::NullPointer, format!("{what} is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failure on this thread, or null.
///
/// The pointer stays valid until the next call into this library on the
/// same thread. Do not free it.
#[no_mangle]
pub extern "C" fn dc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `(p + sqrt d)/q` in normal form.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dc_surd_new(p: i64, d: i64, q: i64, out: *mut *mut DcSurd) -> DcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = Surd::new(p, d, q).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DcSurd(s)));
        Ok(())
    })
}

/// Rendering such as `(-1 + sqrt(2))/1`. Free with [`dc_string_free`].
///
/// # Safety
/// `s` must be null or a live handle from [`dc_surd_new`].
#[no_mangle]
pub unsafe extern "C" fn dc_surd_to_string(s: *const DcSurd) -> *mut c_char {
    match s.as_ref() {
        Some(s) => into_c_string(s.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a handle from [`dc_surd_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_surd_free(s: *mut DcSurd) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Expands an irrational surd in `(0, 1)`.
///
/// # Safety
/// `x` must be a live surd handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dc_cf_expand(x: *const DcSurd, out: *mut *mut DcCf) -> DcStatus {
    guard(|| {
        let x = x.as_ref().ok_or_else(|| null("x"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let e = cf::cf_expand(&x.0, cf::DEFAULT_MAX_STATES).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DcCf(e)));
        Ok(())
    })
}

/// Builds an expansion from its digits; the period must be nonempty.
///
/// # Safety
/// `pre` and `per` must point to `pre_len` and `per_len` readable values
/// (either may be null when its length is 0). `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn dc_cf_new(
    pre: *const u64,
    pre_len: usize,
    per: *const u64,
    per_len: usize,
    out: *mut *mut DcCf,
) -> DcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let pre = slice_arg(pre, pre_len, "pre")?;
        let per = slice_arg(per, per_len, "per")?;
        let e = CfExpansion::new(pre.to_vec(), per.to_vec()).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DcCf(e)));
        Ok(())
    })
}

unsafe fn slice_arg<'a>(p: *const u64, len: usize, what: &str) -> Result<&'a [u64], (DcStatus, String)> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

/// Length of the preperiod; 0 for a null handle.
///
/// # Safety
/// `cf` must be null or a live expansion handle.
#[no_mangle]
pub unsafe extern "C" fn dc_cf_preperiod_len(cf: *const DcCf) -> usize {
    cf.as_ref().map_or(0, |c| c.0.preperiod().len())
}

/// Length of the period; 0 for a null handle.
///
/// # Safety
/// `cf` must be null or a live expansion handle.
#[no_mangle]
pub unsafe extern "C" fn dc_cf_period_len(cf: *const DcCf) -> usize {
    cf.as_ref().map_or(0, |c| c.0.period().len())
}

/// Digit `a_k`, counting from `k = 1`; 0 for a null handle or `k = 0`.
///
/// # Safety
/// `cf` must be null or a live expansion handle.
#[no_mangle]
pub unsafe extern "C" fn dc_cf_digit(cf: *const DcCf, k: usize) -> u64 {
    match cf.as_ref() {
        Some(c) if k >= 1 => c.0.digit(k),
        _ => 0,
    }
}

/// # Safety
/// `cf` must be null or an expansion handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_cf_free(cf: *mut DcCf) {
    if !cf.is_null() {
        drop(Box::from_raw(cf));
    }
}

/// `|n|_p = num / den`, with `num = 0` and `den = 1` for `n = 0`.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dc_padic_abs(n: i64, p: u64, num: *mut u32, den: *mut u64) -> DcStatus {
    guard(|| {
        if num.is_null() || den.is_null() {
            return Err(null("output"));
        }
        let a = padic_abs_i64(n, p).map_err(lib_err)?;
        // p^v divides n, so it fits
        let d: u64 = a.denominator().try_into().expect("divisor of an i64");
        *num = a.numerator();
        *den = d;
        Ok(())
    })
}

/// Chromatic number of the Cayley graph of `gens` on `{0, ..., m}`.
/// A `budget` of 0 uses the default search budget.
///
/// # Safety
/// `gens` must point to `len` readable values and `out` be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn dc_chromatic_number(
    gens: *const u64,
    len: usize,
    m: u64,
    budget: u64,
    out: *mut u64,
) -> DcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let gens = GenSet::new(slice_arg(gens, len, "gens")?.to_vec()).map_err(lib_err)?;
        let budget = if budget == 0 { cayley::DEFAULT_NODE_BUDGET } else { budget };
        let g = cayley::window_graph(&gens, m);
        let (chi, _) = cayley::chromatic_number_with_budget(&g, budget).map_err(lib_err)?;
        *out = chi;
        Ok(())
    })
}

/// Witness records for `N = 2, 4, ..., <= nmax`. `threads = 0` means one.
///
/// # Safety
/// `cf` must be a live expansion handle and `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn dc_witness_sweep(
    cf: *const DcCf,
    p: u64,
    nmax: u64,
    threads: usize,
    out: *mut *mut DcSweep,
) -> DcStatus {
    guard(|| {
        let cf = cf.as_ref().ok_or_else(|| null("cf"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cert = witness::liminf_certificate_with_threads(&cf.0, p, nmax, threads.max(1))
            .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DcSweep(cert)));
        Ok(())
    })
}

/// Number of records; 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live sweep handle.
#[no_mangle]
pub unsafe extern "C" fn dc_sweep_len(s: *const DcSweep) -> usize {
    s.as_ref().map_or(0, |s| s.0.records.len())
}

/// Whether every record stays below the bound.
///
/// # Safety
/// `s` must be null or a live sweep handle.
#[no_mangle]
pub unsafe extern "C" fn dc_sweep_holds(s: *const DcSweep) -> bool {
    s.as_ref().is_some_and(|s| s.0.holds())
}

/// Record `i` as a JSON object, or null when out of range.
/// Free with [`dc_string_free`].
///
/// # Safety
/// `s` must be null or a live sweep handle.
#[no_mangle]
pub unsafe extern "C" fn dc_sweep_record_json(s: *const DcSweep, i: usize) -> *mut c_char {
    match s.as_ref().and_then(|s| s.0.records.get(i)) {
        Some(r) => into_c_string(r.to_json()),
        None => ptr::null_mut(),
    }
}

/// Summary line as JSON. Free with [`dc_string_free`].
///
/// # Safety
/// `s` must be null or a live sweep handle.
#[no_mangle]
pub unsafe extern "C" fn dc_sweep_summary_json(s: *const DcSweep) -> *mut c_char {
    match s.as_ref() {
        Some(s) => into_c_string(s.0.summary_json()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a sweep handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dc_sweep_free(s: *mut DcSweep) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
