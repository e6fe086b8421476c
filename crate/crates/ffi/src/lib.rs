//! C ABI over `euler-refine`.
//!
//! Every fallible call returns an [`ErStatus`]; results come back through
//! out-pointers. Handles (`ErEgf`, `ErPermutation`, `ErEnumerator`) are
//! opaque and must be released with their `_free` function. Strings
//! returned through `char **` are owned by the caller and released with
//! [`er_string_free`]. After a failure, [`er_last_error`] describes it.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use euler_refine::bij;
use euler_refine::cli::{cmd_verify, VerifyOptions};
use euler_refine::perm::{self, AlternatingPermutations};
use euler_refine::seq;
use euler_refine::series::{self, TruncatedEgf};
use euler_refine::{AltKind, Error, MinMax, Permutation, SecondMax};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotAlternating = 3,
    OutsideDomain = 4,
    OrderMismatch = 5,
    NotInvertible = 6,
    NonIntegral = 7,
    Exhausted = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErAltKind {
    UpDown = 0,
    DownUp = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErMinMax {
    MinMax = 0,
    MaxMin = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErSecondMax {
    Upper = 0,
    Lower = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ErClassification {
    pub kind: ErAltKind,
    pub minmax: ErMinMax,
    pub secondmax: ErSecondMax,
}

/// Truncated exponential generating function.
pub struct ErEgf(TruncatedEgf);

pub struct ErPermutation(Permutation);

/// Lexicographic stream of alternating permutations.
pub struct ErEnumerator(AlternatingPermutations);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> ErStatus {
    match err {
        Error::NotAlternating(_) => ErStatus::NotAlternating,
        Error::OutsideDomain { .. } | Error::MalformedDecomposition(_) => ErStatus::OutsideDomain,
        Error::OrderMismatch { .. } => ErStatus::OrderMismatch,
        Error::NotInvertible => ErStatus::NotInvertible,
        Error::NonIntegral { .. } => ErStatus::NonIntegral,
        _ => ErStatus::InvalidArgument,
    }
}

impl From<Error> for ErStatus {
    fn from(err: Error) -> Self {
        set_last_error(&err.to_string());
        status_of(&err)
    }
}

fn fail(status: ErStatus, msg: &str) -> ErStatus {
    set_last_error(msg);
    status
}

/// Runs `f`, converting panics into `ErStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), ErStatus>) -> ErStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            ErStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(ErStatus::Panic, "internal panic"),
    }
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), ErStatus> {
    if out.is_null() {
        return Err(fail(ErStatus::NullPointer, "output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), ErStatus> {
    if out.is_null() {
        return Err(fail(ErStatus::NullPointer, "output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| fail(ErStatus::InvalidArgument, "string contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, ErStatus> {
    p.as_ref().ok_or_else(|| fail(ErStatus::NullPointer, "handle is null"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ErStatus> {
    if s.is_null() {
        return Err(fail(ErStatus::NullPointer, "string is null"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(ErStatus::InvalidArgument, "string is not UTF-8"))
}

fn alt_kind(kind: ErAltKind) -> AltKind {
    match kind {
        ErAltKind::UpDown => AltKind::UpDown,
        ErAltKind::DownUp => AltKind::DownUp,
    }
}

/// Message for the most recent failure on this thread; empty after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn er_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn er_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// ---------------------------------------------------------------- series

#[no_mangle]
pub unsafe extern "C" fn er_egf_sec(order: usize, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(series::sec_egf(order))))
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_tan(order: usize, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(series::tan_egf(order))))
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_sin(order: usize, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(series::sin_egf(order))))
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_cos(order: usize, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(series::cos_egf(order))))
}

/// The constant series `c`.
#[no_mangle]
pub unsafe extern "C" fn er_egf_constant(order: usize, c: i64, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(TruncatedEgf::constant(order, c))))
}

/// Parses `{"order": N, "a": ["a_0", ..., "a_N"]}`.
#[no_mangle]
pub unsafe extern "C" fn er_egf_from_json(json: *const c_char, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| {
        let text = read_str(json)?;
        let wire = serde_json::from_str(text).map_err(|e| fail(ErStatus::InvalidArgument, &e.to_string()))?;
        write_out(out, ErEgf(TruncatedEgf::from_json(&wire)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_add(a: *const ErEgf, b: *const ErEgf, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(borrow(a)?.0.add(&borrow(b)?.0)?)))
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_mul(a: *const ErEgf, b: *const ErEgf, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(borrow(a)?.0.mul(&borrow(b)?.0)?)))
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_scale(a: *const ErEgf, c: i64, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(borrow(a)?.0.scale(c))))
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_reciprocal(a: *const ErEgf, out: *mut *mut ErEgf) -> ErStatus {
    guard(|| write_out(out, ErEgf(borrow(a)?.0.reciprocal()?)))
}

/// Truncation order, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn er_egf_order(a: *const ErEgf) -> usize {
    a.as_ref().map_or(0, |e| e.0.order())
}

/// Writes the wire form with `a_n = n! [x^n]` as decimal strings. Fails
/// with `NON_INTEGRAL` when some `a_n` is not an integer.
#[no_mangle]
pub unsafe extern "C" fn er_egf_to_json(a: *const ErEgf, out: *mut *mut c_char) -> ErStatus {
    guard(|| {
        let wire = borrow(a)?.0.to_json()?;
        write_string(out, serde_json::to_string(&wire).expect("serializable"))
    })
}

#[no_mangle]
pub unsafe extern "C" fn er_egf_free(a: *mut ErEgf) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

// ---------------------------------------------------------- permutations

/// Parses one-line notation: bare digits (`"3412"`) or comma-separated.
#[no_mangle]
pub unsafe extern "C" fn er_perm_parse(text: *const c_char, out: *mut *mut ErPermutation) -> ErStatus {
    guard(|| write_out(out, ErPermutation(read_str(text)?.parse()?)))
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_from_values(
    values: *const u32,
    len: usize,
    out: *mut *mut ErPermutation,
) -> ErStatus {
    guard(|| {
        if values.is_null() {
            return Err(fail(ErStatus::NullPointer, "values is null"));
        }
        let v = std::slice::from_raw_parts(values, len).to_vec();
        write_out(out, ErPermutation(Permutation::new(v)?))
    })
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_degree(p: *const ErPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.degree())
}

/// Copies the one-line values into `buf`, which must hold the degree.
#[no_mangle]
pub unsafe extern "C" fn er_perm_values(p: *const ErPermutation, buf: *mut u32, len: usize) -> ErStatus {
    guard(|| {
        let p = borrow(p)?;
        copy_values(p.0.values(), buf, len)
    })
}

unsafe fn copy_values(values: &[u32], buf: *mut u32, len: usize) -> Result<(), ErStatus> {
    if buf.is_null() {
        return Err(fail(ErStatus::NullPointer, "buffer is null"));
    }
    if len < values.len() {
        return Err(fail(ErStatus::BufferTooSmall, "buffer shorter than the degree"));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    Ok(())
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_to_string(p: *const ErPermutation, out: *mut *mut c_char) -> ErStatus {
    guard(|| write_string(out, borrow(p)?.0.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_is_up_down(p: *const ErPermutation) -> bool {
    p.as_ref().is_some_and(|p| p.0.is_up_down())
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_is_down_up(p: *const ErPermutation) -> bool {
    p.as_ref().is_some_and(|p| p.0.is_down_up())
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_complement(p: *const ErPermutation, out: *mut *mut ErPermutation) -> ErStatus {
    guard(|| write_out(out, ErPermutation(borrow(p)?.0.complement())))
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_classify(p: *const ErPermutation, out: *mut ErClassification) -> ErStatus {
    guard(|| {
        let c = perm::classify(&borrow(p)?.0)?;
        if out.is_null() {
            return Err(fail(ErStatus::NullPointer, "output pointer is null"));
        }
        *out = ErClassification {
            kind: match c.kind {
                AltKind::UpDown => ErAltKind::UpDown,
                AltKind::DownUp => ErAltKind::DownUp,
            },
            minmax: match c.minmax {
                MinMax::MinMax => ErMinMax::MinMax,
                MinMax::MaxMin => ErMinMax::MaxMin,
            },
            secondmax: match c.secondmax {
                SecondMax::Upper => ErSecondMax::Upper,
                SecondMax::Lower => ErSecondMax::Lower,
            },
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn er_perm_free(p: *mut ErPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

// ----------------------------------------------------------- bijections

#[no_mangle]
pub unsafe extern "C" fn er_swap_top_two(p: *const ErPermutation, out: *mut *mut ErPermutation) -> ErStatus {
    guard(|| write_out(out, ErPermutation(bij::swap_top_two(&borrow(p)?.0)?)))
}

#[no_mangle]
pub unsafe extern "C" fn er_maxmin_to_smu(
    p: *const ErPermutation,
    side: bool,
    out: *mut *mut ErPermutation,
) -> ErStatus {
    guard(|| write_out(out, ErPermutation(bij::maxmin_to_smu(&borrow(p)?.0, side)?)))
}

#[no_mangle]
pub unsafe extern "C" fn er_smu_to_maxmin(
    p: *const ErPermutation,
    out: *mut *mut ErPermutation,
    side: *mut bool,
) -> ErStatus {
    guard(|| {
        if side.is_null() {
            return Err(fail(ErStatus::NullPointer, "side pointer is null"));
        }
        let (sigma, s) = bij::smu_to_maxmin(&borrow(p)?.0)?;
        write_out(out, ErPermutation(sigma))?;
        *side = s;
        Ok(())
    })
}

// ----------------------------------------------------------- enumeration

#[no_mangle]
pub unsafe extern "C" fn er_enum_new(n: usize, kind: ErAltKind, out: *mut *mut ErEnumerator) -> ErStatus {
    guard(|| {
        let it = AlternatingPermutations::with_prefix(n, alt_kind(kind), &[])?;
        write_out(out, ErEnumerator(it))
    })
}

/// Writes the next permutation into `buf` (length at least `n`). Returns
/// `EXHAUSTED` once the stream is finished.
#[no_mangle]
pub unsafe extern "C" fn er_enum_next(e: *mut ErEnumerator, buf: *mut u32, len: usize) -> ErStatus {
    guard(|| {
        let e = e.as_mut().ok_or_else(|| fail(ErStatus::NullPointer, "handle is null"))?;
        match e.0.next() {
            Some(p) => copy_values(p.values(), buf, len),
            None => Err(fail(ErStatus::Exhausted, "enumeration finished")),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn er_enum_free(e: *mut ErEnumerator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

// ------------------------------------------------------------ sequences

/// `E_n` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn er_euler_number(n: usize, out: *mut *mut c_char) -> ErStatus {
    guard(|| write_string(out, seq::euler_numbers(n)[n].to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn er_e_up(n: usize, out: *mut *mut c_char) -> ErStatus {
    guard(|| write_string(out, seq::e_up_formula(n)?.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn er_e_down(n: usize, out: *mut *mut c_char) -> ErStatus {
    guard(|| write_string(out, seq::e_down_recurrence(n)?.to_string()))
}

/// `E↖_n` for even `n`.
#[no_mangle]
pub unsafe extern "C" fn er_e_nw(n: usize, out: *mut *mut c_char) -> ErStatus {
    guard(|| write_string(out, seq::e_nw_formula(n)?.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn er_e_ne_nw(n: usize, ne: *mut *mut c_char, nw: *mut *mut c_char) -> ErStatus {
    guard(|| {
        if ne.is_null() || nw.is_null() {
            return Err(fail(ErStatus::NullPointer, "output pointer is null"));
        }
        let (a, b) = seq::e_ne_nw_pair(n)?;
        write_string(ne, a.to_string())?;
        write_string(nw, b.to_string())
    })
}

/// Brute-force counts for degree `n` as a JSON object with decimal
/// strings: `{"n":..,"E":..,"Ene":..,"Enw":..,"Eup":..,"Edown":..,"Dup":..,"Ddown":..}`.
#[no_mangle]
pub unsafe extern "C" fn er_count_refinements(n: usize, out: *mut *mut c_char) -> ErStatus {
    guard(|| {
        if n > perm::MAX_DEGREE {
            return Err(fail(ErStatus::InvalidArgument, "degree too large to enumerate"));
        }
        let t = perm::count_refinements(n)?;
        let json = serde_json::json!({
            "n": t.n,
            "E": t.e.to_string(),
            "Ene": t.ene.to_string(),
            "Enw": t.enw.to_string(),
            "Eup": t.eup.to_string(),
            "Edown": t.edown.to_string(),
            "Dup": t.dup.map(|v| v.to_string()),
            "Ddown": t.ddown.map(|v| v.to_string()),
        });
        write_string(out, json.to_string())
    })
}

/// Formula-only even-degree identity checks up to `n_max`. `passed`
/// receives the overall verdict; `report_json` (optional, may be null)
/// receives the full report.
#[no_mangle]
pub unsafe extern "C" fn er_theorem_check(n_max: usize, passed: *mut bool, report_json: *mut *mut c_char) -> ErStatus {
    guard(|| {
        let set = seq::theorem_check(n_max)?;
        finish_report(&set, passed, report_json)
    })
}

/// Three-way verification (enumeration, formula, EGF); see `euler-refine verify`.
#[no_mangle]
pub unsafe extern "C" fn er_verify(
    max_n: usize,
    egf_order: usize,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> ErStatus {
    guard(|| {
        let opts = VerifyOptions { max_n, egf_order, ..Default::default() };
        let set = cmd_verify(&opts)?;
        finish_report(&set, passed, report_json)
    })
}

unsafe fn finish_report(
    set: &euler_refine::ReportSet,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> Result<(), ErStatus> {
    if passed.is_null() {
        return Err(fail(ErStatus::NullPointer, "passed pointer is null"));
    }
    *passed = set.passed();
    if !report_json.is_null() {
        write_string(report_json, serde_json::to_string(set).expect("serializable"))?;
    }
    Ok(())
}
