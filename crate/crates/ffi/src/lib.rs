//! C interface to `ybe-core`.
//!
//! Objects are opaque handles created by `*_new` functions and released with the
//! matching `*_free`. Every fallible function returns a [`YbeStatus`]; on failure the
//! message is available from [`ybe_last_error_message`] on the same thread. Tables are
//! passed row-major as `n * n` arrays of 0-based indices.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ybe_core::braces::{self, SkewBrace};
use ybe_core::enumerate::{self, EnumerationTask, Mode};
use ybe_core::solutions::{self, MultipermutationLevel, Solution};
use ybe_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YbeStatus {
    Ok = 0,
    NullPointer = 1,
    /// The input tables do not define a valid object.
    InvalidInput = 2,
    /// The operation does not apply to this object (for example a non-involutive solution).
    NotApplicable = 3,
    /// A size cap or time budget was exceeded.
    Limit = 4,
    Io = 5,
    Internal = 6,
}

/// A set-theoretic solution of the Yang–Baxter equation.
pub struct YbeSolution(Solution);

/// A finite skew brace.
pub struct YbeBrace(SkewBrace);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> YbeStatus {
    match e {
        Error::NotInvolutive(_) | Error::NotTwoSided | Error::NotAbelianType | Error::TooSmall => {
            YbeStatus::NotApplicable
        }
        Error::SizeCap { .. } | Error::GroupTooLarge { .. } | Error::TimeBudget { .. } => YbeStatus::Limit,
        Error::Io(_) | Error::Checkpoint(_) => YbeStatus::Io,
        Error::Internal(_) => YbeStatus::Internal,
        _ => YbeStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and panics.
fn guard(f: impl FnOnce() -> Result<(), YbeFailure>) -> YbeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            YbeStatus::Ok
        }
        Ok(Err(YbeFailure::Null)) => {
            set_error("null pointer argument");
            YbeStatus::NullPointer
        }
        Ok(Err(YbeFailure::Core(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            YbeStatus::Internal
        }
    }
}

enum YbeFailure {
    Null,
    Core(Error),
}

impl From<Error> for YbeFailure {
    fn from(e: Error) -> Self {
        YbeFailure::Core(e)
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, YbeFailure> {
    p.as_ref().ok_or(YbeFailure::Null)
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, YbeFailure> {
    p.as_mut().ok_or(YbeFailure::Null)
}

unsafe fn read_table(n: usize, data: *const u32) -> Result<Vec<Vec<usize>>, YbeFailure> {
    if data.is_null() {
        return Err(YbeFailure::Null);
    }
    let cells = n.checked_mul(n).ok_or(YbeFailure::Core(Error::SizeCap { n, cap: 0 }))?;
    let flat = std::slice::from_raw_parts(data, cells);
    Ok(flat
        .chunks(n.max(1))
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect())
}

unsafe fn write_flat(values: &[usize], dest: *mut u32) -> Result<(), YbeFailure> {
    if dest.is_null() {
        return Err(YbeFailure::Null);
    }
    let slots = std::slice::from_raw_parts_mut(dest, values.len());
    for (slot, &v) in slots.iter_mut().zip(values) {
        *slot = v as u32;
    }
    Ok(())
}

/// Message of the most recent failure on this thread; empty after a success. The
/// pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ybe_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Validates `sigma[x*n + y] = σ_x(y)` and `tau[y*n + x] = τ_y(x)` and creates a solution.
///
/// # Safety
/// `sigma` and `tau` must point to `n * n` readable values; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_new(
    n: usize,
    sigma: *const u32,
    tau: *const u32,
    result: *mut *mut YbeSolution,
) -> YbeStatus {
    guard(|| {
        let slot = out(result)?;
        *slot = ptr::null_mut();
        let s = Solution::verify(n, read_table(n, sigma)?, read_table(n, tau)?)?;
        *slot = Box::into_raw(Box::new(YbeSolution(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_free(s: *mut YbeSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_size(s: *const YbeSolution) -> usize {
    s.as_ref().map_or(0, |s| s.0.size())
}

/// Copies the tables into two caller-provided `n * n` arrays.
///
/// # Safety
/// `s` must be a live handle; `sigma` and `tau` must have room for `n * n` values.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_tables(s: *const YbeSolution, sigma: *mut u32, tau: *mut u32) -> YbeStatus {
    guard(|| {
        let (sg, tu) = deref(s)?.0.tables();
        write_flat(&sg, sigma)?;
        write_flat(&tu, tau)
    })
}

/// # Safety
/// `s` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_is_involutive(s: *const YbeSolution, result: *mut bool) -> YbeStatus {
    guard(|| {
        *out(result)? = solutions::is_involutive(&deref(s)?.0);
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_is_indecomposable(s: *const YbeSolution, result: *mut bool) -> YbeStatus {
    guard(|| {
        *out(result)? = solutions::is_indecomposable(&deref(s)?.0);
        Ok(())
    })
}

/// Multipermutation level, or -1 when the solution is not a multipermutation solution.
/// Requires an involutive solution.
///
/// # Safety
/// `s` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_multipermutation_level(s: *const YbeSolution, result: *mut i32) -> YbeStatus {
    guard(|| {
        let level = solutions::multipermutation_level(&deref(s)?.0)?;
        *out(result)? = match level {
            MultipermutationLevel::Finite(k) => k as i32,
            MultipermutationLevel::None => -1,
        };
        Ok(())
    })
}

/// The retraction as a new handle. Requires an involutive solution.
///
/// # Safety
/// `s` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_retract(s: *const YbeSolution, result: *mut *mut YbeSolution) -> YbeStatus {
    guard(|| {
        let slot = out(result)?;
        *slot = ptr::null_mut();
        let r = solutions::retract(&deref(s)?.0)?;
        *slot = Box::into_raw(Box::new(YbeSolution(r)));
        Ok(())
    })
}

/// Whether two solutions are isomorphic.
///
/// # Safety
/// `a` and `b` must be live handles and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_solution_is_isomorphic(
    a: *const YbeSolution,
    b: *const YbeSolution,
    result: *mut bool,
) -> YbeStatus {
    guard(|| {
        *out(result)? = solutions::is_isomorphic(&deref(a)?.0, &deref(b)?.0).is_some();
        Ok(())
    })
}

/// Counts isomorphism classes of size `n`. With `involutive_only` the
/// non-involutive count is reported as 0.
///
/// # Safety
/// `involutive` and `non_involutive` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_enumerate_counts(
    n: usize,
    involutive_only: bool,
    jobs: usize,
    involutive: *mut u64,
    non_involutive: *mut u64,
) -> YbeStatus {
    guard(|| {
        let inv = out(involutive)?;
        let non = out(non_involutive)?;
        let mode = if involutive_only { Mode::Involutive } else { Mode::All };
        let mut task = EnumerationTask::new(n, mode);
        task.jobs = jobs.max(1);
        let r = enumerate::enumerate_solutions(&task)?;
        *inv = r.involutive as u64;
        *non = r.non_involutive as u64;
        Ok(())
    })
}

/// Validates the tables of `(A,+)` and `(A,∘)` and creates a skew brace.
///
/// # Safety
/// `add` and `mul` must point to `n * n` readable values; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_new(
    n: usize,
    add: *const u32,
    mul: *const u32,
    result: *mut *mut YbeBrace,
) -> YbeStatus {
    guard(|| {
        let slot = out(result)?;
        *slot = ptr::null_mut();
        let b = SkewBrace::verify(&read_table(n, add)?, &read_table(n, mul)?)?;
        *slot = Box::into_raw(Box::new(YbeBrace(b)));
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_free(b: *mut YbeBrace) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_size(b: *const YbeBrace) -> usize {
    b.as_ref().map_or(0, |b| b.0.size())
}

/// The solution of the brace as a new handle.
///
/// # Safety
/// `b` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_solution(b: *const YbeBrace, result: *mut *mut YbeSolution) -> YbeStatus {
    guard(|| {
        let slot = out(result)?;
        *slot = Box::into_raw(Box::new(YbeSolution(braces::solution_of(&deref(b)?.0))));
        Ok(())
    })
}

/// # Safety
/// `b` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_is_two_sided(b: *const YbeBrace, result: *mut bool) -> YbeStatus {
    guard(|| {
        *out(result)? = braces::is_two_sided(&deref(b)?.0);
        Ok(())
    })
}

/// Right nilpotency class, or -1 when the brace is not right nilpotent.
///
/// # Safety
/// `b` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_right_nilpotency(b: *const YbeBrace, result: *mut i32) -> YbeStatus {
    guard(|| {
        *out(result)? = braces::right_nilpotency(&deref(b)?.0).map_or(-1, |k| k as i32);
        Ok(())
    })
}

/// Number of isomorphism classes of skew braces of order `n`.
///
/// # Safety
/// `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ybe_brace_count(n: usize, result: *mut u64) -> YbeStatus {
    guard(|| {
        let slot = out(result)?;
        *slot = enumerate::enumerate_braces(n)?.len() as u64;
        Ok(())
    })
}
