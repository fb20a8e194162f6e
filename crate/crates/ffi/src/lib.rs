//! C ABI over `order_extension`.
//!
//! Problems are opaque handles created by [`oe_problem_parse`] and released
//! with [`oe_problem_free`]. Every fallible call returns an [`OeStatus`];
//! on anything other than `OE_STATUS_OK` the thread's last error message is
//! set and can be copied out with [`oe_last_error_message`]. Output buffers
//! are caller-owned; when one is too small the call returns
//! `OE_STATUS_BUFFER_TOO_SMALL` and reports the needed length.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use order_extension::extension::{
    enumerate_s_extensions, intersection_of_s_extensions, is_unique_extension, s_extend,
    s_extension_exists, DEFAULT_ENUMERATION_CAP,
};
use order_extension::problem::Problem;
use order_extension::relation::Partition;
use order_extension::{sigma, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NoExtension = 3,
    Precondition = 4,
    Capacity = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque parsed problem.
pub struct OeProblem {
    inner: Problem,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OeCheckReport {
    pub exists: bool,
    pub in_sigma: bool,
    pub in_sigma_star: bool,
    pub maximal_in_sigma: bool,
    pub maximal_in_sigma_star: bool,
    pub unique: bool,
    /// Length of the cycle certificate; zero when an extension exists.
    pub certificate_len: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: OeStatus, msg: impl Into<String>) -> OeStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> OeStatus {
    let status = match &e {
        Error::Capacity { .. } | Error::UniverseTooLarge { .. } => OeStatus::Capacity,
        Error::NoExtension { .. } => OeStatus::NoExtension,
        Error::ForcedPairComparable(..) => OeStatus::Precondition,
        _ => OeStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> OeStatus) -> OeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => {
            if status == OeStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(OeStatus::Panic, "internal panic"),
    }
}

unsafe fn problem<'a>(p: *const OeProblem) -> Result<&'a Problem, OeStatus> {
    // SAFETY: the caller passes either null or a handle from `oe_problem_parse`.
    unsafe { p.as_ref() }
        .map(|h| &h.inner)
        .ok_or_else(|| fail(OeStatus::NullPointer, "null problem handle"))
}

fn partition_of(p: &Problem) -> Result<Partition, OeStatus> {
    match &p.partition {
        Some(s) => Ok(s.clone()),
        None => Partition::discrete(p.universe.len()).map_err(from_error),
    }
}

/// Copies `src` into a caller buffer of `cap` elements, or reports the
/// needed length.
unsafe fn write_out<T: Copy>(src: &[T], buf: *mut T, cap: usize) -> OeStatus {
    if src.len() > cap {
        return fail(
            OeStatus::BufferTooSmall,
            format!("buffer holds {cap} elements, {} needed", src.len()),
        );
    }
    if src.is_empty() {
        return OeStatus::Ok;
    }
    if buf.is_null() {
        return fail(OeStatus::NullPointer, "null output buffer");
    }
    // SAFETY: `buf` is non-null and the caller guarantees room for `cap >= len` elements.
    unsafe { ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len()) };
    OeStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn oe_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message, NUL-terminated, into
/// `buf`. Returns the buffer size needed including the terminator; the copy
/// is truncated when `cap` is smaller.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn oe_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            // SAFETY: `buf` is valid for `cap` bytes and `n < cap`.
            unsafe {
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
        }
        bytes.len() + 1
    })
}

/// Parses a problem file held in a NUL-terminated UTF-8 string.
///
/// # Safety
/// `text` must be null or a valid C string; `out` must be null or valid for
/// one pointer write.
#[no_mangle]
pub unsafe extern "C" fn oe_problem_parse(
    text: *const c_char,
    out: *mut *mut OeProblem,
) -> OeStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(OeStatus::NullPointer, "null argument");
        }
        // SAFETY: checked non-null; the caller guarantees a C string.
        let text = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(t) => t,
            Err(_) => return fail(OeStatus::InvalidInput, "problem text is not UTF-8"),
        };
        match Problem::parse(text) {
            Ok(inner) => {
                // SAFETY: `out` is non-null and writable.
                unsafe { *out = Box::into_raw(Box::new(OeProblem { inner })) };
                OeStatus::Ok
            }
            Err(e) => fail(OeStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle from `oe_problem_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oe_problem_free(p: *mut OeProblem) {
    if !p.is_null() {
        // SAFETY: ownership returns from the caller.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Number of elements in the universe; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oe_problem_size(p: *const OeProblem) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { p.as_ref() }.map_or(0, |h| h.inner.universe.len())
}

/// Copies the label of element `index` as a NUL-terminated string.
/// `needed` receives the size including the terminator.
///
/// # Safety
/// `p` must be a live handle, `buf` valid for `cap` bytes, `needed` null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn oe_problem_label(
    p: *const OeProblem,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> OeStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let prob = match unsafe { problem(p) } {
            Ok(x) => x,
            Err(s) => return s,
        };
        if index >= prob.universe.len() {
            return from_error(Error::IndexOutOfRange {
                index,
                n: prob.universe.len(),
            });
        }
        let mut bytes: Vec<c_char> = prob
            .universe
            .label(index)
            .bytes()
            .map(|b| b as c_char)
            .collect();
        bytes.push(0);
        if !needed.is_null() {
            // SAFETY: non-null and writable.
            unsafe { *needed = bytes.len() };
        }
        // SAFETY: forwarded caller contract.
        unsafe { write_out(&bytes, buf, cap) }
    })
}

/// Membership, maximality, existence and uniqueness for a problem with a
/// partition. When no extension exists the cycle certificate is written to
/// `certificate` as element indices.
///
/// # Safety
/// `p` must be a live handle, `report` writable, `certificate` null or
/// valid for `cap` elements.
#[no_mangle]
pub unsafe extern "C" fn oe_check(
    p: *const OeProblem,
    report: *mut OeCheckReport,
    certificate: *mut usize,
    cap: usize,
) -> OeStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let prob = match unsafe { problem(p) } {
            Ok(x) => x,
            Err(s) => return s,
        };
        if report.is_null() {
            return fail(OeStatus::NullPointer, "null report");
        }
        let Some(s) = &prob.partition else {
            return fail(OeStatus::InvalidInput, "problem has no partition");
        };
        let result = (|| {
            let m = sigma::membership(&prob.order, s)?;
            let e = s_extension_exists(&prob.order, s)?;
            let u = is_unique_extension(&prob.order, s)?;
            Ok::<_, Error>((m, e, u))
        })();
        let (m, e, u) = match result {
            Ok(x) => x,
            Err(err) => return from_error(err),
        };
        let cert = e.certificate.unwrap_or_default();
        // SAFETY: checked non-null.
        unsafe {
            *report = OeCheckReport {
                exists: e.exists,
                in_sigma: m.in_sigma,
                in_sigma_star: m.in_sigma_star,
                maximal_in_sigma: m.maximal_in_sigma,
                maximal_in_sigma_star: m.maximal_in_sigma_star,
                unique: u.unique(),
                certificate_len: cert.len(),
            }
        };
        // SAFETY: forwarded caller contract.
        unsafe { write_out(&cert, certificate, cap) }
    })
}

/// Writes one extension as a rank per element, 0 for the lowest block.
/// Without a partition the extension is linear; the forced pair, if any,
/// is honoured.
///
/// # Safety
/// `p` must be a live handle and `ranks` valid for `cap` elements.
#[no_mangle]
pub unsafe extern "C" fn oe_extend(p: *const OeProblem, ranks: *mut usize, cap: usize) -> OeStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let prob = match unsafe { problem(p) } {
            Ok(x) => x,
            Err(s) => return s,
        };
        let s = match partition_of(prob) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match s_extend(&prob.order, &s, prob.forced) {
            Ok(t) => {
                let out: Vec<usize> = (0..t.size()).map(|i| t.rank(i)).collect();
                // SAFETY: forwarded caller contract.
                unsafe { write_out(&out, ranks, cap) }
            }
            Err(e) => from_error(e),
        }
    })
}

/// Writes the intersection of all extensions as an `n*n` row-major 0/1
/// matrix.
///
/// # Safety
/// `p` must be a live handle and `matrix` valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn oe_intersection(
    p: *const OeProblem,
    matrix: *mut u8,
    cap: usize,
) -> OeStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let prob = match unsafe { problem(p) } {
            Ok(x) => x,
            Err(s) => return s,
        };
        let s = match partition_of(prob) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match intersection_of_s_extensions(&prob.order, &s) {
            Ok(rel) => {
                let n = rel.size();
                let out: Vec<u8> = (0..n * n)
                    .map(|k| rel.contains(k / n, k % n) as u8)
                    .collect();
                // SAFETY: forwarded caller contract.
                unsafe { write_out(&out, matrix, cap) }
            }
            Err(e) => from_error(e),
        }
    })
}

/// Counts the extensions by enumeration; subject to the enumeration cap.
///
/// # Safety
/// `p` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn oe_count_extensions(p: *const OeProblem, count: *mut usize) -> OeStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let prob = match unsafe { problem(p) } {
            Ok(x) => x,
            Err(s) => return s,
        };
        if count.is_null() {
            return fail(OeStatus::NullPointer, "null count");
        }
        let s = match partition_of(prob) {
            Ok(s) => s,
            Err(st) => return st,
        };
        match enumerate_s_extensions(&prob.order, &s, DEFAULT_ENUMERATION_CAP) {
            Ok(all) => {
                // SAFETY: checked non-null.
                unsafe { *count = all.len() };
                OeStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
