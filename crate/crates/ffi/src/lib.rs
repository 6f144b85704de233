//! C interface.
//!
//! Every fallible call returns a [`PwStatus`]; on failure the message is
//! available from [`pw_last_error`] on the same thread. Strings handed out
//! must be released with [`pw_string_free`], classes with [`pw_class_free`].
//! Permutations, bases and words travel as the same text the CLI accepts.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use permwilf::class::{enumerate_av, FiniteClass};
use permwilf::extension::{potential_extensions, search, SearchOptions};
use permwilf::peg::{grid_contains, grid_filled_contains, parse_peg};
use permwilf::perm::parse_perm_list;
use permwilf::wedge::{decode_word, encode_wedge, LRWord};
use permwilf::wilf::WilfMetrics;
use permwilf::{Error, Perm};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PwStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Structure = 5,
    Precondition = 6,
    Stale = 7,
    Format = 8,
    Io = 9,
    Panic = 10,
}

/// A finite permutation class.
pub struct PwClass {
    inner: FiniteClass,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: PwStatus, msg: impl Into<String>) -> PwStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> PwStatus {
    match e {
        Error::Parse(_) => PwStatus::Parse,
        Error::Domain(_) => PwStatus::Domain,
        Error::Structure(_) => PwStatus::Structure,
        Error::Precondition(_) => PwStatus::Precondition,
        Error::Stale(_) => PwStatus::Stale,
        Error::Format(_) | Error::Json(_) => PwStatus::Format,
        Error::Io(_) => PwStatus::Io,
    }
}

impl From<Error> for PwStatus {
    fn from(e: Error) -> Self {
        fail(status_of(&e), e.to_string())
    }
}

type Outcome = Result<(), PwStatus>;

fn guard(f: impl FnOnce() -> Outcome) -> PwStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PwStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(PwStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, PwStatus> {
    if p.is_null() {
        return Err(fail(PwStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(PwStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn class<'a>(p: *const PwClass) -> Result<&'a FiniteClass, PwStatus> {
    p.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| fail(PwStatus::NullArgument, "class handle is null"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(fail(PwStatus::NullArgument, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    let c = CString::new(s).map_err(|_| fail(PwStatus::Format, "output holds a NUL byte"))?;
    if out.is_null() {
        return Err(fail(PwStatus::NullArgument, "output pointer is null"));
    }
    out.write(c.into_raw());
    Ok(())
}

unsafe fn put_class(out: *mut *mut PwClass, inner: FiniteClass) -> Outcome {
    if out.is_null() {
        return Err(fail(PwStatus::NullArgument, "output pointer is null"));
    }
    out.write(Box::into_raw(Box::new(PwClass { inner })));
    Ok(())
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn pw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Av(basis) through `max_size`. `basis` is a comma list and may be empty.
///
/// # Safety
/// `basis` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_class_enumerate(
    basis: *const c_char,
    max_size: usize,
    out: *mut *mut PwClass,
) -> PwStatus {
    guard(|| {
        let basis = parse_perm_list(text(basis, "basis")?)?;
        put_class(out, enumerate_av(&basis, max_size)?)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_class_from_json(json: *const c_char, out: *mut *mut PwClass) -> PwStatus {
    guard(|| put_class(out, FiniteClass::from_json(text(json, "json")?)?))
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_class_to_json(c: *const PwClass, out: *mut *mut c_char) -> PwStatus {
    guard(|| put_string(out, class(c)?.to_json()))
}

/// # Safety
/// `c` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pw_class_free(c: *mut PwClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_class_max_size(c: *const PwClass, out: *mut usize) -> PwStatus {
    guard(|| put(out, class(c)?.max_size()))
}

/// Number of members of size `k`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_class_level_count(c: *const PwClass, k: usize, out: *mut usize) -> PwStatus {
    guard(|| put(out, class(c)?.level(k).len()))
}

/// # Safety
/// `c` must be a live handle, `perm` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_class_contains(c: *const PwClass, perm: *const c_char, out: *mut bool) -> PwStatus {
    guard(|| {
        let p: Perm = text(perm, "perm")?.parse()?;
        put(out, class(c)?.contains(&p))
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_is_uniquely_wilf(c: *const PwClass, horizon: usize, out: *mut bool) -> PwStatus {
    guard(|| put(out, WilfMetrics::new(class(c)?).is_uniquely_wilf(horizon)?))
}

/// The Wilf-sequence through `horizon` as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_wilf_sequence_json(
    c: *const PwClass,
    horizon: usize,
    out: *mut *mut c_char,
) -> PwStatus {
    guard(|| {
        let seq = WilfMetrics::new(class(c)?).wilf_sequence(horizon)?;
        put_string(out, serde_json::to_string(&seq).map_err(Error::from)?)
    })
}

/// Number of potential extensions by one level, counting whole orbits.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_potential_extension_count(
    c: *const PwClass,
    require_monotone: bool,
    out: *mut usize,
) -> PwStatus {
    guard(|| {
        let opts = SearchOptions {
            require_monotone,
            ..Default::default()
        };
        put(out, potential_extensions(class(c)?, &opts)?.total)
    })
}

/// Runs a search and returns its report as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_search_json(
    c: *const PwClass,
    max_size: usize,
    branch_cap: usize,
    out: *mut *mut c_char,
) -> PwStatus {
    guard(|| {
        let opts = SearchOptions {
            max_size,
            branch_cap,
            ..Default::default()
        };
        let res = search(class(c)?, &opts)?;
        put_string(out, serde_json::to_string(&res).map_err(Error::from)?)
    })
}

/// LR word of a member of Av(213, 312).
///
/// # Safety
/// `perm` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_wedge_encode(perm: *const c_char, out: *mut *mut c_char) -> PwStatus {
    guard(|| {
        let p: Perm = text(perm, "perm")?.parse()?;
        put_string(out, encode_wedge(&p)?.to_string())
    })
}

/// # Safety
/// `word` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_wedge_decode(word: *const c_char, out: *mut *mut c_char) -> PwStatus {
    guard(|| {
        let w: LRWord = text(word, "word")?.parse()?;
        put_string(out, decode_word(&w).to_string())
    })
}

/// Grid class membership; `filled` selects the filled grid class.
///
/// # Safety
/// `peg` and `perm` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pw_grid_contains(
    peg: *const c_char,
    perm: *const c_char,
    filled: bool,
    out: *mut bool,
) -> PwStatus {
    guard(|| {
        let peg = parse_peg(text(peg, "peg")?)?;
        let p: Perm = text(perm, "perm")?.parse()?;
        put(out, if filled { grid_filled_contains(&peg, &p) } else { grid_contains(&peg, &p) })
    })
}
