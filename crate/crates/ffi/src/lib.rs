//! C interface to `binact`.
//!
//! Every fallible function returns a [`BinactStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`binact_last_error_message`] on the same thread. Handles and strings
//! returned by this library must be released with the matching `*_free`
//! function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;
use std::time::Duration;

use binact::io::{ActionFile, GroupFile, IoError, NamedGroup};
use binact::orbits::{minimal_bi_invariant, OrbitReport};
use binact::search::enumerate_actions;
use binact::{BinaryAction, EnumerationTask, SearchError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinactStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The input is not well-formed JSON for the expected record.
    Parse = 3,
    /// The input parsed but violates the group or action axioms.
    Invalid = 4,
    UnknownGroup = 5,
    OutOfRange = 6,
    BudgetExceeded = 7,
    /// A Rust panic was caught at the boundary.
    Internal = 8,
}

/// A finite group with optional element labels.
pub struct BinactGroup {
    inner: NamedGroup,
}

/// A validated binary action.
pub struct BinactAction {
    group: NamedGroup,
    action: BinaryAction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(BinactStatus, String);

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let status = match &e {
            IoError::UnknownGroup(_) => BinactStatus::UnknownGroup,
            IoError::Json { .. } | IoError::Format { .. } | IoError::Read { .. } | IoError::Write { .. } => {
                BinactStatus::Parse
            }
            _ => BinactStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, records any failure and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BinactStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            BinactStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal error".into());
            BinactStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(BinactStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(BinactStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(BinactStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(BinactStatus::NullPointer, "null out-pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn parse<T: for<'de> serde::Deserialize<'de>>(json: &str) -> Result<T, Failure> {
    serde_json::from_str(json).map_err(|e| Failure(BinactStatus::Parse, e.to_string()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn binact_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Looks up a catalog group such as `z4`, `s3` or `z2xz2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_group_named(name: *const c_char, out: *mut *mut BinactGroup) -> BinactStatus {
    guard(|| {
        let name = str_arg(name)?;
        let inner = NamedGroup::from_catalog(name)
            .ok_or_else(|| Failure(BinactStatus::UnknownGroup, format!("unknown group {name:?}")))?;
        write_out(out, Box::into_raw(Box::new(BinactGroup { inner })))
    })
}

/// Parses a group file: `{"name": ..., "cayley": [[...]], "labels": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_group_from_json(json: *const c_char, out: *mut *mut BinactGroup) -> BinactStatus {
    guard(|| {
        let file: GroupFile = parse(str_arg(json)?)?;
        let inner = NamedGroup::from_file(&file).map_err(|e| Failure(BinactStatus::Invalid, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(BinactGroup { inner })))
    })
}

/// Order of the group, or 0 for a NULL handle.
///
/// # Safety
/// `group` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binact_group_order(group: *const BinactGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.group.order())
}

/// # Safety
/// `group` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binact_group_free(group: *mut BinactGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Parses and validates an action file. Group names resolve against the
/// built-in catalog, then as paths relative to the working directory.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_action_from_json(json: *const c_char, out: *mut *mut BinactAction) -> BinactStatus {
    guard(|| {
        let file: ActionFile = parse(str_arg(json)?)?;
        let (group, action) = file.load(None)?;
        write_out(out, Box::into_raw(Box::new(BinactAction { group, action })))
    })
}

/// # Safety
/// `action` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binact_action_free(action: *mut BinactAction) {
    if !action.is_null() {
        drop(Box::from_raw(action));
    }
}

/// Carrier size, or 0 for a NULL handle.
///
/// # Safety
/// `action` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binact_action_carrier(action: *const BinactAction) -> usize {
    action.as_ref().map_or(0, |a| a.action.carrier())
}

/// Writes `g(x, y)`.
///
/// # Safety
/// `action` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_action_get(
    action: *const BinactAction,
    g: usize,
    x: usize,
    y: usize,
    out: *mut usize,
) -> BinactStatus {
    guard(|| {
        let a = &handle(action)?.action;
        if g >= a.group().order() || x >= a.carrier() || y >= a.carrier() {
            return Err(Failure(BinactStatus::OutOfRange, format!("({g}, {x}, {y}) out of range")));
        }
        write_out(out, a.get(g, x, y))
    })
}

/// # Safety
/// `action` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_action_is_distributive(action: *const BinactAction, out: *mut bool) -> BinactStatus {
    guard(|| write_out(out, handle(action)?.action.is_distributive()))
}

/// Least bi-invariant set containing `x`, as a bit mask over the carrier.
///
/// # Safety
/// `action` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_action_minimal_bi_invariant(
    action: *const BinactAction,
    x: usize,
    out: *mut u64,
) -> BinactStatus {
    guard(|| {
        let a = &handle(action)?.action;
        if x >= a.carrier() {
            return Err(Failure(BinactStatus::OutOfRange, format!("point {x} out of range")));
        }
        write_out(out, minimal_bi_invariant(a, x).mask())
    })
}

/// Orbit report as JSON; free the string with [`binact_string_free`].
///
/// # Safety
/// `action` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_action_orbit_report_json(
    action: *const BinactAction,
    out: *mut *mut c_char,
) -> BinactStatus {
    guard(|| {
        let report = OrbitReport::for_action(&handle(action)?.action)
            .map_err(|e| Failure(BinactStatus::Invalid, e.to_string()))?;
        write_out(out, into_c_string(serde_json::to_string(&report).expect("serializable")))
    })
}

/// The action as an action file in JSON.
///
/// # Safety
/// `action` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_action_to_json(action: *const BinactAction, out: *mut *mut c_char) -> BinactStatus {
    guard(|| {
        let a = handle(action)?;
        let file = ActionFile::from_action(&a.group, &a.action);
        write_out(out, into_c_string(serde_json::to_string(&file).expect("serializable")))
    })
}

/// Enumerates the actions of `group` on `carrier` points and writes
/// `{"summary": {...}, "actions": [...]}`. A `node_budget` of 0 keeps the
/// default.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn binact_enumerate_json(
    group: *const BinactGroup,
    carrier: usize,
    distributive: bool,
    dedupe: bool,
    node_budget: u64,
    out: *mut *mut c_char,
) -> BinactStatus {
    guard(|| {
        let g = &handle(group)?.inner;
        let mut task = EnumerationTask::new(Arc::clone(&g.group), carrier).distributive(distributive).dedupe(dedupe);
        if node_budget > 0 {
            task.node_budget = node_budget;
            task.time_budget = Duration::from_secs(600);
        }
        let result = enumerate_actions(&task).map_err(|e| match e {
            SearchError::BudgetExceeded { .. } => Failure(BinactStatus::BudgetExceeded, e.to_string()),
            SearchError::InvalidTask(_) => Failure(BinactStatus::OutOfRange, e.to_string()),
            _ => Failure(BinactStatus::Internal, e.to_string()),
        })?;
        let actions: Vec<ActionFile> = result.actions.iter().map(|a| ActionFile::from_action(g, a)).collect();
        let body = serde_json::json!({ "summary": result.summary(), "actions": actions });
        write_out(out, into_c_string(body.to_string()))
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binact_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
