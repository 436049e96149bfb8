//! C ABI for `qhall`.
//!
//! A session holds a validated configuration, a field size and a dimension cap.
//! Results come back either as plain numbers or as NUL-terminated JSON strings owned by
//! the library; release those with `qhall_string_free`. When a call returns a status
//! other than `QHALL_STATUS_OK`, `qhall_last_error` describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::Parser;
use qhall::cli::{run_with, Cli};
use qhall::config::Config;
use qhall::quiverrep::{ClassId, RepCategory};
use qhall::verify::{run_suite, VerifyOptions};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhallStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Config = 4,
    Compute = 5,
    /// The computation ran but a requested check failed; the JSON result is still set.
    CheckFailed = 6,
    Panic = 7,
}

/// Opaque session handle.
pub struct QhallSession {
    config: Config,
    field: u64,
    cap: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: QhallStatus, msg: impl Into<String>) -> QhallStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> QhallStatus) -> QhallStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QhallStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QhallStatus> {
    if p.is_null() {
        return Err(fail(QhallStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(QhallStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> QhallStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            QhallStatus::Ok
        }
        Err(_) => fail(QhallStatus::Compute, "result contains a NUL byte"),
    }
}

fn new_session(config: Config, field: u64, cap: usize) -> Result<Box<QhallSession>, QhallStatus> {
    config.validate().map_err(|e| fail(QhallStatus::Config, e.to_string()))?;
    let field = config.field((field != 0).then_some(field)).map_err(|e| fail(QhallStatus::Config, e.to_string()))?;
    let cap = if cap == 0 { config.cap_for(field) } else { cap };
    Ok(Box::new(QhallSession { config, field, cap }))
}

/// Message for the most recent failure on this thread. Valid until the next call.
#[no_mangle]
pub extern "C" fn qhall_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Session for a built-in preset (`A2`, `A2-rev`, `A3`, `A1xA1`, `B2`, `G2`).
/// `field == 0` and `cap == 0` select the defaults.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qhall_session_new_preset(
    name: *const c_char,
    field: u64,
    cap: usize,
    out: *mut *mut QhallSession,
) -> QhallStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QhallStatus::NullPointer, "null output pointer");
        }
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let config = match Config::preset(name) {
            Ok(c) => c,
            Err(e) => return fail(QhallStatus::Config, e.to_string()),
        };
        match new_session(config, field, cap) {
            Ok(b) => {
                *out = Box::into_raw(b);
                QhallStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Session from a JSON config document (same format as the command-line `--config` file).
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qhall_session_new_config(
    json: *const c_char,
    field: u64,
    cap: usize,
    out: *mut *mut QhallSession,
) -> QhallStatus {
    guarded(|| {
        if out.is_null() {
            return fail(QhallStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let config: Config = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return fail(QhallStatus::Config, e.to_string()),
        };
        match new_session(config, field, cap) {
            Ok(b) => {
                *out = Box::into_raw(b);
                QhallStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// # Safety
/// `session` must come from a `qhall_session_new_*` call and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qhall_session_free(session: *mut QhallSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn qhall_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Euler form `⟨a, b⟩` of two dimension vectors of length `len`.
///
/// # Safety
/// `a` and `b` must point to `len` integers; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qhall_euler(
    session: *const QhallSession,
    a: *const i64,
    b: *const i64,
    len: usize,
    out: *mut i64,
) -> QhallStatus {
    guarded(|| {
        if session.is_null() || a.is_null() || b.is_null() || out.is_null() {
            return fail(QhallStatus::NullPointer, "null argument");
        }
        let s = &*session;
        let quiver = match s.config.valued_quiver() {
            Ok(q) => q,
            Err(e) => return fail(QhallStatus::Config, e.to_string()),
        };
        if len != quiver.n() {
            return fail(QhallStatus::InvalidArgument, format!("dimension vectors need {} entries", quiver.n()));
        }
        let (a, b) = (std::slice::from_raw_parts(a, len), std::slice::from_raw_parts(b, len));
        *out = quiver.euler(a, b);
        QhallStatus::Ok
    })
}

fn category(s: &QhallSession) -> Result<RepCategory, QhallStatus> {
    let q = s.config.valued_quiver().map_err(|e| fail(QhallStatus::Config, e.to_string()))?;
    RepCategory::new(q, s.field, s.cap).map_err(|e| fail(QhallStatus::Compute, e.to_string()))
}

fn class(cat: &RepCategory, key: &str) -> Result<ClassId, QhallStatus> {
    let id = ClassId::parse_key(key, cat.n()).ok_or_else(|| fail(QhallStatus::InvalidArgument, format!("not a class key: {key:?}")))?;
    cat.info(id).map_err(|e| fail(QhallStatus::InvalidArgument, e.to_string()))?;
    Ok(id)
}

/// Hall number `g^l_{mn}` for class keys such as `"1.1#0"`.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qhall_hall_number(
    session: *const QhallSession,
    l: *const c_char,
    m: *const c_char,
    n: *const c_char,
    out: *mut u64,
) -> QhallStatus {
    guarded(|| {
        if session.is_null() || out.is_null() {
            return fail(QhallStatus::NullPointer, "null argument");
        }
        let keys = match (read_str(l), read_str(m), read_str(n)) {
            (Ok(a), Ok(b), Ok(c)) => [a, b, c],
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
        let result = (|| {
            let cat = category(&*session)?;
            let [l, m, n] = [class(&cat, keys[0])?, class(&cat, keys[1])?, class(&cat, keys[2])?];
            cat.hall_number(l, m, n).map_err(|e| fail(QhallStatus::Compute, e.to_string()))
        })();
        match result {
            Ok(g) => {
                *out = g;
                QhallStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Runs one command of the `qhall` command line against the session's configuration.
/// `args_json` is a JSON array of strings, e.g. `["hall-mul", "--a", "1.0#0", "--b", "0.1#0"]`;
/// the session's field and cap apply unless the arguments override them.
/// On `QHALL_STATUS_OK` or `QHALL_STATUS_CHECK_FAILED`, `*out_json` receives the JSON result.
///
/// # Safety
/// `args_json` must be a valid NUL-terminated string; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qhall_run(
    session: *const QhallSession,
    args_json: *const c_char,
    out_json: *mut *mut c_char,
) -> QhallStatus {
    guarded(|| {
        if session.is_null() || out_json.is_null() {
            return fail(QhallStatus::NullPointer, "null argument");
        }
        let s = &*session;
        let text = match read_str(args_json) {
            Ok(t) => t,
            Err(st) => return st,
        };
        let args: Vec<String> = match serde_json::from_str(text) {
            Ok(a) => a,
            Err(e) => return fail(QhallStatus::InvalidArgument, e.to_string()),
        };
        let mut cli = match Cli::try_parse_from(std::iter::once("qhall".to_string()).chain(args)) {
            Ok(c) => c,
            Err(e) => return fail(QhallStatus::InvalidArgument, e.to_string()),
        };
        cli.field = cli.field.or(Some(s.field));
        cli.cap = cli.cap.or(Some(s.cap));
        cli.json = true;
        let config = (cli.config.is_none() && cli.preset.is_none()).then(|| s.config.clone());
        match run_with(&cli, config) {
            Ok(o) => {
                let st = write_string(out_json, o.value.to_string());
                if st != QhallStatus::Ok {
                    return st;
                }
                if o.ok {
                    QhallStatus::Ok
                } else {
                    fail(QhallStatus::CheckFailed, "a requested check failed")
                }
            }
            Err(e) => fail(QhallStatus::Compute, format!("{}: {}", e.kind, e.message)),
        }
    })
}

/// Runs acceptance criteria (`"all"` or a comma-separated list of numbers) and returns
/// the JSON reports.
///
/// # Safety
/// `suite` must be a valid NUL-terminated string; `out_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qhall_verify(suite: *const c_char, include_g2: bool, out_json: *mut *mut c_char) -> QhallStatus {
    guarded(|| {
        if out_json.is_null() {
            return fail(QhallStatus::NullPointer, "null output pointer");
        }
        let suite = match read_str(suite) {
            Ok(s) => s,
            Err(s) => return s,
        };
        let reports = match run_suite(suite, &VerifyOptions { g2_braid: include_g2 }) {
            Ok(r) => r,
            Err(e) => return fail(QhallStatus::InvalidArgument, e),
        };
        let ok = reports.iter().all(|r| r.passed);
        let st = write_string(out_json, serde_json::to_string(&reports).expect("serializable"));
        if st != QhallStatus::Ok {
            return st;
        }
        if ok {
            QhallStatus::Ok
        } else {
            fail(QhallStatus::CheckFailed, "a criterion failed")
        }
    })
}
