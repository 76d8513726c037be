//! C interface over the library: opaque workspace handles, UTF-8 JSON
//! strings crossing the boundary, and status codes matching the
//! command-line exit codes. Every returned string is owned by the caller
//! and must be released with `qf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use qf::error::Error;
use qf::format::{check_document, parse_document, Document, Workspace};
use qf::module::free_module;
use qf::morita::corner_quantale;
use qf::quantale::relation_quantale;
use qf::report::Report;
use qf::suite::run_suite;
use qf::tensor::{internal_hom, tensor};

/// Outcome of a call, matching the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QfStatus {
    /// The call finished and every check passed.
    Ok = 0,
    /// The call finished but a structure or check failed.
    CheckFailed = 1,
    /// Malformed input: unparseable documents, unknown names, bad
    /// arguments, or a null pointer.
    Usage = 2,
    /// The computation would exceed the element budget.
    Budget = 3,
}

/// An opaque collection of named structures. Loaded documents extend it;
/// compute calls read from it and fall back to the built-in catalog.
pub struct QfWorkspace {
    inner: Workspace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let owned = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(owned));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(e: &Error) -> QfStatus {
    set_error(&e.to_string());
    match e.exit_code() {
        2 => QfStatus::Usage,
        3 => QfStatus::Budget,
        _ => QfStatus::CheckFailed,
    }
}

fn usage(message: &str) -> QfStatus {
    set_error(message);
    QfStatus::Usage
}

/// Reads a required UTF-8 argument.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, QfStatus> {
    if ptr.is_null() {
        return Err(usage(&format!("{what} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| usage(&format!("{what} is not valid UTF-8")))
}

fn give_string(out: *mut *mut c_char, text: &str) {
    if out.is_null() {
        return;
    }
    let owned = CString::new(text.replace('\0', " ")).unwrap_or_default();
    unsafe { *out = owned.into_raw() };
}

/// Creates an empty workspace.
#[no_mangle]
pub extern "C" fn qf_workspace_new() -> *mut QfWorkspace {
    Box::into_raw(Box::new(QfWorkspace {
        inner: Workspace::new(),
    }))
}

/// Releases a workspace. A null handle is ignored.
#[no_mangle]
pub extern "C" fn qf_workspace_free(workspace: *mut QfWorkspace) {
    if !workspace.is_null() {
        drop(unsafe { Box::from_raw(workspace) });
    }
}

/// Parses an interchange document and adds every structure in it to the
/// workspace. Nothing is added if any structure fails to validate.
#[no_mangle]
pub unsafe extern "C" fn qf_workspace_load(
    workspace: *mut QfWorkspace,
    document_json: *const c_char,
) -> QfStatus {
    clear_error();
    if workspace.is_null() {
        return usage("workspace is null");
    }
    let text = match read_str(document_json, "document") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let doc = match parse_document(text) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    let mut staged = (*workspace).inner.clone();
    match staged.add_document(&doc) {
        Ok(()) => {
            (*workspace).inner = staged;
            QfStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Validates every structure in an interchange document. When
/// `report_json` is non-null it receives the full report.
#[no_mangle]
pub unsafe extern "C" fn qf_check(
    document_json: *const c_char,
    report_json: *mut *mut c_char,
) -> QfStatus {
    clear_error();
    let text = match read_str(document_json, "document") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let doc = match parse_document(text) {
        Ok(d) => d,
        Err(e) => return fail(&e),
    };
    match check_document(&doc) {
        Ok((_, verdicts)) => {
            let mut report = Report::new("check", 0);
            report.checks = verdicts;
            give_string(report_json, &report.render_json());
            if report.passed() {
                QfStatus::Ok
            } else {
                set_error("a structure failed validation");
                QfStatus::CheckFailed
            }
        }
        Err(e) => fail(&e),
    }
}

/// Runs a named property suite under the given budget. When
/// `report_json` is non-null it receives the full report.
#[no_mangle]
pub unsafe extern "C" fn qf_suite(
    name: *const c_char,
    budget: usize,
    report_json: *mut *mut c_char,
) -> QfStatus {
    clear_error();
    let name = match read_str(name, "suite name") {
        Ok(t) => t,
        Err(status) => return status,
    };
    match run_suite(name, budget) {
        Ok(report) => {
            give_string(report_json, &report.render_json());
            if report.passed() {
                QfStatus::Ok
            } else {
                set_error("a suite check failed");
                QfStatus::CheckFailed
            }
        }
        Err(e) => fail(&e),
    }
}

fn compute_document(
    ws: &Workspace,
    kind: &str,
    left: &str,
    right: &str,
    budget: usize,
) -> Result<Document, Error> {
    let lattice = |name: &str| {
        ws.lattice(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    };
    let quantale = |name: &str| {
        ws.quantale(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    };
    let count = |text: &str| {
        text.parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("`{text}` is not a count")))
    };
    let mut doc = Document::default();
    match kind {
        "tensor" => {
            let t = tensor(&lattice(left)?, &lattice(right)?, budget)?;
            doc.push_lattice(&format!("tensor({left},{right})"), &t.lattice);
        }
        "hom" => {
            let h = internal_hom(&lattice(left)?, &lattice(right)?, budget)?;
            doc.push_lattice(&format!("hom({left},{right})"), &h.lattice);
        }
        "matq" => {
            let k = count(right)?;
            let mats = qf::matrix::matrix_quantale(&quantale(left)?, k, budget)?;
            doc.push_quantale(&format!("Mat{k}({left})"), &mats.quantale);
        }
        "eae" => {
            let q = quantale(left)?;
            let e = match q.lattice().names().iter().position(|n| n == right) {
                Some(i) => i,
                None => {
                    let i = count(right)?;
                    if i >= q.n() {
                        return Err(Error::InvalidArgument(format!(
                            "element index {i} is out of range"
                        )));
                    }
                    i
                }
            };
            let corner = corner_quantale(&q, e)?;
            doc.push_quantale(&format!("corner({left},{right})"), &corner.quantale);
        }
        "free" => {
            let q = quantale(left)?;
            let k = count(right)?;
            let free = free_module(&q, k, budget)?;
            doc.push_quantale(left, &q);
            doc.push_module(&format!("free({left},{k})"), left, &free.module);
        }
        "relq" => {
            let n = count(left)?;
            let q = relation_quantale(n, budget)?;
            doc.push_quantale(&format!("Rel{n}"), &q);
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown compute kind `{other}`"
            )))
        }
    }
    Ok(doc)
}

/// Builds a derived structure and returns it as an interchange document
/// in `document_json`. `kind` is one of `tensor`, `hom`, `matq`, `eae`,
/// `free`, or `relq`; `left` and `right` name structures or give counts,
/// with `right` ignored for `relq`. A null workspace uses only the
/// built-in catalog.
#[no_mangle]
pub unsafe extern "C" fn qf_compute(
    workspace: *const QfWorkspace,
    kind: *const c_char,
    left: *const c_char,
    right: *const c_char,
    budget: usize,
    document_json: *mut *mut c_char,
) -> QfStatus {
    clear_error();
    let kind = match read_str(kind, "kind") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let left = match read_str(left, "left argument") {
        Ok(t) => t,
        Err(status) => return status,
    };
    let right = if kind == "relq" && right.is_null() {
        ""
    } else {
        match read_str(right, "right argument") {
            Ok(t) => t,
            Err(status) => return status,
        }
    };
    let empty;
    let ws = if workspace.is_null() {
        empty = Workspace::new();
        &empty
    } else {
        &(*workspace).inner
    };
    match compute_document(ws, kind, left, right, budget) {
        Ok(doc) => {
            give_string(document_json, &doc.to_json());
            QfStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Returns a copy of the message for the most recent failure on this
/// thread, or null when the last call succeeded.
#[no_mangle]
pub extern "C" fn qf_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library. A null pointer is ignored.
#[no_mangle]
pub unsafe extern "C" fn qf_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
