//! C ABI over ross-core. Ontologies and sessions are opaque handles; every
//! call returns a status code, and the message of the last failure on the
//! calling thread is available from `ross_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use ross_core::api::{ApiError, Session};
use ross_core::engine::EngineError;
use ross_core::model::export_xml;
use ross_core::{load_ontology_dir, Ontology};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RossStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    /// Text outside the supported grammar or otherwise unusable.
    InputError = 3,
    OntologyError = 4,
    /// A question was asked before any disambiguation.
    NoModel = 5,
    NoAnswer = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

/// A linked ontology.
pub struct RossOntology(Ontology);

/// Retains the last disambiguation for questions and model export.
pub struct RossSession(Session);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl ToString) {
    let c = CString::new(message.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: RossStatus, message: impl ToString) -> RossStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> RossStatus) -> RossStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RossStatus::Internal, "panic inside ross"))
}

/// # Safety
/// `s` is null or a NUL-terminated string valid for the call.
unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, RossStatus> {
    if s.is_null() {
        return Err(fail(RossStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(RossStatus::InvalidUtf8, e))
}

/// # Safety
/// `out` is null or valid for one pointer write.
unsafe fn hand_out(out: *mut *mut c_char, s: String) -> RossStatus {
    if out.is_null() {
        return fail(RossStatus::NullArgument, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            RossStatus::Ok
        }
        Err(e) => fail(RossStatus::Internal, e),
    }
}

fn api_status(e: &ApiError) -> RossStatus {
    match e {
        ApiError::NoModel => RossStatus::NoModel,
        ApiError::NoAnswer => RossStatus::NoAnswer,
        ApiError::NotAQuestion | ApiError::Engine(EngineError::Frontend(_)) => RossStatus::InputError,
        ApiError::Engine(_) => RossStatus::Internal,
    }
}

/// Message of the last failure on this thread; empty when none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ross_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The ontology shipped with the library. Never null.
#[no_mangle]
pub extern "C" fn ross_ontology_bundled() -> *mut RossOntology {
    Box::into_raw(Box::new(RossOntology(Ontology::bundled())))
}

/// Loads and links the `.star` files of a directory.
///
/// # Safety
/// `dir` is a NUL-terminated path; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn ross_ontology_load(dir: *const c_char, out: *mut *mut RossOntology) -> RossStatus {
    guard(|| {
        if out.is_null() {
            return fail(RossStatus::NullArgument, "null output pointer");
        }
        let dir = match text(dir) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match load_ontology_dir(Path::new(dir)) {
            Ok(o) => {
                *out = Box::into_raw(Box::new(RossOntology(o)));
                RossStatus::Ok
            }
            Err(e) => fail(RossStatus::OntologyError, e),
        }
    })
}

/// # Safety
/// `ontology` is null or came from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ross_ontology_free(ontology: *mut RossOntology) {
    if !ontology.is_null() {
        drop(Box::from_raw(ontology));
    }
}

/// A new, empty session. Never null.
#[no_mangle]
pub extern "C" fn ross_session_new() -> *mut RossSession {
    Box::into_raw(Box::new(RossSession(Session::new("ffi"))))
}

/// # Safety
/// `session` is null or came from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ross_session_free(session: *mut RossSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Resolves the pronouns of `input` and writes the annotated text to
/// `out`, to be released with `ross_string_free`. The session keeps the
/// resulting model.
///
/// # Safety
/// Handles come from this library; `input` is NUL-terminated; `out` is
/// valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn ross_disambiguate(
    ontology: *const RossOntology,
    session: *mut RossSession,
    input: *const c_char,
    out: *mut *mut c_char,
) -> RossStatus {
    guard(|| {
        let (Some(o), Some(s)) = (ontology.as_ref(), session.as_mut()) else {
            return fail(RossStatus::NullArgument, "null handle");
        };
        let input = match text(input) {
            Ok(t) => t,
            Err(st) => return st,
        };
        match s.0.disambiguate(input, &o.0) {
            Ok(annotated) => hand_out(out, annotated),
            Err(e) => fail(api_status(&e), e),
        }
    })
}

/// Answers a question about the session's last disambiguation.
///
/// # Safety
/// As for `ross_disambiguate`.
#[no_mangle]
pub unsafe extern "C" fn ross_ask(
    ontology: *const RossOntology,
    session: *const RossSession,
    question: *const c_char,
    out: *mut *mut c_char,
) -> RossStatus {
    guard(|| {
        let (Some(o), Some(s)) = (ontology.as_ref(), session.as_ref()) else {
            return fail(RossStatus::NullArgument, "null handle");
        };
        let question = match text(question) {
            Ok(t) => t,
            Err(st) => return st,
        };
        match s.0.ask(question, &o.0) {
            Ok(answer) => hand_out(out, answer),
            Err(e) => fail(api_status(&e), e),
        }
    })
}

/// Writes the XML export of the session's last instance model to `out`.
///
/// # Safety
/// `session` comes from this library; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn ross_export_model(session: *const RossSession, out: *mut *mut c_char) -> RossStatus {
    guard(|| {
        let Some(s) = session.as_ref() else {
            return fail(RossStatus::NullArgument, "null handle");
        };
        match &s.0.last {
            Some(output) => hand_out(out, export_xml(&output.model)),
            None => fail(RossStatus::NoModel, ApiError::NoModel),
        }
    })
}

/// # Safety
/// `s` is null or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn ross_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Returns null-terminated static text naming a status.
#[no_mangle]
pub extern "C" fn ross_status_name(status: RossStatus) -> *const c_char {
    let s: &'static CStr = match status {
        RossStatus::Ok => c"ok",
        RossStatus::NullArgument => c"null argument",
        RossStatus::InvalidUtf8 => c"invalid utf-8",
        RossStatus::InputError => c"input error",
        RossStatus::OntologyError => c"ontology error",
        RossStatus::NoModel => c"no model",
        RossStatus::NoAnswer => c"no answer",
        RossStatus::Internal => c"internal error",
    };
    s.as_ptr()
}
