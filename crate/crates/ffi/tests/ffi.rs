use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ross_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ross_string_free(s) };
    owned
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ross_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn disambiguate_ask_and_export_through_handles() {
    let ontology = ross_ontology_bundled();
    let session = ross_session_new();
    let input = CString::new("The trophy doesn't fit in the brown suitcase because it's too small.").unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { ross_disambiguate(ontology, session, input.as_ptr(), &mut out) };
    assert_eq!(status, RossStatus::Ok);
    assert_eq!(take(out), "The trophy does not fit in the brown suitcase because it(suitcase) is too small .");

    let q = CString::new("What is too small?").unwrap();
    let status = unsafe { ross_ask(ontology, session, q.as_ptr(), &mut out) };
    assert_eq!(status, RossStatus::Ok);
    assert_eq!(take(out), "The suitcase is too small.");

    let status = unsafe { ross_export_model(session, &mut out) };
    assert_eq!(status, RossStatus::Ok);
    assert!(take(out).contains("SuitcaseObjectFrameClass"));

    unsafe {
        ross_session_free(session);
        ross_ontology_free(ontology);
    }
}

#[test]
fn error_codes_and_messages() {
    let ontology = ross_ontology_bundled();
    let session = ross_session_new();
    let mut out = ptr::null_mut();

    let q = CString::new("What is too big?").unwrap();
    assert_eq!(unsafe { ross_ask(ontology, session, q.as_ptr(), &mut out) }, RossStatus::NoModel);
    assert!(last_error().contains("no instance model"));

    let bad = CString::new("Colorless green ideas sleep.").unwrap();
    assert_eq!(unsafe { ross_disambiguate(ontology, session, bad.as_ptr(), &mut out) }, RossStatus::InputError);
    assert!(out.is_null());

    assert_eq!(unsafe { ross_disambiguate(ptr::null(), session, bad.as_ptr(), &mut out) }, RossStatus::NullArgument);
    assert_eq!(unsafe { ross_disambiguate(ontology, session, ptr::null(), &mut out) }, RossStatus::NullArgument);

    let invalid = [0xffu8, 0];
    let status = unsafe { ross_disambiguate(ontology, session, invalid.as_ptr().cast(), &mut out) };
    assert_eq!(status, RossStatus::InvalidUtf8);

    let dir = CString::new("/nonexistent/ontology").unwrap();
    let mut loaded = ptr::null_mut();
    assert_eq!(unsafe { ross_ontology_load(dir.as_ptr(), &mut loaded) }, RossStatus::OntologyError);
    assert!(loaded.is_null());

    let name = unsafe { CStr::from_ptr(ross_status_name(RossStatus::NoAnswer)) };
    assert_eq!(name.to_str().unwrap(), "no answer");

    unsafe {
        ross_session_free(session);
        ross_ontology_free(ontology);
        ross_string_free(ptr::null_mut());
    }
}

#[test]
fn loads_the_ontology_directory() {
    let dir = CString::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/ontology")).unwrap();
    let mut loaded = ptr::null_mut();
    assert_eq!(unsafe { ross_ontology_load(dir.as_ptr(), &mut loaded) }, RossStatus::Ok);
    assert!(!loaded.is_null());
    unsafe { ross_ontology_free(loaded) };
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/ross.h")).unwrap();
    for f in [
        "ross_last_error_message",
        "ross_ontology_bundled",
        "ross_ontology_load",
        "ross_ontology_free",
        "ross_session_new",
        "ross_session_free",
        "ross_disambiguate",
        "ross_ask",
        "ross_export_model",
        "ross_string_free",
        "ross_status_name",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct RossSession RossSession;"));
    assert!(header.contains("ROSS_STATUS_NO_MODEL = 5"));
}
