use std::ffi::{c_char, CStr};
use std::ptr;

use torsion_ffi::*;

fn take(s: *mut c_char) -> serde_json::Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { torsion_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(torsion_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn symbol_round_trip() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { torsion_field_new(3, &mut f) }, TorsionStatus::Ok);
    let mut s = ptr::null_mut();
    let st =
        unsafe { torsion_symbol_new(f, c"0".as_ptr(), c"5".as_ptr(), c"1,0;0,1".as_ptr(), &mut s) };
    assert_eq!(st, TorsionStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { torsion_symbol_conductor(s, 30, &mut out) },
        TorsionStatus::Ok
    );
    assert_eq!(take(out)["denominator"], "24");
    unsafe {
        torsion_symbol_free(s);
        torsion_field_free(f);
    }
}

#[test]
fn split_through_handles() {
    let mut f = ptr::null_mut();
    unsafe { torsion_field_new(1, &mut f) };
    let mut s = ptr::null_mut();
    unsafe {
        torsion_symbol_new(
            f,
            c"0".as_ptr(),
            c"inf".as_ptr(),
            c"5,1+w;0,4".as_ptr(),
            &mut s,
        )
    };
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { torsion_symbol_split(s, 3, 7, &mut out) },
        TorsionStatus::Ok
    );
    assert!(take(out)["left_conductor"].is_object());
    assert_eq!(
        unsafe { torsion_symbol_split(s, 3, 8, &mut out) },
        TorsionStatus::InvalidInput
    );
    unsafe {
        torsion_symbol_free(s);
        torsion_field_free(f);
    }
}

#[test]
fn error_codes() {
    let mut f = ptr::null_mut();
    assert_eq!(
        unsafe { torsion_field_new(5, &mut f) },
        TorsionStatus::InvalidInput
    );
    assert!(last_error().contains("unsupported field"));
    assert_eq!(
        unsafe { torsion_field_new(1, ptr::null_mut()) },
        TorsionStatus::NullPointer
    );
    let mut out = ptr::null_mut();
    let st = unsafe { torsion_symbol_conductor(ptr::null(), 30, &mut out) };
    assert_eq!(st, TorsionStatus::NullPointer);
    let bad = [0xffu8, 0];
    let st =
        unsafe { torsion_bianchi_h1(3, bad.as_ptr() as *const c_char, c"1".as_ptr(), &mut out) };
    assert_eq!(st, TorsionStatus::InvalidUtf8);
    assert!(!torsion_version().is_null());
}

#[test]
fn bianchi_and_smith() {
    let mut out = ptr::null_mut();
    let st = unsafe { torsion_bianchi_h1(3, c"sl2".as_ptr(), c"11".as_ptr(), &mut out) };
    assert_eq!(st, TorsionStatus::Ok);
    assert_eq!(take(out)["cuspidal_dim"], 2);

    let m = [2i64, 4, 4, -6, 6, 12, 10, -4, -16];
    assert_eq!(
        unsafe { torsion_smith_form(m.as_ptr(), 3, 3, &mut out) },
        TorsionStatus::Ok
    );
    assert_eq!(take(out)["divisors"], serde_json::json!(["2", "6", "12"]));
    assert_eq!(
        unsafe { torsion_smith_form(ptr::null(), 0, 4, &mut out) },
        TorsionStatus::Ok
    );
    assert_eq!(take(out)["rank"], 0);
}

#[test]
fn header_declares_the_api() {
    let h =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/torsion.h")).unwrap();
    for name in [
        "torsion_field_new",
        "torsion_symbol_conductor",
        "torsion_smith_form",
        "TORSION_STATUS_INVALID_INPUT",
        "typedef struct TorsionSymbol TorsionSymbol",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
