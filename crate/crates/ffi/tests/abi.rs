use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use choicelens_ffi::*;

const E1: &str = "ground: x y z\nx y z -> x\nx y -> y\nx z -> z\ny z -> y\n";

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str) -> *mut ClDataset {
    let mut d = ptr::null_mut();
    let t = cstr(text);
    assert_eq!(
        unsafe { cl_dataset_parse(t.as_ptr(), &mut d) },
        ClStatus::Ok
    );
    assert!(!d.is_null());
    d
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    cl_string_free(s);
    out
}

fn last_error() -> String {
    let p = cl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn classify_and_elicit() {
    let d = parse(E1);
    unsafe {
        assert_eq!(cl_dataset_item_count(d), 3);
        let mut out = ptr::null_mut();
        let models = cstr("CMLA,CSLA");
        assert_eq!(cl_classify_json(d, models.as_ptr(), &mut out), ClStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["CMLA"]["holds"], true);
        assert_eq!(v["CSLA"]["holds"], false);

        let model = cstr("cmla");
        assert_eq!(cl_elicit_json(d, model.as_ptr(), &mut out), ClStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["model"], "CMLA");
        assert_eq!(v["certificate"]["filter"]["x y"], serde_json::json!(["y"]));

        let mut holds = -1;
        assert_eq!(cl_decide(d, model.as_ptr(), &mut holds), ClStatus::Ok);
        assert_eq!(holds, 1);
        assert!(cl_last_error().is_null());
        cl_dataset_free(d);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut d = ptr::null_mut();
        let bad = cstr("ground: x y\nx y -> q\n");
        assert_eq!(
            cl_dataset_parse(bad.as_ptr(), &mut d),
            ClStatus::InvalidDataset
        );
        assert!(last_error().contains("line 2"));
        assert!(d.is_null());

        assert_eq!(
            cl_dataset_parse(ptr::null(), &mut d),
            ClStatus::NullArgument
        );
        let path = cstr("/nonexistent/data.cf");
        assert_eq!(
            cl_dataset_load(path.as_ptr(), &mut d),
            ClStatus::InvalidDataset
        );
        let invalid = [0xffu8, 0];
        assert_eq!(
            cl_dataset_parse(invalid.as_ptr() as *const c_char, &mut d),
            ClStatus::InvalidUtf8
        );

        let d = parse(E1);
        let mut out = ptr::null_mut();
        let nope = cstr("NOPE");
        assert_eq!(
            cl_elicit_json(d, nope.as_ptr(), &mut out),
            ClStatus::UnknownModel
        );
        let csla = cstr("CSLA");
        assert_eq!(
            cl_elicit_json(d, csla.as_ptr(), &mut out),
            ClStatus::NotInModel
        );
        assert!(out.is_null());
        assert_eq!(
            cl_decide(ptr::null(), csla.as_ptr(), ptr::null_mut()),
            ClStatus::NullArgument
        );
        assert_eq!(
            cl_decide(d, csla.as_ptr(), ptr::null_mut()),
            ClStatus::NullArgument
        );
        assert_eq!(cl_dataset_item_count(ptr::null()), 0);
        cl_dataset_free(d);
        cl_dataset_free(ptr::null_mut());
        cl_string_free(ptr::null_mut());
    }
}

#[test]
fn bound_errors_map_to_their_code() {
    let mut text = String::from("ground: a b c d e\n");
    for mask in 1u32..32 {
        if mask.count_ones() < 2 {
            continue;
        }
        let items: Vec<&str> = ["a", "b", "c", "d", "e"]
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| *l)
            .collect();
        text.push_str(&format!("{} -> {}\n", items.join(" "), items[0]));
    }
    let d = parse(&text);
    let mut out = ptr::null_mut();
    let m = cstr("CAPACITY_SL(2)");
    unsafe {
        assert_eq!(
            cl_elicit_json(d, m.as_ptr(), &mut out),
            ClStatus::BoundExceeded
        );
        cl_dataset_free(d);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/choicelens.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "cl_dataset_parse",
        "cl_classify_json",
        "cl_string_free",
        "CL_STATUS_NOT_IN_MODEL",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(status.success());
}
