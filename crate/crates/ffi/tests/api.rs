use std::ffi::{CStr, CString};
use std::ptr;

use binact_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = binact_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    binact_string_free(p);
    s
}

const IDENTITY_SWAP: &str = r#"{"group":"z2","carrier":2,"table":[[[0,1],[0,1]],[[0,1],[1,0]]]}"#;

#[test]
fn catalog_groups() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(binact_group_named(c("s3").as_ptr(), &mut g), BinactStatus::Ok);
        assert_eq!(binact_group_order(g), 6);
        assert!(binact_last_error_message().is_null());
        binact_group_free(g);

        let mut g = ptr::null_mut();
        assert_eq!(binact_group_named(c("z7x").as_ptr(), &mut g), BinactStatus::UnknownGroup);
        assert!(g.is_null());
        assert!(last_error().contains("z7x"));
    }
}

#[test]
fn group_from_json() {
    unsafe {
        let mut g = ptr::null_mut();
        let json = c(r#"{"name":"z3","cayley":[[0,1,2],[1,2,0],[2,0,1]]}"#);
        assert_eq!(binact_group_from_json(json.as_ptr(), &mut g), BinactStatus::Ok);
        assert_eq!(binact_group_order(g), 3);
        binact_group_free(g);

        let bad = c(r#"{"name":"x","cayley":[[0,1],[0,1]]}"#);
        assert_eq!(binact_group_from_json(bad.as_ptr(), &mut g), BinactStatus::Invalid);
        assert_eq!(binact_group_from_json(c("[").as_ptr(), &mut g), BinactStatus::Parse);
    }
}

#[test]
fn action_queries() {
    unsafe {
        let mut a = ptr::null_mut();
        assert_eq!(binact_action_from_json(c(IDENTITY_SWAP).as_ptr(), &mut a), BinactStatus::Ok);
        assert_eq!(binact_action_carrier(a), 2);

        let mut v = 9;
        assert_eq!(binact_action_get(a, 1, 1, 0, &mut v), BinactStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(binact_action_get(a, 2, 0, 0, &mut v), BinactStatus::OutOfRange);

        let mut d = true;
        assert_eq!(binact_action_is_distributive(a, &mut d), BinactStatus::Ok);
        assert!(!d);

        let mut m = 0u64;
        assert_eq!(binact_action_minimal_bi_invariant(a, 0, &mut m), BinactStatus::Ok);
        assert_eq!(m, 0b01);
        assert_eq!(binact_action_minimal_bi_invariant(a, 1, &mut m), BinactStatus::Ok);
        assert_eq!(m, 0b11);

        let mut s = ptr::null_mut();
        assert_eq!(binact_action_orbit_report_json(a, &mut s), BinactStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(report["distributive"], false);

        assert_eq!(binact_action_to_json(a, &mut s), BinactStatus::Ok);
        let round = c(&take_string(s));
        let mut b = ptr::null_mut();
        assert_eq!(binact_action_from_json(round.as_ptr(), &mut b), BinactStatus::Ok);
        binact_action_free(b);
        binact_action_free(a);
    }
}

#[test]
fn invalid_actions_are_rejected() {
    unsafe {
        let mut a = ptr::null_mut();
        let projection = c(r#"{"group":"z2","carrier":2,"table":[[[0,1],[0,1]],[[0,0],[1,1]]]}"#);
        assert_eq!(binact_action_from_json(projection.as_ptr(), &mut a), BinactStatus::Invalid);
        assert!(a.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn null_arguments() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(binact_group_named(ptr::null(), &mut g), BinactStatus::NullPointer);
        assert_eq!(binact_group_named(c("z2").as_ptr(), ptr::null_mut()), BinactStatus::NullPointer);
        let mut d = false;
        assert_eq!(binact_action_is_distributive(ptr::null(), &mut d), BinactStatus::NullPointer);
        assert_eq!(binact_group_order(ptr::null()), 0);
        binact_group_free(ptr::null_mut());
        binact_action_free(ptr::null_mut());
        binact_string_free(ptr::null_mut());
    }
}

#[test]
fn enumeration() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(binact_group_named(c("z2").as_ptr(), &mut g), BinactStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(binact_enumerate_json(g, 2, false, false, 0, &mut s), BinactStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["summary"]["raw_count"], 4);
        assert_eq!(v["summary"]["distributive_count"], 2);
        assert_eq!(v["actions"].as_array().unwrap().len(), 4);

        assert_eq!(binact_enumerate_json(g, 6, false, false, 10, &mut s), BinactStatus::BudgetExceeded);
        binact_group_free(g);
    }
}
