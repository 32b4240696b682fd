use std::ffi::CStr;
use std::ptr;

use diophcolor_ffi::*;

fn last_error() -> String {
    let p = dc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    dc_string_free(p);
    s
}

#[test]
fn expand_sqrt2_minus_one() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(dc_surd_new(-1, 2, 1, &mut s), DcStatus::Ok);
        assert!(dc_last_error().is_null());
        assert!(take_string(dc_surd_to_string(s)).contains("sqrt(2)"));
        let mut cf = ptr::null_mut();
        assert_eq!(dc_cf_expand(s, &mut cf), DcStatus::Ok);
        assert_eq!(dc_cf_preperiod_len(cf), 0);
        assert_eq!(dc_cf_period_len(cf), 1);
        assert_eq!((1..=5).map(|k| dc_cf_digit(cf, k)).collect::<Vec<_>>(), [2; 5]);
        assert_eq!(dc_cf_digit(cf, 0), 0);
        dc_cf_free(cf);
        dc_surd_free(s);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(dc_surd_new(1, -2, 1, &mut s), DcStatus::InvalidSurd);
        assert!(s.is_null());
        assert!(last_error().contains("negative radicand"));
        assert_eq!(dc_surd_new(1, 2, 1, ptr::null_mut()), DcStatus::NullPointer);
        assert_eq!(dc_cf_expand(ptr::null(), &mut ptr::null_mut()), DcStatus::NullPointer);

        let (mut num, mut den) = (7u32, 7u64);
        assert_eq!(dc_padic_abs(12, 6, &mut num, &mut den), DcStatus::NotPrime);
        assert_eq!((num, den), (7, 7));

        let mut cf = ptr::null_mut();
        assert_eq!(dc_cf_new(ptr::null(), 0, ptr::null(), 0, &mut cf), DcStatus::OutOfRange);
        assert!(cf.is_null());

        // a later success clears the message
        assert_eq!(dc_padic_abs(12, 2, &mut num, &mut den), DcStatus::Ok);
        assert!(dc_last_error().is_null());
    }
}

#[test]
fn padic_values() {
    let cases = [(12i64, 2u64, 1u32, 4u64), (-81, 3, 1, 81), (7, 5, 1, 1), (0, 3, 0, 1)];
    for (n, p, want_num, want_den) in cases {
        let (mut num, mut den) = (0u32, 0u64);
        assert_eq!(unsafe { dc_padic_abs(n, p, &mut num, &mut den) }, DcStatus::Ok);
        assert_eq!((num, den), (want_num, want_den), "|{n}|_{p}");
    }
    let (mut num, mut den) = (0u32, 0u64);
    assert_eq!(unsafe { dc_padic_abs(i64::MIN, 2, &mut num, &mut den) }, DcStatus::Ok);
    assert_eq!(den, 1 << 63);
}

#[test]
fn chromatic_numbers() {
    let mut chi = 0u64;
    unsafe {
        assert_eq!(dc_chromatic_number([1u64, 2].as_ptr(), 2, 12, 0, &mut chi), DcStatus::Ok);
        assert_eq!(chi, 3);
        assert_eq!(dc_chromatic_number([1u64, 2, 3].as_ptr(), 3, 3, 0, &mut chi), DcStatus::Ok);
        assert_eq!(chi, 4);
        assert_eq!(dc_chromatic_number([1u64, 4].as_ptr(), 2, 4, 1, &mut chi), DcStatus::BudgetExceeded);
        assert_eq!(dc_chromatic_number(ptr::null(), 2, 4, 0, &mut chi), DcStatus::NullPointer);
    }
}

#[test]
fn witness_sweep_records() {
    unsafe {
        let mut cf = ptr::null_mut();
        assert_eq!(dc_cf_new(ptr::null(), 0, [2u64].as_ptr(), 1, &mut cf), DcStatus::Ok);
        let mut sweep = ptr::null_mut();
        assert_eq!(dc_witness_sweep(cf, 2, 64, 2, &mut sweep), DcStatus::Ok);
        assert_eq!(dc_sweep_len(sweep), 6);
        assert!(dc_sweep_holds(sweep));
        let first = take_string(dc_sweep_record_json(sweep, 0));
        assert!(first.starts_with('{') && first.contains("\"N\":2"), "{first}");
        assert!(dc_sweep_record_json(sweep, 6).is_null());
        let summary = take_string(dc_sweep_summary_json(sweep));
        assert!(summary.contains("\"holds\":true"), "{summary}");
        dc_sweep_free(sweep);

        let mut bad = ptr::null_mut();
        assert_eq!(dc_witness_sweep(cf, 4, 64, 1, &mut bad), DcStatus::NotPrime);
        assert!(bad.is_null());
        dc_cf_free(cf);
    }
}

#[test]
fn header_lists_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/diophcolor.h")).unwrap();
    for name in [
        "typedef struct DcSurd DcSurd",
        "DC_STATUS_BUDGET_EXCEEDED",
        "dc_last_error",
        "dc_string_free",
        "dc_witness_sweep",
        "dc_sweep_record_json",
        "dc_chromatic_number",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        dc_surd_free(ptr::null_mut());
        dc_cf_free(ptr::null_mut());
        dc_sweep_free(ptr::null_mut());
        dc_string_free(ptr::null_mut());
        assert_eq!(dc_sweep_len(ptr::null()), 0);
        assert!(!dc_sweep_holds(ptr::null()));
    }
}
