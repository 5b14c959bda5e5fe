use std::ffi::CStr;
use std::ptr;

use ybe_ffi::*;

fn flat(rows: &[[u32; 4]; 4]) -> Vec<u32> {
    rows.iter().flatten().copied().collect()
}

// Four-point indecomposable involutive solution, 0-based.
fn four_point() -> (Vec<u32>, Vec<u32>) {
    let sigma = flat(&[[1, 0, 2, 3], [2, 3, 1, 0], [0, 1, 3, 2], [3, 2, 0, 1]]);
    let tau = flat(&[[3, 1, 2, 0], [1, 3, 0, 2], [0, 2, 1, 3], [2, 0, 3, 1]]);
    (sigma, tau)
}

fn message() -> String {
    unsafe { CStr::from_ptr(ybe_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn solution_lifecycle() {
    let (sigma, tau) = four_point();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(ybe_solution_new(4, sigma.as_ptr(), tau.as_ptr(), &mut s), YbeStatus::Ok);
        assert_eq!(ybe_solution_size(s), 4);
        let mut flag = false;
        assert_eq!(ybe_solution_is_involutive(s, &mut flag), YbeStatus::Ok);
        assert!(flag);
        assert_eq!(ybe_solution_is_indecomposable(s, &mut flag), YbeStatus::Ok);
        assert!(flag);
        let mut level = 0;
        assert_eq!(ybe_solution_multipermutation_level(s, &mut level), YbeStatus::Ok);
        assert_eq!(level, -1);
        let mut r = ptr::null_mut();
        assert_eq!(ybe_solution_retract(s, &mut r), YbeStatus::Ok);
        assert_eq!(ybe_solution_size(r), 4);
        assert_eq!(ybe_solution_is_isomorphic(s, r, &mut flag), YbeStatus::Ok);
        let (mut a, mut b) = (vec![0u32; 16], vec![0u32; 16]);
        assert_eq!(ybe_solution_tables(s, a.as_mut_ptr(), b.as_mut_ptr()), YbeStatus::Ok);
        assert_eq!((a, b), (sigma, tau));
        ybe_solution_free(r);
        ybe_solution_free(s);
    }
    assert_eq!(message(), "");
}

#[test]
fn invalid_input_reports_status_and_message() {
    let (mut sigma, tau) = four_point();
    sigma[0] = 0;
    let mut s = ptr::null_mut();
    let status = unsafe { ybe_solution_new(4, sigma.as_ptr(), tau.as_ptr(), &mut s) };
    assert_eq!(status, YbeStatus::InvalidInput);
    assert!(s.is_null());
    assert!(!message().is_empty());
    let status = unsafe { ybe_solution_new(4, ptr::null(), tau.as_ptr(), &mut s) };
    assert_eq!(status, YbeStatus::NullPointer);
    unsafe { ybe_solution_free(ptr::null_mut()) };
}

#[test]
fn non_involutive_is_not_applicable() {
    // σ_x = (1 2) for every x; τ_0 = id, τ_1 = (0 2 1), τ_2 = (0 1 2)
    let sigma = [0u32, 2, 1, 0, 2, 1, 0, 2, 1];
    let tau = [0u32, 1, 2, 2, 0, 1, 1, 2, 0];
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(
            ybe_solution_new(3, sigma.as_ptr(), tau.as_ptr(), &mut s),
            YbeStatus::Ok,
            "{}",
            message()
        );
        let mut level = 0;
        assert_eq!(
            ybe_solution_multipermutation_level(s, &mut level),
            YbeStatus::NotApplicable
        );
        ybe_solution_free(s);
    }
}

#[test]
fn enumeration_counts() {
    let (mut inv, mut non) = (0u64, 0u64);
    unsafe {
        assert_eq!(ybe_enumerate_counts(3, false, 2, &mut inv, &mut non), YbeStatus::Ok);
        assert_eq!((inv, non), (5, 21));
        assert_eq!(ybe_enumerate_counts(4, true, 1, &mut inv, &mut non), YbeStatus::Ok);
        assert_eq!((inv, non), (23, 0));
        assert_eq!(ybe_enumerate_counts(40, true, 1, &mut inv, &mut non), YbeStatus::Limit);
    }
}

#[test]
fn brace_handles() {
    // Z/4 with a∘b = a + b + 2ab
    let add: Vec<u32> = (0..16).map(|i| ((i / 4 + i % 4) % 4) as u32).collect();
    let mul: Vec<u32> = (0..16)
        .map(|i| ((i / 4 + i % 4 + 2 * (i / 4) * (i % 4)) % 4) as u32)
        .collect();
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(
            ybe_brace_new(4, add.as_ptr(), mul.as_ptr(), &mut b),
            YbeStatus::Ok,
            "{}",
            message()
        );
        assert_eq!(ybe_brace_size(b), 4);
        let mut k = 0;
        assert_eq!(ybe_brace_right_nilpotency(b, &mut k), YbeStatus::Ok);
        assert_eq!(k, 3);
        let mut two = false;
        assert_eq!(ybe_brace_is_two_sided(b, &mut two), YbeStatus::Ok);
        assert!(two);
        let mut s = ptr::null_mut();
        assert_eq!(ybe_brace_solution(b, &mut s), YbeStatus::Ok);
        let mut inv = false;
        assert_eq!(ybe_solution_is_involutive(s, &mut inv), YbeStatus::Ok);
        assert!(inv);
        ybe_solution_free(s);
        ybe_brace_free(b);
        let mut count = 0;
        assert_eq!(ybe_brace_count(4, &mut count), YbeStatus::Ok);
        assert_eq!(count, 4);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/ybe.h");
    for name in [
        "ybe_last_error_message",
        "ybe_solution_new",
        "ybe_solution_free",
        "ybe_solution_retract",
        "ybe_solution_multipermutation_level",
        "ybe_enumerate_counts",
        "ybe_brace_new",
        "ybe_brace_solution",
        "ybe_brace_right_nilpotency",
        "YBE_STATUS_NOT_APPLICABLE",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
