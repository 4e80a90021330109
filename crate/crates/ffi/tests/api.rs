use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use zsdelta_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 256];
    let n = unsafe { zs_last_error(buf.as_mut_ptr(), buf.len()) };
    let s = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_string();
    assert_eq!(n, s.len());
    s
}

fn group(text: &str) -> *mut ZsGroup {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { zs_group_parse(text.as_ptr(), &mut g) }, ZsStatus::Ok);
    g
}

fn support(g: *const ZsGroup, text: &str) -> Result<*mut ZsSupport, ZsStatus> {
    let text = CString::new(text).unwrap();
    let mut s = ptr::null_mut();
    match unsafe { zs_support_parse(g, text.as_ptr(), &mut s) } {
        ZsStatus::Ok => Ok(s),
        e => {
            assert!(s.is_null());
            Err(e)
        }
    }
}

fn atoms(s: *const ZsSupport) -> *mut ZsAtoms {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { zs_atoms_enumerate(s, u64::MAX, &mut a) }, ZsStatus::Ok);
    a
}

#[test]
fn klein_triple() {
    let g = group("C2^2");
    let s = support(g, "(1,0);(0,1);(1,1)").unwrap();
    assert_eq!(unsafe { zs_support_len(s) }, 3);
    let a = atoms(s);
    unsafe {
        assert_eq!(zs_atoms_count(a), 4);
        let mut md = 99;
        assert_eq!(zs_atoms_min_delta(a, &mut md), ZsStatus::Ok);
        assert_eq!(md, 1);
        let mut d = 0;
        assert_eq!(zs_atoms_davenport(a, &mut d), ZsStatus::Ok);
        assert_eq!(d, 3);
        let mut hf = true;
        assert_eq!(zs_atoms_is_half_factorial(a, &mut hf), ZsStatus::Ok);
        assert!(!hf);

        let mut total = 0;
        for i in 0..zs_atoms_count(a) {
            let mut e = [0u32; 3];
            assert_eq!(zs_atoms_exponents(a, i, e.as_mut_ptr(), e.len()), ZsStatus::Ok);
            total += e.iter().sum::<u32>();
        }
        assert_eq!(total, 2 + 2 + 2 + 3);
        let mut e = [0u32; 2];
        assert_eq!(zs_atoms_exponents(a, 0, e.as_mut_ptr(), e.len()), ZsStatus::OutOfRange);
        assert_eq!(zs_atoms_exponents(a, 9, ptr::null_mut(), 3), ZsStatus::OutOfRange);

        zs_atoms_free(a);
        zs_support_free(s);
        zs_group_free(g);
    }
}

#[test]
fn half_factorial_and_max_delta_star() {
    let g = group("C2xC4");
    let s = support(g, "(1,0);(0,1)").unwrap();
    let a = atoms(s);
    unsafe {
        let mut md = 99;
        assert_eq!(zs_atoms_min_delta(a, &mut md), ZsStatus::Ok);
        assert_eq!(md, 0);
        let mut hf = false;
        assert_eq!(zs_atoms_is_half_factorial(a, &mut hf), ZsStatus::Ok);
        assert!(hf);
        let mut max = 0;
        assert_eq!(zs_group_max_delta_star(g, u64::MAX, &mut max), ZsStatus::Ok);
        assert_eq!(max, 2);
        let mut order = 0;
        assert_eq!(zs_group_order(g, &mut order), ZsStatus::Ok);
        assert_eq!(order, 8);
        zs_atoms_free(a);
        zs_support_free(s);
        zs_group_free(g);
    }
}

#[test]
fn errors_have_codes_and_messages() {
    let g = group("C5");
    assert_eq!(support(g, "(0)").unwrap_err(), ZsStatus::InvalidInput);
    assert!(last_error().contains("zero element"));
    assert_eq!(support(g, "(1);").unwrap_err(), ZsStatus::Parse);
    assert!(last_error().contains("position 4"));

    let mut h = ptr::null_mut();
    let bad = CString::new("D5").unwrap();
    assert_eq!(unsafe { zs_group_parse(bad.as_ptr(), &mut h) }, ZsStatus::Parse);
    assert!(h.is_null());
    assert_eq!(unsafe { zs_group_parse(ptr::null(), &mut h) }, ZsStatus::NullPointer);
    assert_eq!(unsafe { zs_group_parse(bad.as_ptr(), ptr::null_mut()) }, ZsStatus::NullPointer);

    let invalid = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { zs_group_parse(invalid.as_ptr(), &mut h) }, ZsStatus::InvalidUtf8);

    let s = support(g, "(1);(4);(2)").unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { zs_atoms_enumerate(s, 4, &mut a) }, ZsStatus::BudgetExceeded);
    assert!(a.is_null());
    assert!(last_error().contains("budget"));

    let mut md = 0;
    assert_eq!(unsafe { zs_atoms_min_delta(ptr::null(), &mut md) }, ZsStatus::NullPointer);
    let mut max = 0;
    assert_eq!(unsafe { zs_group_max_delta_star(g, 3, &mut max) }, ZsStatus::BudgetExceeded);

    // A successful call clears the message.
    let mut order = 0;
    assert_eq!(unsafe { zs_group_order(g, &mut order) }, ZsStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        zs_support_free(s);
        zs_group_free(g);
        zs_group_free(ptr::null_mut());
    }
}

#[test]
fn truncated_error_buffer() {
    let g = group("C5");
    support(g, "(0)").unwrap_err();
    let mut buf = [1 as c_char; 5];
    let n = unsafe { zs_last_error(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 4);
    assert_eq!(buf[4], 0);
    assert_eq!(unsafe { zs_last_error(ptr::null_mut(), 0) }, n);
    unsafe { zs_group_free(g) };
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_is_current_and_compiles_from_c() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(root.join("include/zsdelta.h")).unwrap();
    for name in [
        "zs_group_parse",
        "zs_support_parse",
        "zs_atoms_enumerate",
        "zs_atoms_min_delta",
        "zs_atoms_is_half_factorial",
        "zs_group_max_delta_star",
        "zs_last_error",
        "ZS_STATUS_BUDGET_EXCEEDED",
        "typedef struct ZsAtoms ZsAtoms;",
    ] {
        assert!(header.contains(name), "{name} missing from the header");
    }

    let lib = target_dir().join("libzsdelta_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let exe = target_dir().join("zsdelta_ffi_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(root.join("include"))
        .arg(root.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("zero element"));
}
