use std::ffi::{c_char, CStr, CString};
use std::ptr;

use spintorsion_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    st_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(st_last_error()).to_str().unwrap().to_owned()
}

unsafe fn parse(text: &str, dim: usize) -> *mut StForm {
    let mut f = ptr::null_mut();
    assert_eq!(st_form_parse(cstr(text).as_ptr(), dim, &mut f), StStatus::Ok);
    f
}

#[test]
fn form_round_trip() {
    unsafe {
        let f = parse("1 2 3 : 1/2\n2 4 5 : -3\n", 6);
        assert_eq!((st_form_dim(f), st_form_grade(f)), (6, 3));
        let mut s = ptr::null_mut();
        assert_eq!(st_form_to_string(f, &mut s), StStatus::Ok);
        let text = take(s);
        let g = parse(&text, 6);
        let mut c = ptr::null_mut();
        assert_eq!(st_form_coeff(g, [2usize, 4, 5].as_ptr(), 3, &mut c), StStatus::Ok);
        assert_eq!(take(c), "-3");
        assert_eq!(st_form_coeff(g, [1usize, 2].as_ptr(), 2, &mut c), StStatus::InvalidInput);
        st_form_free(f);
        st_form_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(st_form_parse(cstr("1 2 : x").as_ptr(), 0, &mut f), StStatus::Parse);
        assert!(f.is_null());
        assert!(last_error().contains("line 1"));
        assert_eq!(st_form_parse(ptr::null(), 0, &mut f), StStatus::NullPointer);
        assert_eq!(st_form_parse(cstr("1 2 : 1").as_ptr(), 0, ptr::null_mut()), StStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(st_form_parse(bad.as_ptr().cast(), 0, &mut f), StStatus::InvalidUtf8);
        let two = parse("1 2 : 1", 4);
        let mut h = StHolonomy::default();
        assert_eq!(st_holonomy(two, StRepMode::Vector, &mut h), StStatus::Grade);
        st_form_free(two);
        assert_eq!((st_form_dim(ptr::null()), st_form_grade(ptr::null())), (0, 0));
        st_form_free(ptr::null_mut());
        st_string_free(ptr::null_mut());
    }
}

#[test]
fn holonomy_of_forms() {
    unsafe {
        let g2 = parse("1 2 7 : 1\n1 3 5 : 1\n1 4 6 : -1\n2 3 6 : 1\n2 4 5 : 1\n3 4 7 : 1\n5 6 7 : 1\n", 7);
        let mut h = StHolonomy::default();
        assert_eq!(st_holonomy(g2, StRepMode::Vector, &mut h), StStatus::Ok);
        assert_eq!((h.dim, h.derived_dim, h.center_dim), (21, 21, 0));
        assert!(h.semisimple && h.compact && h.irreducible);
        st_form_free(g2);
        let one = parse("1 : 1\n2 : -2\n", 3);
        assert_eq!(st_holonomy(one, StRepMode::Spinor, &mut h), StStatus::Ok);
        assert_eq!((h.dim, h.derived_dim, h.center_dim), (1, 0, 1));
        st_form_free(one);
    }
}

#[test]
fn veronese_and_aloff_wallach() {
    unsafe {
        let pt: Vec<CString> = ["1", "0", "0", "0"].iter().map(|s| cstr(s)).collect();
        let ptrs: Vec<*const c_char> = pt.iter().map(|c| c.as_ptr()).collect();
        let mut f = ptr::null_mut();
        let mut flags = StVeronese::default();
        assert_eq!(st_sasakian_veronese(ptrs.as_ptr(), &mut f, &mut flags), StStatus::Ok);
        assert!(flags.unique && flags.matches_closed_form && flags.residual_zero);
        assert_eq!((st_form_dim(f), st_form_grade(f)), (7, 3));
        st_form_free(f);

        let zero: Vec<CString> = ["0", "0", "0", "0"].iter().map(|s| cstr(s)).collect();
        let zptrs: Vec<*const c_char> = zero.iter().map(|c| c.as_ptr()).collect();
        assert_ne!(st_sasakian_veronese(zptrs.as_ptr(), &mut f, &mut flags), StStatus::Ok);

        let mut sol = ptr::null_mut();
        assert_eq!(st_aw_solve(cstr("1").as_ptr(), cstr("1").as_ptr(), ptrs.as_ptr(), false, &mut sol), StStatus::Ok);
        assert!(st_solution_unique(sol) && st_solution_residual_zero(sol));
        let mut t = ptr::null_mut();
        assert_eq!(st_solution_form(sol, &mut t), StStatus::Ok);
        assert_eq!(st_form_grade(t), 3);
        st_form_free(t);
        st_solution_free(sol);

        assert_eq!(st_aw_solve(cstr("-1").as_ptr(), cstr("1").as_ptr(), ptrs.as_ptr(), false, &mut sol), StStatus::InvalidInput);
        assert!(!st_solution_unique(ptr::null()));
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(st_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn spin9_check_passes() {
    let mut pass = false;
    assert_eq!(unsafe { st_spin9_check(&mut pass) }, StStatus::Ok);
    assert!(pass);
    assert_eq!(unsafe { st_spin9_check(ptr::null_mut()) }, StStatus::NullPointer);
}
