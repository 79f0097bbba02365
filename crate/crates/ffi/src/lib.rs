//! C ABI for `spintorsion`.
//!
//! Forms and solver results cross the boundary as opaque handles. Exact numbers go in and
//! out as strings in the `p/q` or `p/q*sqrt(d)` notation. Every fallible call returns an
//! [`StStatus`]; the message of the last failure on the calling thread is available from
//! [`st_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spintorsion::holonomy::{self, RepMode};
use spintorsion::homogeneous::{AloffWallach, MetricParams, TorsionSolution};
use spintorsion::{sasakian, spin9, Error, Form, Scalar};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Dimension = 4,
    Grade = 5,
    InvalidInput = 6,
    Precondition = 7,
    NoSolution = 8,
    Io = 9,
    Panic = 10,
}

/// Representation used to generate the holonomy algebra.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StRepMode {
    /// so(n) acting on R^n; 3-forms only.
    Vector = 0,
    /// Clifford action on the spinor module.
    Spinor = 1,
}

/// Structure data of a generated Lie algebra.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StHolonomy {
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub rank: usize,
    pub semisimple: bool,
    pub compact: bool,
    pub irreducible: bool,
}

/// Flags of a Veronese torsion solve.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StVeronese {
    pub unique: bool,
    pub matches_closed_form: bool,
    pub residual_zero: bool,
}

/// A k-form on R^n with exact coefficients.
pub struct StForm(Form);

/// Result of a torsion solve on the Aloff-Wallach space.
pub struct StSolution(TorsionSolution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> StStatus {
    match e {
        Error::Dimension(_) => StStatus::Dimension,
        Error::Grade(_) => StStatus::Grade,
        Error::InvalidInput(_) => StStatus::InvalidInput,
        Error::Parse { .. } => StStatus::Parse,
        Error::Precondition(_) => StStatus::Precondition,
        Error::NoSolution(_) => StStatus::NoSolution,
        Error::Io(_) => StStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Utf8,
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, recording failures and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> StStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            StStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("string is not valid UTF-8".into());
            StStatus::InvalidUtf8
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            set_error(format!("internal panic: {}", msg.unwrap_or_default()));
            StStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn scalar(p: *const c_char, what: &'static str) -> Result<Scalar, Fail> {
    Ok(text(p, what)?.parse::<Scalar>()?)
}

unsafe fn point(p: *const *const c_char) -> Result<[Scalar; 4], Fail> {
    if p.is_null() {
        return Err(Fail::Null("point"));
    }
    let mut out: [Scalar; 4] = Default::default();
    for (i, x) in out.iter_mut().enumerate() {
        *x = scalar(*p.add(i), "point coordinate")?;
    }
    Ok(out)
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn form_ref<'a>(p: *const StForm) -> Result<&'a Form, Fail> {
    p.as_ref().map(|f| &f.0).ok_or(Fail::Null("form"))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no nul bytes").into_raw()
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn st_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a form from the text format, one `i j k : coefficient` term per line.
/// `dim = 0` takes the largest index as the dimension.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_form_parse(text_in: *const c_char, dim: usize, out: *mut *mut StForm) -> StStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let f = Form::parse(text(text_in, "text")?, (dim > 0).then_some(dim))?;
        *out = Box::into_raw(Box::new(StForm(f)));
        Ok(())
    })
}

/// Frees a form handle. Null is ignored.
///
/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_form_free(f: *mut StForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Dimension n of the underlying space; 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_form_dim(f: *const StForm) -> usize {
    f.as_ref().map_or(0, |f| f.0.dim())
}

/// Degree k of the form; 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_form_grade(f: *const StForm) -> usize {
    f.as_ref().map_or(0, |f| f.0.grade())
}

/// The form in the text format accepted by [`st_form_parse`]. Free with [`st_string_free`].
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_form_to_string(f: *const StForm, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = owned_string(form_ref(f)?.to_text());
        Ok(())
    })
}

/// Coefficient of the blade with the given (1-based) indices, as an exact string.
///
/// # Safety
/// `f` must be a live handle, `idx` must point to `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn st_form_coeff(f: *const StForm, idx: *const usize, len: usize, out: *mut *mut c_char) -> StStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let form = form_ref(f)?;
        if idx.is_null() && len > 0 {
            return Err(Fail::Null("idx"));
        }
        let ix = if len == 0 { &[][..] } else { std::slice::from_raw_parts(idx, len) };
        if ix.len() != form.grade() || ix.iter().any(|&i| i == 0 || i > form.dim()) {
            return Err(Error::InvalidInput(format!("indices {ix:?} do not name a blade of this form")).into());
        }
        *out = owned_string(form.coeff(ix).to_string());
        Ok(())
    })
}

/// Generates the holonomy algebra of the form's contractions and reports its structure.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_holonomy(f: *const StForm, mode: StRepMode, out: *mut StHolonomy) -> StStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let form = form_ref(f)?;
        let mode = match mode {
            StRepMode::Vector => RepMode::Vector,
            StRepMode::Spinor => RepMode::Spinor,
        };
        let s = holonomy::g_star(form, mode)?.summary();
        *out = StHolonomy {
            dim: s.dim,
            derived_dim: s.derived_dim,
            center_dim: s.center_dim,
            rank: s.rank,
            semisimple: s.semisimple,
            compact: s.compact,
            irreducible: s.irreducible,
        };
        Ok(())
    })
}

/// Torsion 3-form of the 3-Sasakian model for the spinor with coordinates `point[0..4]`.
///
/// # Safety
/// `point` must hold four nul-terminated strings; `form` and `flags` must be valid.
#[no_mangle]
pub unsafe extern "C" fn st_sasakian_veronese(point_in: *const *const c_char, form: *mut *mut StForm, flags: *mut StVeronese) -> StStatus {
    guard(|| {
        let form = out_ptr(form, "form")?;
        let flags = out_ptr(flags, "flags")?;
        let sol = sasakian::veronese_torsion(&point(point_in)?)?;
        *flags = StVeronese { unique: sol.unique, matches_closed_form: sol.matches_closed_form, residual_zero: sol.residual_zero };
        *form = Box::into_raw(Box::new(StForm(sol.form)));
        Ok(())
    })
}

/// Solves for an invariant torsion form (3-form, or 4-form when `four_form`) on the
/// Aloff-Wallach space with metric parameters `s`, `y` making the spinor `point` parallel.
///
/// # Safety
/// `s`, `y` and the four `point` entries must be nul-terminated strings; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn st_aw_solve(
    s: *const c_char,
    y: *const c_char,
    point_in: *const *const c_char,
    four_form: bool,
    out: *mut *mut StSolution,
) -> StStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let model = AloffWallach::new(MetricParams::new(scalar(s, "s")?, scalar(y, "y")?)?)?;
        let psi = sasakian::spinor(&point(point_in)?);
        let sol = if four_form {
            model.solve_four_form(&psi, &model.invariant_four_forms())?
        } else {
            model.solve_torsion(&psi, &model.invariant_three_forms())?
        };
        *out = Box::into_raw(Box::new(StSolution(sol)));
        Ok(())
    })
}

/// Frees a solution handle. Null is ignored.
///
/// # Safety
/// `sol` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_solution_free(sol: *mut StSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// A new form handle holding the solved torsion form.
///
/// # Safety
/// `sol` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_solution_form(sol: *const StSolution, out: *mut *mut StForm) -> StStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sol = sol.as_ref().ok_or(Fail::Null("solution"))?;
        *out = Box::into_raw(Box::new(StForm(sol.0.form.clone())));
        Ok(())
    })
}

/// Whether the solution is the only one inside the Ansatz; false for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_solution_unique(sol: *const StSolution) -> bool {
    sol.as_ref().is_some_and(|s| s.0.unique)
}

/// Whether substituting the solution back leaves an exactly zero residual; false for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn st_solution_residual_zero(sol: *const StSolution) -> bool {
    sol.as_ref().is_some_and(|s| s.0.residual_is_zero())
}

/// Runs the full spin(9) consistency check; `pass` receives the verdict.
///
/// # Safety
/// `pass` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn st_spin9_check(pass: *mut bool) -> StStatus {
    guard(|| {
        let pass = out_ptr(pass, "pass")?;
        *pass = spin9::check_all()?.pass;
        Ok(())
    })
}
