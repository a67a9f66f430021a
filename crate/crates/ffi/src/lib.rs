//! C ABI over `torsion-core`.
//!
//! Handles are opaque and owned by the caller until passed to their `_free`
//! function. Every fallible call returns a [`TorsionStatus`]; on failure the
//! message is available from [`torsion_last_error`] on the same thread.
//! Strings returned through `out` parameters are JSON and must be released
//! with [`torsion_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use torsion_core::cli::parse_matrix;
use torsion_core::homology::{bianchi_h1, H1Options};
use torsion_core::linalg::{snf, SparseZMatrix};
use torsion_core::quadfield::{Field, QfIdeal, QuadElem};
use torsion_core::subgroups::{bianchi_presentation, GroupKind};
use torsion_core::symbols::{self, ModularSymbol, P1Point, SplitOptions};
use torsion_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed or unsupported input.
    InvalidInput = 3,
    /// The computation ran but failed, e.g. a search budget ran out.
    Computation = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Field `Q(√−d)` with its ring of integers.
pub struct TorsionField {
    field: Field,
}

/// A modular symbol `⟨α, β; g⟩`.
pub struct TorsionSymbol {
    symbol: ModularSymbol,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Status(TorsionStatus, String),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn status_of(e: &Error) -> TorsionStatus {
    match torsion_core::cli::exit_code(e) {
        torsion_core::cli::EXIT_USAGE => TorsionStatus::InvalidInput,
        _ => TorsionStatus::Computation,
    }
}

/// Runs `f`, catching panics and recording errors.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TorsionStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TorsionStatus::Ok,
        Ok(Err(Fail::Status(s, m))) => {
            set_error(m);
            s
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            TorsionStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(TorsionStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(TorsionStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put_json(out: *mut *mut c_char, v: serde_json::Value) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(v.to_string()).unwrap().into_raw();
    Ok(())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn torsion_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn torsion_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn torsion_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn torsion_field_new(d: u32, out: *mut *mut TorsionField) -> TorsionStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let field = Field::new(d)?;
        *out = Box::into_raw(Box::new(TorsionField { field }));
        Ok(())
    })
}

/// # Safety
/// `f` must come from [`torsion_field_new`], or be null.
#[no_mangle]
pub unsafe extern "C" fn torsion_field_free(f: *mut TorsionField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Symbol from endpoint strings (`inf`, `x` or `x/y`) and a matrix `a,b;c,d`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn torsion_symbol_new(
    field: *const TorsionField,
    alpha: *const c_char,
    beta: *const c_char,
    g: *const c_char,
    out: *mut *mut TorsionSymbol,
) -> TorsionStatus {
    guard(|| {
        let f = field.as_ref().ok_or_else(|| null("field"))?.field;
        let alpha = P1Point::parse(f, str_arg(alpha, "alpha")?)?;
        let beta = P1Point::parse(f, str_arg(beta, "beta")?)?;
        let g = parse_matrix(str_arg(g, "g")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let symbol = ModularSymbol::new(f, alpha, beta, g)?;
        *out = Box::into_raw(Box::new(TorsionSymbol { symbol }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`torsion_symbol_new`], or be null.
#[no_mangle]
pub unsafe extern "C" fn torsion_symbol_free(s: *mut TorsionSymbol) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Conductor, support and denominator as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn torsion_symbol_conductor(
    s: *const TorsionSymbol,
    margin: u64,
    out_json: *mut *mut c_char,
) -> TorsionStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("symbol"))?;
        let c = symbols::conductor(&s.symbol, margin)?;
        put_json(out_json, c.to_json_value())
    })
}

/// Split of `⟨0, ∞; g⟩` avoiding `modulus·p`, as JSON.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn torsion_symbol_split(
    s: *const TorsionSymbol,
    modulus: u64,
    p: u64,
    out_json: *mut *mut c_char,
) -> TorsionStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("symbol"))?;
        let r = symbols::split(&s.symbol, modulus, p, &SplitOptions::default())?;
        put_json(out_json, r.to_json_value())
    })
}

/// H1 report of `Γ₀(level)` in the Bianchi group of the given kind
/// (`sl2`, `psl2` or `pgl2`), as JSON.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn torsion_bianchi_h1(
    d: u32,
    kind: *const c_char,
    level: *const c_char,
    out_json: *mut *mut c_char,
) -> TorsionStatus {
    guard(|| {
        let kind: GroupKind = str_arg(kind, "kind")?.parse()?;
        let f = Field::new(d)?;
        let level = QfIdeal::principal(f, &QuadElem::parse(str_arg(level, "level")?)?)?;
        let pres = bianchi_presentation(d, kind)?;
        let r = bianchi_h1(&pres, &level, &H1Options::default())?;
        put_json(out_json, serde_json::to_value(r).unwrap())
    })
}

/// Invariant factors of a row-major `rows × cols` integer matrix, as JSON
/// `{"rank": r, "divisors": ["d1", …]}`.
///
/// # Safety
/// `entries` must point to `rows·cols` values (may be null when that is 0).
#[no_mangle]
pub unsafe extern "C" fn torsion_smith_form(
    entries: *const i64,
    rows: usize,
    cols: usize,
    out_json: *mut *mut c_char,
) -> TorsionStatus {
    guard(|| {
        let n = rows.checked_mul(cols).ok_or_else(|| {
            Fail::Status(TorsionStatus::InvalidInput, "dimensions overflow".into())
        })?;
        if n > 0 && entries.is_null() {
            return Err(null("entries"));
        }
        let flat = if n == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(entries, n)
        };
        let dense: Vec<Vec<i64>> = flat.chunks(cols.max(1)).map(|r| r.to_vec()).collect();
        let m = if rows == 0 || cols == 0 {
            SparseZMatrix::zeros(rows, cols)
        } else {
            SparseZMatrix::from_dense_i64(&dense)
        };
        let r = snf(&m)?;
        put_json(
            out_json,
            serde_json::json!({
                "rank": r.rank,
                "divisors": r.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            }),
        )
    })
}
