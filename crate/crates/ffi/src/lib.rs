//! C ABI over the zsdelta engine.
//!
//! Groups, support sets and atom sets are opaque handles created by
//! `*_parse` / `zs_atoms_enumerate` and released by the matching `*_free`.
//! Every fallible call returns a [`ZsStatus`]; on failure the message is
//! kept per thread and can be copied out with [`zs_last_error`].
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zsdelta::atoms::{enumerate_atoms, AtomSet};
use zsdelta::error::Error;
use zsdelta::group::FiniteAbelianGroup;
use zsdelta::lattice::{is_half_factorial, min_delta};
use zsdelta::parse::{parse_group, parse_subset};
use zsdelta::sequence::SupportSet;
use zsdelta::sweep::minimal_sweep;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    BudgetExceeded = 5,
    Inconsistent = 6,
    OutOfRange = 7,
    Panic = 8,
}

/// A finite abelian group.
pub struct ZsGroup(FiniteAbelianGroup);

/// A set of distinct nonzero group elements.
pub struct ZsSupport(SupportSet);

/// The minimal zero-sum sequences over a support set.
pub struct ZsAtoms(AtomSet);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend(msg.bytes().filter(|&b| b != 0));
    });
}

fn status_of(err: &Error) -> ZsStatus {
    match err {
        Error::Parse { .. } => ZsStatus::Parse,
        Error::BudgetExceeded { .. } => ZsStatus::BudgetExceeded,
        Error::Inconsistent(_) => ZsStatus::Inconsistent,
        _ => ZsStatus::InvalidInput,
    }
}

struct Fail(ZsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ZsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            ZsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside zsdelta".into());
            ZsStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(ZsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(ZsStatus::NullPointer, format!("{what} is null")))
}

unsafe fn utf8<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(ZsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(ZsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Copies the last error message of this thread into `buf` as a
/// NUL-terminated string, truncating to `len - 1` bytes. Returns the full
/// message length without the terminator; 0 means no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn zs_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = e.len().min(len - 1);
            ptr::copy_nonoverlapping(e.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        e.len()
    })
}

/// Parses a group such as `"C2^2xC4"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_group` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_group_parse(text: *const c_char, out_group: *mut *mut ZsGroup) -> ZsStatus {
    guard(|| {
        let slot = out(out_group, "out_group")?;
        *slot = ptr::null_mut();
        let g = parse_group(utf8(text, "text")?)?;
        *slot = Box::into_raw(Box::new(ZsGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `group` must be null or a handle from [`zs_group_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zs_group_free(group: *mut ZsGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// # Safety
/// `group` must be a live handle; `out_order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_group_order(group: *const ZsGroup, out_order: *mut u64) -> ZsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        *out(out_order, "out_order")? = g.0.order() as u64;
        Ok(())
    })
}

/// `max Δ*(G)` from a sweep of the minimal non-half-factorial subsets.
/// `budget` caps the number of subsets visited.
///
/// # Safety
/// `group` must be a live handle; `out_max` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_group_max_delta_star(group: *const ZsGroup, budget: u64, out_max: *mut u64) -> ZsStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let slot = out(out_max, "out_max")?;
        *slot = minimal_sweep(&g.0, budget as u128)?.max_delta_star;
        Ok(())
    })
}

/// Parses a subset such as `"(1,0);(0,1)"` of `group`. The support keeps its
/// own copy of the group.
///
/// # Safety
/// `group` must be a live handle, `text` NUL-terminated, `out_support` writable.
#[no_mangle]
pub unsafe extern "C" fn zs_support_parse(
    group: *const ZsGroup,
    text: *const c_char,
    out_support: *mut *mut ZsSupport,
) -> ZsStatus {
    guard(|| {
        let slot = out(out_support, "out_support")?;
        *slot = ptr::null_mut();
        let g = deref(group, "group")?;
        let s = parse_subset(&g.0, utf8(text, "text")?)?;
        *slot = Box::into_raw(Box::new(ZsSupport(s)));
        Ok(())
    })
}

/// # Safety
/// `support` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_support_free(support: *mut ZsSupport) {
    if !support.is_null() {
        drop(Box::from_raw(support));
    }
}

/// # Safety
/// `support` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_support_len(support: *const ZsSupport) -> usize {
    support.as_ref().map_or(0, |s| s.0.len())
}

/// Enumerates the atoms over `support`. `budget` caps `Π(ord(g)+1)`.
///
/// # Safety
/// `support` must be a live handle; `out_atoms` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_enumerate(
    support: *const ZsSupport,
    budget: u64,
    out_atoms: *mut *mut ZsAtoms,
) -> ZsStatus {
    guard(|| {
        let slot = out(out_atoms, "out_atoms")?;
        *slot = ptr::null_mut();
        let s = deref(support, "support")?;
        let atoms = enumerate_atoms(&s.0, budget as u128)?;
        *slot = Box::into_raw(Box::new(ZsAtoms(atoms)));
        Ok(())
    })
}

/// # Safety
/// `atoms` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_free(atoms: *mut ZsAtoms) {
    if !atoms.is_null() {
        drop(Box::from_raw(atoms));
    }
}

/// # Safety
/// `atoms` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_count(atoms: *const ZsAtoms) -> usize {
    atoms.as_ref().map_or(0, |a| a.0.len())
}

/// Copies the exponents of atom `index` into `buf`, one per support element.
/// `buf_len` must be at least [`zs_support_len`].
///
/// # Safety
/// `atoms` must be a live handle and `buf` valid for `buf_len` elements.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_exponents(
    atoms: *const ZsAtoms,
    index: usize,
    buf: *mut u32,
    buf_len: usize,
) -> ZsStatus {
    guard(|| {
        let a = deref(atoms, "atoms")?;
        let atom = a.0.atoms().get(index).ok_or_else(|| {
            Fail(ZsStatus::OutOfRange, format!("atom index {index} out of range 0..{}", a.0.len()))
        })?;
        let exps = atom.exponents();
        if buf_len < exps.len() {
            return Err(Fail(
                ZsStatus::OutOfRange,
                format!("buffer holds {buf_len} exponents, need {}", exps.len()),
            ));
        }
        if buf.is_null() {
            return Err(Fail(ZsStatus::NullPointer, "buf is null".into()));
        }
        ptr::copy_nonoverlapping(exps.as_ptr(), buf, exps.len());
        Ok(())
    })
}

/// `D(G₀)`, the largest atom length.
///
/// # Safety
/// `atoms` must be a live handle; `out_d` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_davenport(atoms: *const ZsAtoms, out_d: *mut u64) -> ZsStatus {
    guard(|| {
        let a = deref(atoms, "atoms")?;
        *out(out_d, "out_d")? = a.0.davenport();
        Ok(())
    })
}

/// `min Δ(G₀)`; 0 for a half-factorial set.
///
/// # Safety
/// `atoms` must be a live handle; `out_min_delta` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_min_delta(atoms: *const ZsAtoms, out_min_delta: *mut u64) -> ZsStatus {
    guard(|| {
        let a = deref(atoms, "atoms")?;
        *out(out_min_delta, "out_min_delta")? = min_delta(&a.0);
        Ok(())
    })
}

/// Half-factoriality, decided by cross numbers and by the lattice; a
/// disagreement is reported as [`ZsStatus::Inconsistent`].
///
/// # Safety
/// `atoms` must be a live handle; `out_hf` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zs_atoms_is_half_factorial(atoms: *const ZsAtoms, out_hf: *mut bool) -> ZsStatus {
    guard(|| {
        let a = deref(atoms, "atoms")?;
        let slot = out(out_hf, "out_hf")?;
        *slot = is_half_factorial(&a.0)?;
        Ok(())
    })
}
