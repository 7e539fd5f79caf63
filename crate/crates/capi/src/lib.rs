//! C ABI for the se2kit workbench.
//!
//! Handles are opaque pointers created and destroyed by this library;
//! every function that can fail returns a status code and writes its
//! result through an out-parameter. Strings returned through
//! out-parameters are NUL-terminated, UTF-8, and must be released
//! with `se2_string_free`.

use std::ffi::{c_char, CStr, CString};

use se2kit::cyclo::PrimeContext;
use se2kit::io;
use se2kit::presentation;
use se2kit::rewrite::{Certificate, CompletionParams, CompletionStatus, RewriteSystem};
use se2kit::words::Alphabet;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Se2Status {
    /// Success.
    Ok = 0,
    /// A pointer argument was NULL.
    NullPointer = 1,
    /// An argument was outside its domain (e.g. ell not an odd prime).
    InvalidArgument = 2,
    /// Text input failed to parse.
    ParseError = 3,
    /// Input was not valid UTF-8.
    Utf8Error = 4,
}

/// Completion outcome for `se2_rewrite_complete`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Se2Completion {
    /// All critical pairs resolved; normal forms are canonical.
    Confluent = 0,
    /// A resource cap was hit; reduction remains sound.
    Bounded = 1,
}

/// Opaque handle to a group presentation.
pub struct Se2Presentation {
    alphabet: std::sync::Arc<se2kit::words::Alphabet>,
    relators: Vec<se2kit::words::Word>,
    rendered: Vec<String>,
}

/// Opaque handle to a string-rewriting system.
pub struct Se2Rewrite {
    inner: RewriteSystem,
}

fn out_string(s: String, out: *mut *mut c_char) -> Se2Status {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            Se2Status::Ok
        }
        Err(_) => Se2Status::Utf8Error,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Se2Status> {
    if p.is_null() {
        return Err(Se2Status::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Se2Status::Utf8Error)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn se2_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter
/// of this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn se2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Generates the SE2(ell) presentation.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn se2_presentation_generate(
    ell: u64,
    out: *mut *mut Se2Presentation,
) -> Se2Status {
    if out.is_null() {
        return Se2Status::NullPointer;
    }
    let ctx = match PrimeContext::new(ell) {
        Ok(c) => c,
        Err(_) => return Se2Status::InvalidArgument,
    };
    let p = presentation::generate(&ctx);
    let handle = Se2Presentation {
        alphabet: p.alphabet().clone(),
        relators: p.relator_words().cloned().collect(),
        rendered: p.relators().iter().map(|r| r.render()).collect(),
    };
    *out = Box::into_raw(Box::new(handle));
    Se2Status::Ok
}

/// Parses a presentation file (see the text format in the docs).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn se2_presentation_parse(
    text: *const c_char,
    out: *mut *mut Se2Presentation,
) -> Se2Status {
    if out.is_null() {
        return Se2Status::NullPointer;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match io::parse_presentation_file(text) {
        Ok(pf) => {
            let handle = Se2Presentation {
                rendered: pf.relators.iter().map(|w| w.render()).collect(),
                alphabet: pf.alphabet,
                relators: pf.relators,
            };
            *out = Box::into_raw(Box::new(handle));
            Se2Status::Ok
        }
        Err(_) => Se2Status::ParseError,
    }
}

/// Serializes a presentation to the text format.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn se2_presentation_serialize(
    p: *const Se2Presentation,
    out: *mut *mut c_char,
) -> Se2Status {
    if p.is_null() || out.is_null() {
        return Se2Status::NullPointer;
    }
    let p = &*p;
    out_string(
        io::serialize_presentation_file(&p.alphabet, p.rendered.iter().cloned()),
        out,
    )
}

/// Number of relators in the presentation.
///
/// # Safety
/// `p` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn se2_presentation_relator_count(p: *const Se2Presentation) -> usize {
    if p.is_null() {
        return 0;
    }
    (*p).relators.len()
}

/// Destroys a presentation handle.
///
/// # Safety
/// `p` must be a live handle or NULL; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn se2_presentation_free(p: *mut Se2Presentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds a rewriting system from a presentation (default letter
/// ranking, relators as equations, free-reduction rules installed).
///
/// # Safety
/// `p` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_new(
    p: *const Se2Presentation,
    out: *mut *mut Se2Rewrite,
) -> Se2Status {
    if p.is_null() || out.is_null() {
        return Se2Status::NullPointer;
    }
    let p = &*p;
    let rs = RewriteSystem::from_relator_list(&p.alphabet, &p.relators, None);
    *out = Box::into_raw(Box::new(Se2Rewrite { inner: rs }));
    Se2Status::Ok
}

/// Runs Knuth-Bendix completion under the given caps. Pass 0 for any
/// cap to use its default (500000 rules / 1000 tidy / 500000 equations).
///
/// # Safety
/// `rs` must be a live handle; `outcome` must be valid.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_complete(
    rs: *mut Se2Rewrite,
    max_rules: usize,
    tidy_interval: usize,
    max_equations: usize,
    outcome: *mut Se2Completion,
) -> Se2Status {
    if rs.is_null() || outcome.is_null() {
        return Se2Status::NullPointer;
    }
    let defaults = CompletionParams::default();
    let params = CompletionParams {
        max_rules: if max_rules == 0 { defaults.max_rules } else { max_rules },
        tidy_interval: if tidy_interval == 0 { defaults.tidy_interval } else { tidy_interval },
        max_equations: if max_equations == 0 { defaults.max_equations } else { max_equations },
        ..defaults
    };
    *outcome = match (*rs).inner.complete(&params) {
        CompletionStatus::Confluent => Se2Completion::Confluent,
        _ => Se2Completion::Bounded,
    };
    Se2Status::Ok
}

/// Number of active rewrite rules.
///
/// # Safety
/// `rs` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_rule_count(rs: *const Se2Rewrite) -> usize {
    if rs.is_null() {
        return 0;
    }
    (*rs).inner.rule_count()
}

fn parse_over_system(rs: &RewriteSystem, word: &str) -> Result<se2kit::words::Word, Se2Status> {
    let alphabet =
        Alphabet::new(rs.letters().names().iter().cloned()).map_err(|_| Se2Status::InvalidArgument)?;
    io::parse_word(&alphabet, word).map_err(|_| Se2Status::ParseError)
}

/// Reduces `word` (in the word grammar) and writes the irreducible
/// form, `1` for the empty word.
///
/// # Safety
/// `rs` must be a live handle; `word` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_reduce(
    rs: *const Se2Rewrite,
    word: *const c_char,
    out: *mut *mut c_char,
) -> Se2Status {
    if rs.is_null() || out.is_null() {
        return Se2Status::NullPointer;
    }
    let word = match read_str(word) {
        Ok(w) => w,
        Err(s) => return s,
    };
    let system = &(*rs).inner;
    match parse_over_system(system, word) {
        Ok(w) => {
            let reduced = system.reduce(&w);
            out_string(system.letters().render(&reduced), out)
        }
        Err(s) => s,
    }
}

/// Writes 1 to `certified` iff the word reduces to the identity
/// (sound proof of triviality in the presented group, regardless of
/// confluence).
///
/// # Safety
/// `rs` must be a live handle; `word` NUL-terminated; `certified` valid.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_certify_trivial(
    rs: *const Se2Rewrite,
    word: *const c_char,
    certified: *mut i32,
) -> Se2Status {
    if rs.is_null() || certified.is_null() {
        return Se2Status::NullPointer;
    }
    let word = match read_str(word) {
        Ok(w) => w,
        Err(s) => return s,
    };
    let system = &(*rs).inner;
    match parse_over_system(system, word) {
        Ok(w) => {
            *certified = (system.certify_trivial(&w) == Certificate::ProvedTrivial) as i32;
            Se2Status::Ok
        }
        Err(s) => s,
    }
}

/// Serializes the system (rules, pending queue, stats) as a versioned
/// text checkpoint.
///
/// # Safety
/// `rs` must be a live handle; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_checkpoint(
    rs: *const Se2Rewrite,
    out: *mut *mut c_char,
) -> Se2Status {
    if rs.is_null() || out.is_null() {
        return Se2Status::NullPointer;
    }
    out_string((*rs).inner.checkpoint(), out)
}

/// Restores a system from checkpoint text.
///
/// # Safety
/// `text` must be NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_restore(
    text: *const c_char,
    out: *mut *mut Se2Rewrite,
) -> Se2Status {
    if out.is_null() {
        return Se2Status::NullPointer;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match RewriteSystem::restore(text) {
        Ok(rs) => {
            *out = Box::into_raw(Box::new(Se2Rewrite { inner: rs }));
            Se2Status::Ok
        }
        Err(_) => Se2Status::ParseError,
    }
}

/// Destroys a rewriting-system handle.
///
/// # Safety
/// `rs` must be a live handle or NULL; it must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn se2_rewrite_free(rs: *mut Se2Rewrite) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Number of etale obstruction classes for the given prime; writes 0
/// and returns InvalidArgument if `ell` is not an odd prime.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn se2_obstruction_count(ell: u64, out: *mut u64) -> Se2Status {
    if out.is_null() {
        return Se2Status::NullPointer;
    }
    match PrimeContext::new(ell) {
        Ok(ctx) => {
            *out = se2kit::bar::obstruction_count(&ctx) as u64;
            Se2Status::Ok
        }
        Err(_) => {
            *out = 0;
            Se2Status::InvalidArgument
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn generate_complete_reduce_roundtrip() {
        unsafe {
            let mut p: *mut Se2Presentation = ptr::null_mut();
            assert!(se2_presentation_generate(3, &mut p) == Se2Status::Ok);
            assert_eq!(se2_presentation_relator_count(p), 21);

            let mut rs: *mut Se2Rewrite = ptr::null_mut();
            assert!(se2_rewrite_new(p, &mut rs) == Se2Status::Ok);
            let mut outcome = Se2Completion::Bounded;
            assert!(
                se2_rewrite_complete(rs, 200, 0, 5000, &mut outcome) == Se2Status::Ok
            );

            let word = CString::new("z*z^-1").unwrap();
            let mut certified = 0i32;
            assert!(
                se2_rewrite_certify_trivial(rs, word.as_ptr(), &mut certified) == Se2Status::Ok
            );
            assert_eq!(certified, 1);

            let mut blob: *mut c_char = ptr::null_mut();
            assert!(se2_rewrite_checkpoint(rs, &mut blob) == Se2Status::Ok);
            let mut rs2: *mut Se2Rewrite = ptr::null_mut();
            assert!(se2_rewrite_restore(blob, &mut rs2) == Se2Status::Ok);
            assert_eq!(se2_rewrite_rule_count(rs2), se2_rewrite_rule_count(rs));
            se2_string_free(blob);

            se2_rewrite_free(rs);
            se2_rewrite_free(rs2);
            se2_presentation_free(p);
        }
    }

    #[test]
    fn null_and_bad_arguments() {
        unsafe {
            let mut p: *mut Se2Presentation = ptr::null_mut();
            assert!(se2_presentation_generate(4, &mut p) == Se2Status::InvalidArgument);
            assert!(se2_presentation_generate(3, ptr::null_mut()) == Se2Status::NullPointer);
            let mut n = 0u64;
            assert!(se2_obstruction_count(5, &mut n) == Se2Status::Ok);
            assert_eq!(n, 4);
            assert!(se2_obstruction_count(9, &mut n) == Se2Status::InvalidArgument);
        }
    }
}
