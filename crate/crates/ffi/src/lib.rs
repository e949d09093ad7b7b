//! C ABI over `slpgram`.
//!
//! Grammars are passed around as opaque `SlpgramGrammar` handles created by
//! [`slpgram_compress`] or [`slpgram_grammar_from_slpz`] and released with
//! [`slpgram_grammar_free`]. Every fallible call returns an
//! [`SlpgramStatus`]; the message of the last failure on the calling thread
//! is available from [`slpgram_last_error`].
//!
//! Strings returned by this library are owned by the caller and must be
//! released with [`slpgram_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use slpgram::{compress, expand, grammar_report, slpz, CompressOptions, Error, GrammarReport, Slp};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlpgramStatus {
    Ok = 0,
    NullPointer = 1,
    EmptyInput = 2,
    Malformed = 3,
    BufferTooSmall = 4,
    OutOfRange = 5,
    Internal = 6,
}

/// Opaque grammar handle.
pub struct SlpgramGrammar {
    slp: Slp,
    length: u64,
    report: Option<GrammarReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: SlpgramStatus, msg: impl Into<String>) -> SlpgramStatus {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

fn status_of(e: &Error) -> SlpgramStatus {
    match e {
        Error::EmptyInput => SlpgramStatus::EmptyInput,
        Error::MalformedSlp(_) | Error::Format(_) => SlpgramStatus::Malformed,
        _ => SlpgramStatus::Internal,
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn slpgram_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Compresses `len` bytes at `data` and stores a new handle in `*out`.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be a valid
/// pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn slpgram_compress(
    data: *const u8,
    len: usize,
    dedup: bool,
    out: *mut *mut SlpgramGrammar,
) -> SlpgramStatus {
    if out.is_null() || (data.is_null() && len > 0) {
        return fail(SlpgramStatus::NullPointer, "null pointer");
    }
    let input: &[u8] = if len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(data, len)
    };
    let options = CompressOptions { dedup, verify: true };
    match compress(input, &options) {
        Ok(c) => {
            let report = grammar_report(&c);
            let handle = SlpgramGrammar {
                length: c.input_len as u64,
                slp: c.slp,
                report: Some(report),
            };
            *out = Box::into_raw(Box::new(handle));
            SlpgramStatus::Ok
        }
        Err(e) => fail(status_of(&e), e.to_string()),
    }
}

/// Parses SLPZ text (NUL-terminated) into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_from_slpz(
    text: *const c_char,
    out: *mut *mut SlpgramGrammar,
) -> SlpgramStatus {
    if text.is_null() || out.is_null() {
        return fail(SlpgramStatus::NullPointer, "null pointer");
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return fail(SlpgramStatus::Malformed, "line 1: bad magic");
    };
    match slpz::parse(text) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(SlpgramGrammar {
                slp: f.slp,
                length: f.length,
                report: None,
            }));
            SlpgramStatus::Ok
        }
        Err(e) => fail(SlpgramStatus::Malformed, e.to_string()),
    }
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle returned by this library that has not been
/// freed yet.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_free(g: *mut SlpgramGrammar) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of binary rules; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_rule_count(g: *const SlpgramGrammar) -> usize {
    g.as_ref().map_or(0, |g| g.slp.rules.len())
}

/// Start symbol id; `u32::MAX` for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_start(g: *const SlpgramGrammar) -> u32 {
    g.as_ref().map_or(u32::MAX, |g| g.slp.start.id())
}

/// Length of the generated string.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_length(g: *const SlpgramGrammar) -> u64 {
    g.as_ref().map_or(0, |g| g.length)
}

/// Reads rule `index` as `lhs -> left right`.
///
/// # Safety
/// `g` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_rule(
    g: *const SlpgramGrammar,
    index: usize,
    lhs: *mut u32,
    left: *mut u32,
    right: *mut u32,
) -> SlpgramStatus {
    let Some(g) = g.as_ref() else {
        return fail(SlpgramStatus::NullPointer, "null handle");
    };
    if lhs.is_null() || left.is_null() || right.is_null() {
        return fail(SlpgramStatus::NullPointer, "null output");
    }
    let Some(r) = g.slp.rules.get(index) else {
        return fail(SlpgramStatus::OutOfRange, format!("rule {index} out of range"));
    };
    *lhs = r.lhs.id();
    *left = r.left.id();
    *right = r.right.id();
    SlpgramStatus::Ok
}

/// Expands the grammar into `buf`. `*written` receives the full length
/// even when the buffer is too small, so callers can size a retry.
///
/// # Safety
/// `buf` must point to `cap` writable bytes (or be NULL with `cap == 0`);
/// `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_expand(
    g: *const SlpgramGrammar,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> SlpgramStatus {
    let Some(g) = g.as_ref() else {
        return fail(SlpgramStatus::NullPointer, "null handle");
    };
    if written.is_null() || (buf.is_null() && cap > 0) {
        return fail(SlpgramStatus::NullPointer, "null output");
    }
    let Ok(need) = usize::try_from(g.length) else {
        return fail(SlpgramStatus::BufferTooSmall, "expansion does not fit in memory");
    };
    *written = need;
    if need > cap {
        return fail(SlpgramStatus::BufferTooSmall, format!("need {need} bytes, have {cap}"));
    }
    match expand(&g.slp) {
        Ok(bytes) => {
            ptr::copy_nonoverlapping(bytes.as_ptr(), buf, bytes.len());
            SlpgramStatus::Ok
        }
        Err(e) => fail(SlpgramStatus::Malformed, e.to_string()),
    }
}

/// Serialises the grammar as SLPZ v1 text. NULL on failure.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_to_slpz(g: *const SlpgramGrammar) -> *mut c_char {
    let Some(g) = g.as_ref() else {
        fail(SlpgramStatus::NullPointer, "null handle");
        return ptr::null_mut();
    };
    CString::new(slpz::write(&g.slp, g.length)).map_or(ptr::null_mut(), CString::into_raw)
}

/// Grammar report as a JSON object. Only handles produced by
/// [`slpgram_compress`] carry a report; others yield NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn slpgram_grammar_report_json(g: *const SlpgramGrammar) -> *mut c_char {
    let Some(report) = g.as_ref().and_then(|g| g.report.as_ref()) else {
        fail(SlpgramStatus::NullPointer, "no report");
        return ptr::null_mut();
    };
    let json = serde_json::to_string(report).expect("report serialises");
    CString::new(json).map_or(ptr::null_mut(), CString::into_raw)
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn slpgram_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
