use std::ffi::{CStr, CString};
use std::ptr;

use slpgram_ffi::*;

fn compress(data: &[u8], dedup: bool) -> *mut SlpgramGrammar {
    let mut g = ptr::null_mut();
    let st = unsafe { slpgram_compress(data.as_ptr(), data.len(), dedup, &mut g) };
    assert_eq!(st, SlpgramStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = slpgram_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn expand(g: *const SlpgramGrammar) -> Vec<u8> {
    let mut need = 0;
    unsafe {
        assert_eq!(
            slpgram_grammar_expand(g, ptr::null_mut(), 0, &mut need),
            SlpgramStatus::BufferTooSmall
        );
        let mut buf = vec![0u8; need];
        let mut written = 0;
        assert_eq!(
            slpgram_grammar_expand(g, buf.as_mut_ptr(), buf.len(), &mut written),
            SlpgramStatus::Ok
        );
        assert_eq!(written, need);
        buf
    }
}

#[test]
fn abab_rules() {
    let g = compress(b"abab", false);
    unsafe {
        assert_eq!(slpgram_grammar_rule_count(g), 2);
        assert_eq!(slpgram_grammar_start(g), 257);
        assert_eq!(slpgram_grammar_length(g), 4);
        let (mut l, mut a, mut b) = (0, 0, 0);
        assert_eq!(slpgram_grammar_rule(g, 0, &mut l, &mut a, &mut b), SlpgramStatus::Ok);
        assert_eq!((l, a, b), (256, 97, 98));
        assert_eq!(slpgram_grammar_rule(g, 1, &mut l, &mut a, &mut b), SlpgramStatus::Ok);
        assert_eq!((l, a, b), (257, 256, 256));
        assert_eq!(
            slpgram_grammar_rule(g, 2, &mut l, &mut a, &mut b),
            SlpgramStatus::OutOfRange
        );
        assert!(last_error().contains("out of range"));
        slpgram_grammar_free(g);
    }
}

#[test]
fn expand_round_trip_and_small_buffer() {
    let data: Vec<u8> = (0..5000u32).map(|k| ((k % 97) ^ (k / 300)) as u8).collect();
    let g = compress(&data, true);
    assert_eq!(expand(g), data);
    unsafe {
        let mut buf = [0u8; 10];
        let mut written = 0;
        assert_eq!(
            slpgram_grammar_expand(g, buf.as_mut_ptr(), buf.len(), &mut written),
            SlpgramStatus::BufferTooSmall
        );
        assert_eq!(written, data.len());
        slpgram_grammar_free(g);
    }
}

#[test]
fn slpz_round_trip() {
    let g = compress(b"abab", false);
    unsafe {
        let text = slpgram_grammar_to_slpz(g);
        assert_eq!(
            CStr::from_ptr(text).to_str().unwrap(),
            "SLPZ 1\nalphabet 256\nlength 4\nstart 257\nrules 2\n256 97 98\n257 256 256\n"
        );
        let mut h = ptr::null_mut();
        assert_eq!(slpgram_grammar_from_slpz(text, &mut h), SlpgramStatus::Ok);
        assert_eq!(expand(h), b"abab");
        assert!(slpgram_grammar_report_json(h).is_null());
        slpgram_string_free(text);
        slpgram_grammar_free(h);
        slpgram_grammar_free(g);
    }
}

#[test]
fn report_json() {
    let g = compress(b"abaababaabaab", false);
    unsafe {
        let json = slpgram_grammar_report_json(g);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["input_len"], 13);
        assert_eq!(v["rules"], slpgram_grammar_rule_count(g));
        slpgram_string_free(json);
        slpgram_grammar_free(g);
    }
}

#[test]
fn errors() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(
            slpgram_compress(ptr::null(), 0, false, &mut g),
            SlpgramStatus::EmptyInput
        );
        assert_eq!(last_error(), "empty input");
        assert!(g.is_null());
        assert_eq!(
            slpgram_compress(ptr::null(), 3, false, &mut g),
            SlpgramStatus::NullPointer
        );
        assert_eq!(
            slpgram_compress(b"ab".as_ptr(), 2, false, ptr::null_mut()),
            SlpgramStatus::NullPointer
        );

        let bad = CString::new("SLPZ 1\nalphabet 256\nlength 2\nstart 256\nrules 1\n256 300 97\n").unwrap();
        assert_eq!(
            slpgram_grammar_from_slpz(bad.as_ptr(), &mut g),
            SlpgramStatus::Malformed
        );
        assert_eq!(last_error(), "line 6: forward reference: rule 256 uses 300");
        assert_eq!(
            slpgram_grammar_from_slpz(ptr::null(), &mut g),
            SlpgramStatus::NullPointer
        );

        assert_eq!(slpgram_grammar_rule_count(ptr::null()), 0);
        assert!(slpgram_grammar_to_slpz(ptr::null()).is_null());
        slpgram_grammar_free(ptr::null_mut());
        slpgram_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/slpgram.h")).unwrap();
    for name in [
        "slpgram_last_error",
        "slpgram_compress",
        "slpgram_grammar_from_slpz",
        "slpgram_grammar_free",
        "slpgram_grammar_rule_count",
        "slpgram_grammar_start",
        "slpgram_grammar_length",
        "slpgram_grammar_rule",
        "slpgram_grammar_expand",
        "slpgram_grammar_to_slpz",
        "slpgram_grammar_report_json",
        "slpgram_string_free",
        "SLPGRAM_STATUS_BUFFER_TOO_SMALL",
        "typedef struct SlpgramGrammar SlpgramGrammar",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
