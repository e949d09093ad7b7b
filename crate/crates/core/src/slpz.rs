//! SLPZ v1: a line-oriented text container for straight-line programs.
//!
//! ```text
//! SLPZ 1
//! alphabet 256
//! length <N>
//! start <id>
//! rules <m>
//! <lhs> <left> <right>     (m lines, lhs consecutive from the alphabet size)
//! ```
//!
//! Lines end with LF, including the last one.

use std::fmt::Write as _;

use thiserror::Error;

use crate::error::SlpError;
use crate::grammar::expansion_lengths;
use crate::model::{Rule, Slp, Symbol};

pub const MAGIC: &str = "SLPZ 1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("bad magic")]
    BadMagic,
    #[error("truncated")]
    Truncated,
    #[error("expected `{0}`")]
    ExpectedField(&'static str),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("unsupported alphabet size {0}")]
    BadAlphabet(u64),
    #[error("id gap: expected rule {expected}, found {found}")]
    IdGap { expected: u64, found: u64 },
    #[error("forward reference: rule {lhs} uses {used}")]
    ForwardReference { lhs: u64, used: u64 },
    #[error("start symbol {0} is not defined")]
    UndefinedStart(u64),
    #[error("length mismatch: header says {header}, grammar derives {derived}")]
    LengthMismatch { header: u64, derived: u64 },
    #[error("trailing data")]
    TrailingData,
}

/// An SLP read from or written to SLPZ, with the declared output length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlpzFile {
    pub length: u64,
    pub slp: Slp,
}

pub fn write(slp: &Slp, length: u64) -> String {
    let mut s = String::with_capacity(64 + slp.rules.len() * 20);
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "alphabet {}", slp.alphabet_size);
    let _ = writeln!(s, "length {length}");
    let _ = writeln!(s, "start {}", slp.start);
    let _ = writeln!(s, "rules {}", slp.rules.len());
    for r in &slp.rules {
        let _ = writeln!(s, "{} {} {}", r.lhs, r.left, r.right);
    }
    s
}

pub fn parse(text: &str) -> Result<SlpzFile, FormatError> {
    let err = |line: usize, kind| FormatError { line, kind };
    let mut lines = text.split_inclusive('\n').enumerate().map(|(k, l)| (k + 1, l));

    match lines.next() {
        Some((_, l)) if l.trim_end_matches('\n') == MAGIC => {
            if !l.ends_with('\n') {
                return Err(err(1, FormatErrorKind::Truncated));
            }
        }
        Some(_) => return Err(err(1, FormatErrorKind::BadMagic)),
        None => return Err(err(1, FormatErrorKind::Truncated)),
    }
    let mut last_line = 1;
    let mut next = || -> Result<(usize, &str), FormatError> {
        let (n, l) = lines.next().ok_or(err(last_line + 1, FormatErrorKind::Truncated))?;
        last_line = n;
        l.strip_suffix('\n')
            .map(|body| (n, body))
            .ok_or(err(n, FormatErrorKind::Truncated))
    };

    let alphabet = header(next()?, "alphabet")?;
    if alphabet == 0 || alphabet > 256 {
        return Err(err(2, FormatErrorKind::BadAlphabet(alphabet)));
    }
    let length = header(next()?, "length")?;
    let (start_line, start_body) = next()?;
    let start = header((start_line, start_body), "start")?;
    let count = header(next()?, "rules")?;

    let mut rules = Vec::with_capacity(count.min(1 << 20) as usize);
    for k in 0..count {
        let (n, body) = next()?;
        let mut fields = body.split(' ');
        let mut num = || -> Result<u64, FormatError> {
            let f = fields.next().ok_or(err(n, FormatErrorKind::Truncated))?;
            parse_num(f).ok_or_else(|| err(n, FormatErrorKind::BadNumber(f.to_string())))
        };
        let (lhs, left, right) = (num()?, num()?, num()?);
        if fields.next().is_some() {
            return Err(err(n, FormatErrorKind::TrailingData));
        }
        let expected = alphabet + k;
        if lhs != expected {
            return Err(err(n, FormatErrorKind::IdGap { expected, found: lhs }));
        }
        for used in [left, right] {
            if used >= lhs {
                return Err(err(n, FormatErrorKind::ForwardReference { lhs, used }));
            }
        }
        let sym = |v: u64| Symbol(v as u32);
        rules.push(Rule {
            lhs: sym(lhs),
            left: sym(left),
            right: sym(right),
        });
    }
    if let Some((n, _)) = lines.next() {
        return Err(err(n, FormatErrorKind::TrailingData));
    }
    if start >= alphabet + count {
        return Err(err(start_line, FormatErrorKind::UndefinedStart(start)));
    }
    let slp = Slp {
        alphabet_size: alphabet as u32,
        rules,
        start: Symbol(start as u32),
    };
    let lens = expansion_lengths(&slp).map_err(|e| err(0, slp_kind(e)))?;
    let derived = lens[slp.start.index()];
    if derived != length {
        return Err(err(
            3,
            FormatErrorKind::LengthMismatch {
                header: length,
                derived,
            },
        ));
    }
    Ok(SlpzFile { length, slp })
}

fn slp_kind(e: SlpError) -> FormatErrorKind {
    match e {
        SlpError::IdGap { expected, found } => FormatErrorKind::IdGap {
            expected: expected.0 as u64,
            found: found.0 as u64,
        },
        SlpError::ForwardReference { lhs, used } => FormatErrorKind::ForwardReference {
            lhs: lhs.0 as u64,
            used: used.0 as u64,
        },
        SlpError::UndefinedStart(s) | SlpError::NonByteTerminal(s) => FormatErrorKind::UndefinedStart(s.0 as u64),
    }
}

fn header((line, body): (usize, &str), name: &'static str) -> Result<u64, FormatError> {
    let value = body
        .strip_prefix(name)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or(FormatError {
            line,
            kind: FormatErrorKind::ExpectedField(name),
        })?;
    parse_num(value).ok_or_else(|| FormatError {
        line,
        kind: FormatErrorKind::BadNumber(value.to_string()),
    })
}

/// Plain decimal, no sign, no leading zeros, fits in 32 bits.
fn parse_num(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    s.parse::<u64>().ok().filter(|&v| v <= u32::MAX as u64)
}
