use thiserror::Error;

use crate::model::{Symbol, Violation};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("length mismatch: word has {word} positions, annotation has {annotation}")]
    LengthMismatch { word: usize, annotation: usize },

    #[error("invalid factorisation: {0}")]
    InvalidFactorization(Violation),

    #[error("invalid pairing: {0}")]
    InvalidPairing(Violation),

    #[error("symbol id space exhausted")]
    SymbolOverflow,

    #[error("malformed grammar: {0}")]
    MalformedSlp(#[from] SlpError),

    #[error("phase {phase}: {detail}")]
    Invariant { phase: usize, detail: String },

    #[error(transparent)]
    Format(#[from] crate::slpz::FormatError),
}

/// Structural defects of a straight-line program.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlpError {
    #[error("id gap: expected rule {expected}, found {found}")]
    IdGap { expected: Symbol, found: Symbol },

    #[error("forward reference: rule {lhs} uses {used}")]
    ForwardReference { lhs: Symbol, used: Symbol },

    #[error("start symbol {0} is not defined")]
    UndefinedStart(Symbol),

    #[error("terminal {0} does not fit in a byte")]
    NonByteTerminal(Symbol),
}
