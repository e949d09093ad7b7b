//! Grammar-based compression: a word is turned into a straight-line program
//! by computing its LZ77 factorisation and then repeatedly pairing adjacent
//! letters and replacing each pair by a single symbol.
//!
//! Every phase shrinks the word to at most `(2n + 1) / 3` letters and only
//! pairs of free letters create new rules, which keeps the grammar within
//! `O(ℓ + ℓ log(N/ℓ))` rules for `ℓ` LZ77 phrases.
//!
//! ```
//! use slpgram::{compress, expand, CompressOptions};
//!
//! let c = compress(b"abababab", &CompressOptions::verified()).unwrap();
//! assert_eq!(expand(&c.slp).unwrap(), b"abababab");
//! ```

pub mod error;
pub mod grammar;
pub mod lz77;
pub mod model;
pub mod pairing;
pub mod replace;
pub mod sa;
pub mod selftest;
pub mod slpz;

pub use error::{Error, Result, SlpError};
pub use grammar::{
    compress, compress_traced, expand, expand_symbols, grammar_report, CompressOptions, Compressed, GrammarReport,
    PhaseStats,
};
pub use lz77::{lz_factorize, naive_lz_factorize};
pub use model::{
    validate_factorization, validate_pairing, Factor, Factorization, Mark, Pairing, Rule, RuleBuilder, Slp, Symbol,
    Violation, ViolationKind, Word,
};
pub use pairing::{find_pairing, PairingOutcome};
pub use replace::{replace_pairs, Replaced};
pub use sa::{build_suffix_array, SuffixArrayBundle};
