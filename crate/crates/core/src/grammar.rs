//! The phase driver and the straight-line program life-cycle.

use serde::Serialize;

use crate::error::{Error, Result, SlpError};
use crate::lz77::lz_factorize;
use crate::model::{validate_pairing, word_from_bytes, RuleBuilder, Slp, Symbol};
use crate::pairing::{find_pairing, MAX_FREE_PER_FACTOR};
use crate::replace::replace_pairs;

/// Terminals are bytes.
pub const BYTE_ALPHABET: u32 = 256;

/// Per-phase counters. Serialises to exactly the trace keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhaseStats {
    #[serde(rename = "phase")]
    pub phase_index: usize,
    pub len_before: usize,
    pub len_after: usize,
    pub factors_before: usize,
    pub factors_after: usize,
    pub free_before: usize,
    pub free_after: usize,
    pub free_created_by_pairing: usize,
    pub fresh_letters: usize,
    /// Factors entering pair replacement (after the pairing sweep).
    #[serde(skip)]
    pub factors_paired: usize,
    /// Largest number of free letters a single factor released.
    #[serde(skip)]
    pub max_free_per_factor: usize,
}

impl PhaseStats {
    /// Free letters entering pair replacement.
    pub fn free_paired(&self) -> usize {
        self.free_before + self.free_created_by_pairing
    }

    /// Checks the per-phase bounds. `dedup` relaxes the fresh-letter
    /// accounting from equality to an upper bound.
    pub fn check(&self, dedup: bool) -> std::result::Result<(), String> {
        if 3 * self.len_after > 2 * self.len_before + 1 {
            return Err(format!(
                "length {} -> {} exceeds (2n+1)/3",
                self.len_before, self.len_after
            ));
        }
        if self.factors_paired > self.factors_before {
            return Err(format!(
                "pairing raised factors {} -> {}",
                self.factors_before, self.factors_paired
            ));
        }
        if self.factors_after != self.factors_paired {
            return Err(format!(
                "replacement changed factor count {} -> {}",
                self.factors_paired, self.factors_after
            ));
        }
        if self.free_created_by_pairing > MAX_FREE_PER_FACTOR * self.factors_before {
            return Err(format!(
                "{} free letters created from {} factors",
                self.free_created_by_pairing, self.factors_before
            ));
        }
        if self.max_free_per_factor > MAX_FREE_PER_FACTOR {
            return Err(format!("one factor released {} free letters", self.max_free_per_factor));
        }
        let drop = self.free_paired() as isize - self.free_after as isize;
        let ok = if dedup {
            self.fresh_letters as isize <= drop
        } else {
            self.fresh_letters as isize == drop
        };
        if !ok {
            return Err(format!(
                "fresh letters {} vs free-letter drop {}",
                self.fresh_letters, drop
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompressOptions {
    /// Share one fresh symbol between equal free pairs within a phase.
    pub dedup: bool,
    /// Validate every pairing and every phase's bounds; violations abort
    /// with [`Error::Invariant`].
    pub verify: bool,
}

impl CompressOptions {
    pub fn verified() -> Self {
        CompressOptions {
            dedup: false,
            verify: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compressed {
    pub slp: Slp,
    pub stats: Vec<PhaseStats>,
    /// Phrase count of the initial LZ77 factorisation.
    pub lz_phrases: usize,
    pub input_len: usize,
}

/// Builds a straight-line program for `input`.
pub fn compress(input: &[u8], options: &CompressOptions) -> Result<Compressed> {
    compress_traced(input, options, &mut |_| {})
}

/// Like [`compress`], handing each phase's counters to `trace` as soon as
/// the phase completes.
pub fn compress_traced(
    input: &[u8],
    options: &CompressOptions,
    trace: &mut dyn FnMut(&PhaseStats),
) -> Result<Compressed> {
    if input.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut word = word_from_bytes(input);
    let mut fact = lz_factorize(&word)?;
    let lz_phrases = fact.phrase_count();
    let mut rules = RuleBuilder::new(BYTE_ALPHABET);
    let mut stats = Vec::new();

    while word.len() > 1 {
        let phase = stats.len();
        let factors_before = fact.factor_count();
        let free_before = fact.free_count();

        let paired = find_pairing(&word, &fact)?;
        if options.verify {
            if let Some(v) = validate_pairing(&word, &paired.factorization, &paired.pairing)?.first() {
                return Err(Error::Invariant {
                    phase,
                    detail: v.to_string(),
                });
            }
        }
        let replaced = replace_pairs(&word, &paired.factorization, &paired.pairing, &mut rules, options.dedup)?;

        let s = PhaseStats {
            phase_index: phase,
            len_before: word.len(),
            len_after: replaced.word.len(),
            factors_before,
            factors_after: replaced.factorization.factor_count(),
            free_before,
            free_after: replaced.factorization.free_count(),
            free_created_by_pairing: paired.free_created,
            fresh_letters: replaced.fresh_count,
            factors_paired: paired.factorization.factor_count(),
            max_free_per_factor: paired.max_free_per_factor(),
        };
        if options.verify {
            if paired.factorization.free_count() != s.free_paired() {
                return Err(Error::Invariant {
                    phase,
                    detail: "free-letter accounting after pairing".into(),
                });
            }
            s.check(options.dedup)
                .map_err(|detail| Error::Invariant { phase, detail })?;
        }
        trace(&s);
        stats.push(s);
        word = replaced.word;
        fact = replaced.factorization;
    }

    Ok(Compressed {
        slp: rules.finish(word[0]),
        stats,
        lz_phrases,
        input_len: input.len(),
    })
}

/// Length of the string each symbol derives, saturating at `u64::MAX`.
pub fn expansion_lengths(slp: &Slp) -> std::result::Result<Vec<u64>, SlpError> {
    slp.validate()?;
    let mut len = vec![1u64; slp.symbol_count()];
    for r in &slp.rules {
        len[r.lhs.index()] = len[r.left.index()].saturating_add(len[r.right.index()]);
    }
    Ok(len)
}

/// The string derived from the start symbol, as symbols.
pub fn expand_symbols(slp: &Slp) -> std::result::Result<Vec<Symbol>, SlpError> {
    let len = expansion_lengths(slp)?;
    let total = len[slp.start.index()];
    let mut out = Vec::with_capacity(usize::try_from(total).unwrap_or(0));
    let mut stack = vec![slp.start];
    while let Some(s) = stack.pop() {
        if slp.is_terminal(s) {
            out.push(s);
        } else {
            let r = slp.rules[(s.0 - slp.alphabet_size) as usize];
            stack.push(r.right);
            stack.push(r.left);
        }
    }
    Ok(out)
}

/// The byte string the program generates.
pub fn expand(slp: &Slp) -> std::result::Result<Vec<u8>, SlpError> {
    if slp.alphabet_size > BYTE_ALPHABET {
        // Only terminals that actually occur matter.
        if let Some(bad) = slp
            .rules
            .iter()
            .flat_map(|r| [r.left, r.right])
            .chain(std::iter::once(slp.start))
            .find(|&s| slp.is_terminal(s) && s.0 >= BYTE_ALPHABET)
        {
            return Err(SlpError::NonByteTerminal(bad));
        }
    }
    Ok(expand_symbols(slp)?.into_iter().map(|s| s.0 as u8).collect())
}

/// Summary metrics of one compression run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrammarReport {
    pub input_len: usize,
    pub lz_phrases: usize,
    pub phases: usize,
    pub rules: usize,
    /// Rules plus distinct terminals used: the nonterminal count of the
    /// equivalent Chomsky-normal-form grammar.
    pub cnf_size: usize,
    pub free_created_total: usize,
    pub max_free_per_factor: usize,
    /// `rules / (lz_phrases * (1 + log2(max(input_len / lz_phrases, 2))))`.
    pub ratio: f64,
}

/// `ℓ·(1 + log₂ max(N/ℓ, 2))`.
pub fn size_scale(input_len: usize, lz_phrases: usize) -> f64 {
    let l = lz_phrases.max(1) as f64;
    l * (1.0 + (input_len as f64 / l).max(2.0).log2())
}

/// Generous explicit size bound `6·ℓ·(2 + log₂ max(N/ℓ, 2)) + ℓ`.
pub fn size_bound(input_len: usize, lz_phrases: usize) -> f64 {
    let l = lz_phrases.max(1) as f64;
    6.0 * l * (2.0 + (input_len as f64 / l).max(2.0).log2()) + l
}

/// `⌈log_{3/2} N⌉ + 1`.
pub fn phase_bound(input_len: usize) -> usize {
    if input_len <= 1 {
        return 1;
    }
    // Integer search avoids rounding trouble at exact powers.
    let mut k = 0usize;
    let (mut num, mut den) = (1u128, 1u128);
    while num < (input_len as u128) * den {
        num *= 3;
        den *= 2;
        k += 1;
    }
    k + 1
}

pub fn grammar_report(c: &Compressed) -> GrammarReport {
    let slp = &c.slp;
    let mut used = vec![false; slp.alphabet_size as usize];
    let mut mark = |s: Symbol| {
        if slp.is_terminal(s) {
            used[s.index()] = true;
        }
    };
    mark(slp.start);
    for r in &slp.rules {
        mark(r.left);
        mark(r.right);
    }
    let terminals = used.iter().filter(|&&u| u).count();
    let rules = slp.rules.len();
    GrammarReport {
        input_len: c.input_len,
        lz_phrases: c.lz_phrases,
        phases: c.stats.len(),
        rules,
        cnf_size: rules + terminals,
        free_created_total: c.stats.iter().map(|s| s.free_created_by_pairing).sum(),
        max_free_per_factor: c.stats.iter().map(|s| s.max_free_per_factor).max().unwrap_or(0),
        ratio: rules as f64 / size_scale(c.input_len, c.lz_phrases),
    }
}
