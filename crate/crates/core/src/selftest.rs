//! Built-in consistency check: exhaustive small words plus a seeded random
//! corpus, each run through every oracle and bound the crate knows about.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grammar::{compress, expand, phase_bound, size_bound, CompressOptions, Compressed};
use crate::lz77::{lz_factorize, naive_lz_factorize};
use crate::model::word_from_bytes;
use crate::slpz;

/// Words longer than this skip the quadratic LZ77 oracle.
const ORACLE_LIMIT: usize = 2000;
const RANDOM_PER_ALPHABET: usize = 100;
const ALPHABETS: [u32; 4] = [2, 4, 26, 256];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub word: Vec<u8>,
    pub phase: Option<usize>,
    pub invariant: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "word {:?}", String::from_utf8_lossy(&self.word))?;
        if let Some(p) = self.phase {
            write!(f, " phase {p}")?;
        }
        write!(f, ": {}", self.invariant)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    /// (corpus name, cases run)
    pub rows: Vec<(String, usize)>,
    pub max_phases: usize,
    pub max_ratio_bound: f64,
}

impl Summary {
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.1).sum()
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<24} {:>8}", "corpus", "cases")?;
        for (name, n) in &self.rows {
            writeln!(f, "{name:<24} {n:>8}")?;
        }
        writeln!(f, "{:<24} {:>8}", "total", self.total())?;
        writeln!(f, "max phases {}", self.max_phases)?;
        write!(f, "max rules/bound {:.3}", self.max_ratio_bound)
    }
}

pub type Compressor<'a> = &'a dyn Fn(&[u8]) -> Result<Compressed>;

/// Runs the suite with the real compressor.
pub fn run(limit: usize, seed: u64) -> std::result::Result<Summary, Failure> {
    run_with(limit, seed, &|w| compress(w, &CompressOptions::verified()))
}

/// Runs the suite against `compressor`, which must build a program for its
/// argument; used to check the harness itself with injected faults.
pub fn run_with(limit: usize, seed: u64, compressor: Compressor<'_>) -> std::result::Result<Summary, Failure> {
    let mut summary = Summary::default();
    if limit == 0 {
        summary.rows.push(("binary exhaustive".into(), 0));
        summary.rows.push(("random".into(), 0));
        return Ok(summary);
    }

    let mut cases = 0;
    for n in 1..=limit.min(24) {
        for bits in 0u64..(1u64 << n) {
            let word: Vec<u8> = (0..n).map(|k| b'a' + ((bits >> k) & 1) as u8).collect();
            check_word(&word, compressor, &mut summary)?;
            cases += 1;
        }
    }
    summary
        .rows
        .push((format!("binary exhaustive <= {}", limit.min(24)), cases));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_len = 16 * limit;
    let mut cases = 0;
    for &sigma in &ALPHABETS {
        for _ in 0..RANDOM_PER_ALPHABET {
            let len = rng.gen_range(1..=max_len);
            let word: Vec<u8> = (0..len)
                .map(|_| {
                    if sigma == 256 {
                        rng.gen()
                    } else {
                        b'a' + rng.gen_range(0..sigma) as u8
                    }
                })
                .collect();
            check_word(&word, compressor, &mut summary)?;
            cases += 1;
        }
    }
    summary.rows.push((format!("random (seed {seed})"), cases));
    Ok(summary)
}

fn check_word(word: &[u8], compressor: Compressor<'_>, summary: &mut Summary) -> std::result::Result<(), Failure> {
    let fail = |phase: Option<usize>, invariant: String| Failure {
        word: word.to_vec(),
        phase,
        invariant,
    };

    if word.len() <= ORACLE_LIMIT {
        let w = word_from_bytes(word);
        let fast = lz_factorize(&w).map_err(|e| fail(None, e.to_string()))?;
        let slow = naive_lz_factorize(&w).map_err(|e| fail(None, e.to_string()))?;
        if fast != slow {
            return Err(fail(None, "LZ77 factorisation differs from the oracle".into()));
        }
    }

    let c = compressor(word).map_err(|e| match e {
        Error::Invariant { phase, detail } => fail(Some(phase), detail),
        other => fail(None, other.to_string()),
    })?;
    for s in &c.stats {
        s.check(false).map_err(|e| fail(Some(s.phase_index), e))?;
    }
    if c.stats.len() > phase_bound(word.len()) {
        return Err(fail(None, format!("{} phases exceed the bound", c.stats.len())));
    }
    let bound = size_bound(word.len(), c.lz_phrases);
    if c.slp.rules.len() as f64 > bound {
        return Err(fail(
            None,
            format!("{} rules exceed the size bound {bound:.1}", c.slp.rules.len()),
        ));
    }
    let out = expand(&c.slp).map_err(|e| fail(None, e.to_string()))?;
    if out != word {
        return Err(fail(None, "expansion differs from input".into()));
    }
    let text = slpz::write(&c.slp, word.len() as u64);
    let back = slpz::parse(&text).map_err(|e| fail(None, e.to_string()))?;
    if back.slp != c.slp {
        return Err(fail(None, "SLPZ round trip changed the grammar".into()));
    }

    summary.max_phases = summary.max_phases.max(c.stats.len());
    summary.max_ratio_bound = summary.max_ratio_bound.max(c.slp.rules.len() as f64 / bound);
    Ok(())
}
