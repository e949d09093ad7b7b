//! Pair replacement driven by a factor-consistent pairing.
//!
//! Pairs of free letters get fresh symbols (and grammar rules). Inside a
//! factor nothing new is allocated: the compressed factor is copied from the
//! already written image of its definition, so the next word inherits a
//! factorisation with the same number of factors.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{validate_pairing, Factorization, Mark, Pairing, RuleBuilder, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replaced {
    pub word: Vec<Symbol>,
    pub factorization: Factorization,
    /// Fresh symbols (rules) introduced by this call.
    pub fresh_count: usize,
    /// Output position of each input position that is unpaired or the first
    /// of a pair; `None` for second letters of pairs.
    pub pos_map: Vec<Option<usize>>,
}

/// Replaces every pair chosen by `pairing` with a single symbol.
///
/// With `dedup` off each free pair occurrence gets its own fresh symbol;
/// with it on, equal free pairs share one symbol within this call.
pub fn replace_pairs(
    word: &[Symbol],
    fact: &Factorization,
    pairing: &Pairing,
    rules: &mut RuleBuilder,
    dedup: bool,
) -> Result<Replaced> {
    if let Some(v) = validate_pairing(word, fact, pairing)?.into_iter().next() {
        return Err(Error::InvalidPairing(v));
    }
    let n = word.len();
    let marks = &pairing.marks;
    let mut out: Vec<Symbol> = Vec::with_capacity(n / 2 + 1);
    let mut begin_out: Vec<Option<usize>> = Vec::with_capacity(n / 2 + 1);
    let mut end_out: Vec<bool> = Vec::with_capacity(n / 2 + 1);
    let mut pos_map: Vec<Option<usize>> = vec![None; n];
    let mut seen: HashMap<(Symbol, Symbol), Symbol> = HashMap::new();
    let mut fresh_count = 0;

    let mut i = 0;
    while i < n {
        if let Some(def) = fact.begin[i] {
            let mut src = pos_map[def].expect("definition starts with a mapped position");
            begin_out.push(Some(src));
            end_out.push(false);
            let mut first = true;
            loop {
                pos_map[i] = Some(out.len());
                if !first {
                    begin_out.push(None);
                    end_out.push(false);
                }
                first = false;
                debug_assert!(src < out.len());
                out.push(out[src]);
                src += 1;
                i += if marks[i] == Mark::First { 2 } else { 1 };
                if fact.end[i - 1] {
                    break;
                }
            }
            *end_out.last_mut().expect("factor is non-empty") = true;
        } else {
            pos_map[i] = Some(out.len());
            begin_out.push(None);
            end_out.push(false);
            if marks[i] == Mark::Unpaired {
                out.push(word[i]);
                i += 1;
            } else {
                let key = (word[i], word[i + 1]);
                let sym = match (dedup, seen.get(&key)) {
                    (true, Some(&s)) => s,
                    _ => {
                        let s = rules.fresh(key.0, key.1)?;
                        fresh_count += 1;
                        if dedup {
                            seen.insert(key, s);
                        }
                        s
                    }
                };
                out.push(sym);
                i += 2;
            }
        }
    }

    Ok(Replaced {
        word: out,
        factorization: Factorization {
            begin: begin_out,
            end: end_out,
        },
        fresh_count,
        pos_map,
    })
}
