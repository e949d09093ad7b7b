//! Left-to-right construction of a pairing compatible with the
//! factorisation.
//!
//! The sweep pairs neighbouring free letters greedily and copies the pairing
//! of each factor from its definition. Along the way it repairs the
//! factorisation so that the copy is consistent:
//!
//! * one-letter factors become free letters;
//! * a letter run whose definition starts one position to the left is split
//!   into a free letter and a factor defined two positions to the left;
//! * a factor whose definition does not start with the first letter of a
//!   pair loses its first letter, and the definition moves right by one;
//! * after copying, letters are popped off the right end until the factor
//!   ends with the second letter of a pair.
//!
//! Letters released by these repairs are free and are revisited by the same
//! sweep. The result satisfies:
//!
//! * no two adjacent positions are both unpaired;
//! * every factor starts and ends with a complete pair;
//! * every factor is paired exactly like its definition.

use crate::error::{Error, Result};
use crate::model::{validate_factorization, Factorization, Mark, Pairing, Symbol};

/// Upper bound on free letters a single factor may release in one sweep.
pub const MAX_FREE_PER_FACTOR: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingOutcome {
    pub pairing: Pairing,
    pub factorization: Factorization,
    /// Free letters released from factors during the sweep.
    pub free_created: usize,
    /// Free letters released per original factor, in order of factor start.
    pub free_per_factor: Vec<usize>,
}

impl PairingOutcome {
    pub fn max_free_per_factor(&self) -> usize {
        self.free_per_factor.iter().copied().max().unwrap_or(0)
    }
}

/// Computes a pairing of `word` with the three pairing properties together with the repaired
/// factorisation it is valid for.
///
/// The factor count never increases, and each input factor releases at most
/// [`MAX_FREE_PER_FACTOR`] free letters.
pub fn find_pairing(word: &[Symbol], fact: &Factorization) -> Result<PairingOutcome> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if let Some(v) = validate_factorization(word, fact)?.into_iter().next() {
        return Err(Error::InvalidFactorization(v));
    }

    let mut begin = fact.begin.clone();
    let mut end = fact.end.clone();
    let mut pair = vec![Mark::Unset; n];

    // Factors are numbered by the order in which the sweep first reaches
    // them; a factor whose start moves right keeps its number.
    let mut free_per_factor: Vec<usize> = Vec::with_capacity(fact.factor_count());
    let mut carried: Option<(usize, usize)> = None;
    let mut steps = 0usize;

    pair[0] = Mark::Unpaired;
    let mut i = 1;
    while i < n {
        if let Some(def) = begin[i] {
            let id = match carried.take() {
                Some((at, id)) if at == i => id,
                _ => {
                    free_per_factor.push(0);
                    free_per_factor.len() - 1
                }
            };
            if end[i] {
                // One-letter factor.
                begin[i] = None;
                end[i] = false;
                free_per_factor[id] += 1;
            } else if def + 1 == i {
                // The factor is a run a^k defined one position to the left:
                // free its first letter and define the rest two to the left.
                begin[i + 1] = Some(i - 1);
                begin[i] = None;
                free_per_factor[id] += 1;
                carried = Some((i + 1, id));
            } else if pair[def] != Mark::First {
                // Definition starts mid-pair: drop the first letter.
                begin[i + 1] = Some(def + 1);
                begin[i] = None;
                free_per_factor[id] += 1;
                carried = Some((i + 1, id));
            } else {
                let start = i;
                let mut j = def;
                loop {
                    assert!(j + 2 <= i, "definition cursor must trail by two");
                    pair[i] = pair[j];
                    i += 1;
                    j += 1;
                    steps += 1;
                    if end[i - 1] {
                        break;
                    }
                }
                while pair[i - 1] != Mark::Second {
                    i -= 1;
                    end[i - 1] = true;
                    end[i] = false;
                    pair[i] = Mark::Unset;
                    free_per_factor[id] += 1;
                }
                assert!(i - start >= 2, "trimmed factor shorter than a pair");
            }
        }
        if i < n && begin[i].is_none() {
            if pair[i - 1] == Mark::Unpaired {
                pair[i - 1] = Mark::First;
                pair[i] = Mark::Second;
            } else {
                pair[i] = Mark::Unpaired;
            }
            i += 1;
            steps += 1;
        }
        assert!(steps <= 2 * n, "sweep visited more than 2|w| letters");
    }

    let free_created = free_per_factor.iter().sum();
    Ok(PairingOutcome {
        pairing: Pairing::new(pair),
        factorization: Factorization { begin, end },
        free_created,
        free_per_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lz77::lz_factorize;
    use crate::model::{validate_pairing, word_from_bytes, Factor};
    use proptest::prelude::*;
    use Mark::*;

    fn w(s: &str) -> Vec<Symbol> {
        word_from_bytes(s.as_bytes())
    }

    #[test]
    fn abab() {
        let word = w("abab");
        let f = Factorization::from_factors(
            4,
            &[Factor {
                start: 2,
                end: 3,
                def: 0,
            }],
        );
        let out = find_pairing(&word, &f).unwrap();
        assert_eq!(out.pairing.marks, vec![First, Second, First, Second]);
        assert_eq!(out.factorization, f);
        assert_eq!(out.free_created, 0);
    }

    #[test]
    fn run_is_split() {
        let word = w("aaaa");
        let f = Factorization::from_factors(
            4,
            &[Factor {
                start: 1,
                end: 3,
                def: 0,
            }],
        );
        let out = find_pairing(&word, &f).unwrap();
        assert_eq!(out.pairing.marks, vec![First, Second, First, Second]);
        assert_eq!(
            out.factorization.factors(),
            vec![Factor {
                start: 2,
                end: 3,
                def: 0
            }]
        );
        assert_eq!(out.free_created, 1);
        assert_eq!(out.free_per_factor, vec![1]);
    }

    #[test]
    fn single_letter_and_trailing_unpaired() {
        let out = find_pairing(&w("a"), &Factorization::all_free(1)).unwrap();
        assert_eq!(out.pairing.marks, vec![Unpaired]);
        assert_eq!(out.free_created, 0);

        let out = find_pairing(&w("aba"), &Factorization::all_free(3)).unwrap();
        assert_eq!(out.pairing.marks, vec![First, Second, Unpaired]);
    }

    #[test]
    fn one_letter_factor_is_demoted() {
        let word = w("aba");
        let f = Factorization::from_factors(
            3,
            &[Factor {
                start: 2,
                end: 2,
                def: 0,
            }],
        );
        let out = find_pairing(&word, &f).unwrap();
        assert_eq!(out.factorization.factor_count(), 0);
        assert_eq!(out.free_created, 1);
        assert_eq!(out.pairing.marks, vec![First, Second, Unpaired]);
    }

    #[test]
    fn misaligned_definition_is_shortened() {
        // x a b a b: factor [3..4] "ab" defined at 1, which is the second
        // letter of the pair (0,1).
        let word = w("xabab");
        let f = Factorization::from_factors(
            5,
            &[Factor {
                start: 3,
                end: 4,
                def: 1,
            }],
        );
        let out = find_pairing(&word, &f).unwrap();
        assert!(validate_pairing(&word, &out.factorization, &out.pairing)
            .unwrap()
            .is_empty());
        assert_eq!(out.factorization.factor_count(), 0);
        assert_eq!(out.free_created, 2);
    }

    #[test]
    fn right_end_is_trimmed() {
        // The definition "abc" at 0 is paired (ab)(c?) so the copy ends on a
        // First mark and the last letter is popped.
        let word = w("abcdabc");
        let f = Factorization::from_factors(
            7,
            &[Factor {
                start: 4,
                end: 6,
                def: 0,
            }],
        );
        let out = find_pairing(&word, &f).unwrap();
        assert_eq!(
            out.factorization.factors(),
            vec![Factor {
                start: 4,
                end: 5,
                def: 0
            }]
        );
        assert_eq!(
            out.pairing.marks,
            vec![First, Second, First, Second, First, Second, Unpaired]
        );
        assert_eq!(out.free_created, 1);
        assert!(validate_pairing(&word, &out.factorization, &out.pairing)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn invalid_factorization_is_rejected() {
        let f = Factorization::from_factors(
            2,
            &[Factor {
                start: 0,
                end: 1,
                def: 0,
            }],
        );
        assert!(matches!(
            find_pairing(&w("ab"), &f),
            Err(Error::InvalidFactorization(_))
        ));
        assert!(matches!(
            find_pairing(&[], &Factorization::default()),
            Err(Error::EmptyInput)
        ));
    }

    fn check(word: &[Symbol], fact: &Factorization) -> std::result::Result<(), String> {
        let out = find_pairing(word, fact).map_err(|e| e.to_string())?;
        let v = validate_pairing(word, &out.factorization, &out.pairing).unwrap();
        if !v.is_empty() {
            return Err(format!("{v:?}"));
        }
        let m = fact.factor_count();
        if out.factorization.factor_count() > m {
            return Err("factor count grew".into());
        }
        if out.free_created > MAX_FREE_PER_FACTOR * m || out.max_free_per_factor() > MAX_FREE_PER_FACTOR {
            return Err("free letter bound".into());
        }
        if out.factorization.free_count() != fact.free_count() + out.free_created {
            return Err("free accounting".into());
        }
        if out.pairing.paired_count() < word.len().saturating_sub(1) / 3 {
            return Err("too few pairs".into());
        }
        for f in out.factorization.factors() {
            if f.len() < 2 || f.def + 2 > f.start {
                return Err(format!("factor {f:?} too short or too close"));
            }
        }
        Ok(())
    }

    #[test]
    fn exhaustive_binary_with_lz() {
        for n in 1..=12 {
            for bits in 0u32..(1 << n) {
                let word: Vec<Symbol> = (0..n).map(|k| Symbol(97 + ((bits >> k) & 1))).collect();
                let fact = lz_factorize(&word).unwrap();
                check(&word, &fact).unwrap_or_else(|e| panic!("{word:?}: {e}"));
            }
        }
    }

    #[test]
    fn deterministic() {
        let word = w("abracadabra abracadabra abracadabra");
        let fact = lz_factorize(&word).unwrap();
        assert_eq!(find_pairing(&word, &fact).unwrap(), find_pairing(&word, &fact).unwrap());
    }

    /// Random valid factorisations: at each position either a free letter or
    /// a copy of a random earlier-starting match (any length it supports).
    fn random_factorization(word: &[Symbol], choices: &[(bool, usize, usize)]) -> Factorization {
        let n = word.len();
        let mut f = Factorization::all_free(n);
        let mut i = 0;
        let mut k = 0;
        while i < n {
            let (take, a, b) = choices[k % choices.len()];
            k += 1;
            if take && i > 0 {
                let def = a % i;
                let max = word[i..].iter().zip(&word[def..]).take_while(|(x, y)| x == y).count();
                if max >= 1 {
                    let len = 1 + b % max;
                    f.begin[i] = Some(def);
                    f.end[i + len - 1] = true;
                    i += len;
                    continue;
                }
            }
            i += 1;
        }
        f
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]
        #[test]
        fn postconditions_on_random_factorizations(
            v in proptest::collection::vec(0u32..2, 1..120),
            choices in proptest::collection::vec((any::<bool>(), any::<usize>(), any::<usize>()), 1..40),
        ) {
            let word: Vec<Symbol> = v.into_iter().map(Symbol).collect();
            let fact = random_factorization(&word, &choices);
            prop_assert!(validate_factorization(&word, &fact).unwrap().is_empty());
            if let Err(e) = check(&word, &fact) {
                prop_assert!(false, "{:?}: {}", word, e);
            }
        }
    }
}
