//! Greedy self-referential LZ77 factorisation.
//!
//! At every position the longest match with an earlier starting position is
//! taken; among equally long matches the smallest source position wins.
//! Matches of length at most one become free letters.
//!
//! The match length comes from the nearest earlier-starting suffixes in
//! suffix-array order (previous/next smaller value over the suffix array).
//! The leftmost source is the minimum suffix-array entry inside the LCP
//! interval of that length, located with two min segment trees. Each phrase
//! costs O(log n) on top of the linear SA-IS construction.

use crate::error::{Error, Result};
use crate::model::{Factorization, Symbol};
use crate::sa::build_suffix_array;

/// Computes the greedy leftmost-longest LZ77 factorisation of `word`.
pub fn lz_factorize(word: &[Symbol]) -> Result<Factorization> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let bundle = build_suffix_array(word);
    let (psv, nsv) = nearest_smaller(&bundle.sa);
    let lcp_tree = MinTree::new(&bundle.lcp);
    let sa_tree = MinTree::new(&bundle.sa);

    let mut fact = Factorization::all_free(n);
    let mut i = 0;
    while i < n {
        let r = bundle.rank[i] as usize;
        let len = [psv[r], nsv[r]]
            .into_iter()
            .flatten()
            .map(|q| common_prefix(word, i, bundle.sa[q] as usize))
            .max()
            .unwrap_or(0);
        if len <= 1 {
            i += 1;
            continue;
        }
        let threshold = len as u32;
        // lcp[x] < threshold separates rank x - 1 from rank x.
        let lo = lcp_tree.last_below(r, threshold).unwrap_or(0);
        let hi = lcp_tree.first_below(r + 1, threshold).map_or(n - 1, |x| x - 1);
        let def = sa_tree.range_min(lo, hi) as usize;
        debug_assert!(def < i);
        fact.begin[i] = Some(def);
        fact.end[i + len - 1] = true;
        i += len;
    }
    Ok(fact)
}

/// Reference factorisation by direct scanning, quadratic in the length.
pub fn naive_lz_factorize(word: &[Symbol]) -> Result<Factorization> {
    let n = word.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut fact = Factorization::all_free(n);
    let mut i = 0;
    while i < n {
        let mut best = (0, 0);
        for j in 0..i {
            let l = common_prefix(word, i, j);
            if l > best.0 {
                best = (l, j);
            }
        }
        let (len, def) = best;
        if len <= 1 {
            i += 1;
        } else {
            fact.begin[i] = Some(def);
            fact.end[i + len - 1] = true;
            i += len;
        }
    }
    Ok(fact)
}

fn common_prefix(word: &[Symbol], a: usize, b: usize) -> usize {
    word[a..].iter().zip(&word[b..]).take_while(|(x, y)| x == y).count()
}

/// For each rank `r`, the nearest ranks to the left and right whose suffix
/// starts earlier in the text than `sa[r]`.
fn nearest_smaller(sa: &[u32]) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
    let n = sa.len();
    let mut psv = vec![None; n];
    let mut nsv = vec![None; n];
    let mut stack: Vec<usize> = Vec::new();
    for r in 0..n {
        while let Some(&top) = stack.last() {
            if sa[top] > sa[r] {
                nsv[top] = Some(r);
                stack.pop();
            } else {
                break;
            }
        }
        psv[r] = stack.last().copied();
        stack.push(r);
    }
    (psv, nsv)
}

/// Min segment tree with threshold searches.
struct MinTree {
    size: usize,
    tree: Vec<u32>,
}

impl MinTree {
    fn new(values: &[u32]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut tree = vec![u32::MAX; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for k in (1..size).rev() {
            tree[k] = tree[2 * k].min(tree[2 * k + 1]);
        }
        MinTree { size, tree }
    }

    /// Minimum over `lo..=hi`.
    fn range_min(&self, lo: usize, hi: usize) -> u32 {
        let (mut l, mut r) = (lo + self.size, hi + self.size + 1);
        let mut m = u32::MAX;
        while l < r {
            if l & 1 == 1 {
                m = m.min(self.tree[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                m = m.min(self.tree[r]);
            }
            l >>= 1;
            r >>= 1;
        }
        m
    }

    /// Largest index `x <= end` with `value[x] < threshold`.
    fn last_below(&self, end: usize, threshold: u32) -> Option<usize> {
        self.last_below_in(1, 0, self.size - 1, end, threshold)
    }

    fn last_below_in(&self, node: usize, nl: usize, nr: usize, end: usize, t: u32) -> Option<usize> {
        if nl > end || self.tree[node] >= t {
            return None;
        }
        if nl == nr {
            return Some(nl);
        }
        let mid = (nl + nr) / 2;
        self.last_below_in(2 * node + 1, mid + 1, nr, end, t)
            .or_else(|| self.last_below_in(2 * node, nl, mid, end, t))
    }

    /// Smallest index `x >= start` with `value[x] < threshold`. Padding
    /// leaves hold `u32::MAX` and never match.
    fn first_below(&self, start: usize, threshold: u32) -> Option<usize> {
        if start >= self.size {
            return None;
        }
        self.first_below_in(1, 0, self.size - 1, start, threshold)
    }

    fn first_below_in(&self, node: usize, nl: usize, nr: usize, start: usize, t: u32) -> Option<usize> {
        if nr < start || self.tree[node] >= t {
            return None;
        }
        if nl == nr {
            return Some(nl);
        }
        let mid = (nl + nr) / 2;
        self.first_below_in(2 * node, nl, mid, start, t)
            .or_else(|| self.first_below_in(2 * node + 1, mid + 1, nr, start, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_factorization, word_from_bytes, Factor};
    use proptest::prelude::*;

    fn w(s: &str) -> Vec<Symbol> {
        word_from_bytes(s.as_bytes())
    }

    fn factors(s: &str) -> (Vec<Factor>, usize) {
        let f = lz_factorize(&w(s)).unwrap();
        (f.factors(), f.phrase_count())
    }

    #[test]
    fn examples() {
        assert_eq!(
            factors("aaaa"),
            (
                vec![Factor {
                    start: 1,
                    end: 3,
                    def: 0
                }],
                2
            )
        );
        assert_eq!(
            factors("abab"),
            (
                vec![Factor {
                    start: 2,
                    end: 3,
                    def: 0
                }],
                3
            )
        );
        assert_eq!(factors("abc"), (vec![], 3));
        assert_eq!(
            factors("abababab"),
            (
                vec![Factor {
                    start: 2,
                    end: 7,
                    def: 0
                }],
                3
            )
        );
        assert_eq!(factors("a"), (vec![], 1));
    }

    #[test]
    fn naive_examples() {
        let f = naive_lz_factorize(&w("aaaa")).unwrap();
        assert_eq!(
            f.factors(),
            vec![Factor {
                start: 1,
                end: 3,
                def: 0
            }]
        );
        assert_eq!(naive_lz_factorize(&w("a")).unwrap().phrase_count(), 1);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(matches!(lz_factorize(&[]), Err(Error::EmptyInput)));
        assert!(matches!(naive_lz_factorize(&[]), Err(Error::EmptyInput)));
    }

    #[test]
    fn leftmost_source_on_ties() {
        // "ab" occurs at 0 and 3; the later phrase must point at 0.
        let f = lz_factorize(&w("abcabdab")).unwrap();
        assert_eq!(f.factors(), naive_lz_factorize(&w("abcabdab")).unwrap().factors());
        assert_eq!(f.factors().last().unwrap().def, 0);
    }

    #[test]
    fn power_of_two_runs_have_two_phrases() {
        for k in 1..12 {
            let word = vec![Symbol(7); 1 << k];
            assert_eq!(lz_factorize(&word).unwrap().phrase_count(), 2);
        }
    }

    #[test]
    fn min_tree_searches() {
        let t = MinTree::new(&[0, 3, 1, 4, 1, 5]);
        assert_eq!(t.range_min(1, 3), 1);
        assert_eq!(t.last_below(5, 2), Some(4));
        assert_eq!(t.last_below(3, 1), Some(0));
        assert_eq!(t.first_below(1, 2), Some(2));
        assert_eq!(t.first_below(5, 5), None);
        assert_eq!(t.first_below(6, 5), None);
    }

    fn expand_phrases(word: &[Symbol], fact: &Factorization) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::with_capacity(word.len());
        let mut i = 0;
        while i < word.len() {
            match fact.begin[i] {
                Some(def) => {
                    let mut k = 0;
                    loop {
                        let s = out[def + k];
                        out.push(s);
                        k += 1;
                        if fact.end[i + k - 1] {
                            break;
                        }
                    }
                    i += k;
                }
                None => {
                    out.push(word[i]);
                    i += 1;
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn agrees_with_naive(v in proptest::collection::vec(0u32..3, 1..300)) {
            let word: Vec<Symbol> = v.into_iter().map(Symbol).collect();
            let fast = lz_factorize(&word).unwrap();
            prop_assert_eq!(&fast, &naive_lz_factorize(&word).unwrap());
            prop_assert!(validate_factorization(&word, &fast).unwrap().is_empty());
            prop_assert!(fast.phrase_count() <= word.len());
            prop_assert_eq!(expand_phrases(&word, &fast), word);
        }
    }
}
