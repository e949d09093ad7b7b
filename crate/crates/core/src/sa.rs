//! Suffix arrays over integer alphabets.
//!
//! Construction uses induced sorting (SA-IS), linear in the input length
//! for alphabets of size O(n). The bundle also carries the inverse
//! permutation and the LCP array (Kasai et al.).

use crate::model::Symbol;

const NAIVE_THRESHOLD: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixArrayBundle {
    /// Text positions in lexicographic order of their suffixes.
    pub sa: Vec<u32>,
    /// Inverse of `sa`.
    pub rank: Vec<u32>,
    /// `lcp[r]` is the longest common prefix of suffixes `sa[r - 1]` and
    /// `sa[r]`; `lcp[0] = 0`.
    pub lcp: Vec<u32>,
}

impl SuffixArrayBundle {
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }
}

/// Builds the suffix array, rank and LCP arrays of `word`.
///
/// Symbol ids are compacted to a dense alphabet first, so arbitrary ids
/// are fine as long as the word fits in `u32` positions.
pub fn build_suffix_array(word: &[Symbol]) -> SuffixArrayBundle {
    assert!(word.len() < u32::MAX as usize, "word too long for 32-bit suffix array");
    let (text, upper) = compact_alphabet(word);
    let sa = sa_is(&text, upper);
    let mut rank = vec![0u32; sa.len()];
    for (r, &p) in sa.iter().enumerate() {
        rank[p as usize] = r as u32;
    }
    let lcp = kasai(&text, &sa, &rank);
    SuffixArrayBundle { sa, rank, lcp }
}

fn compact_alphabet(word: &[Symbol]) -> (Vec<u32>, u32) {
    let max = word.iter().map(|s| s.0).max().unwrap_or(0) as usize;
    if max <= word.len().max(256) {
        return (word.iter().map(|s| s.0).collect(), max as u32);
    }
    let mut ids: Vec<u32> = word.iter().map(|s| s.0).collect();
    ids.sort_unstable();
    ids.dedup();
    let text = word
        .iter()
        .map(|s| ids.binary_search(&s.0).expect("id present") as u32)
        .collect();
    (text, ids.len().saturating_sub(1) as u32)
}

fn kasai(text: &[u32], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}

fn sa_naive(s: &[u32]) -> Vec<u32> {
    let mut sa: Vec<u32> = (0..s.len() as u32).collect();
    sa.sort_by(|&a, &b| s[a as usize..].cmp(&s[b as usize..]));
    sa
}

/// Induced sorting over `s` with letters in `0..=upper`. No sentinel is
/// required; the end of the text compares smaller than any letter.
fn sa_is(s: &[u32], upper: u32) -> Vec<u32> {
    let n = s.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        2 => return if s[0] < s[1] { vec![0, 1] } else { vec![1, 0] },
        _ if n < NAIVE_THRESHOLD => return sa_naive(s),
        _ => {}
    }
    let upper = upper as usize;
    const EMPTY: u32 = u32::MAX;

    // ls[i]: suffix i is S-type (smaller than suffix i + 1).
    let mut ls = vec![false; n];
    for i in (0..n - 1).rev() {
        ls[i] = if s[i] == s[i + 1] { ls[i + 1] } else { s[i] < s[i + 1] };
    }

    // Bucket boundaries: sum_l[c] is the first slot of bucket c, sum_s[c] the
    // first S-type slot inside it.
    let mut sum_l = vec![0usize; upper + 2];
    let mut sum_s = vec![0usize; upper + 2];
    for i in 0..n {
        if ls[i] {
            sum_l[s[i] as usize + 1] += 1;
        } else {
            sum_s[s[i] as usize] += 1;
        }
    }
    for c in 0..=upper {
        sum_s[c] += sum_l[c];
        sum_l[c + 1] += sum_s[c];
    }

    let mut sa = vec![EMPTY; n];
    let mut buf = vec![0usize; upper + 2];
    let mut induce = |lms: &[u32], sa: &mut Vec<u32>| {
        sa.fill(EMPTY);
        buf.copy_from_slice(&sum_s);
        for &d in lms {
            let c = s[d as usize] as usize;
            sa[buf[c]] = d;
            buf[c] += 1;
        }
        buf.copy_from_slice(&sum_l);
        let c = s[n - 1] as usize;
        sa[buf[c]] = (n - 1) as u32;
        buf[c] += 1;
        for i in 0..n {
            let v = sa[i];
            if v != EMPTY && v >= 1 && !ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize;
                sa[buf[c]] = v - 1;
                buf[c] += 1;
            }
        }
        buf.copy_from_slice(&sum_l);
        for i in (0..n).rev() {
            let v = sa[i];
            if v != EMPTY && v >= 1 && ls[v as usize - 1] {
                let c = s[v as usize - 1] as usize + 1;
                buf[c] -= 1;
                sa[buf[c]] = v - 1;
            }
        }
    };

    let is_lms = |i: usize| i > 0 && !ls[i - 1] && ls[i];
    let mut lms_map = vec![EMPTY; n + 1];
    let mut lms = Vec::new();
    for (i, slot) in lms_map.iter_mut().enumerate().take(n).skip(1) {
        if is_lms(i) {
            *slot = lms.len() as u32;
            lms.push(i as u32);
        }
    }
    let m = lms.len();

    induce(&lms, &mut sa);

    if m > 0 {
        let sorted_lms: Vec<u32> = sa
            .iter()
            .copied()
            .filter(|&v| v != EMPTY && lms_map[v as usize] != EMPTY)
            .collect();
        let mut rec_s = vec![0u32; m];
        let mut rec_upper = 0u32;
        rec_s[lms_map[sorted_lms[0] as usize] as usize] = 0;
        let lms_end = |p: usize| {
            let k = lms_map[p] as usize + 1;
            if k < m {
                lms[k] as usize
            } else {
                n
            }
        };
        for w in sorted_lms.windows(2) {
            let (mut l, mut r) = (w[0] as usize, w[1] as usize);
            let (end_l, end_r) = (lms_end(l), lms_end(r));
            let mut same = end_l - l == end_r - r;
            if same {
                while l < end_l && s[l] == s[r] {
                    l += 1;
                    r += 1;
                }
                if l == n || r == n || s[l] != s[r] {
                    same = false;
                }
            }
            if !same {
                rec_upper += 1;
            }
            rec_s[lms_map[w[1] as usize] as usize] = rec_upper;
        }

        let rec_sa = sa_is(&rec_s, rec_upper);
        let sorted: Vec<u32> = rec_sa.iter().map(|&k| lms[k as usize]).collect();
        induce(&sorted, &mut sa);
    }
    sa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::word_from_bytes;
    use proptest::prelude::*;

    // Independent oracle: sort all suffixes with the slice comparator.
    fn oracle(word: &[Symbol]) -> Vec<u32> {
        let mut sa: Vec<u32> = (0..word.len() as u32).collect();
        sa.sort_by(|&a, &b| word[a as usize..].cmp(&word[b as usize..]));
        sa
    }

    fn sa_of(s: &str) -> Vec<u32> {
        build_suffix_array(&word_from_bytes(s.as_bytes())).sa
    }

    #[test]
    fn examples() {
        assert_eq!(sa_of("banana"), vec![5, 3, 1, 0, 4, 2]);
        assert_eq!(sa_of("a"), vec![0]);
        assert_eq!(sa_of("aaa"), vec![2, 1, 0]);
    }

    #[test]
    fn lcp_of_banana() {
        let b = build_suffix_array(&word_from_bytes(b"banana"));
        assert_eq!(b.lcp, vec![0, 1, 3, 0, 0, 2]);
        assert_eq!(b.rank, vec![3, 2, 5, 1, 4, 0]);
    }

    #[test]
    fn exhaustive_binary() {
        for n in 1..=12 {
            for bits in 0u32..(1 << n) {
                let w: Vec<Symbol> = (0..n).map(|k| Symbol((bits >> k) & 1)).collect();
                assert_eq!(build_suffix_array(&w).sa, oracle(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn large_ids_are_compacted() {
        let w: Vec<Symbol> = [900_000, 5, 900_000, 5, 12].into_iter().map(Symbol).collect();
        assert_eq!(build_suffix_array(&w).sa, oracle(&w));
    }

    proptest! {
        #[test]
        fn matches_oracle(v in proptest::collection::vec(0u32..4, 1..400)) {
            let w: Vec<Symbol> = v.into_iter().map(Symbol).collect();
            let b = build_suffix_array(&w);
            prop_assert_eq!(&b.sa, &oracle(&w));
            for r in 1..w.len() {
                let (x, y) = (b.sa[r - 1] as usize, b.sa[r] as usize);
                let l = w[x..].iter().zip(&w[y..]).take_while(|(a, b)| a == b).count();
                prop_assert_eq!(b.lcp[r] as usize, l);
            }
        }

        #[test]
        fn matches_oracle_bytes(v in proptest::collection::vec(any::<u8>(), 1..300)) {
            let w = word_from_bytes(&v);
            prop_assert_eq!(build_suffix_array(&w).sa, oracle(&w));
        }
    }
}
