//! Words over ℤ, reduced words, and increasing suffixes.
//!
//! The word `(w_1, …, w_k)` stands for the product `s_{w_1} ⋯ s_{w_k}`.
//! Reduced words are enumerated by peeling right descents, so a reduced
//! word of `w` ending in `i` exists exactly when `i` is a descent of `w`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Limits, Result};
use crate::perm::Permutation;

/// A finite sequence of integer letters.
pub type Word = Vec<i64>;

/// `[3,4,3,1]`.
pub fn format_word(word: &[i64]) -> String {
    let body: Vec<String> = word.iter().map(|x| x.to_string()).collect();
    format!("[{}]", body.join(","))
}

pub fn parse_word(s: &str) -> Result<Word> {
    crate::perm::parse_int_list(s)
}

/// `s_{w_1} ⋯ s_{w_k}`.
pub fn word_to_perm(word: &[i64]) -> Permutation {
    word.iter()
        .fold(Permutation::identity(), |w, &i| w.mul_simple_right(i))
}

/// Whether every letter raises the length by one.
pub fn is_reduced(word: &[i64]) -> bool {
    let mut w = Permutation::identity();
    for &i in word {
        if w.has_descent(i) {
            return false;
        }
        w = w.mul_simple_right(i);
    }
    true
}

/// A permutation together with all of its reduced words, sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWordSet {
    pub perm: Permutation,
    pub words: Vec<Word>,
}

impl ReducedWordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One-line window of `w` used by the enumerators. Positions outside
/// `lo..lo + vals.len()` are fixed.
struct Window {
    lo: i64,
    vals: Vec<i64>,
}

impl Window {
    fn of(w: &Permutation) -> Window {
        match w.bounds() {
            Some((lo, hi)) => Window {
                lo,
                vals: w.window(lo, hi),
            },
            None => Window {
                lo: 0,
                vals: Vec::new(),
            },
        }
    }
}

/// `|RW(w)|`, by memoized descent recursion.
pub fn count_reduced_words(w: &Permutation) -> BigUint {
    fn rec(vals: &mut Vec<i64>, memo: &mut HashMap<Vec<i64>, BigUint>) -> BigUint {
        if let Some(c) = memo.get(vals.as_slice()) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        let mut any = false;
        for j in 0..vals.len().saturating_sub(1) {
            if vals[j] > vals[j + 1] {
                any = true;
                vals.swap(j, j + 1);
                total += rec(vals, memo);
                vals.swap(j, j + 1);
            }
        }
        if !any {
            total = BigUint::one();
        }
        memo.insert(vals.clone(), total.clone());
        total
    }
    let mut win = Window::of(w);
    rec(&mut win.vals, &mut HashMap::new())
}

/// `RW(w)`, sorted lexicographically. Fails with `ResourceLimit` before
/// enumerating if the count exceeds the configured cap.
pub fn reduced_words(w: &Permutation, limits: &Limits) -> Result<ReducedWordSet> {
    let count = count_reduced_words(w);
    limits.check_words(count.to_u64().unwrap_or(u64::MAX))?;
    let mut win = Window::of(w);
    let len = w.length() as usize;
    let mut words = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut suffix = vec![0i64; len];
    fn rec(win: &mut Window, depth: usize, suffix: &mut Vec<i64>, out: &mut Vec<Word>) {
        if depth == 0 {
            out.push(suffix.clone());
            return;
        }
        for j in 0..win.vals.len() - 1 {
            if win.vals[j] > win.vals[j + 1] {
                win.vals.swap(j, j + 1);
                suffix[depth - 1] = win.lo + j as i64;
                rec(win, depth - 1, suffix, out);
                win.vals.swap(j, j + 1);
            }
        }
    }
    rec(&mut win, len, &mut suffix, &mut words);
    words.sort();
    Ok(ReducedWordSet {
        perm: w.clone(),
        words,
    })
}

/// One reduced word of `w`, built by always peeling the smallest descent.
pub fn some_reduced_word(w: &Permutation) -> Word {
    let mut win = Window::of(w);
    let mut word = Vec::with_capacity(w.length() as usize);
    'outer: loop {
        for j in 0..win.vals.len().saturating_sub(1) {
            if win.vals[j] > win.vals[j + 1] {
                win.vals.swap(j, j + 1);
                word.push(win.lo + j as i64);
                continue 'outer;
            }
        }
        break;
    }
    word.reverse();
    word
}

/// The maximal strictly increasing suffix of `word`.
pub fn increasing_suffix(word: &[i64]) -> &[i64] {
    let n = word.len();
    if n == 0 {
        return word;
    }
    let mut start = n - 1;
    while start > 0 && word[start - 1] < word[start] {
        start -= 1;
    }
    &word[start..]
}

/// `I_i(p)`: the length of the increasing suffix when the last letter is at
/// most `i`, and 0 otherwise.
pub fn inc_suffix_len_i(word: &[i64], i: i64) -> u64 {
    match word.last() {
        Some(&last) if last <= i => increasing_suffix(word).len() as u64,
        _ => 0,
    }
}

/// The unique longest increasing suffix over `RW(w)`: the positions of the
/// nonzero code entries in increasing order.
pub fn max_increasing_suffix_of_perm(w: &Permutation) -> Word {
    w.code().keys().copied().collect()
}

/// `I_i(w)`, the largest `I_i` over all reduced words of `w`.
pub fn inc_suffix_len_of_perm(w: &Permutation, i: i64, limits: &Limits) -> Result<u64> {
    let rw = reduced_words(w, limits)?;
    Ok(rw
        .words
        .iter()
        .map(|a| inc_suffix_len_i(a, i))
        .max()
        .unwrap_or(0))
}

/// Every increasing suffix occurring over `RW(w)`, by brute force.
pub fn all_increasing_suffixes(w: &Permutation, limits: &Limits) -> Result<BTreeSet<Word>> {
    let rw = reduced_words(w, limits)?;
    Ok(rw
        .words
        .iter()
        .map(|a| increasing_suffix(a).to_vec())
        .collect())
}

/// A reduced word of `w` built by repeatedly splitting off the maximal
/// increasing suffix: `MaxIncWord(w) = MaxIncWord(w·IncSuf(w)⁻¹) ∘ IncSuf(w)`.
pub fn max_inc_word(w: &Permutation) -> Result<Word> {
    let mut blocks = Vec::new();
    let mut cur = w.clone();
    while !cur.is_identity() {
        let suffix = max_increasing_suffix_of_perm(&cur);
        let next = cur.compose(&word_to_perm(&suffix).inverse());
        if next.length() + suffix.len() as u64 != cur.length() {
            return Err(Error::Inconsistent(format!(
                "suffix {} does not end a reduced word of {cur}",
                format_word(&suffix)
            )));
        }
        blocks.push(suffix);
        cur = next;
    }
    let word: Word = blocks.into_iter().rev().flatten().collect();
    if !is_reduced(&word) || word_to_perm(&word) != *w {
        return Err(Error::Inconsistent(format!(
            "{} is not a reduced word of {w}",
            format_word(&word)
        )));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn rw(s: &str) -> Vec<Word> {
        reduced_words(&p(s), &Limits::default()).unwrap().words
    }

    #[test]
    fn word_evaluation_and_reducedness() {
        assert_eq!(word_to_perm(&[1, 2, 1]), p("1:[3,2,1]"));
        assert!(is_reduced(&[1, 2, 1]));
        assert!(word_to_perm(&[1, 1]).is_identity());
        assert!(!is_reduced(&[1, 1]));
        assert_eq!(word_to_perm(&[3, 4, 3, 1]), p("1:[2,1,5,4,3]"));
        assert!(is_reduced(&[3, 4, 3, 1]));
        assert_eq!(word_to_perm(&[1, 2]), p("1:[2,3,1]"));
    }

    #[test]
    fn reduced_words_of_small_examples() {
        let mut expected = vec![
            vec![3, 4, 3, 1],
            vec![3, 4, 1, 3],
            vec![3, 1, 4, 3],
            vec![1, 3, 4, 3],
            vec![4, 3, 4, 1],
            vec![4, 3, 1, 4],
            vec![4, 1, 3, 4],
            vec![1, 4, 3, 4],
        ];
        expected.sort();
        assert_eq!(rw("1:[2,1,5,4,3]"), expected);
        assert_eq!(rw("1:[1,2,4,5,3]"), vec![vec![3, 4]]);
        assert_eq!(rw("1:[1]"), vec![Vec::<i64>::new()]);
        assert_eq!(count_reduced_words(&p("1:[4,3,2,1]")), BigUint::from(16u32));
    }

    #[test]
    fn resource_cap_is_reported() {
        let limits = Limits {
            max_reduced_words: 10,
            ..Limits::default()
        };
        let err = reduced_words(&p("1:[4,3,2,1]"), &limits).unwrap_err();
        assert_eq!(
            err,
            Error::ResourceLimit {
                cap: "max-rw",
                limit: 10
            }
        );
    }

    #[test]
    fn increasing_suffix_examples() {
        assert_eq!(increasing_suffix(&[3, 1, 2]), &[1, 2]);
        assert_eq!(increasing_suffix(&[2, 1, 2]), &[1, 2]);
        assert_eq!(inc_suffix_len_i(&[3, 1, 2], 1), 0);
        assert_eq!(inc_suffix_len_i(&[3, 1, 2], 2), 2);
        assert!(increasing_suffix(&[]).is_empty());
        assert_eq!(inc_suffix_len_i(&[], 5), 0);
        assert_eq!(increasing_suffix(&[1, 2, 3]), &[1, 2, 3]);
        assert_eq!(inc_suffix_len_i(&[1, 2, 3], 3), 3);
        assert_eq!(inc_suffix_len_i(&[1, 2, 3], 2), 0);
    }

    #[test]
    fn maximal_suffix_examples() {
        assert_eq!(
            max_increasing_suffix_of_perm(&p("1:[2,1,3,6,5,7,4]")),
            vec![1, 4, 5, 6]
        );
        assert!(max_increasing_suffix_of_perm(&Permutation::identity()).is_empty());
        // Oracle: scan the eight reduced words of 21543 for the longest suffix.
        let best = rw("1:[2,1,5,4,3]")
            .iter()
            .map(|a| increasing_suffix(a).to_vec())
            .max_by_key(|s| s.len())
            .unwrap();
        assert_eq!(best, vec![1, 3, 4]);
        assert_eq!(max_increasing_suffix_of_perm(&p("1:[2,1,5,4,3]")), best);
    }

    #[test]
    fn max_inc_word_examples() {
        let w = p("1:[3,2,1]");
        let word = max_inc_word(&w).unwrap();
        let best = rw("1:[3,2,1]")
            .iter()
            .map(|a| increasing_suffix(a).len())
            .max()
            .unwrap();
        assert_eq!(increasing_suffix(&word).len(), best);
        assert_eq!(word, vec![2, 1, 2]);
        assert_eq!(max_inc_word(&Permutation::simple(4)).unwrap(), vec![4]);
        let w = p("1:[2,1,3,6,5,7,4]");
        let word = max_inc_word(&w).unwrap();
        assert!(word.ends_with(&[1, 4, 5, 6]));
        assert_eq!(word_to_perm(&word), w);
    }

    #[test]
    fn counts_invariant_under_shift_and_flip() {
        for w in symmetric_group(4) {
            let c = count_reduced_words(&w);
            assert_eq!(count_reduced_words(&w.gamma(-3)), c);
            assert_eq!(count_reduced_words(&w.iota()), c);
            let words = rw(&w.to_string());
            assert_eq!(BigUint::from(words.len()), c);
            for a in &words {
                assert_eq!(word_to_perm(a), w);
                let flipped: Word = a.iter().map(|x| -x).collect();
                assert_eq!(word_to_perm(&flipped), w.iota());
            }
            assert_eq!(some_reduced_word(&w).len() as u64, w.length());
            assert_eq!(word_to_perm(&some_reduced_word(&w)), w);
        }
    }

    #[test]
    fn suffix_facts_on_s5() {
        let limits = Limits::default();
        for w in symmetric_group(5) {
            let prof = w.code_profile();
            let words = reduced_words(&w, &limits).unwrap().words;
            let maximal = max_increasing_suffix_of_perm(&w);
            for a in &words {
                let suf = increasing_suffix(a);
                for &j in suf {
                    assert_eq!(prof.theta(j), 1, "{w}: letter {j} of {a:?}");
                }
                // Every increasing suffix is a subword of the maximal one.
                assert!(suf.iter().all(|x| maximal.contains(x)));
            }
            assert!(words
                .iter()
                .any(|a| increasing_suffix(a) == maximal.as_slice()));
            for i in -1..=6 {
                let ii = words.iter().map(|a| inc_suffix_len_i(a, i)).max().unwrap();
                assert!(ii <= prof.lambda(i));
                if prof.theta(i) == 0 {
                    let prev = words
                        .iter()
                        .map(|a| inc_suffix_len_i(a, i - 1))
                        .max()
                        .unwrap();
                    assert_eq!(prev, ii);
                    assert_eq!(ii, prof.lambda(i));
                }
            }
            let mi = max_inc_word(&w).unwrap();
            assert_eq!(increasing_suffix(&mi), maximal.as_slice());
        }
    }

    /// Any two reduced words are joined by commutation and braid moves.
    #[test]
    fn braid_moves_connect_reduced_words_on_s4() {
        for w in symmetric_group(4) {
            let words: BTreeSet<Word> = rw(&w.to_string()).into_iter().collect();
            let start = words.iter().next().unwrap().clone();
            let mut seen = BTreeSet::from([start.clone()]);
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for j in 0..a.len() {
                    let mut nexts = Vec::new();
                    if j + 1 < a.len() && (a[j] - a[j + 1]).abs() >= 2 {
                        let mut b = a.clone();
                        b.swap(j, j + 1);
                        nexts.push(b);
                    }
                    if j + 2 < a.len() && a[j] == a[j + 2] && (a[j] - a[j + 1]).abs() == 1 {
                        let mut b = a.clone();
                        b[j] = a[j + 1];
                        b[j + 1] = a[j];
                        b[j + 2] = a[j + 1];
                        nexts.push(b);
                    }
                    for b in nexts {
                        if seen.insert(b.clone()) {
                            stack.push(b);
                        }
                    }
                }
            }
            assert_eq!(seen, words, "{w}");
        }
    }
}
