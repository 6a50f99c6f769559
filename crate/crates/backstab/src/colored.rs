//! Colored words and the colored shuffle algebra.
//!
//! A colored letter `v^c` carries an integer value and a color `c ≥ 1`;
//! letters compare by value, then by color. The product of two words
//! shuffles the first with the second after lifting the second word's
//! colors above every color of the first, so all coefficients of a product
//! of two words are 0 or 1.
//!
//! The maximal bottom row `m(t)` is the entrywise largest weakly increasing
//! sequence `b ≤ t` that increases strictly wherever `t` does. Two words are
//! equivalent (`≡`) when their maximal bottom rows agree.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Limits, Result};

/// A value with a color; ordered by value, then color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredLetter {
    pub value: i64,
    pub color: u32,
}

impl ColoredLetter {
    pub fn new(value: i64, color: u32) -> Self {
        assert!(color >= 1, "colors start at 1");
        ColoredLetter { value, color }
    }

    pub fn plain(value: i64) -> Self {
        ColoredLetter { value, color: 1 }
    }
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.value, self.color)
    }
}

impl FromStr for ColoredLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |e: String| Error::Parse(format!("bad colored letter {s:?}: {e}"));
        let (v, c) = match s.split_once('^') {
            Some((v, c)) => (v, c.trim().parse::<u32>().map_err(|e| bad(e.to_string()))?),
            None => (s, 1),
        };
        if c == 0 {
            return Err(bad("color must be at least 1".into()));
        }
        let value = v.trim().parse::<i64>().map_err(|e| bad(e.to_string()))?;
        Ok(ColoredLetter { value, color: c })
    }
}

/// A finite sequence of colored letters.
///
/// Words are ordered by length first and then lexicographically, which is
/// the canonical order for printing combinations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ColoredWord(pub Vec<ColoredLetter>);

impl ColoredWord {
    pub fn empty() -> Self {
        ColoredWord(Vec::new())
    }

    /// Embeds an uncolored word with every letter colored 1.
    pub fn plain(word: &[i64]) -> Self {
        ColoredWord(word.iter().map(|&v| ColoredLetter::plain(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.value).collect()
    }

    /// Largest color present, 0 for the empty word.
    pub fn max_color(&self) -> u32 {
        self.0.iter().map(|l| l.color).max().unwrap_or(0)
    }

    pub fn shift_colors(&self, by: u32) -> ColoredWord {
        ColoredWord(
            self.0
                .iter()
                .map(|l| ColoredLetter::new(l.value, l.color + by))
                .collect(),
        )
    }

    /// Shifts every value by `k`.
    pub fn shift_values(&self, k: i64) -> ColoredWord {
        ColoredWord(
            self.0
                .iter()
                .map(|l| ColoredLetter::new(l.value + k, l.color))
                .collect(),
        )
    }

    /// The word with its first letter removed.
    pub fn tail(&self) -> ColoredWord {
        ColoredWord(self.0[1..].to_vec())
    }
}

impl Ord for ColoredWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ColoredWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, l) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Parses `[1^1,2^2]`; bare integers have color 1.
impl FromStr for ColoredWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected a bracketed word, got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(ColoredWord::empty());
        }
        inner
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(ColoredWord)
    }
}

/// A finite integer combination of colored words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordCombo {
    terms: BTreeMap<ColoredWord, BigInt>,
}

impl WordCombo {
    pub fn zero() -> Self {
        WordCombo::default()
    }

    pub fn word(w: ColoredWord) -> Self {
        let mut c = WordCombo::zero();
        c.add_term(w, BigInt::one());
        c
    }

    /// The sum of the given uncolored words.
    pub fn from_plain_words<'a>(words: impl IntoIterator<Item = &'a Vec<i64>>) -> Self {
        let mut c = WordCombo::zero();
        for w in words {
            c.add_term(ColoredWord::plain(w), BigInt::one());
        }
        c
    }

    pub fn add_term(&mut self, w: ColoredWord, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, w: &ColoredWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Terms in canonical order: length, then lexicographic.
    pub fn terms(&self) -> impl Iterator<Item = (&ColoredWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Sum of all coefficients (the multiset size for nonnegative combos).
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: &BigInt) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }

    pub fn add(&self, other: &WordCombo) -> WordCombo {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WordCombo) -> WordCombo {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    /// Bilinear extension of the colored product.
    pub fn product(&self, other: &WordCombo) -> WordCombo {
        let mut out = WordCombo::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let ab = a * b;
                for (w, c) in colored_product(p, q).terms {
                    out.add_term(w, c * &ab);
                }
            }
        }
        out
    }

    /// Like [`WordCombo::product`] but refuses products whose shuffle count
    /// exceeds the term cap.
    pub fn product_limited(&self, other: &WordCombo, limits: &Limits) -> Result<WordCombo> {
        let mut count = 0u64;
        for p in self.terms.keys() {
            for q in other.terms.keys() {
                count = count.saturating_add(binomial(p.len() + q.len(), q.len()));
            }
        }
        limits.check_terms(count)?;
        Ok(self.product(other))
    }

    /// `T_b` for every maximal bottom row `b` present, zero sums dropped.
    pub fn fingerprint(&self) -> Fingerprint {
        let mut fp: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (w, c) in &self.terms {
            *fp.entry(max_bottom_row(w)).or_default() += c;
        }
        fp.retain(|_, c| !c.is_zero());
        fp
    }

    pub fn map_words(&self, f: impl Fn(&ColoredWord) -> ColoredWord) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }
}

impl fmt::Display for WordCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, (w, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "\"{w}\": {c}")?;
        }
        write!(f, "}}")
    }
}

/// Map from maximal bottom row `b` to `T_b`.
pub type Fingerprint = BTreeMap<Vec<i64>, BigInt>;

/// Whether two combinations are `≡`, i.e. agree on every `T_b`.
pub fn combos_equivalent(a: &WordCombo, b: &WordCombo) -> bool {
    a.fingerprint() == b.fingerprint()
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// Calls `visit` on every interleaving of `p` and `q`, once per choice of
/// positions (so coinciding letters are counted with multiplicity).
pub fn for_each_interleaving<T: Copy>(p: &[T], q: &[T], mut visit: impl FnMut(&[T])) {
    let n = p.len() + q.len();
    let mut buf: Vec<T> = Vec::with_capacity(n);
    fn rec<T: Copy>(p: &[T], q: &[T], buf: &mut Vec<T>, visit: &mut impl FnMut(&[T])) {
        if p.is_empty() && q.is_empty() {
            visit(buf);
            return;
        }
        if let Some((&x, rest)) = p.split_first() {
            buf.push(x);
            rec(rest, q, buf, visit);
            buf.pop();
        }
        if let Some((&y, rest)) = q.split_first() {
            buf.push(y);
            rec(p, rest, buf, visit);
            buf.pop();
        }
    }
    rec(p, q, &mut buf, &mut visit);
}

/// The plain shuffle product `p ⧢ q`.
pub fn shuffle(p: &ColoredWord, q: &ColoredWord) -> WordCombo {
    let mut counts: HashMap<Vec<ColoredLetter>, u64> = HashMap::new();
    for_each_interleaving(&p.0, &q.0, |w| *counts.entry(w.to_vec()).or_default() += 1);
    let mut out = WordCombo::zero();
    for (w, c) in counts {
        out.add_term(ColoredWord(w), BigInt::from(c));
    }
    out
}

/// `p · q = p ⧢ q↑maxcol(p)`.
pub fn colored_product(p: &ColoredWord, q: &ColoredWord) -> WordCombo {
    shuffle(p, &q.shift_colors(p.max_color()))
}

/// The maximal bottom row `m(t)` of a sequence of totally ordered letters.
///
/// Backward recursion: `m_k = val(t_k)`, and for `j < k`,
/// `m_j = m_{j+1}` if `t_j ≥ t_{j+1}`, else `min(val(t_j), m_{j+1} − 1)`.
pub fn max_bottom_row_by<T: Ord>(t: &[T], val: impl Fn(&T) -> i64) -> Vec<i64> {
    let k = t.len();
    let mut m = vec![0i64; k];
    if k == 0 {
        return m;
    }
    m[k - 1] = val(&t[k - 1]);
    for j in (0..k - 1).rev() {
        m[j] = if t[j] >= t[j + 1] {
            m[j + 1]
        } else {
            val(&t[j]).min(m[j + 1] - 1)
        };
    }
    m
}

pub fn max_bottom_row(t: &ColoredWord) -> Vec<i64> {
    max_bottom_row_by(&t.0, |l| l.value)
}

/// Maximal bottom row of an uncolored word.
pub fn max_bottom_row_plain(t: &[i64]) -> Vec<i64> {
    max_bottom_row_by(t, |&v| v)
}

/// All bottom rows of `t` with every entry at least `lower`, in
/// lexicographic order. The maximal element `m(t)` is always included.
pub fn bottom_rows(t: &ColoredWord, lower: i64) -> Result<Vec<Vec<i64>>> {
    let m = max_bottom_row(t);
    bottom_rows_below(&t.0, &m, lower, i64::MAX)
}

/// Bottom rows `b` of the top row `t` with `lower ≤ b_j ≤ min(m_j, upper)`.
pub(crate) fn bottom_rows_below<T: Ord>(
    t: &[T],
    m: &[i64],
    lower: i64,
    upper: i64,
) -> Result<Vec<Vec<i64>>> {
    if let Some(&first) = m.first() {
        if lower > first {
            return Err(Error::EmptyWindow { lower, min: first });
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m.len());
    fn rec<T: Ord>(
        t: &[T],
        m: &[i64],
        upper: i64,
        prev: i64,
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        let j = cur.len();
        if j == m.len() {
            out.push(cur.clone());
            return;
        }
        let strict = j > 0 && t[j - 1] < t[j];
        let start = if strict { prev + 1 } else { prev };
        let stop = m[j].min(upper);
        for b in start..=stop {
            cur.push(b);
            rec(t, m, upper, b, cur, out);
            cur.pop();
        }
    }
    rec(t, m, upper, lower, &mut cur, &mut out);
    Ok(out)
}

/// A top row together with one admissible bottom row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleSequence {
    pub top: ColoredWord,
    pub bottom: Vec<i64>,
}

pub fn compatible_sequences(t: &ColoredWord, lower: i64) -> Result<Vec<CompatibleSequence>> {
    Ok(bottom_rows(t, lower)?
        .into_iter()
        .map(|bottom| CompatibleSequence {
            top: t.clone(),
            bottom,
        })
        .collect())
}

/// `p ≡ q`.
pub fn equiv(p: &ColoredWord, q: &ColoredWord) -> bool {
    max_bottom_row(p) == max_bottom_row(q)
}

/// `T_b`: the coefficient sum over words with maximal bottom row `b`.
pub fn project_t(combo: &WordCombo, b: &[i64]) -> BigInt {
    combo
        .terms()
        .filter(|(w, _)| max_bottom_row(w) == b)
        .map(|(_, c)| c)
        .sum()
}

/// `P_b`: the restriction to words with maximal bottom row `b`.
pub fn project_p(combo: &WordCombo, b: &[i64]) -> WordCombo {
    let mut out = WordCombo::zero();
    for (w, c) in combo.terms() {
        if max_bottom_row(w) == b {
            out.add_term(w.clone(), c.clone());
        }
    }
    out
}

/// The maximal strictly increasing suffix, in the colored order.
pub fn colored_inc_suffix(p: &ColoredWord) -> ColoredWord {
    ColoredWord(p.0[inc_suffix_start(&p.0)..].to_vec())
}

/// `I_i(p)` in the colored order.
pub fn colored_i_i(p: &ColoredWord, i: i64) -> u64 {
    inc_suffix_len_gated(&p.0, |l| l.value, i)
}

pub(crate) fn inc_suffix_start<T: Ord>(t: &[T]) -> usize {
    if t.is_empty() {
        return 0;
    }
    let mut start = t.len() - 1;
    while start > 0 && t[start - 1] < t[start] {
        start -= 1;
    }
    start
}

/// Length of the increasing suffix when the last value is at most `i`.
pub(crate) fn inc_suffix_len_gated<T: Ord>(t: &[T], val: impl Fn(&T) -> i64, i: i64) -> u64 {
    match t.last() {
        Some(last) if val(last) <= i => (t.len() - inc_suffix_start(t)) as u64,
        _ => 0,
    }
}
