//! Key polynomials through nilplactic combinatorics.
//!
//! A key polynomial is a sum of slide polynomials over a nilplactic class
//! of reduced words. The class is picked out by a witness tableau whose
//! left nil key has the requested content. Classical key polynomials, built
//! with isobaric divided differences, serve as the independent check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::colored::{ColoredWord, Fingerprint, WordCombo};
use crate::error::{Error, Limits, Result};
use crate::operators::xi_word;
use crate::perm::Permutation;
use crate::poly::SparsePoly;
use crate::schubert::{schubert_vector, slide_polynomial};
use crate::words::{format_word, is_reduced, reduced_words, word_to_perm, Word};

/// A composition with finitely many nonzero parts, indexed by integer
/// positions. Zero parts are not stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Composition {
    parts: BTreeMap<i64, u64>,
}

impl Composition {
    pub fn new(parts: impl IntoIterator<Item = (i64, u64)>) -> Self {
        Composition {
            parts: parts.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }

    /// Parts listed from position 1.
    pub fn from_slice(parts: &[u64]) -> Self {
        Composition::new(parts.iter().enumerate().map(|(j, &m)| (j as i64 + 1, m)))
    }

    pub fn get(&self, i: i64) -> u64 {
        self.parts.get(&i).copied().unwrap_or(0)
    }

    pub fn parts(&self) -> &BTreeMap<i64, u64> {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.parts.keys().all(|&i| i >= 1)
    }

    pub fn min_position(&self) -> Option<i64> {
        self.parts.keys().next().copied()
    }

    pub fn max_position(&self) -> Option<i64> {
        self.parts.keys().next_back().copied()
    }

    pub fn gamma(&self, k: i64) -> Composition {
        Composition::new(self.parts.iter().map(|(&i, &m)| (i + k, m)))
    }

    /// `α − δ_i`, or `None` if the part at `i` is zero.
    pub fn minus_delta(&self, i: i64) -> Option<Composition> {
        let m = self.get(i);
        if m == 0 {
            return None;
        }
        let mut out = self.clone();
        if m == 1 {
            out.parts.remove(&i);
        } else {
            out.parts.insert(i, m - 1);
        }
        Some(out)
    }

    /// Parts sorted into a partition.
    pub fn sorted_parts(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.values().map(|&m| m as usize).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// `η(α)`: nonzero positions whose part value does not occur at any
    /// earlier position.
    pub fn eta(&self) -> Vec<i64> {
        let mut seen = BTreeSet::new();
        self.parts
            .iter()
            .filter(|&(_, &m)| seen.insert(m))
            .map(|(&i, _)| i)
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, (i, m)) in self.parts.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{m}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// `{pos:mult, ...}`, or a bracketed list `[a1,a2,...]` read from
    /// position 1.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad composition {s:?}"));
        if let Some(body) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let mut parts = BTreeMap::new();
            for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (i, m) = item.split_once(':').ok_or_else(bad)?;
                let i: i64 = i.trim().parse().map_err(|_| bad())?;
                let m: u64 = m.trim().parse().map_err(|_| bad())?;
                if parts.insert(i, m).is_some() {
                    return Err(bad());
                }
            }
            return Ok(Composition::new(parts));
        }
        let body = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Composition::from_slice(&parts))
    }
}

/// A filling of a Ferrers shape, rows listed top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Tableau {
    rows: Vec<Vec<i64>>,
}

impl Tableau {
    pub fn empty() -> Self {
        Tableau::default()
    }

    /// Checks the shape, weak increase along rows and strict increase down
    /// columns.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let rows: Vec<Vec<i64>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        for (r, row) in rows.iter().enumerate() {
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::Parse(format!("row {r} is not weakly increasing")));
            }
            if r > 0 {
                let above = &rows[r - 1];
                if row.len() > above.len() {
                    return Err(Error::Parse("rows do not form a Ferrers shape".into()));
                }
                if row.iter().zip(above).any(|(b, a)| a >= b) {
                    return Err(Error::Parse(format!("column strictness fails in row {r}")));
                }
            }
        }
        Ok(Tableau { rows })
    }

    /// Builds a tableau from columns listed left to right, each top to
    /// bottom.
    pub fn from_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let height = columns.iter().map(Vec::len).max().unwrap_or(0);
        let rows = (0..height)
            .map(|r| columns.iter().filter_map(|c| c.get(r).copied()).collect())
            .collect();
        Tableau::new(rows)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn conjugate_shape(&self) -> Vec<usize> {
        conjugate(&self.shape())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Columns left to right, each read top to bottom.
    pub fn columns(&self) -> Vec<Vec<i64>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect())
            .collect()
    }

    /// Rows from the bottom up, each left to right.
    pub fn row_word(&self) -> Word {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// Columns from left to right, each bottom to top.
    pub fn column_word(&self) -> Word {
        self.columns()
            .into_iter()
            .flat_map(|c| c.into_iter().rev())
            .collect()
    }

    pub fn content(&self) -> Composition {
        let mut parts = BTreeMap::new();
        for &x in self.rows.iter().flatten() {
            *parts.entry(x).or_insert(0u64) += 1;
        }
        Composition::new(parts)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (j, r) in self.rows.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_word(r))?;
        }
        write!(f, "]")
    }
}

pub fn conjugate(shape: &[usize]) -> Vec<usize> {
    let width = shape.first().copied().unwrap_or(0);
    (0..width)
        .map(|j| shape.iter().filter(|&&len| len > j).count())
        .collect()
}

/// Words one nilplactic move away from `w`: the braid move
/// `i,i+1,i ~ i+1,i,i+1`, `xzy ~ zxy` and `yxz ~ yzx` for `x < y < z`.
fn nilplactic_neighbors(w: &[i64]) -> Vec<Word> {
    let mut out = Vec::new();
    for j in 0..w.len().saturating_sub(2) {
        let (a, b, c) = (w[j], w[j + 1], w[j + 2]);
        let mut push = |t: [i64; 3]| {
            let mut v = w.to_vec();
            v[j..j + 3].copy_from_slice(&t);
            out.push(v);
        };
        if a == c && (b - a).abs() == 1 {
            push([b, a, b]);
        }
        if a.min(b) < c && c < a.max(b) {
            push([b, a, c]);
        }
        if b.min(c) < a && a < b.max(c) {
            push([a, c, b]);
        }
    }
    out
}

/// The nilplactic class of a reduced word, by breadth-first search.
pub fn nilplactic_class(word: &[i64], limits: &Limits) -> Result<BTreeSet<Word>> {
    if !is_reduced(word) {
        return Err(Error::NotReduced(format_word(word)));
    }
    let target = word_to_perm(word);
    let mut seen: BTreeSet<Word> = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for n in nilplactic_neighbors(&w) {
            if !seen.contains(&n) {
                limits.check_words(seen.len() as u64 + 1)?;
                seen.insert(n.clone());
                queue.push_back(n);
            }
        }
    }
    if let Some(bad) = seen.iter().find(|v| word_to_perm(v) != target) {
        return Err(Error::Inconsistent(format!(
            "nilplactic move left the permutation of {}: {}",
            format_word(word),
            format_word(bad)
        )));
    }
    Ok(seen)
}

pub fn nilplactic_equivalent(a: &[i64], b: &[i64], limits: &Limits) -> Result<bool> {
    if a.len() != b.len() || !is_reduced(b) || word_to_perm(a) != word_to_perm(b) {
        return Ok(false);
    }
    Ok(nilplactic_class(a, limits)?.contains(b))
}

/// Edelman–Greene insertion of one letter into strictly increasing rows.
fn insert_letter(rows: &mut Vec<Vec<i64>>, mut x: i64) {
    for row in rows.iter_mut() {
        match row.iter().position(|&y| y > x) {
            None => {
                row.push(x);
                return;
            }
            Some(j) => {
                let y = row[j];
                if y == x + 1 && j > 0 && row[j - 1] == x {
                    // The row keeps x and x+1; x+1 moves down.
                } else {
                    row[j] = x;
                }
                x = y;
            }
        }
    }
    rows.push(vec![x]);
}

/// `(T ← v)`: inserts the letters of `v` into `T` one at a time.
pub fn row_insert(t: &Tableau, v: &[i64]) -> Result<Tableau> {
    let mut full = t.row_word();
    full.extend_from_slice(v);
    if !is_reduced(&full) {
        return Err(Error::NotReduced(format_word(&full)));
    }
    let mut rows = t.rows.clone();
    for &x in v {
        insert_letter(&mut rows, x);
    }
    let p = Tableau::new(rows)?;
    debug_assert!(
        nilplactic_equivalent(&full, &p.row_word(), &Limits::default()).unwrap_or(true),
        "row word of the insertion tableau left the class of {}",
        format_word(&full)
    );
    Ok(p)
}

pub fn insertion_tableau(v: &[i64]) -> Result<Tableau> {
    row_insert(&Tableau::empty(), v)
}

/// Lengths of the maximal strictly decreasing factors of `v`.
pub fn column_form(v: &[i64]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut len = 0;
    for (j, &x) in v.iter().enumerate() {
        if j > 0 && v[j - 1] > x {
            len += 1;
        } else {
            if len > 0 {
                out.push(len);
            }
            len = 1;
        }
    }
    if len > 0 {
        out.push(len);
    }
    out
}

/// Whether the column form of `v` rearranges the column lengths of its
/// insertion tableau.
pub fn is_column_frank(v: &[i64]) -> Result<bool> {
    let shape = insertion_tableau(v)?.conjugate_shape();
    Ok(is_frank_for(v, &shape))
}

fn is_frank_for(v: &[i64], columns: &[usize]) -> bool {
    let mut a = column_form(v);
    let mut b = columns.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// `K₋(P)`: column `j` is the first column of any column-frank word in the
/// class of `P` whose column form starts with the `j`-th column length.
/// Every such witness is checked to agree.
pub fn left_nil_key(p: &Tableau, limits: &Limits) -> Result<Tableau> {
    let word = p.column_word();
    let columns = insertion_tableau(&word)?.conjugate_shape();
    let class = nilplactic_class(&word, limits)?;
    let mut first_column: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
    for v in class
        .iter()
        .filter(|v| !v.is_empty() && is_frank_for(v, &columns))
    {
        let len = column_form(v)[0];
        let mut col = v[..len].to_vec();
        col.reverse();
        if let Some(prev) = first_column.insert(len, col.clone()) {
            if prev != col {
                return Err(Error::Inconsistent(format!(
                    "left nil key of {p} is ambiguous in a column of length {len}"
                )));
            }
        }
    }
    let key_columns = columns
        .iter()
        .map(|len| {
            first_column.get(len).cloned().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "no column-frank word of {p} starts with {len} letters"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Tableau::from_columns(&key_columns)
}

/// A tableau `P` with reduced column word, equal to the insertion tableau
/// of that word, whose left nil key has content `α`. The first column of
/// `P` is forced to be the support of `α`; the other entries range up to
/// the largest position plus `|α|`. Candidates are tried in row-major
/// lexicographic order.
pub fn witness_tableau(alpha: &Composition, limits: &Limits) -> Result<Tableau> {
    let Some(top) = alpha.max_position() else {
        return Ok(Tableau::empty());
    };
    let hi = top + alpha.size() as i64;
    let shape = alpha.sorted_parts();
    let first: Vec<i64> = alpha.parts().keys().copied().collect();
    let mut rows: Vec<Vec<i64>> = first.iter().map(|&x| vec![x]).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (1..len).map(move |c| (r, c)))
        .collect();

    struct Search<'a> {
        alpha: &'a Composition,
        cells: &'a [(usize, usize)],
        hi: i64,
        limits: &'a Limits,
    }

    fn fill(s: &Search, k: usize, rows: &mut Vec<Vec<i64>>) -> Result<Option<Tableau>> {
        if k == s.cells.len() {
            let p = Tableau { rows: rows.clone() };
            let word = p.column_word();
            if !is_reduced(&word) || insertion_tableau(&word)? != p {
                return Ok(None);
            }
            let key = left_nil_key(&p, s.limits)?;
            return Ok((key.content() == *s.alpha).then_some(p));
        }
        let (r, c) = s.cells[k];
        let left = rows[r][c - 1];
        let above = if r > 0 { rows[r - 1][c] } else { i64::MIN };
        for x in (left + 1).max(above + 1)..=s.hi {
            rows[r].push(x);
            let found = fill(s, k + 1, rows)?;
            rows[r].pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    let search = Search {
        alpha,
        cells: &cells,
        hi,
        limits,
    };
    fill(&search, 0, &mut rows)?.ok_or_else(|| Error::NoWitnessTableau(alpha.to_string()))
}

/// `κ̄_α` as a word combination: the reverses of the words in the
/// nilplactic class of a witness tableau.
pub fn back_stable_key(alpha: &Composition, limits: &Limits) -> Result<WordCombo> {
    let p = witness_tableau(alpha, limits)?;
    key_combo_of(&p, limits)
}

fn key_combo_of(p: &Tableau, limits: &Limits) -> Result<WordCombo> {
    let class = nilplactic_class(&p.column_word(), limits)?;
    let reversed: Vec<Word> = class
        .into_iter()
        .map(|mut v| {
            v.reverse();
            v
        })
        .collect();
    Ok(WordCombo::from_plain_words(&reversed))
}

/// Sum of the slide polynomials of a word combination with bottom entries
/// in `lo..=hi`.
pub fn combo_polynomial(combo: &WordCombo, lo: i64, hi: i64) -> SparsePoly {
    let mut p = SparsePoly::zero(lo, hi);
    for (w, c) in combo.terms() {
        p = p.add(&slide_polynomial(&w.values(), lo, hi).scale(c));
    }
    p
}

fn positive_window(alpha: &Composition) -> Result<i64> {
    if !alpha.is_positive() {
        return Err(Error::NotPositive(alpha.to_string()));
    }
    Ok(alpha.max_position().unwrap_or(1))
}

/// `κ_α` from the slide formula, truncated to positive bottom entries.
pub fn key_polynomial_slides(alpha: &Composition, limits: &Limits) -> Result<SparsePoly> {
    let n = positive_window(alpha)?;
    let combo = back_stable_key(alpha, limits)?;
    let top = combo
        .terms()
        .flat_map(|(w, _)| w.values())
        .max()
        .unwrap_or(n)
        .max(n);
    combo_polynomial(&combo, 1, top).reindex(1, n)
}

/// `κ_α` by isobaric divided differences: `κ_α = π_i κ_{s_i α}` whenever
/// `α_i < α_{i+1}`, and `κ_λ = x^λ` for a partition `λ`.
pub fn key_polynomial_dd(alpha: &Composition) -> Result<SparsePoly> {
    let n = positive_window(alpha)?;
    let mut a: Vec<u64> = (1..=n).map(|i| alpha.get(i)).collect();
    let mut steps = Vec::new();
    while let Some(j) = (0..a.len().saturating_sub(1)).find(|&j| a[j] < a[j + 1]) {
        a.swap(j, j + 1);
        steps.push(j as i64 + 1);
    }
    let exps = a
        .iter()
        .enumerate()
        .map(|(j, &e)| (j as i64 + 1, e as u32))
        .collect();
    let mut p = SparsePoly::monomial(1, n, &exps)?;
    for &i in steps.iter().rev() {
        p = p.isobaric_difference(i)?;
    }
    Ok(p)
}

/// One nilplactic class of `RW(w)` with its key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyTerm {
    pub alpha: Composition,
    /// Insertion tableau of the reversed words of the class.
    pub tableau: Tableau,
    pub words: BTreeSet<Word>,
}

/// Splits `RW(w)` by the insertion tableau of the reversed word; each
/// class contributes `κ̄_α` with `α` the content of the left nil key. The
/// classes' combined slide combination equals `Sch(w)` and each class has
/// the fingerprint of the witness-based `κ̄_α`.
pub fn schubert_key_expansion(w: &Permutation, limits: &Limits) -> Result<Vec<KeyTerm>> {
    let rw = reduced_words(w, limits)?;
    let mut classes: BTreeMap<Tableau, BTreeSet<Word>> = BTreeMap::new();
    for a in &rw.words {
        let rev: Word = a.iter().rev().copied().collect();
        classes
            .entry(insertion_tableau(&rev)?)
            .or_default()
            .insert(a.clone());
    }
    let mut total = WordCombo::zero();
    let mut out = Vec::new();
    for (tableau, words) in classes {
        let alpha = left_nil_key(&tableau, limits)?.content();
        let combo = WordCombo::from_plain_words(&words);
        if combo.fingerprint() != back_stable_key(&alpha, limits)?.fingerprint() {
            return Err(Error::Inconsistent(format!(
                "class of {tableau} in RW({w}) differs from the key {alpha}"
            )));
        }
        total = total.add(&combo);
        out.push(KeyTerm {
            alpha,
            tableau,
            words,
        });
    }
    if total != schubert_vector(w, limits)? {
        return Err(Error::Inconsistent(format!(
            "key classes do not cover RW({w})"
        )));
    }
    Ok(out)
}

/// Both sides of `ξ(κ̄_α) = Σ_{i ∈ η(α)} κ̄_{α − δ_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiKeyReport {
    pub alpha: Composition,
    pub lhs: Fingerprint,
    pub rhs: Fingerprint,
}

impl XiKeyReport {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn xi_key_conjecture_check(alpha: &Composition, limits: &Limits) -> Result<XiKeyReport> {
    let lhs = xi_word(&back_stable_key(alpha, limits)?).fingerprint();
    let mut rhs_combo = WordCombo::zero();
    for i in alpha.eta() {
        if let Some(smaller) = alpha.minus_delta(i) {
            rhs_combo = rhs_combo.add(&back_stable_key(&smaller, limits)?);
        }
    }
    Ok(XiKeyReport {
        alpha: alpha.clone(),
        lhs,
        rhs: rhs_combo.fingerprint(),
    })
}

/// All compositions supported in positions `1..=n` with size at most
/// `max_size`, the empty one included.
pub fn compositions_up_to(n: i64, max_size: u64) -> Vec<Composition> {
    fn rec(pos: i64, n: i64, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Composition>) {
        if pos > n {
            out.push(Composition::from_slice(cur));
            return;
        }
        for m in 0..=left {
            cur.push(m);
            rec(pos + 1, n, left - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, max_size, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Rank of the fingerprints as vectors indexed by bottom row, by
/// fraction-free elimination.
pub fn fingerprint_rank(fps: &[Fingerprint]) -> usize {
    let keys: BTreeSet<&Vec<i64>> = fps.iter().flat_map(|f| f.keys()).collect();
    let mut m: Vec<Vec<BigInt>> = fps
        .iter()
        .map(|f| {
            keys.iter()
                .map(|k| f.get(*k).cloned().unwrap_or_default())
                .collect()
        })
        .collect();
    let cols = keys.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].abs();
        rank += 1;
    }
    rank
}

/// Shifts every letter of a word combination by `k`.
pub fn shift_combo(combo: &WordCombo, k: i64) -> WordCombo {
    combo.map_words(|w: &ColoredWord| w.shift_values(k))
}
