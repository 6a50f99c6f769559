//! Permutations of ℤ with finite support.
//!
//! A [`Permutation`] stores only its moved points, so shifting by any amount
//! costs time proportional to the support. Composition is function
//! composition: `u.compose(&v)` maps `i` to `u(v(i))`, and right
//! multiplication by the simple transposition `s_i` swaps the one-line
//! entries at positions `i` and `i + 1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection ℤ → ℤ moving finitely many points.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    moved: BTreeMap<i64, i64>,
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation::default()
    }

    /// The simple transposition exchanging `i` and `i + 1`.
    pub fn simple(i: i64) -> Self {
        Permutation::transposition(i, i + 1)
    }

    /// The transposition exchanging `a` and `b` (identity when `a == b`).
    pub fn transposition(a: i64, b: i64) -> Self {
        let mut moved = BTreeMap::new();
        if a != b {
            moved.insert(a, b);
            moved.insert(b, a);
        }
        Permutation { moved }
    }

    /// Builds `w` with `w(offset + j) = values[j]`, fixing everything else.
    pub fn from_one_line(offset: i64, values: &[i64]) -> Result<Self> {
        let len = values.len() as i64;
        let hi = offset + len - 1;
        let mut seen = BTreeSet::new();
        for &v in values {
            if v < offset || v > hi {
                return Err(Error::NotABijection(format!(
                    "value {v} is outside the window {offset}..={hi}"
                )));
            }
            if !seen.insert(v) {
                let missing = (offset..=hi).find(|x| !values.contains(x));
                let detail = match missing {
                    Some(m) => format!("value {v} appears twice and {m} is missing"),
                    None => format!("value {v} appears twice"),
                };
                return Err(Error::NotABijection(detail));
            }
        }
        let moved = values
            .iter()
            .enumerate()
            .map(|(j, &v)| (offset + j as i64, v))
            .filter(|(i, v)| i != v)
            .collect();
        Ok(Permutation { moved })
    }

    /// Builds a permutation from a map of images, dropping fixed points.
    pub fn from_map(map: BTreeMap<i64, i64>) -> Result<Self> {
        let keys: BTreeSet<i64> = map.keys().copied().collect();
        let values: BTreeSet<i64> = map.values().copied().collect();
        if values.len() != map.len() || keys != values {
            return Err(Error::NotABijection(
                "images do not permute the listed positions".into(),
            ));
        }
        Ok(Permutation {
            moved: map.into_iter().filter(|(i, v)| i != v).collect(),
        })
    }

    /// Decodes a Lehmer code given as a sparse map `position → c_i`.
    pub fn from_code(code: &BTreeMap<i64, u64>) -> Self {
        let nonzero: Vec<(i64, u64)> = code
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&i, &c)| (i, c))
            .collect();
        let (Some(&(lo, _)), Some(&(last, _))) = (nonzero.first(), nonzero.last()) else {
            return Permutation::identity();
        };
        let max_c = nonzero.iter().map(|&(_, c)| c).max().unwrap_or(0) as i64;
        let hi = last + max_c;
        let mut free: Vec<i64> = (lo..=hi).collect();
        let mut moved = BTreeMap::new();
        for i in lo..=hi {
            let c = code.get(&i).copied().unwrap_or(0) as usize;
            let v = free.remove(c);
            if v != i {
                moved.insert(i, v);
            }
        }
        Permutation { moved }
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// The moved points as a map `i → w(i)`.
    pub fn moved(&self) -> &BTreeMap<i64, i64> {
        &self.moved
    }

    pub fn apply(&self, i: i64) -> i64 {
        self.moved.get(&i).copied().unwrap_or(i)
    }

    /// Smallest and largest moved position, or `None` for the identity.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        let lo = *self.moved.keys().next()?;
        let hi = *self.moved.keys().next_back()?;
        Some((lo, hi))
    }

    /// One-line values on the window `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).map(|i| self.apply(i)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut moved = BTreeMap::new();
        for &i in self.moved.keys().chain(other.moved.keys()) {
            let v = self.apply(other.apply(i));
            if v != i {
                moved.insert(i, v);
            }
        }
        Permutation { moved }
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            moved: self.moved.iter().map(|(&i, &v)| (v, i)).collect(),
        }
    }

    /// `w s_i`: swaps the one-line entries at `i` and `i + 1`.
    pub fn mul_simple_right(&self, i: i64) -> Permutation {
        let (a, b) = (self.apply(i), self.apply(i + 1));
        let mut moved = self.moved.clone();
        set_image(&mut moved, i, b);
        set_image(&mut moved, i + 1, a);
        Permutation { moved }
    }

    /// `s_i w`: swaps the values `i` and `i + 1`.
    pub fn mul_simple_left(&self, i: i64) -> Permutation {
        Permutation::simple(i).compose(self)
    }

    /// Number of inversions. Positions outside the moved window never
    /// participate in an inversion.
    pub fn length(&self) -> u64 {
        let Some((lo, hi)) = self.bounds() else {
            return 0;
        };
        let vals = self.window(lo, hi);
        let mut inv = 0u64;
        for a in 0..vals.len() {
            for b in a + 1..vals.len() {
                if vals[a] > vals[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Right descents `{i : w(i) > w(i+1)}`.
    pub fn descents(&self) -> BTreeSet<i64> {
        let Some((lo, hi)) = self.bounds() else {
            return BTreeSet::new();
        };
        (lo..hi)
            .filter(|&i| self.apply(i) > self.apply(i + 1))
            .collect()
    }

    pub fn has_descent(&self, i: i64) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    /// Left descents `{k : ℓ(s_k w) < ℓ(w)}`, the descents of `w⁻¹`.
    pub fn left_descents(&self) -> BTreeSet<i64> {
        self.inverse().descents()
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`, nonzero entries only.
    pub fn code(&self) -> BTreeMap<i64, u64> {
        let Some((lo, hi)) = self.bounds() else {
            return BTreeMap::new();
        };
        let vals = self.window(lo, hi);
        let mut code = BTreeMap::new();
        for a in 0..vals.len() {
            let c = vals[a + 1..].iter().filter(|&&x| x < vals[a]).count() as u64;
            if c > 0 {
                code.insert(lo + a as i64, c);
            }
        }
        code
    }

    /// Dual code `d_i = #{j < i : w(j) > w(i)}`, nonzero entries only.
    pub fn dual_code(&self) -> BTreeMap<i64, u64> {
        let Some((lo, hi)) = self.bounds() else {
            return BTreeMap::new();
        };
        let vals = self.window(lo, hi);
        let mut code = BTreeMap::new();
        for a in 0..vals.len() {
            let d = vals[..a].iter().filter(|&&x| x > vals[a]).count() as u64;
            if d > 0 {
                code.insert(lo + a as i64, d);
            }
        }
        code
    }

    pub fn code_profile(&self) -> CodeProfile {
        CodeProfile {
            code: self.code(),
            dual_code: self.dual_code(),
        }
    }

    /// `γ^k(w)`, where `γ(w)(i) = w(i − 1) + 1`.
    pub fn gamma(&self, k: i64) -> Permutation {
        Permutation {
            moved: self.moved.iter().map(|(&i, &v)| (i + k, v + k)).collect(),
        }
    }

    /// Conjugation by the flip `i ↦ 1 − i`; sends `s_i` to `s_{−i}`.
    pub fn iota(&self) -> Permutation {
        Permutation {
            moved: self.moved.iter().map(|(&i, &v)| (1 - i, 1 - v)).collect(),
        }
    }

    /// `w₀ w w₀` for the longest element `w₀` of `S_n`.
    pub fn w0_conjugate(&self, n: i64) -> Result<Permutation> {
        if !self.is_in_sn(n) {
            return Err(Error::OutOfWindow {
                what: format!("permutation {self}"),
                lo: 1,
                hi: n,
            });
        }
        Ok(self.iota().gamma(n))
    }

    /// Whether every moved point is positive.
    pub fn is_positive(&self) -> bool {
        self.bounds().is_none_or(|(lo, _)| lo >= 1)
    }

    /// Whether `w` permutes `{1, …, n}` and fixes everything else.
    pub fn is_in_sn(&self, n: i64) -> bool {
        self.bounds().is_none_or(|(lo, hi)| lo >= 1 && hi <= n)
    }

    /// Smallest and largest letter used by the reduced words of `w`.
    ///
    /// Letter `i` occurs iff `w` does not preserve `{…, i − 1, i}`, so the
    /// extremes are the first moved position and one less than the last.
    pub fn letter_range(&self) -> Option<(i64, i64)> {
        self.bounds().map(|(lo, hi)| (lo, hi - 1))
    }

    /// Back-stabilization number of a single permutation: the least `k ≥ 0`
    /// with `γ^k(w)` fixing every nonpositive integer.
    pub fn bs(&self) -> i64 {
        match self.code().keys().next() {
            Some(&first) => (1 - first).max(0),
            None => 0,
        }
    }

    /// The least `k` with `γ^k(w)` fixing every nonpositive integer (may be
    /// negative); 0 for the identity.
    pub fn bs_tilde(&self) -> i64 {
        self.letter_range().map_or(0, |(lo, _)| 1 - lo)
    }

    /// `1 + max` letter of any reduced word; 0 for the identity.
    pub fn fs_tilde(&self) -> i64 {
        self.letter_range().map_or(0, |(_, hi)| 1 + hi)
    }

    /// Least `n ≥ 1` with `w ∈ S_n`, for `w` fixing the nonpositive integers.
    pub fn fs(&self) -> i64 {
        self.bounds().map_or(1, |(_, hi)| hi.max(1))
    }

    /// The canonical one-line window: from `min(1, first moved)` to the last
    /// moved position (a single entry for the identity).
    pub fn canonical_window(&self) -> (i64, Vec<i64>) {
        match self.bounds() {
            None => (1, vec![1]),
            Some((lo, hi)) => {
                let lo = lo.min(1);
                (lo, self.window(lo, hi))
            }
        }
    }
}

/// All of `S_n` in lexicographic one-line order.
pub fn symmetric_group(n: i64) -> Vec<Permutation> {
    fn rec(n: i64, cur: &mut Vec<i64>, out: &mut Vec<Permutation>) {
        if cur.len() as i64 == n {
            out.push(Permutation::from_one_line(1, cur).expect("distinct values"));
            return;
        }
        for v in 1..=n {
            if !cur.contains(&v) {
                cur.push(v);
                rec(n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n.max(0), &mut Vec::new(), &mut out);
    out
}

fn set_image(moved: &mut BTreeMap<i64, i64>, i: i64, v: i64) {
    if i == v {
        moved.remove(&i);
    } else {
        moved.insert(i, v);
    }
}

/// Permutations are ordered lexicographically by their one-line notation
/// read from −∞ upward.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        let lo = self.moved.keys().chain(other.moved.keys()).min();
        let hi = self.moved.keys().chain(other.moved.keys()).max();
        let (Some(&lo), Some(&hi)) = (lo, hi) else {
            return Ordering::Equal;
        };
        for i in lo..=hi {
            match self.apply(i).cmp(&other.apply(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (offset, values) = self.canonical_window();
        write!(f, "{offset}:[")?;
        for (j, v) in values.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `offset:[v1,…,vk]`; a bare `[v1,…,vk]` means offset 1.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (offset, list) = match s.split_once(':') {
            Some((o, rest)) => {
                let o = o
                    .trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad offset in {s:?}: {e}")))?;
                (o, rest)
            }
            None => (1, s),
        };
        let values = parse_int_list(list)?;
        Permutation::from_one_line(offset, &values)
    }
}

/// Parses `[a,b,c]` into integers; whitespace is ignored.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

/// Lehmer code, dual code, and the indicator and cumulative profiles
/// derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeProfile {
    pub code: BTreeMap<i64, u64>,
    pub dual_code: BTreeMap<i64, u64>,
}

impl CodeProfile {
    pub fn c(&self, i: i64) -> u64 {
        self.code.get(&i).copied().unwrap_or(0)
    }

    pub fn d(&self, i: i64) -> u64 {
        self.dual_code.get(&i).copied().unwrap_or(0)
    }

    /// `θ_i = [c_i > 0]`.
    pub fn theta(&self, i: i64) -> u64 {
        u64::from(self.c(i) > 0)
    }

    /// `Θ_i = [d_i > 0]`.
    pub fn big_theta(&self, i: i64) -> u64 {
        u64::from(self.d(i) > 0)
    }

    /// `λ_i = #{j ≤ i : c_j > 0}`.
    pub fn lambda(&self, i: i64) -> u64 {
        self.code.range(..=i).count() as u64
    }

    /// `Λ_i = #{j ≥ i : d_j > 0}`.
    pub fn big_lambda(&self, i: i64) -> u64 {
        self.dual_code.range(i..).count() as u64
    }

    /// `λ_∞`, the number of nonzero code entries.
    pub fn lambda_total(&self) -> u64 {
        self.code.len() as u64
    }
}
