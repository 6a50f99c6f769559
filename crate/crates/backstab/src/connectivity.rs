//! Down-up move graphs on the supports of Schubert products.
//!
//! `w — w'` when `w t_{a,b} t_{c,d} = w'` with the first transposition
//! going down one step in length and the second coming back up. It is a
//! Monk move when `[a, b)` and `[c, d)` share a point `i`, which is exactly
//! when `w` and `w'` both occur in some `𝔖̄_u 𝔖̄_{s_i}`. A crossing move
//! additionally asks `a ≤ c < b ≤ d` or `c ≤ a < d ≤ b`; nested intervals
//! are Monk moves but not crossing ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Limits, Result};
use crate::perm::{symmetric_group, Permutation};
use crate::schubert::{back_stable_structure_constants, ordinary_structure_constants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    Bruhat,
    Monk,
    Crossing,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::Bruhat => "bruhat",
            MoveKind::Monk => "monk",
            MoveKind::Crossing => "crossing",
        })
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bruhat" => Ok(MoveKind::Bruhat),
            "monk" => Ok(MoveKind::Monk),
            "crossing" => Ok(MoveKind::Crossing),
            other => Err(Error::Parse(format!("unknown move kind {other:?}"))),
        }
    }
}

/// Every factorization `w2 = w t_{a,b} t_{c,d}` (`a < b`, `c < d`) with
/// `ℓ(w t_{a,b}) = ℓ(w) − 1` and `ℓ(w2) = ℓ(w)`.
///
/// `w⁻¹w2 = t_{a,b} t_{c,d}` moves every point of both transpositions
/// (the product is a 3-cycle or a pair of disjoint swaps), so `a, b` range
/// over the points moved by `w⁻¹w2`.
pub fn down_up_factorizations(w: &Permutation, w2: &Permutation) -> Vec<(i64, i64, i64, i64)> {
    if w == w2 || w.length() != w2.length() {
        return Vec::new();
    }
    let sigma = w.inverse().compose(w2);
    let points: Vec<i64> = sigma.moved().keys().copied().collect();
    if points.len() > 4 {
        return Vec::new();
    }
    let target = w.length();
    let mut out = Vec::new();
    for (j, &a) in points.iter().enumerate() {
        for &b in &points[j + 1..] {
            let down = w.compose(&Permutation::transposition(a, b));
            if down.length() + 1 != target {
                continue;
            }
            if let Some((c, d)) = as_transposition(&down.inverse().compose(w2)) {
                out.push((a, b, c, d));
            }
        }
    }
    out
}

fn crossing(&(a, b, c, d): &(i64, i64, i64, i64)) -> bool {
    (a <= c && c < b && b <= d) || (c <= a && a < d && d <= b)
}

fn overlapping(&(a, b, c, d): &(i64, i64, i64, i64)) -> bool {
    a.max(c) < b.min(d)
}

/// The strongest kind of down-up move from `w` to `w2`, if any.
pub fn down_up_move(w: &Permutation, w2: &Permutation) -> Option<MoveKind> {
    let f = down_up_factorizations(w, w2);
    if f.iter().any(crossing) {
        Some(MoveKind::Crossing)
    } else if f.iter().any(overlapping) {
        Some(MoveKind::Monk)
    } else if f.is_empty() {
        None
    } else {
        Some(MoveKind::Bruhat)
    }
}

fn as_transposition(p: &Permutation) -> Option<(i64, i64)> {
    let m = p.moved();
    if m.len() != 2 {
        return None;
    }
    let mut keys = m.keys();
    Some((*keys.next()?, *keys.next()?))
}

/// Whether the strongest move is at least as strong as `kind`; crossing
/// moves are Monk moves and Monk moves are Bruhat moves.
pub fn is_down_up_move(w: &Permutation, w2: &Permutation, kind: MoveKind) -> bool {
    down_up_move(w, w2).is_some_and(|k| k >= kind)
}

/// The candidates one move of `kind` away from `w`.
pub fn down_up_neighbors(
    w: &Permutation,
    candidates: &BTreeSet<Permutation>,
    kind: MoveKind,
) -> BTreeSet<Permutation> {
    candidates
        .iter()
        .filter(|c| is_down_up_move(w, c, kind))
        .cloned()
        .collect()
}

/// The Monk condition through structure constants: some `u` and `i` with
/// `c̄_{u,s_i}^w ≠ 0` and `c̄_{u,s_i}^{w2} ≠ 0`. Such a `u` covers neither
/// more nor less than a common lower cover of `w` and `w2`, and `i` must
/// be a letter of `w`.
pub fn monk_move_by_constants(w: &Permutation, w2: &Permutation, limits: &Limits) -> Result<bool> {
    if w == w2 || w.length() != w2.length() {
        return Ok(false);
    }
    let sigma = w.inverse().compose(w2);
    let points: Vec<i64> = sigma.moved().keys().copied().collect();
    if points.len() > 4 {
        return Ok(false);
    }
    let Some((lo, hi)) = w.letter_range() else {
        return Ok(false);
    };
    let mut lower = BTreeSet::new();
    for (j, &a) in points.iter().enumerate() {
        for &b in &points[j + 1..] {
            let u = w.compose(&Permutation::transposition(a, b));
            if u.length() + 1 == w.length() && u.inverse().compose(w2).moved().len() == 2 {
                lower.insert(u);
            }
        }
    }
    for u in &lower {
        for i in lo..=hi {
            let e = back_stable_structure_constants(u, &Permutation::simple(i), limits)?;
            if !e.coefficient(w).is_zero() && !e.coefficient(w2).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Vertices with each unordered pair labeled by its strongest move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveGraph {
    pub vertices: Vec<Permutation>,
    /// `(i, j) → strongest kind` for `i < j`.
    pub edges: BTreeMap<(usize, usize), MoveKind>,
}

impl MoveGraph {
    pub fn build(vertices: impl IntoIterator<Item = Permutation>) -> Self {
        let vertices: Vec<Permutation> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut edges = BTreeMap::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if let Some(k) = down_up_move(&vertices[i], &vertices[j]) {
                    edges.insert((i, j), k);
                }
            }
        }
        MoveGraph { vertices, edges }
    }

    pub fn edges_of(&self, kind: MoveKind) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges
            .iter()
            .filter(move |(_, &k)| k >= kind)
            .map(|(&e, _)| e)
    }

    /// Connected components under moves of `kind`, each sorted, ordered by
    /// first vertex.
    pub fn components(&self, kind: MoveKind) -> Vec<Vec<Permutation>> {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for (i, j) in self.edges_of(kind) {
            uf.union(i, j);
        }
        let mut groups: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(v.clone());
        }
        let mut out: Vec<Vec<Permutation>> = groups.into_values().collect();
        out.sort();
        out
    }
}

/// Connectivity of one support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub u: Permutation,
    pub v: Permutation,
    pub kind: MoveKind,
    pub back_stable: bool,
    pub components: Vec<Vec<Permutation>>,
    /// Monk edges on which `|BS(w) − BS(w')| ≤ 1` was checked.
    pub monk_edges: usize,
}

impl ConnectivityReport {
    pub fn connected(&self) -> bool {
        self.components.len() <= 1
    }
}

/// Builds the move graph on `{w : c_{u,v}^w ≠ 0}` (or the back-stable
/// version) and reports its components. Fails if some Monk edge changes
/// the back-stabilization number by more than one.
pub fn is_connected(
    u: &Permutation,
    v: &Permutation,
    kind: MoveKind,
    back_stable: bool,
    limits: &Limits,
) -> Result<ConnectivityReport> {
    let e = if back_stable {
        back_stable_structure_constants(u, v, limits)?
    } else {
        ordinary_structure_constants(u, v, limits)?
    };
    let graph = MoveGraph::build(e.support());
    let mut monk_edges = 0;
    for (i, j) in graph.edges_of(MoveKind::Monk) {
        let (a, b) = (&graph.vertices[i], &graph.vertices[j]);
        if (a.bs() - b.bs()).abs() > 1 {
            return Err(Error::Inconsistent(format!(
                "Monk edge {a} — {b} changes BS by more than one"
            )));
        }
        monk_edges += 1;
    }
    Ok(ConnectivityReport {
        u: u.clone(),
        v: v.clone(),
        kind,
        back_stable,
        components: graph.components(kind),
        monk_edges,
    })
}

/// Every pair of `S_n × S_n` for one kind and flavor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub n: i64,
    pub kind: MoveKind,
    pub back_stable: bool,
    pub reports: Vec<ConnectivityReport>,
}

impl ScanSummary {
    pub fn counterexamples(&self) -> impl Iterator<Item = &ConnectivityReport> {
        self.reports.iter().filter(|r| !r.connected())
    }

    pub fn monk_edges(&self) -> usize {
        self.reports.iter().map(|r| r.monk_edges).sum()
    }
}

pub fn conjecture_scan(
    n: i64,
    kind: MoveKind,
    back_stable: bool,
    limits: &Limits,
) -> Result<ScanSummary> {
    let all = symmetric_group(n);
    let pairs: Vec<(&Permutation, &Permutation)> = all
        .iter()
        .flat_map(|u| all.iter().map(move |v| (u, v)))
        .collect();
    let reports = pairs
        .into_par_iter()
        .map(|(u, v)| is_connected(u, v, kind, back_stable, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanSummary {
        n,
        kind,
        back_stable,
        reports,
    })
}
