//! Back- and forward-stabilization numbers of Schubert products.
//!
//! Each closed formula has a brute-force counterpart computed from actual
//! structure constants, so the two can be compared pair by pair.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::colored::inc_suffix_len_gated;
use crate::error::{Error, Limits, Result};
use crate::perm::{symmetric_group, Permutation};
use crate::schubert::{
    back_stable_structure_constants, for_each_product_word, ordinary_structure_constants,
    ordinary_structure_constants_by_words,
};

fn require_positive(w: &Permutation) -> Result<()> {
    if w.is_positive() {
        Ok(())
    } else {
        Err(Error::NotPositive(w.to_string()))
    }
}

/// Past the last nonzero code position of either factor, `λ_i(u) + λ_i(v)`
/// is constant, so `λ_i(u) + λ_i(v) − i` only decreases from there on.
fn lambda_horizon(u: &Permutation, v: &Permutation) -> i64 {
    let last = |w: &Permutation| w.code().keys().next_back().copied().unwrap_or(0);
    last(u).max(last(v))
}

fn lambda_sum(u: &Permutation, v: &Permutation, i: i64) -> i64 {
    (u.code_profile().lambda(i) + v.code_profile().lambda(i)) as i64
}

fn big_lambda_sum(u: &Permutation, v: &Permutation, i: i64) -> i64 {
    (u.code_profile().big_lambda(i) + v.code_profile().big_lambda(i)) as i64
}

/// `BS(u,v) = max_{0 ≤ i ≤ max(fs u, fs v)} (λ_i(u) + λ_i(v) − i)`.
pub fn bs_formula(u: &Permutation, v: &Permutation) -> i64 {
    (0..=u.fs().max(v.fs()))
        .map(|i| lambda_sum(u, v, i) - i)
        .max()
        .unwrap_or(0)
}

/// The identity is stable under every shift, so it does not constrain the
/// ranges of the tilde formulas; `None` when both factors are the identity.
fn non_identity_max(u: &Permutation, v: &Permutation, f: fn(&Permutation) -> i64) -> Option<i64> {
    [u, v].into_iter().filter(|w| !w.is_identity()).map(f).max()
}

/// `max_{i ≥ −a} (λ_i(u) + λ_i(v) − i)` with `a = max(BS̃ u, BS̃ v)`.
pub fn tilde_bs_formula(u: &Permutation, v: &Permutation) -> i64 {
    let Some(a) = non_identity_max(u, v, Permutation::bs_tilde) else {
        return 0;
    };
    (-a..=lambda_horizon(u, v).max(-a))
        .map(|i| lambda_sum(u, v, i) - i)
        .max()
        .unwrap_or(0)
}

/// `FS(u,v) = max_{1 ≤ i ≤ 1 + max(fs u, fs v)} (Λ_i(u) + Λ_i(v) + i − 1)`.
pub fn fs_formula(u: &Permutation, v: &Permutation) -> i64 {
    (1..=1 + u.fs().max(v.fs()))
        .map(|i| big_lambda_sum(u, v, i) + i - 1)
        .max()
        .unwrap_or(1)
}

/// `max_{i ≤ 1 + max(FS̃ u, FS̃ v)} (Λ_i(u) + Λ_i(v) + i − 1)`. Below the
/// first nonzero dual-code position the sum is constant, so the range
/// starts there.
pub fn tilde_fs_formula(u: &Permutation, v: &Permutation) -> i64 {
    let Some(top) = non_identity_max(u, v, Permutation::fs_tilde).map(|t| t + 1) else {
        return 0;
    };
    let first = |w: &Permutation| w.dual_code().keys().next().copied().unwrap_or(top);
    let bottom = first(u).min(first(v)).min(top);
    (bottom..=top)
        .map(|i| big_lambda_sum(u, v, i) + i - 1)
        .max()
        .unwrap_or(0)
}

/// `V_k(u,v)`: the permutations `w` with `c_{γ^k u, γ^k v}^{γ^k w} ≠ 0`.
///
/// The ordinary constants here are the positive part of the back-stable
/// slide expansion of the shifted pair, recomputed from scratch for each
/// `k`.
pub fn v_set(
    u: &Permutation,
    v: &Permutation,
    k: i64,
    limits: &Limits,
) -> Result<BTreeSet<Permutation>> {
    require_positive(u)?;
    require_positive(v)?;
    let e = ordinary_structure_constants_by_words(&u.gamma(k), &v.gamma(k), limits)?;
    Ok(e.terms().map(|(w, _)| w.gamma(-k)).collect())
}

/// The chain `V_0 ⊆ V_1 ⊆ …` and the numbers read off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsBruteforce {
    /// Least `j` with `V_j = V_{j+1} = …` up to the length bound.
    pub bs: i64,
    /// Least `j` with `V_j = V_{j+1}`.
    pub st: i64,
    pub chain: Vec<BTreeSet<Permutation>>,
}

impl BsBruteforce {
    pub fn bs_equals_st(&self) -> bool {
        self.bs == self.st
    }
}

/// Computes `V_0, …, V_{ℓ(u)+ℓ(v)+1}`; the chain is constant from
/// `ℓ(u)+ℓ(v)` on, so `bs` is where it reaches its final value.
pub fn bs_bruteforce(u: &Permutation, v: &Permutation, limits: &Limits) -> Result<BsBruteforce> {
    let bound = (u.length() + v.length()) as i64 + 1;
    let chain = (0..=bound)
        .map(|k| v_set(u, v, k, limits))
        .collect::<Result<Vec<_>>>()?;
    if let Some(j) = (0..chain.len() - 1).find(|&j| !chain[j].is_subset(&chain[j + 1])) {
        return Err(Error::Inconsistent(format!(
            "V_{j} is not contained in V_{} for {u}, {v}",
            j + 1
        )));
    }
    let last = chain.len() - 1;
    if chain[last - 1] != chain[last] {
        return Err(Error::Inconsistent(format!(
            "V_k has not stabilized by k = {last} for {u}, {v}"
        )));
    }
    let bs = (0..=last)
        .find(|&j| chain[j] == chain[last])
        .unwrap_or(last) as i64;
    let st = (0..last)
        .find(|&j| chain[j] == chain[j + 1])
        .unwrap_or(last) as i64;
    Ok(BsBruteforce { bs, st, chain })
}

/// `max fs(w)` over the ordinary expansion of `𝔖_u 𝔖_v`.
pub fn fs_bruteforce(u: &Permutation, v: &Permutation, limits: &Limits) -> Result<i64> {
    let e = ordinary_structure_constants(u, v, limits)?;
    Ok(e.terms().map(|(w, _)| w.fs()).max().unwrap_or(1))
}

/// `λ_i(u) + λ_i(v) ≤ i` for all `i ≥ 0`: the back-stable expansion of a
/// pair in `S_{ℤ+}` stays in `S_{ℤ+}`.
pub fn stable_expansion_check(u: &Permutation, v: &Permutation) -> bool {
    (0..=u.fs().max(v.fs())).all(|i| lambda_sum(u, v, i) <= i)
}

/// Whether every back-stable support member fixes the nonpositive integers.
pub fn stable_expansion_direct(u: &Permutation, v: &Permutation, limits: &Limits) -> Result<bool> {
    let e = back_stable_structure_constants(u, v, limits)?;
    let all = e.terms().all(|(w, _)| w.is_positive());
    Ok(all)
}

/// `Λ_i(u) + Λ_i(v) ≤ n + 1 − i` for `1 ≤ i ≤ n`, with `u, v ∈ S_n`: the
/// product of `𝔖_u 𝔖_v` lives in `S_n`.
pub fn flag_containment_check(u: &Permutation, v: &Permutation, n: i64) -> bool {
    u.is_in_sn(n) && v.is_in_sn(n) && (1..=n).all(|i| big_lambda_sum(u, v, i) <= n + 1 - i)
}

/// Whether every ordinary support member lies in `S_n`.
pub fn flag_containment_direct(
    u: &Permutation,
    v: &Permutation,
    n: i64,
    limits: &Limits,
) -> Result<bool> {
    let e = ordinary_structure_constants(u, v, limits)?;
    let all = e.terms().all(|(w, _)| w.is_in_sn(n));
    Ok(all)
}

/// `BS̃(u,v)`: the largest `BS̃(w)` over the back-stable support.
pub fn tilde_bs(u: &Permutation, v: &Permutation, limits: &Limits) -> Result<i64> {
    let e = back_stable_structure_constants(u, v, limits)?;
    Ok(e.terms().map(|(w, _)| w.bs_tilde()).max().unwrap_or(0))
}

/// `FS̃(u,v)`: the largest `FS̃(w)` over the back-stable support.
pub fn tilde_fs(u: &Permutation, v: &Permutation, limits: &Limits) -> Result<i64> {
    let e = back_stable_structure_constants(u, v, limits)?;
    Ok(e.terms().map(|(w, _)| w.fs_tilde()).max().unwrap_or(0))
}

/// `I_i(u,v)`: the largest `I_i(p)` over the words `p` of `Sch(u)·Sch(v)`.
pub fn pair_inc_suffix_len(
    u: &Permutation,
    v: &Permutation,
    i: i64,
    limits: &Limits,
) -> Result<u64> {
    let mut best = 0;
    for_each_product_word(u, v, limits, |p| {
        best = best.max(inc_suffix_len_gated(p, |l| l.value, i));
    })?;
    Ok(best)
}

/// `max_{i ≥ 0} (I_i(u,v) − i)`, over the range where `I_i` can still grow.
pub fn max_pair_inc_suffix_excess(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<i64> {
    let top = u.fs().max(v.fs());
    let mut best = i64::MIN;
    for i in 0..=top {
        best = best.max(pair_inc_suffix_len(u, v, i, limits)? as i64 - i);
    }
    Ok(best)
}

/// The largest `i` with `θ_i(u) = 1` or `θ_i(v) = 1`, or 0.
pub fn last_code_position(u: &Permutation, v: &Permutation) -> i64 {
    lambda_horizon(u, v).max(0)
}

/// For every `0 ≤ m ≤ BS(u,v)` some back-stable support member has
/// `BS(w) = m`. Returns the values of `m` that are missing.
pub fn missing_support_strata(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<Vec<i64>> {
    let e = back_stable_structure_constants(u, v, limits)?;
    let levels: BTreeSet<i64> = e.terms().map(|(w, _)| w.bs()).collect();
    let top = levels.iter().next_back().copied().unwrap_or(0);
    Ok((0..=top).filter(|m| !levels.contains(m)).collect())
}

/// Formula and brute-force values for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    pub u: Permutation,
    pub v: Permutation,
    pub bs_formula: i64,
    pub bs_bruteforce: i64,
    pub st_number: i64,
    pub v_sets: Vec<BTreeSet<Permutation>>,
    pub fs_formula: i64,
    pub fs_bruteforce: i64,
}

impl StabilizationReport {
    pub fn bs_agrees(&self) -> bool {
        self.bs_formula == self.bs_bruteforce && self.bs_bruteforce == self.st_number
    }

    pub fn fs_agrees(&self) -> bool {
        self.fs_formula == self.fs_bruteforce
    }

    pub fn passes(&self) -> bool {
        self.bs_agrees() && self.fs_agrees()
    }
}

pub fn stabilization_report(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<StabilizationReport> {
    let brute = bs_bruteforce(u, v, limits)?;
    Ok(StabilizationReport {
        u: u.clone(),
        v: v.clone(),
        bs_formula: bs_formula(u, v),
        bs_bruteforce: brute.bs,
        st_number: brute.st,
        v_sets: brute.chain,
        fs_formula: fs_formula(u, v),
        fs_bruteforce: fs_bruteforce(u, v, limits)?,
    })
}

/// Reports for every pair in `S_n × S_n`, in lexicographic pair order.
pub fn scan_pairs(n: i64, limits: &Limits) -> Result<Vec<StabilizationReport>> {
    let all = symmetric_group(n);
    let pairs: Vec<(&Permutation, &Permutation)> = all
        .iter()
        .flat_map(|u| all.iter().map(move |v| (u, v)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(u, v)| stabilization_report(u, v, limits))
        .collect()
}
