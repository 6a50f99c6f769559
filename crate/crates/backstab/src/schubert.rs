//! Schubert vectors, Schubert polynomials, and structure constants.
//!
//! Two independent routes compute structure constants:
//!
//! * [`ordinary_structure_constants`] multiplies Schubert polynomials,
//!   peels off leading terms, and confirms each coefficient by applying
//!   `∂_w` to the product.
//! * [`back_stable_structure_constants`] works entirely with words: it
//!   counts the maximal bottom rows of all colored shuffles of reduced words
//!   (the slide expansion of the product) and peels Schubert vectors off
//!   that multiset.
//!
//! Both peelings use the fact that the largest monomial of `𝔖_w`, comparing
//! exponents from the highest variable down, is `x^{code(w)}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::colored::{
    binomial, bottom_rows_below, for_each_interleaving, max_bottom_row_by, max_bottom_row_plain,
    ColoredLetter, ColoredWord, Fingerprint, WordCombo,
};
use crate::error::{Error, Limits, Result};
use crate::perm::Permutation;
use crate::poly::SparsePoly;
use crate::words::{count_reduced_words, reduced_words, some_reduced_word, Word};

/// `Σ c_w 𝔖_w`, keyed by permutation in one-line order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchubertExpansion {
    terms: BTreeMap<Permutation, BigInt>,
}

impl SchubertExpansion {
    pub fn zero() -> Self {
        SchubertExpansion::default()
    }

    pub fn single(w: Permutation) -> Self {
        let mut e = SchubertExpansion::zero();
        e.add_term(w, BigInt::one());
        e
    }

    pub fn add_term(&mut self, w: Permutation, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coefficient(&self, w: &Permutation) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> BTreeSet<Permutation> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_perms(&self, f: impl Fn(&Permutation) -> Permutation) -> SchubertExpansion {
        let mut out = SchubertExpansion::zero();
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    pub fn gamma(&self, k: i64) -> SchubertExpansion {
        self.map_perms(|w| w.gamma(k))
    }

    pub fn iota(&self) -> SchubertExpansion {
        self.map_perms(Permutation::iota)
    }

    /// The terms indexed by permutations of the positive integers.
    pub fn positive_part(&self) -> SchubertExpansion {
        SchubertExpansion {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.is_positive())
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &SchubertExpansion) -> SchubertExpansion {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> SchubertExpansion {
        let mut out = SchubertExpansion::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }
}

impl fmt::Display for SchubertExpansion {
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

/// `Sch(w)`: the sum of the reduced words of `w`, colored 1.
pub fn schubert_vector(w: &Permutation, limits: &Limits) -> Result<WordCombo> {
    let rw = reduced_words(w, limits)?;
    Ok(WordCombo::from_plain_words(&rw.words))
}

/// `Σ_w c_w Sch(w)`.
pub fn expansion_to_combo(e: &SchubertExpansion, limits: &Limits) -> Result<WordCombo> {
    let mut out = WordCombo::zero();
    for (w, c) in e.terms() {
        out = out.add(&schubert_vector(w, limits)?.scale(c));
    }
    Ok(out)
}

/// Slide polynomial of the word `a` truncated to bottom entries in
/// `lo..=hi`: the sum of `x^b` over bottom rows `b` of `a`.
pub fn slide_polynomial(a: &[i64], lo: i64, hi: i64) -> SparsePoly {
    let mut p = SparsePoly::zero(lo, hi);
    let m = max_bottom_row_plain(a);
    if m.first().is_some_and(|&first| first < lo) {
        return p;
    }
    let rows = bottom_rows_below(a, &m, lo, hi).unwrap_or_default();
    for b in rows {
        let mut mono = vec![0u32; p.nvars()];
        for x in b {
            mono[(x - lo) as usize] += 1;
        }
        p.add_term(mono, BigInt::one());
    }
    p
}

/// Schubert polynomial by compatible sequences: every reduced word
/// contributes its slide polynomial with bottom entries in `lo..=hi`.
/// With `lo = 1` this is the ordinary Schubert polynomial; smaller `lo`
/// truncates the back-stable one.
pub fn schubert_poly(w: &Permutation, lo: i64, hi: i64, limits: &Limits) -> Result<SparsePoly> {
    if let Some(&d) = w.descents().iter().next_back() {
        if hi < d {
            return Err(Error::WindowTooSmall { hi, descent: d });
        }
    }
    let rw = reduced_words(w, limits)?;
    let mut p = SparsePoly::zero(lo, hi);
    for a in &rw.words {
        p = p.add(&slide_polynomial(a, lo, hi));
        limits.check_terms(p.len() as u64)?;
    }
    if w.is_identity() {
        p = SparsePoly::one(lo, hi);
    }
    Ok(p)
}

/// Schubert polynomial by divided differences, starting from
/// `𝔖_{w₀} = x_1^{n−1} x_2^{n−2} ⋯ x_{n−1}` in `S_n` and walking down to
/// `w` along a reduced word of `w₀w`.
pub fn schubert_poly_dd(w: &Permutation, n: i64) -> Result<SparsePoly> {
    if !w.is_in_sn(n) {
        return Err(Error::OutOfWindow {
            what: format!("permutation {w}"),
            lo: 1,
            hi: n,
        });
    }
    let n = n.max(1);
    let w0 = Permutation::from_one_line(1, &(1..=n).rev().collect::<Vec<_>>())?;
    let staircase: BTreeMap<i64, u32> = (1..n).map(|i| (i, (n - i) as u32)).collect();
    let mut p = SparsePoly::monomial(1, n, &staircase)?;
    for i in some_reduced_word(&w0.compose(w)) {
        p = p.divided_difference(i)?;
    }
    Ok(p)
}

/// Schubert polynomial by divided differences from the dominant
/// permutation reached by sorting the code: while some `c_i < c_{i+1}`,
/// replace the pair by `(c_{i+1} + 1, c_i)`. A dominant code is a
/// partition `μ` and its Schubert polynomial is `x^μ`. The code is read
/// from `lo`, so `lo` must not exceed the first nonzero code position.
pub(crate) fn schubert_poly_from_dominant(w: &Permutation, lo: i64, hi: i64) -> Result<SparsePoly> {
    let code = w.code();
    let (Some(&first), Some(&last)) = (code.keys().next(), code.keys().next_back()) else {
        return Ok(SparsePoly::one(lo, hi));
    };
    // Sorting must start at the bottom of the window.
    let first = first.min(lo);
    let mut c: Vec<u64> = (first..=last + 1)
        .map(|i| code.get(&i).copied().unwrap_or(0))
        .collect();
    let mut steps = Vec::new();
    while let Some(j) = (0..c.len() - 1).find(|&j| c[j] < c[j + 1]) {
        let (a, b) = (c[j], c[j + 1]);
        c[j] = b + 1;
        c[j + 1] = a;
        steps.push(first + j as i64);
    }
    let exps: BTreeMap<i64, u32> = c
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| (first + j as i64, e as u32))
        .collect();
    let mut p = SparsePoly::monomial(lo, hi, &exps)?;
    for &i in steps.iter().rev() {
        p = p.divided_difference(i)?;
    }
    Ok(p)
}

/// `∂_w f`: divided differences along a reduced word of `w`, last letter
/// first. On a combination of Schubert polynomials of length `ℓ(w)` this
/// returns the coefficient of `𝔖_w`.
pub fn apply_divided_differences(f: &SparsePoly, w: &Permutation) -> Result<SparsePoly> {
    let mut p = f.clone();
    for &i in some_reduced_word(w).iter().rev() {
        p = p.divided_difference(i)?;
    }
    Ok(p)
}

fn require_positive(w: &Permutation) -> Result<()> {
    if w.is_positive() {
        Ok(())
    } else {
        Err(Error::NotPositive(w.to_string()))
    }
}

/// Expands the polynomial `f` in Schubert polynomials on the window
/// `1..=n` by repeatedly subtracting the Schubert polynomial indexed by the
/// code of its largest monomial.
pub fn expand_polynomial(f: &SparsePoly, n: i64, limits: &Limits) -> Result<SchubertExpansion> {
    let mut rem = f.reindex(1, n)?;
    let mut out = SchubertExpansion::zero();
    let mut steps = 0u64;
    while let Some((m, c)) = rem.leading_term_revlex() {
        steps += 1;
        limits.check_terms(steps)?;
        if !c.is_positive() {
            return Err(Error::Inconsistent(format!(
                "leading coefficient {c} is not positive during Schubert expansion"
            )));
        }
        let c = c.clone();
        let code: BTreeMap<i64, u64> = rem
            .exponents_of(m)
            .into_iter()
            .map(|(i, e)| (i, u64::from(e)))
            .collect();
        let w = Permutation::from_code(&code);
        let hi = n.max(w.fs());
        let sw = schubert_poly_from_dominant(&w, 1, hi)?;
        rem = rem.reindex(1, hi)?.sub(&sw.scale(&c));
        out.add_term(w, c);
    }
    Ok(out)
}

/// Ordinary structure constants `c_{u,v}^w` for `u, v` fixing the
/// nonpositive integers.
///
/// The product is formed in the window `1..=N`, `N = fs(u) + fs(v)`.
/// Candidates come from leading-term peeling; each coefficient is then
/// re-derived as the constant `∂_w(𝔖_u 𝔖_v)`, and the expansion must
/// reproduce the product exactly.
pub fn ordinary_structure_constants(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<SchubertExpansion> {
    require_positive(u)?;
    require_positive(v)?;
    let n = u.fs() + v.fs();
    let su = schubert_poly_from_dominant(u, 1, n)?;
    let sv = schubert_poly_from_dominant(v, 1, n)?;
    limits.check_terms((su.len() as u64).saturating_mul(sv.len() as u64))?;
    let product = su.mul(&sv);
    let expansion = expand_polynomial(&product, n, limits)?;
    let target = u.length() + v.length();
    let mut rebuilt = SparsePoly::zero(1, n);
    for (w, c) in expansion.terms() {
        if w.length() != target || !w.is_in_sn(n) {
            return Err(Error::Inconsistent(format!(
                "{w} cannot occur in the product of {u} and {v}"
            )));
        }
        let extracted = apply_divided_differences(&product, w)?;
        if extracted.len() > 1 || extracted.constant_term() != *c {
            return Err(Error::Inconsistent(format!(
                "∂_w extraction for {w} gives {extracted}, peeling gave {c}"
            )));
        }
        rebuilt = rebuilt.add(&schubert_poly_from_dominant(w, 1, n)?.scale(c));
    }
    if !rebuilt.same_as(&product) {
        return Err(Error::Inconsistent(format!(
            "re-expansion of the product of {u} and {v} does not match"
        )));
    }
    Ok(expansion)
}

/// Back-stable structure constants through the polynomial route: shift
/// both factors far enough right that every term has stabilized, take
/// ordinary constants, and shift back.
pub fn back_stable_structure_constants_by_shift(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<SchubertExpansion> {
    let k = u.bs().max(v.bs()) + (u.length() + v.length()) as i64;
    let e = ordinary_structure_constants(&u.gamma(k), &v.gamma(k), limits)?;
    Ok(e.gamma(-k))
}

/// Calls `visit` on every colored word in `Sch(u)·Sch(v)`: each reduced
/// word of `u` (color 1) shuffled with each reduced word of `v` (color 2).
pub fn for_each_product_word(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
    mut visit: impl FnMut(&[ColoredLetter]),
) -> Result<()> {
    let (lu, lv) = (u.length() as usize, v.length() as usize);
    let count = count_reduced_words(u) * count_reduced_words(v) * binomial(lu + lv, lv);
    limits.check_terms(count.to_u64().unwrap_or(u64::MAX))?;
    let ru = reduced_words(u, limits)?;
    let rv = reduced_words(v, limits)?;
    for a in &ru.words {
        let ca: Vec<ColoredLetter> = a.iter().map(|&x| ColoredLetter::new(x, 1)).collect();
        for b in &rv.words {
            let cb: Vec<ColoredLetter> = b.iter().map(|&x| ColoredLetter::new(x, 2)).collect();
            for_each_interleaving(&ca, &cb, &mut visit);
        }
    }
    Ok(())
}

/// `Sch(u)·Sch(v)` as a word combination.
pub fn product_combo(u: &Permutation, v: &Permutation, limits: &Limits) -> Result<WordCombo> {
    let mut out = WordCombo::zero();
    for_each_product_word(u, v, limits, |w| {
        out.add_term(ColoredWord(w.to_vec()), BigInt::one())
    })?;
    Ok(out)
}

/// `T_b(Sch(u)·Sch(v))` for every `b`.
pub fn product_fingerprint(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<Fingerprint> {
    let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
    for_each_product_word(u, v, limits, |w| {
        *counts.entry(max_bottom_row_by(w, |l| l.value)).or_default() += 1;
    })?;
    Ok(counts
        .into_iter()
        .map(|(b, c)| (b, BigInt::from(c)))
        .collect())
}

/// `T_b(Sch(w))` for every `b`.
pub fn schubert_fingerprint(w: &Permutation, limits: &Limits) -> Result<Fingerprint> {
    let rw = reduced_words(w, limits)?;
    let mut fp = Fingerprint::new();
    for a in &rw.words {
        *fp.entry(max_bottom_row_plain(a)).or_default() += 1;
    }
    Ok(fp)
}

/// `Σ_w c_w T_b(Sch(w))` for every `b`.
pub fn expansion_fingerprint(e: &SchubertExpansion, limits: &Limits) -> Result<Fingerprint> {
    let mut fp = Fingerprint::new();
    for (w, c) in e.terms() {
        for (b, t) in schubert_fingerprint(w, limits)? {
            *fp.entry(b).or_default() += t * c;
        }
    }
    fp.retain(|_, c| !c.is_zero());
    Ok(fp)
}

/// Writes a nonnegative fingerprint as a combination of Schubert vectors.
///
/// The largest bottom row `b` (comparing from the last entry down) is the
/// code of the Schubert vector to subtract; its count is the coefficient.
pub fn expand_fingerprint(fp: &Fingerprint, limits: &Limits) -> Result<SchubertExpansion> {
    peel_fingerprint(fp, limits, false)
}

/// Like [`expand_fingerprint`], allowing negative coefficients.
pub fn expand_fingerprint_signed(fp: &Fingerprint, limits: &Limits) -> Result<SchubertExpansion> {
    peel_fingerprint(fp, limits, true)
}

fn peel_fingerprint(fp: &Fingerprint, limits: &Limits, signed: bool) -> Result<SchubertExpansion> {
    // Keys are stored reversed so the largest bottom row sorts last.
    let mut rem: BTreeMap<Vec<i64>, BigInt> = fp
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(b, c)| (b.iter().rev().copied().collect(), c.clone()))
        .collect();
    let mut out = SchubertExpansion::zero();
    let mut steps = 0u64;
    while let Some((rb, c)) = rem.iter().next_back().map(|(b, c)| (b.clone(), c.clone())) {
        steps += 1;
        limits.check_terms(steps)?;
        if !signed && !c.is_positive() {
            return Err(Error::Inconsistent(format!(
                "bottom row {rb:?} has count {c} while peeling Schubert vectors"
            )));
        }
        let mut code: BTreeMap<i64, u64> = BTreeMap::new();
        for &x in &rb {
            *code.entry(x).or_default() += 1;
        }
        let w = Permutation::from_code(&code);
        let fw = schubert_fingerprint(&w, limits)?;
        let lead: Vec<i64> = rb.iter().rev().copied().collect();
        let leads = fw.get(&lead) == Some(&BigInt::one())
            && fw
                .keys()
                .all(|b| b.len() != rb.len() || b.iter().rev().le(rb.iter()));
        if !leads {
            return Err(Error::Inconsistent(format!(
                "Sch({w}) does not lead with bottom row {lead:?}"
            )));
        }
        for (b, t) in fw {
            let key: Vec<i64> = b.into_iter().rev().collect();
            let entry = rem.entry(key.clone()).or_default();
            *entry -= t * &c;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        out.add_term(w, c);
    }
    Ok(out)
}

/// Back-stable structure constants `c̄_{u,v}^w` from the slide expansion
/// of `Sch(u)·Sch(v)`.
pub fn back_stable_structure_constants(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<SchubertExpansion> {
    let fp = product_fingerprint(u, v, limits)?;
    expand_fingerprint(&fp, limits)
}

/// Ordinary structure constants read off the back-stable ones: the terms
/// indexed by permutations of the positive integers.
pub fn ordinary_structure_constants_by_words(
    u: &Permutation,
    v: &Permutation,
    limits: &Limits,
) -> Result<SchubertExpansion> {
    require_positive(u)?;
    require_positive(v)?;
    Ok(back_stable_structure_constants(u, v, limits)?.positive_part())
}

/// Per-bottom-row comparison of `Sch(u)·Sch(v)` against `Σ c̄ Sch(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    /// `(b, T_b(product), T_b(expansion))` for every `b` on either side.
    pub rows: Vec<(Vec<i64>, BigInt, BigInt)>,
    pub pass: bool,
}

/// Checks `T_b(Sch(u)·Sch(v)) = Σ_w c̄_w T_b(Sch(w))` for every `b`
/// occurring on either side, against a separately computed expansion.
pub fn check_multiset_bijection(
    u: &Permutation,
    v: &Permutation,
    expansion: &SchubertExpansion,
    limits: &Limits,
) -> Result<BijectionReport> {
    let lhs = product_fingerprint(u, v, limits)?;
    let rhs = expansion_fingerprint(expansion, limits)?;
    let keys: BTreeSet<&Vec<i64>> = lhs.keys().chain(rhs.keys()).collect();
    let rows: Vec<(Vec<i64>, BigInt, BigInt)> = keys
        .into_iter()
        .map(|b| {
            (
                b.clone(),
                lhs.get(b).cloned().unwrap_or_default(),
                rhs.get(b).cloned().unwrap_or_default(),
            )
        })
        .collect();
    let pass = rows.iter().all(|(_, a, b)| a == b);
    Ok(BijectionReport { rows, pass })
}

/// Checks `C(ℓu+ℓv, ℓv)·|RW(u)|·|RW(v)| = Σ_w c̄_w |RW(w)|`.
pub fn nenashev_count_check(
    u: &Permutation,
    v: &Permutation,
    expansion: &SchubertExpansion,
) -> bool {
    let (lu, lv) = (u.length() as usize, v.length() as usize);
    let lhs = BigInt::from(binomial(lu + lv, lv))
        * BigInt::from(count_reduced_words(u))
        * BigInt::from(count_reduced_words(v));
    let rhs: BigInt = expansion
        .terms()
        .map(|(w, c)| c * BigInt::from(count_reduced_words(w)))
        .sum();
    lhs == rhs
}

/// Reduced words of every support member, keyed by permutation.
pub fn support_words(
    e: &SchubertExpansion,
    limits: &Limits,
) -> Result<BTreeMap<Permutation, Vec<Word>>> {
    e.terms()
        .map(|(w, _)| Ok((w.clone(), reduced_words(w, limits)?.words)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn x(exps: &[(i64, u32)], n: i64) -> SparsePoly {
        SparsePoly::monomial(1, n, &exps.iter().copied().collect()).unwrap()
    }

    fn expansion(pairs: &[&str]) -> SchubertExpansion {
        let mut e = SchubertExpansion::zero();
        for s in pairs {
            e.add_term(p(s), BigInt::one());
        }
        e
    }

    #[test]
    fn schubert_vectors() {
        let s2 = schubert_vector(&Permutation::simple(2), &lim()).unwrap();
        assert_eq!(s2.to_string(), "{\"[2^1]\": 1}");
        let v = schubert_vector(&p("1:[1,2,4,5,3]"), &lim()).unwrap();
        assert_eq!(v.to_string(), "{\"[3^1,4^1]\": 1}");
        assert_eq!(
            schubert_vector(&p("1:[2,1,5,4,3]"), &lim()).unwrap().len(),
            8
        );
    }

    #[test]
    fn small_schubert_polynomials() {
        let s1 = schubert_poly(&Permutation::simple(1), 1, 3, &lim()).unwrap();
        assert_eq!(s1, x(&[(1, 1)], 3));
        let s2 = schubert_poly(&Permutation::simple(2), 1, 3, &lim()).unwrap();
        assert_eq!(s2, x(&[(1, 1)], 3).add(&x(&[(2, 1)], 3)));
        let w0 = schubert_poly(&p("1:[3,2,1]"), 1, 3, &lim()).unwrap();
        assert_eq!(w0, x(&[(1, 2), (2, 1)], 3));
        assert_eq!(schubert_poly_dd(&p("1:[3,2,1]"), 3).unwrap(), w0);
        assert_eq!(
            schubert_poly(&p("1:[1,3,2]"), 1, 1, &lim()),
            Err(Error::WindowTooSmall { hi: 1, descent: 2 })
        );
        assert_eq!(
            schubert_poly(&Permutation::identity(), 1, 2, &lim()).unwrap(),
            SparsePoly::one(1, 2)
        );
    }

    #[test]
    fn compatible_sequences_agree_with_divided_differences_on_s4() {
        for w in symmetric_group(4) {
            let bjs = schubert_poly(&w, 1, 4, &lim()).unwrap();
            assert_eq!(schubert_poly_dd(&w, 4).unwrap(), bjs, "{w}");
            assert!(
                schubert_poly_from_dominant(&w, 1, 4).unwrap().same_as(&bjs),
                "{w}"
            );
        }
    }

    #[test]
    fn leading_monomial_is_the_code() {
        for w in symmetric_group(5) {
            let poly = schubert_poly_from_dominant(&w, 1, 5).unwrap();
            let (m, c) = poly.leading_term_revlex().unwrap();
            let code: BTreeMap<i64, u64> = poly
                .exponents_of(m)
                .into_iter()
                .map(|(i, e)| (i, u64::from(e)))
                .collect();
            assert_eq!(code, w.code());
            assert!(c.is_one());
        }
    }

    #[test]
    fn ordinary_examples() {
        let e = ordinary_structure_constants(&p("1:[3,2,1]"), &p("1:[2,1,3]"), &lim()).unwrap();
        assert_eq!(e, expansion(&["1:[4,2,1,3]"]));
        let v = p("1:[2,4,1,3]");
        let e = ordinary_structure_constants(&Permutation::identity(), &v, &lim()).unwrap();
        assert_eq!(e, SchubertExpansion::single(v));
        let s1 = Permutation::simple(1);
        let e = ordinary_structure_constants(&s1, &s1, &lim()).unwrap();
        assert_eq!(e, expansion(&["1:[3,1,2]"]));
        assert!(ordinary_structure_constants(&p("0:[1,0]"), &s1, &lim()).is_err());
    }

    #[test]
    fn back_stable_examples() {
        let (u, v) = (p("1:[3,2,1]"), p("1:[2,1,3]"));
        let want = expansion(&["1:[4,2,1,3]", "0:[1,3,2,0,4]", "0:[2,3,0,1,4]"]);
        assert_eq!(
            back_stable_structure_constants(&u, &v, &lim()).unwrap(),
            want
        );
        assert_eq!(
            back_stable_structure_constants_by_shift(&u, &v, &lim()).unwrap(),
            want
        );
        let shifted = back_stable_structure_constants(&u.gamma(1), &v.gamma(1), &lim()).unwrap();
        assert_eq!(shifted, want.gamma(1));
        assert_eq!(
            shifted,
            expansion(&["1:[1,5,3,2,4]", "1:[2,4,3,1,5]", "1:[3,4,1,2,5]"])
        );
        let s2 = Permutation::simple(2);
        let e = back_stable_structure_constants(&s2, &s2, &lim()).unwrap();
        let want = expansion(&[
            &Permutation::simple(3).compose(&s2).to_string(),
            &Permutation::simple(1).compose(&s2).to_string(),
        ]);
        assert_eq!(e, want);
    }

    #[test]
    fn routes_agree_on_s3_pairs() {
        for u in symmetric_group(3) {
            for v in symmetric_group(3) {
                let words = back_stable_structure_constants(&u, &v, &lim()).unwrap();
                let poly = back_stable_structure_constants_by_shift(&u, &v, &lim()).unwrap();
                assert_eq!(words, poly, "{u} {v}");
                let ord = ordinary_structure_constants(&u, &v, &lim()).unwrap();
                assert_eq!(ord, words.positive_part());
                assert_eq!(
                    ord,
                    ordinary_structure_constants_by_words(&u, &v, &lim()).unwrap()
                );
            }
        }
    }

    #[test]
    fn routes_agree_on_sampled_s4_pairs() {
        let all = symmetric_group(4);
        for (j, u) in all.iter().enumerate().step_by(5) {
            for v in all.iter().skip(j % 3).step_by(7) {
                let words = ordinary_structure_constants_by_words(u, v, &lim()).unwrap();
                let poly = ordinary_structure_constants(u, v, &lim()).unwrap();
                assert_eq!(words, poly, "{u} {v}");
            }
        }
    }

    #[test]
    fn multiset_bijection_examples() {
        let s2 = Permutation::simple(2);
        let e = back_stable_structure_constants_by_shift(&s2, &s2, &lim()).unwrap();
        let report = check_multiset_bijection(&s2, &s2, &e, &lim()).unwrap();
        assert!(report.pass);
        let rows: Vec<Vec<i64>> = report.rows.iter().map(|r| r.0.clone()).collect();
        assert_eq!(rows, vec![vec![1, 2], vec![2, 2]]);
        let id = Permutation::identity();
        let e = SchubertExpansion::single(s2.clone());
        assert!(check_multiset_bijection(&id, &s2, &e, &lim()).unwrap().pass);
        let (u, v) = (p("1:[3,2,1]"), p("1:[2,1,3]"));
        let e = back_stable_structure_constants_by_shift(&u, &v, &lim()).unwrap();
        let report = check_multiset_bijection(&u, &v, &e, &lim()).unwrap();
        assert!(report.pass);
        let total: BigInt = report.rows.iter().map(|r| r.1.clone()).sum();
        // Two reduced words of 321, one of 213, four interleavings each.
        assert_eq!(total, BigInt::from(8));
        // A wrong expansion is caught.
        let bad = expansion(&["1:[4,2,1,3]"]);
        assert!(!check_multiset_bijection(&u, &v, &bad, &lim()).unwrap().pass);
    }

    #[test]
    fn nenashev_examples() {
        let s2 = Permutation::simple(2);
        let e = back_stable_structure_constants(&s2, &s2, &lim()).unwrap();
        assert!(nenashev_count_check(&s2, &s2, &e));
        let v = p("1:[3,1,4,2]");
        assert!(nenashev_count_check(
            &Permutation::identity(),
            &v,
            &SchubertExpansion::single(v.clone())
        ));
        let (u, v) = (p("1:[3,2,1]"), p("1:[2,1,3]"));
        let e = back_stable_structure_constants_by_shift(&u, &v, &lim()).unwrap();
        assert!(nenashev_count_check(&u, &v, &e));
    }

    #[test]
    fn dualities_and_support_facts_on_s3() {
        for u in symmetric_group(3) {
            for v in symmetric_group(3) {
                let e = back_stable_structure_constants(&u, &v, &lim()).unwrap();
                let flipped =
                    back_stable_structure_constants(&u.iota(), &v.iota(), &lim()).unwrap();
                assert_eq!(flipped, e.iota());
                let desc: BTreeSet<i64> = u.descents().union(&v.descents()).copied().collect();
                let (lu, lv) = (
                    u.code_profile().lambda_total(),
                    v.code_profile().lambda_total(),
                );
                for (w, _) in e.terms() {
                    assert!(w.descents().is_subset(&desc), "{u} {v} {w}");
                    assert!(w.code_profile().lambda_total() <= lu + lv);
                }
            }
        }
    }

    #[test]
    fn w0_duality_on_s4() {
        let all = symmetric_group(4);
        for u in &all {
            for v in all.iter().step_by(3) {
                let e = ordinary_structure_constants(u, v, &lim()).unwrap();
                let conj = ordinary_structure_constants(
                    &u.w0_conjugate(4).unwrap(),
                    &v.w0_conjugate(4).unwrap(),
                    &lim(),
                )
                .unwrap();
                for (w, c) in e.terms() {
                    if w.is_in_sn(4) {
                        assert_eq!(conj.coefficient(&w.w0_conjugate(4).unwrap()), *c);
                    }
                }
            }
        }
    }
}
