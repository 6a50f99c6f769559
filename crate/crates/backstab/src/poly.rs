//! Exact integer polynomials in finitely many variables `x_lo, …, x_hi`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponent vector over the window, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial with integer coefficients in the variables indexed by the
/// window `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    lo: i64,
    hi: i64,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    /// The zero polynomial on `lo..=hi`. An empty window (`hi < lo`) holds
    /// only constants.
    pub fn zero(lo: i64, hi: i64) -> Self {
        SparsePoly {
            lo,
            hi: hi.max(lo - 1),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(lo: i64, hi: i64, c: BigInt) -> Self {
        let mut p = SparsePoly::zero(lo, hi);
        let n = p.nvars();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(lo: i64, hi: i64) -> Self {
        SparsePoly::constant(lo, hi, BigInt::one())
    }

    /// `x^e` where `e` maps variable index to exponent.
    pub fn monomial(lo: i64, hi: i64, exps: &BTreeMap<i64, u32>) -> Result<Self> {
        let mut p = SparsePoly::zero(lo, hi);
        let mut m = vec![0; p.nvars()];
        for (&i, &e) in exps {
            if e > 0 {
                m[p.slot(i)?] = e;
            }
        }
        p.add_term(m, BigInt::one());
        Ok(p)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn nvars(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn slot(&self, i: i64) -> Result<usize> {
        if i < self.lo || i > self.hi {
            return Err(Error::IndexOutOfWindow(i));
        }
        Ok((i - self.lo) as usize)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
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

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars()])
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.len(), self.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-embeds into the window `lo..=hi`; fails if a used variable would
    /// fall outside.
    pub fn reindex(&self, lo: i64, hi: i64) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(lo, hi);
        for (m, c) in &self.terms {
            let mut n = vec![0; out.nvars()];
            for (j, &e) in m.iter().enumerate() {
                if e > 0 {
                    n[out.slot(self.lo + j as i64)?] = e;
                }
            }
            out.add_term(n, c.clone());
        }
        Ok(out)
    }

    fn aligned(&self, other: &SparsePoly) -> (SparsePoly, SparsePoly) {
        if self.lo == other.lo && self.hi == other.hi {
            return (self.clone(), other.clone());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi.max(other.hi);
        (
            self.reindex(lo, hi).expect("union window"),
            other.reindex(lo, hi).expect("union window"),
        )
    }

    /// Equality as polynomials, regardless of window.
    pub fn same_as(&self, other: &SparsePoly) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, -c);
        }
        a
    }

    pub fn scale(&self, k: &BigInt) -> SparsePoly {
        let mut out = SparsePoly::zero(self.lo, self.hi);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let (a, b) = self.aligned(other);
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(x, y)| x + y).collect();
                *acc.entry(m).or_default() += c1 * c2;
            }
        }
        let mut out = SparsePoly::zero(a.lo, a.hi);
        for (m, c) in acc {
            out.add_term(m, c);
        }
        out
    }

    /// Multiplies by `x_i`.
    pub fn mul_var(&self, i: i64) -> Result<SparsePoly> {
        let s = self.slot(i)?;
        let mut out = SparsePoly::zero(self.lo, self.hi);
        for (m, c) in &self.terms {
            let mut n = m.clone();
            n[s] += 1;
            out.add_term(n, c.clone());
        }
        Ok(out)
    }

    /// `∂_i f = (f − s_i f)/(x_i − x_{i+1})`, computed monomial by monomial:
    /// `(x_i^a x_{i+1}^b − x_i^b x_{i+1}^a)/(x_i − x_{i+1})` is
    /// `(x_i x_{i+1})^b Σ_{t<a−b} x_i^{a−b−1−t} x_{i+1}^t` when `a > b`.
    pub fn divided_difference(&self, i: i64) -> Result<SparsePoly> {
        let s = self.slot(i)?;
        let t = self.slot(i + 1)?;
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in &self.terms {
            let (a, b) = (m[s], m[t]);
            let (hi, lo, sign) = match a.cmp(&b) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b, BigInt::one()),
                Ordering::Less => (b, a, -BigInt::one()),
            };
            let d = hi - lo;
            for k in 0..d {
                let mut n = m.clone();
                n[s] = lo + d - 1 - k;
                n[t] = lo + k;
                *acc.entry(n).or_default() += c * &sign;
            }
        }
        let mut out = SparsePoly::zero(self.lo, self.hi);
        for (m, c) in acc {
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Isobaric divided difference `π_i f = ∂_i(x_i f)`.
    pub fn isobaric_difference(&self, i: i64) -> Result<SparsePoly> {
        self.mul_var(i)?.divided_difference(i)
    }

    /// The largest monomial in the order comparing exponents of the
    /// highest-indexed variable first.
    pub fn leading_term_revlex(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|(a, _), (b, _)| cmp_revlex(a, b))
    }

    /// Exponents as a sparse map `variable index → exponent`.
    pub fn exponents_of(&self, m: &[u32]) -> BTreeMap<i64, u32> {
        m.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, &e)| (self.lo + j as i64, e))
            .collect()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }
}

pub(crate) fn cmp_revlex(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, (m, c)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            let exps: Vec<String> = m.iter().map(|e| e.to_string()).collect();
            write!(f, "\"[{}]\": {c}", exps.join(","))?;
        }
        write!(f, "}}")
    }
}
