//! The operators `ξ` (drop the first letter) and `∇` (drop the first
//! letter, weighted by its value), on words and on Schubert expansions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::colored::{ColoredWord, Fingerprint, WordCombo};
use crate::error::{Error, Limits, Result};
use crate::perm::Permutation;
use crate::schubert::{
    back_stable_structure_constants, expansion_fingerprint, expansion_to_combo, product_combo,
    SchubertExpansion,
};
use crate::words::reduced_words;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Atom {
    Xi,
    Nabla,
}

impl Atom {
    /// Weight picked up when the first letter `value` is removed.
    fn weight(self, value: i64) -> BigInt {
        match self {
            Atom::Xi => BigInt::one(),
            Atom::Nabla => BigInt::from(value),
        }
    }

    pub fn apply_words(self, combo: &WordCombo) -> WordCombo {
        let mut out = WordCombo::zero();
        for (w, c) in combo.terms() {
            if let Some(first) = w.0.first() {
                out.add_term(w.tail(), c * self.weight(first.value));
            }
        }
        out
    }

    /// `𝔖̄_w ↦ Σ_k weight(k) 𝔖̄_{s_k w}` over the left descents `k` of `w`.
    pub fn apply_schubert(self, e: &SchubertExpansion) -> SchubertExpansion {
        let mut out = SchubertExpansion::zero();
        for (w, c) in e.terms() {
            for k in w.left_descents() {
                out.add_term(w.mul_simple_left(k), c * self.weight(k));
            }
        }
        out
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Atom::Xi => "xi",
            Atom::Nabla => "nabla",
        })
    }
}

pub fn xi_word(combo: &WordCombo) -> WordCombo {
    Atom::Xi.apply_words(combo)
}

pub fn nabla_word(combo: &WordCombo) -> WordCombo {
    Atom::Nabla.apply_words(combo)
}

pub fn xi_schubert(e: &SchubertExpansion) -> SchubertExpansion {
    Atom::Xi.apply_schubert(e)
}

pub fn nabla_schubert(e: &SchubertExpansion) -> SchubertExpansion {
    Atom::Nabla.apply_schubert(e)
}

/// A weighted sum of compositions of `ξ` and `∇`.
///
/// Text form: terms joined by `+`, each an optional integer weight `k*`
/// followed by factors joined by `;`. Factors compose as written, so
/// `xi;nabla` applies `∇` first. `id` is the empty composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorExpr {
    terms: Vec<(BigInt, Vec<Atom>)>,
}

impl OperatorExpr {
    pub fn identity() -> Self {
        OperatorExpr {
            terms: vec![(BigInt::one(), Vec::new())],
        }
    }

    pub fn atom(a: Atom) -> Self {
        OperatorExpr {
            terms: vec![(BigInt::one(), vec![a])],
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &OperatorExpr) -> OperatorExpr {
        let mut terms = Vec::new();
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                terms.push((a * b, f.iter().chain(g).copied().collect()));
            }
        }
        OperatorExpr { terms }
    }

    /// The single unweighted atom this expression consists of, if any.
    pub fn as_atom(&self) -> Option<Atom> {
        match self.terms.as_slice() {
            [(k, f)] if k.is_one() && f.len() == 1 => Some(f[0]),
            _ => None,
        }
    }

    pub fn uses_nabla(&self) -> bool {
        self.terms.iter().any(|(_, f)| f.contains(&Atom::Nabla))
    }

    pub fn apply_words(&self, combo: &WordCombo) -> WordCombo {
        let mut out = WordCombo::zero();
        for (k, factors) in &self.terms {
            let mut cur = combo.clone();
            for a in factors.iter().rev() {
                cur = a.apply_words(&cur);
            }
            out = out.add(&cur.scale(k));
        }
        out
    }

    pub fn apply_schubert(&self, e: &SchubertExpansion) -> SchubertExpansion {
        let mut out = SchubertExpansion::zero();
        for (k, factors) in &self.terms {
            let mut cur = e.clone();
            for a in factors.iter().rev() {
                cur = a.apply_schubert(&cur);
            }
            out = out.add(&cur.scale(k));
        }
        out
    }
}

impl FromStr for OperatorExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (weight, body) = match term.split_once('*') {
                Some((k, body)) => {
                    let k: BigInt = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad operator weight {k:?}")))?;
                    (k, body.trim())
                }
                None => (BigInt::one(), term),
            };
            let mut factors = Vec::new();
            for f in body.split(';') {
                match f.trim() {
                    "xi" | "ξ" => factors.push(Atom::Xi),
                    "nabla" | "∇" => factors.push(Atom::Nabla),
                    "id" => {}
                    other => return Err(Error::Parse(format!("unknown operator {other:?}"))),
                }
            }
            terms.push((weight, factors));
        }
        Ok(OperatorExpr { terms })
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (k, factors)) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, " + ")?;
            }
            if !k.is_one() {
                write!(f, "{k}*")?;
            }
            if factors.is_empty() {
                write!(f, "id")?;
            }
            for (i, a) in factors.iter().enumerate() {
                if i > 0 {
                    write!(f, ";")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}

/// `op(p·q) ≡ op(p)·q + p·op(q)`, compared through `T_b`.
pub fn leibniz_check(op: Atom, p: &ColoredWord, q: &ColoredWord) -> bool {
    let (wp, wq) = (WordCombo::word(p.clone()), WordCombo::word(q.clone()));
    let lhs = op.apply_words(&wp.product(&wq));
    let rhs = op
        .apply_words(&wp)
        .product(&wq)
        .add(&wp.product(&op.apply_words(&wq)));
    lhs.fingerprint() == rhs.fingerprint()
}

/// Both sides of `op(Sch(u)·Sch(v)) ≡ op(Σ c̄ Sch(w))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    pub product_side: Fingerprint,
    pub expansion_side: Fingerprint,
    /// `∇` only carries the guarantee on products of Schubert vectors.
    pub uses_nabla: bool,
}

impl PreservationReport {
    pub fn pass(&self) -> bool {
        self.product_side == self.expansion_side
    }
}

pub fn equivalence_preservation_check(
    u: &Permutation,
    v: &Permutation,
    op: &OperatorExpr,
    limits: &Limits,
) -> Result<PreservationReport> {
    let expansion = back_stable_structure_constants(u, v, limits)?;
    let product = product_combo(u, v, limits)?;
    let combo = expansion_to_combo(&expansion, limits)?;
    Ok(PreservationReport {
        product_side: op.apply_words(&product).fingerprint(),
        expansion_side: op.apply_words(&combo).fingerprint(),
        uses_nabla: op.uses_nabla(),
    })
}

/// `T_b` of `op` applied to the product of words, against `T_b` of `op`
/// applied to the Schubert expansion at the level of permutations.
pub fn operator_commutes_with_expansion(
    u: &Permutation,
    v: &Permutation,
    op: &OperatorExpr,
    limits: &Limits,
) -> Result<bool> {
    let expansion = back_stable_structure_constants(u, v, limits)?;
    let words = op.apply_words(&product_combo(u, v, limits)?).fingerprint();
    let schubert = expansion_fingerprint(&op.apply_schubert(&expansion), limits)?;
    Ok(words == schubert)
}

/// `ρ(w)`: the sum of all letters of all reduced words of `w`.
pub fn rho(w: &Permutation, limits: &Limits) -> Result<BigInt> {
    let rw = reduced_words(w, limits)?;
    Ok(rw.words.iter().flatten().map(|&x| BigInt::from(x)).sum())
}

/// `C(ℓu+ℓv, ℓv)·(ρ(u)|RW(v)| + |RW(u)|ρ(v)) = Σ_w c̄_w ρ(w)`.
pub fn rho_identity_check(
    u: &Permutation,
    v: &Permutation,
    expansion: &SchubertExpansion,
    limits: &Limits,
) -> Result<bool> {
    let (ru, rv) = (reduced_words(u, limits)?, reduced_words(v, limits)?);
    let choose = crate::colored::binomial((u.length() + v.length()) as usize, v.length() as usize);
    let lhs = BigInt::from(choose)
        * (rho(u, limits)? * BigInt::from(rv.len()) + BigInt::from(ru.len()) * rho(v, limits)?);
    let mut rhs = BigInt::zero();
    for (w, c) in expansion.terms() {
        rhs += c * rho(w, limits)?;
    }
    Ok(lhs == rhs)
}
