//! Exact back-stable Schubert calculus.
//!
//! Permutations of the integers with finite support, their reduced words,
//! the colored shuffle algebra of words, Schubert and key polynomials, and
//! the back- and forward-stabilization numbers of Schubert structure
//! constants. Every closed formula ships next to a brute-force oracle.

pub mod colored;
pub mod connectivity;
pub mod error;
pub mod keys;
pub mod operators;
pub mod perm;
pub mod poly;
pub mod schubert;
pub mod stabilization;
pub mod words;

pub use colored::{ColoredLetter, ColoredWord, WordCombo};
pub use error::{Error, Limits, Result};
pub use perm::{CodeProfile, Permutation};
pub use poly::SparsePoly;
pub use schubert::SchubertExpansion;
pub use words::Word;
