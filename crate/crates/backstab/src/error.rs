use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("{what} lies outside the window {lo}..={hi}")]
    OutOfWindow { what: String, lo: i64, hi: i64 },
    #[error("resource limit exceeded: {cap} (limit {limit})")]
    ResourceLimit { cap: &'static str, limit: u64 },
    #[error("empty window: lower cutoff {lower} exceeds the smallest maximal bottom entry {min}")]
    EmptyWindow { lower: i64, min: i64 },
    #[error("window upper end {hi} is below the last descent {descent}")]
    WindowTooSmall { hi: i64, descent: i64 },
    #[error("variable index {0} is outside the polynomial window")]
    IndexOutOfWindow(i64),
    #[error("word {0} is not reduced")]
    NotReduced(String),
    #[error("no witness tableau found for composition {0}")]
    NoWitnessTableau(String),
    #[error("{0} is not a permutation of the positive integers")]
    NotPositive(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource caps shared by the enumerating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest reduced-word set any single enumeration may produce.
    pub max_reduced_words: u64,
    /// Largest number of terms (shuffles, polynomial monomials, peeled
    /// Schubert terms) a single product may touch.
    pub max_terms: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_reduced_words: 1_000_000,
            max_terms: 50_000_000,
        }
    }
}

impl Limits {
    pub(crate) fn check_words(&self, n: u64) -> Result<()> {
        if n > self.max_reduced_words {
            return Err(Error::ResourceLimit {
                cap: "max-rw",
                limit: self.max_reduced_words,
            });
        }
        Ok(())
    }

    pub(crate) fn check_terms(&self, n: u64) -> Result<()> {
        if n > self.max_terms {
            return Err(Error::ResourceLimit {
                cap: "max-terms",
                limit: self.max_terms,
            });
        }
        Ok(())
    }
}
