//! Error type shared by the whole crate.

use crate::symbol::Sym;

/// Errors raised by construction, running, and comparison operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A word contains a letter outside the relevant alphabet.
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(Sym),
    /// An alphabet declaration repeats a symbol.
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(Sym),
    /// Two behaviours that must share an alphabet do not.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    /// A configured search bound was exceeded; distinct from a negative verdict.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// A tree prefix is cut above the depth a comparison needs.
    #[error("tree prefix is cut at depth {cut} but the comparison needs depth {needed}")]
    CutAboveDepth {
        /// Depth of the offending cut marker.
        cut: usize,
        /// Depth the caller asked to compare to.
        needed: usize,
    },
    /// Any other violated precondition, with a human-readable description.
    #[error("{0}")]
    Invalid(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
