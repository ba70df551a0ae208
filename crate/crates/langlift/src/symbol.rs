//! Symbols, alphabets, and words.
//!
//! `Word` orders by length first, then position-wise by symbol, so ordered
//! maps keyed by words iterate in length-lexicographic order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// An interned name: an input letter, a state, a stack symbol, or a variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(Arc<str>);

impl Sym {
    /// The symbol's name.
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Sym {
    fn from(s: &str) -> Self {
        Sym(Arc::from(s))
    }
}

impl From<String> for Sym {
    fn from(s: String) -> Self {
        Sym(Arc::from(s.as_str()))
    }
}

impl From<char> for Sym {
    fn from(c: char) -> Self {
        Sym(Arc::from(c.to_string().as_str()))
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

/// A finite sequence of symbols; the empty word renders as `ε`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Sym>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Build a word from its letters.
    pub fn from_syms(syms: Vec<Sym>) -> Self {
        Word(syms)
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Iterate over the letters.
    pub fn iter(&self) -> std::slice::Iter<'_, Sym> {
        self.0.iter()
    }

    /// The letters as a slice.
    pub fn as_slice(&self) -> &[Sym] {
        &self.0
    }

    /// Append one letter.
    pub fn push(&mut self, s: Sym) {
        self.0.push(s);
    }

    /// This word followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    /// Split into the prefix of length `k` and the remaining suffix.
    ///
    /// Panics if `k > len()`; callers check length first.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        let (a, b) = self.0.split_at(k);
        (Word(a.to_vec()), Word(b.to_vec()))
    }

    /// True if `prefix` is an initial segment of this word.
    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Parse a word from text. With an empty separator every Unicode scalar
    /// is one letter; otherwise letters are the non-empty pieces between
    /// separators. The empty string parses to the empty word.
    pub fn parse(text: &str, sep: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if sep.is_empty() {
            return Ok(Word(text.chars().map(Sym::from).collect()));
        }
        let mut letters = Vec::new();
        for piece in text.split(sep) {
            if piece.is_empty() {
                return Err(Error::Invalid(format!(
                    "empty letter in word `{text}` split on `{sep}`"
                )));
            }
            letters.push(Sym::from(piece));
        }
        Ok(Word(letters))
    }

    /// Render with the given separator between letters; `ε` when empty.
    pub fn render(&self, sep: &str) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        self.0
            .iter()
            .map(Sym::as_str)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl FromIterator<Sym> for Word {
    fn from_iter<I: IntoIterator<Item = Sym>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<&[Sym]> for Word {
    fn from(s: &[Sym]) -> Self {
        Word(s.to_vec())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Length first, then pointwise: length-lexicographic.
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(""))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.render(" "))
    }
}

/// A finite, duplicate-free, ordered set of symbols. Iteration follows the
/// declaration order, which fixes tie-breaking everywhere it matters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    syms: Vec<Sym>,
}

impl Alphabet {
    /// Build an alphabet, rejecting duplicates.
    pub fn new(syms: Vec<Sym>) -> Result<Alphabet> {
        for (i, s) in syms.iter().enumerate() {
            if syms[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { syms })
    }

    /// Convenience constructor from string slices; panics on duplicates, so
    /// it is meant for literals in tests and examples.
    pub fn of(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| Sym::from(*n)).collect())
            .expect("duplicate symbol in alphabet literal")
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.syms.len()
    }

    /// True when empty.
    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    /// Membership test.
    pub fn contains(&self, s: &Sym) -> bool {
        self.syms.contains(s)
    }

    /// Iterate in declaration order.
    pub fn iter(&self) -> std::slice::Iter<'_, Sym> {
        self.syms.iter()
    }

    /// True if no symbol occurs in both alphabets.
    pub fn disjoint(&self, other: &Alphabet) -> bool {
        self.syms.iter().all(|s| !other.contains(s))
    }

    /// All words over this alphabet of length exactly `n`, in
    /// declaration-order lexicographic order.
    pub fn words_of_len(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * self.syms.len());
            for w in &out {
                for s in &self.syms {
                    let mut v = w.clone();
                    v.push(s.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// All words of length at most `n`, shortest first.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| self.words_of_len(k)).collect()
    }
}
