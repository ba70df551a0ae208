//! Noncommutative polynomials: finite-support maps from words over a
//! variable alphabet to semiring values, with module structure, the
//! bilinear concatenation product, and substitution.
//!
//! Invariant: stored coefficients are never zero, so value equality is
//! normal-form equality and polynomials can serve as canonical states.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::Semiring;
use crate::symbol::{Alphabet, Sym, Word};

/// A polynomial with words as monomials and exact scalar coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<S: Semiring> {
    terms: BTreeMap<Word, S>,
}

impl<S: Semiring> Poly<S> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: the empty word with coefficient one.
    pub fn one() -> Self {
        Poly::monomial(S::one(), Word::empty())
    }

    /// The unit of substitution: a single variable with coefficient one.
    pub fn unit(x: Sym) -> Self {
        Poly::monomial(S::one(), Word::from_syms(vec![x]))
    }

    /// A whole word with coefficient one.
    pub fn of_word(w: Word) -> Self {
        Poly::monomial(S::one(), w)
    }

    /// A single scaled word; normalizes away a zero coefficient.
    pub fn monomial(c: S, w: Word) -> Self {
        let mut p = Poly::zero();
        p.insert_add(w, c);
        p
    }

    /// Build from any (word, coefficient) pairs, summing duplicates and
    /// dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.insert_add(w, c);
        }
        p
    }

    fn insert_add(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            None => {
                self.terms.insert(w, c);
            }
            Some(old) => {
                let new = old.add(&c);
                if !new.is_zero() {
                    self.terms.insert(w, new);
                }
            }
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials in the support.
    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// The coefficient of `w`, zero when absent.
    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    /// Iterate over (word, coefficient) pairs in length-lex word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Poly<S>) -> Poly<S> {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert_add(w.clone(), c.clone());
        }
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &S) -> Poly<S> {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.insert_add(w.clone(), s.mul(c));
        }
        out
    }

    /// Concatenation product, extended bilinearly from words.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.insert_add(u.concat(v), a.mul(b));
            }
        }
        out
    }

    /// Substitution: replace each variable by a polynomial and multiply out.
    /// A word maps to the ordered product of its letters' images; the empty
    /// word maps to `one`.
    pub fn subst<F>(&self, mut f: F) -> Poly<S>
    where
        F: FnMut(&Sym) -> Poly<S>,
    {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            let mut prod = Poly::one();
            for x in w.iter() {
                prod = prod.mul(&f(x));
            }
            out = out.add(&prod.scale(c));
        }
        out
    }

    /// Check that every variable in the support is in `allowed`.
    pub fn ensure_support(&self, allowed: &Alphabet) -> Result<()> {
        for (w, _) in self.iter() {
            for x in w.iter() {
                if !allowed.contains(x) {
                    return Err(Error::UnknownLetter(x.clone()));
                }
            }
        }
        Ok(())
    }

    /// View a polynomial over `vars` as one over the disjoint union of
    /// `vars` and `letters`. The support is unchanged; the call fails if the
    /// two alphabets collide or the support strays outside `vars`.
    pub fn embed(&self, vars: &Alphabet, letters: &Alphabet) -> Result<Poly<S>> {
        if !vars.disjoint(letters) {
            let clash = vars
                .iter()
                .find(|s| letters.contains(s))
                .expect("non-disjoint alphabets share a symbol");
            return Err(Error::AlphabetMismatch(format!(
                "symbol `{clash}` is both a variable and a letter"
            )));
        }
        self.ensure_support(vars)?;
        Ok(self.clone())
    }

    /// Render as `+`-separated monomials, each `coeff letter letter ...`
    /// with `eps` for the empty word. Monomials appear in length-lex order,
    /// so the output is canonical and reparses to an equal polynomial.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "eps".to_string()
                } else {
                    w.render(" ")
                };
                format!("{c} {word}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parse the `render` syntax: monomials separated by `+`, each a
    /// coefficient token followed by letter tokens (or `eps`). A lone `0`
    /// is the zero polynomial.
    pub fn parse(text: &str) -> Result<Poly<S>> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::Invalid("empty polynomial".to_string()));
        }
        if trimmed == "0" {
            return Ok(Poly::zero());
        }
        let mut out = Poly::zero();
        for part in trimmed.split('+') {
            let tokens: Vec<&str> = part.split_whitespace().collect();
            if tokens.is_empty() {
                return Err(Error::Invalid(format!(
                    "empty monomial in polynomial `{text}`"
                )));
            }
            let coeff = S::parse(tokens[0])?;
            let word = if tokens[1..] == ["eps"] {
                Word::empty()
            } else {
                if tokens[1..].contains(&"eps") {
                    return Err(Error::Invalid(format!(
                        "`eps` mixed with letters in monomial `{}`",
                        part.trim()
                    )));
                }
                if tokens.len() == 1 {
                    return Err(Error::Invalid(format!(
                        "monomial `{}` has a coefficient but no word; write `{} eps` for the empty word",
                        part.trim(),
                        tokens[0]
                    )));
                }
                Word::from_syms(tokens[1..].iter().map(|t| Sym::from(*t)).collect())
            };
            out.insert_add(word, coeff);
        }
        Ok(out)
    }
}

impl<S: Semiring> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<S: Semiring> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Nat;

    fn w(s: &str) -> Word {
        Word::parse(s, "").unwrap()
    }

    fn nat(n: u32) -> Nat {
        Nat::from(n)
    }

    #[test]
    fn add_merges_words() {
        let p = Poly::from_terms([(w("ab"), nat(2)), (w(""), nat(1))]);
        let q = Poly::monomial(nat(3), w("ab"));
        let sum = p.add(&q);
        assert_eq!(sum.coeff(&w("ab")), nat(5));
        assert_eq!(sum.coeff(&w("")), nat(1));
        assert_eq!(sum.render(), "1 eps + 5 a b");
    }

    #[test]
    fn scale_by_zero_annihilates() {
        let p = Poly::from_terms([(w("a"), nat(2)), (w("b"), nat(3))]);
        assert!(p.scale(&nat(0)).is_zero());
        assert_eq!(p.add(&Poly::zero()), p);
    }

    #[test]
    fn mul_concatenates_words() {
        let a: Poly<Nat> = Poly::unit(Sym::from("a"));
        let b = Poly::unit(Sym::from("b"));
        assert_eq!(a.mul(&b), Poly::of_word(w("ab")));

        let ab = a.add(&b);
        let c = Poly::unit(Sym::from("c"));
        let expect = Poly::from_terms([(w("ac"), nat(1)), (w("bc"), nat(1))]);
        assert_eq!(ab.mul(&c), expect);

        let two_a = Poly::monomial(nat(2), w("a"));
        let three_a = Poly::monomial(nat(3), w("a"));
        assert_eq!(two_a.mul(&three_a), Poly::monomial(nat(6), w("aa")));
    }

    #[test]
    fn subst_unit_laws() {
        let q = Poly::from_terms([(w("ab"), nat(2)), (w(""), nat(1))]);
        let unit_x: Poly<Nat> = Poly::unit(Sym::from("x"));
        assert_eq!(unit_x.subst(|_| q.clone()), q, "subst after unit applies f");
        assert_eq!(
            q.subst(|y| Poly::unit(y.clone())),
            q,
            "identity substitution"
        );
    }

    #[test]
    fn subst_expands_products() {
        let xy: Poly<Nat> = Poly::of_word(w("xy"));
        let img = xy.subst(|v| {
            if v.as_str() == "x" {
                Poly::from_terms([(w("a"), nat(1)), (w("b"), nat(1))])
            } else {
                Poly::unit(Sym::from("c"))
            }
        });
        let expect = Poly::from_terms([(w("ac"), nat(1)), (w("bc"), nat(1))]);
        assert_eq!(img, expect);
    }

    #[test]
    fn embed_checks_alphabets() {
        let vars = Alphabet::of(&["x"]);
        let letters = Alphabet::of(&["a"]);
        let p: Poly<Nat> = Poly::unit(Sym::from("x"));
        assert_eq!(p.embed(&vars, &letters).unwrap(), p);
        assert!(Poly::<Nat>::zero().embed(&vars, &letters).unwrap().is_zero());

        let stray: Poly<Nat> = Poly::unit(Sym::from("a"));
        assert_eq!(
            stray.embed(&vars, &letters).unwrap_err(),
            Error::UnknownLetter(Sym::from("a"))
        );
        let clash = Alphabet::of(&["x", "a"]);
        assert!(matches!(
            p.embed(&clash, &letters).unwrap_err(),
            Error::AlphabetMismatch(_)
        ));
    }

    #[test]
    fn render_parse_roundtrip() {
        let p = Poly::from_terms([(w("ba"), nat(7)), (w(""), nat(2)), (w("a"), nat(1))]);
        let back = Poly::<Nat>::parse(&p.render()).unwrap();
        assert_eq!(back, p);
        assert_eq!(Poly::<Nat>::parse("0").unwrap(), Poly::zero());
        assert!(Poly::<Nat>::parse("2").is_err());
        assert!(Poly::<Nat>::parse("1 eps eps").is_err());
        assert!(Poly::<Nat>::parse("").is_err());
    }

    #[test]
    fn bool_poly_coefficients_saturate() {
        let p: Poly<bool> = Poly::from_terms([(w("a"), true), (w("a"), true)]);
        assert_eq!(p.coeff(&w("a")), true);
        assert_eq!(p.render(), "true a");
    }
}
