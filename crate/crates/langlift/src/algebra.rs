//! Associative algebras over a semiring, and the output/derivative lifting
//! that turns such an algebra into one on `out × successor-per-letter`
//! pairs. The lifting is what lets determinized states carry algebraic
//! structure; `fuse` collapses a pair back into the base carrier.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::poly::Poly;
use crate::semiring::Semiring;
use crate::symbol::{Alphabet, Sym};

/// An associative unital algebra over the semiring `S`, with a fixed finite
/// letter alphabet embedded via `point`.
///
/// Required laws, all checked by the test suites: the carrier is a module
/// over `S` (add commutative/associative with `zero`, `scale` distributing
/// over both additions), `mul` is associative with unit `one` and bilinear,
/// and scalars commute past products: `embed(s).mul(a) = a.mul(embed(s))`.
pub trait Algebra<S: Semiring> {
    /// Carrier values.
    type Elem: Clone + Eq + Ord + fmt::Debug;

    /// The letter alphabet this algebra points.
    fn alphabet(&self) -> &Alphabet;

    /// Additive unit of the carrier.
    fn zero(&self) -> Self::Elem;

    /// Multiplicative unit of the carrier.
    fn one(&self) -> Self::Elem;

    /// Carrier addition.
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Scalar action.
    fn scale(&self, s: &S, a: &Self::Elem) -> Self::Elem;

    /// Carrier multiplication.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The distinguished carrier element of a letter.
    fn point(&self, letter: &Sym) -> Self::Elem;

    /// Scalar embedding: `s` scaled onto the unit.
    fn embed(&self, s: &S) -> Self::Elem {
        self.scale(s, &self.one())
    }
}

/// Polynomials over the disjoint union of a variable alphabet and the
/// letter alphabet, as an algebra. Only the letters are pointed; carrier
/// values may use any symbols, which the polynomial type itself does not
/// constrain.
#[derive(Clone, Debug)]
pub struct PolyAlgebra<S: Semiring> {
    letters: Alphabet,
    _semiring: PhantomData<S>,
}

impl<S: Semiring> PolyAlgebra<S> {
    /// An algebra of polynomials pointing the given letters.
    pub fn new(letters: Alphabet) -> Self {
        PolyAlgebra {
            letters,
            _semiring: PhantomData,
        }
    }
}

impl<S: Semiring> Algebra<S> for PolyAlgebra<S> {
    type Elem = Poly<S>;

    fn alphabet(&self) -> &Alphabet {
        &self.letters
    }

    fn zero(&self) -> Poly<S> {
        Poly::zero()
    }

    fn one(&self) -> Poly<S> {
        Poly::one()
    }

    fn add(&self, a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
        a.add(b)
    }

    fn scale(&self, s: &S, a: &Poly<S>) -> Poly<S> {
        a.scale(s)
    }

    fn mul(&self, a: &Poly<S>, b: &Poly<S>) -> Poly<S> {
        a.mul(b)
    }

    fn point(&self, letter: &Sym) -> Poly<S> {
        debug_assert!(self.letters.contains(letter), "pointing unknown letter");
        Poly::unit(letter.clone())
    }
}

/// One observation step: an output scalar and one carrier element per
/// letter. The derivative map is total on the algebra's alphabet.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MooreElem<S, E> {
    /// Output component.
    pub out: S,
    deriv: BTreeMap<Sym, E>,
}

impl<S: Semiring, E: Clone + Eq + Ord + fmt::Debug> MooreElem<S, E> {
    /// Build an element with one derivative per letter of `alphabet`.
    pub fn build(alphabet: &Alphabet, out: S, mut deriv_of: impl FnMut(&Sym) -> E) -> Self {
        let deriv = alphabet
            .iter()
            .map(|t| (t.clone(), deriv_of(t)))
            .collect();
        MooreElem { out, deriv }
    }

    /// The derivative at one letter.
    ///
    /// Panics if `letter` was not in the alphabet the element was built
    /// over; elements never leave the algebra that made them.
    pub fn deriv(&self, letter: &Sym) -> &E {
        self.deriv
            .get(letter)
            .expect("derivative looked up outside the element's alphabet")
    }

    /// Iterate over (letter, derivative) pairs in letter order.
    pub fn iter_deriv(&self) -> impl Iterator<Item = (&Sym, &E)> {
        self.deriv.iter()
    }
}

/// Collapse an observation back into the base algebra: the scalar embedding
/// of the output plus, for each letter, the pointed letter times the
/// derivative. The sum follows the alphabet's declaration order; addition
/// commutes, so the order only fixes evaluation, not the value.
pub fn fuse<S: Semiring, A: Algebra<S>>(base: &A, m: &MooreElem<S, A::Elem>) -> A::Elem {
    let mut acc = base.embed(&m.out);
    for t in base.alphabet().iter() {
        acc = base.add(&acc, &base.mul(&base.point(t), m.deriv(t)));
    }
    acc
}

/// The lifted algebra on observation pairs over a base algebra.
///
/// Operations, with `i` the scalar embedding and `j` the pointing of the
/// base: zero is `(0, _ ↦ 0)`; addition and scaling act componentwise; one
/// is `(1, _ ↦ 0)`; the product of `(o1, d1)` and `(o2, d2)` is
/// `(o1·o2, σ ↦ d1(σ) * fuse(o2, d2) + i(o1) * d2(σ))`; a letter σ embeds
/// as `(0, χ_σ)` with `χ_σ` the indicator derivative `σ ↦ 1, τ ↦ 0`.
#[derive(Clone, Debug)]
pub struct MooreAlgebra<S: Semiring, A: Algebra<S>> {
    /// The base algebra the derivatives live in.
    pub base: A,
    _semiring: PhantomData<S>,
}

impl<S: Semiring, A: Algebra<S>> MooreAlgebra<S, A> {
    /// Lift `base` to observation pairs.
    pub fn new(base: A) -> Self {
        MooreAlgebra {
            base,
            _semiring: PhantomData,
        }
    }
}

impl<S: Semiring, A: Algebra<S>> Algebra<S> for MooreAlgebra<S, A> {
    type Elem = MooreElem<S, A::Elem>;

    fn alphabet(&self) -> &Alphabet {
        self.base.alphabet()
    }

    fn zero(&self) -> Self::Elem {
        MooreElem::build(self.alphabet(), S::zero(), |_| self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        MooreElem::build(self.alphabet(), S::one(), |_| self.base.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        MooreElem::build(self.alphabet(), a.out.add(&b.out), |t| {
            self.base.add(a.deriv(t), b.deriv(t))
        })
    }

    fn scale(&self, s: &S, a: &Self::Elem) -> Self::Elem {
        MooreElem::build(self.alphabet(), s.mul(&a.out), |t| {
            self.base.scale(s, a.deriv(t))
        })
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        // The right factor contributes through its fused carrier value; the
        // left factor's output scales the right derivatives, which equals
        // multiplication by the embedded scalar, by bilinearity.
        let fused_b = fuse(&self.base, b);
        MooreElem::build(self.alphabet(), a.out.mul(&b.out), |t| {
            let via_a = self.base.mul(a.deriv(t), &fused_b);
            let via_b = self.base.scale(&a.out, b.deriv(t));
            self.base.add(&via_a, &via_b)
        })
    }

    fn point(&self, letter: &Sym) -> Self::Elem {
        debug_assert!(self.alphabet().contains(letter), "pointing unknown letter");
        MooreElem::build(self.alphabet(), S::zero(), |t| {
            if t == letter {
                self.base.one()
            } else {
                self.base.zero()
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Nat;
    use crate::symbol::Word;

    fn w(s: &str) -> Word {
        Word::parse(s, "").unwrap()
    }

    fn nat(n: u32) -> Nat {
        Nat::from(n)
    }

    fn setup() -> MooreAlgebra<Nat, PolyAlgebra<Nat>> {
        MooreAlgebra::new(PolyAlgebra::new(Alphabet::of(&["a", "b"])))
    }

    #[test]
    fn fuse_of_one_is_carrier_one() {
        let alg = setup();
        assert_eq!(fuse(&alg.base, &alg.one()), Poly::one());
    }

    #[test]
    fn fuse_of_pointing_is_pointed_letter() {
        let alg = setup();
        let a = Sym::from("a");
        assert_eq!(fuse(&alg.base, &alg.point(&a)), Poly::unit(a));
    }

    #[test]
    fn fuse_formula_by_hand() {
        // out 2, derivative 1·x at a, zero at b: expect 2·eps + 1·ax.
        let alg = setup();
        let m = MooreElem::build(alg.alphabet(), nat(2), |t| {
            if t.as_str() == "a" {
                Poly::unit(Sym::from("x"))
            } else {
                Poly::zero()
            }
        });
        let expect = Poly::from_terms([(w(""), nat(2)), (w("ax"), nat(1))]);
        assert_eq!(fuse(&alg.base, &m), expect);
    }

    #[test]
    fn mul_by_hand() {
        // (1, a↦1·x, b↦0) * (2, a↦1·y, b↦0) over nat:
        // out 2; fuse of the right factor is 2·eps + 1·ay;
        // deriv(a) = x·(2·eps + 1·ay) + 1·y = 2·x + 1·xay + 1·y.
        let alg = setup();
        let m1 = MooreElem::build(alg.alphabet(), nat(1), |t| {
            if t.as_str() == "a" {
                Poly::unit(Sym::from("x"))
            } else {
                Poly::zero()
            }
        });
        let m2 = MooreElem::build(alg.alphabet(), nat(2), |t| {
            if t.as_str() == "a" {
                Poly::unit(Sym::from("y"))
            } else {
                Poly::zero()
            }
        });
        let prod = alg.mul(&m1, &m2);
        assert_eq!(prod.out, nat(2));
        let expect_a = Poly::from_terms([(w("x"), nat(2)), (w("xay"), nat(1)), (w("y"), nat(1))]);
        assert_eq!(prod.deriv(&Sym::from("a")), &expect_a);
        assert_eq!(prod.deriv(&Sym::from("b")), &Poly::zero());
    }

    #[test]
    fn unit_laws_on_samples() {
        let alg = setup();
        let m = MooreElem::build(alg.alphabet(), nat(3), |t| {
            if t.as_str() == "b" {
                Poly::from_terms([(w("xy"), nat(2)), (w(""), nat(1))])
            } else {
                Poly::unit(Sym::from("a"))
            }
        });
        assert_eq!(alg.mul(&alg.one(), &m), m);
        assert_eq!(alg.mul(&m, &alg.one()), m);
        assert_eq!(alg.add(&alg.zero(), &m), m);
        assert_eq!(alg.scale(&nat(1), &m), m);
        assert_eq!(alg.mul(&alg.zero(), &m), alg.zero());
        assert_eq!(alg.mul(&m, &alg.zero()), alg.zero());
    }

    #[test]
    fn pointings_differ_only_in_their_slots() {
        let alg = setup();
        let pa = alg.point(&Sym::from("a"));
        let pb = alg.point(&Sym::from("b"));
        assert_eq!(pa.out, nat(0));
        assert_eq!(pa.deriv(&Sym::from("a")), &Poly::one());
        assert_eq!(pa.deriv(&Sym::from("b")), &Poly::zero());
        assert_eq!(pb.deriv(&Sym::from("a")), &Poly::zero());
        assert_eq!(pb.deriv(&Sym::from("b")), &Poly::one());
    }

    #[test]
    fn scalars_commute_past_products() {
        let base = PolyAlgebra::<Nat>::new(Alphabet::of(&["a"]));
        let x = Poly::from_terms([(w("ax"), nat(2)), (w(""), nat(1))]);
        let s = nat(5);
        let left = base.mul(&base.embed(&s), &x);
        let right = base.mul(&x, &base.embed(&s));
        assert_eq!(left, right);
        assert_eq!(left, x.scale(&s));
    }
}
