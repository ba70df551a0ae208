//! Deterministic language semantics for automata with side effects.
//!
//! The unifying move: a machine whose transitions land in some structured
//! collection of states — sets for nondeterminism, stack-indexed tables for
//! pushdown storage, weighted polynomials for grammars — determinizes into
//! an ordinary step-per-letter behaviour over that collection, and every
//! language question becomes a question about behaviours: running words,
//! enumerating reachable states, bounded or exact equivalence checking,
//! and solving guarded equation systems against an external behaviour.
//!
//! The pieces:
//!
//! - [`symbol`]: interned symbols, words, alphabets.
//! - [`semiring`]: the weight structures (`bool`, [`Nat`], [`Int`]).
//! - [`poly`]: weighted polynomials over words of symbols.
//! - [`algebra`]: algebras over a semiring and the output/derivative
//!   lifting with its collapse map [`algebra::fuse`].
//! - [`engine`]: the [`engine::Behavior`] trait and the generic machinery —
//!   word runs, reachability, bisimulation with an up-to hook, and flat
//!   equation systems with checkable solutions.
//! - [`nfa`]: finite automata, subset construction, and exact equivalence
//!   via bisimulation up to union-congruence.
//! - [`stack`]: pushdown machines with `k`-bounded stack inspection, in
//!   deterministic and nondeterministic kinds.
//! - [`grammar`]: weighted grammars and their two determinizations, which
//!   agree on every word weight.
//! - [`rps`]: guarded recursion schemes and depth-bounded tree unfolding.

#![warn(missing_docs)]

pub mod algebra;
pub mod engine;
pub mod error;
pub mod grammar;
pub mod nfa;
pub mod poly;
pub mod rps;
pub mod semiring;
pub mod stack;
pub mod symbol;

pub use error::{Error, Result};
pub use poly::Poly;
pub use semiring::{Int, Nat, Semiring, SemiringKind};
pub use symbol::{Alphabet, Sym, Word};

/// Polynomials weighted by truth values: formal languages of monomials.
pub type BoolPoly = Poly<bool>;

/// Polynomials with natural-number weights.
pub type NatPoly = Poly<Nat>;

/// Polynomials with integer weights.
pub type IntPoly = Poly<Int>;
