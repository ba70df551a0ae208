//! Seeded random generation of words, polynomials, observation pairs,
//! automata, and grammars. Everything flows from one explicit seed, so
//! failures reproduce exactly.

use std::collections::{BTreeMap, BTreeSet};

use langlift::algebra::MooreElem;
use langlift::grammar::WeightedGrammar;
use langlift::nfa::Nfa;
use langlift::{Alphabet, Int, Nat, Poly, Semiring, Sym, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded source of random test data.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    /// Start a stream from a seed.
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    /// True with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// A fair random truth value, also usable as a scalar.
    pub fn scalar_bool(&mut self) -> bool {
        self.rng.gen()
    }

    /// A natural number up to `max`.
    pub fn scalar_nat(&mut self, max: u64) -> Nat {
        Nat::from(self.rng.gen_range(0..=max))
    }

    /// An integer with magnitude up to `mag`.
    pub fn scalar_int(&mut self, mag: i64) -> Int {
        Int::from(self.rng.gen_range(-mag..=mag))
    }

    /// One of the alphabet's symbols.
    pub fn sym(&mut self, alphabet: &Alphabet) -> Sym {
        let i = self.below(alphabet.len());
        alphabet.iter().nth(i).expect("index below length").clone()
    }

    /// A word of length up to `max_len`.
    pub fn word(&mut self, alphabet: &Alphabet, max_len: usize) -> Word {
        let n = self.below(max_len + 1);
        (0..n).map(|_| self.sym(alphabet)).collect()
    }

    /// A polynomial with up to `max_terms` monomials of length up to
    /// `max_word` over `support`, with scalars drawn from `scalar`.
    pub fn poly<S: Semiring>(
        &mut self,
        support: &Alphabet,
        max_terms: usize,
        max_word: usize,
        mut scalar: impl FnMut(&mut Gen) -> S,
    ) -> Poly<S> {
        let n = self.below(max_terms + 1);
        let mut p = Poly::zero();
        for _ in 0..n {
            let w = self.word(support, max_word);
            let c = scalar(self);
            p = p.add(&Poly::monomial(c, w));
        }
        p
    }

    /// An observation pair with polynomial derivatives: the output and each
    /// letter's derivative drawn independently.
    pub fn moore_poly<S: Semiring>(
        &mut self,
        letters: &Alphabet,
        support: &Alphabet,
        max_terms: usize,
        max_word: usize,
        mut scalar: impl FnMut(&mut Gen) -> S,
    ) -> MooreElem<S, Poly<S>> {
        let out = scalar(self);
        MooreElem::build(letters, out, |_| {
            self.poly(support, max_terms, max_word, &mut scalar)
        })
    }

    /// An automaton with `n` states `q0..`, random acceptance, and random
    /// transition sets of the given density.
    pub fn nfa(&mut self, n: usize, alphabet: &Alphabet, density: f64) -> Nfa {
        assert!(n > 0, "an automaton needs a state");
        let states: Vec<Sym> = (0..n).map(|i| Sym::from(format!("q{i}"))).collect();
        let accepting: BTreeSet<Sym> = states
            .iter()
            .filter(|_| self.chance(0.4))
            .cloned()
            .collect();
        let mut trans = BTreeMap::new();
        for q in &states {
            for letter in alphabet.iter() {
                let targets: BTreeSet<Sym> = states
                    .iter()
                    .filter(|_| self.chance(density))
                    .cloned()
                    .collect();
                if !targets.is_empty() {
                    trans.insert((q.clone(), letter.clone()), targets);
                }
            }
        }
        Nfa::new(
            states.clone(),
            alphabet.clone(),
            states[0].clone(),
            accepting,
            trans,
        )
        .expect("generated names are declared")
    }

    /// A small grammar with `n` nonterminals `X0..` over the given letters:
    /// each nonterminal gets an output with even odds and, per letter, a
    /// short production polynomial most of the time.
    pub fn grammar<S: Semiring>(
        &mut self,
        n: usize,
        terminals: &Alphabet,
        mut scalar: impl FnMut(&mut Gen) -> S,
    ) -> WeightedGrammar<S> {
        assert!(n > 0, "a grammar needs a nonterminal");
        let nonterminals =
            Alphabet::new((0..n).map(|i| Sym::from(format!("X{i}"))).collect())
                .expect("generated names are distinct");
        let mut out = BTreeMap::new();
        for x in nonterminals.iter() {
            if self.chance(0.5) {
                let c = scalar(self);
                if !c.is_zero() {
                    out.insert(x.clone(), c);
                }
            }
        }
        let mut step = BTreeMap::new();
        for x in nonterminals.iter() {
            for letter in terminals.iter() {
                if self.chance(0.7) {
                    let p = self.poly(&nonterminals, 2, 2, &mut scalar);
                    if !p.is_zero() {
                        step.insert((x.clone(), letter.clone()), p);
                    }
                }
            }
        }
        let start = Poly::unit(nonterminals.iter().next().expect("nonempty").clone());
        WeightedGrammar {
            nonterminals,
            terminals: terminals.clone(),
            out,
            step,
            start,
        }
    }
}
