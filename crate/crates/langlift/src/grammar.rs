//! Weighted grammars in head-letter form: every production consumes one
//! input letter and yields a polynomial over nonterminals and letters, and
//! every nonterminal carries an output weight. Such a grammar induces a
//! weighted word function in two ways, both implemented here.
//!
//! The *hat* view extends outputs and steps along monomials letter by
//! letter, obeying a product rule that multiplies by the untouched tail
//! monomial. The *sharp* view folds each monomial through the lifted
//! observation algebra, so the tail contributes through its fused carrier
//! value instead. The two disagree state-by-state yet assign every word
//! the same weight, which the test suites check extensively.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, MooreAlgebra, MooreElem, PolyAlgebra};
use crate::engine::{run_word, Behavior};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::semiring::{sum, Semiring};
use crate::symbol::{Alphabet, Sym, Word};

/// Which of the two word functions to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Word-indexed extension along monomials.
    Hat,
    /// Fold through the lifted observation algebra.
    Sharp,
}

impl Mode {
    /// Parse a mode name as used on the command line.
    pub fn from_name(name: &str) -> Option<Mode> {
        match name {
            "hat" => Some(Mode::Hat),
            "sharp" => Some(Mode::Sharp),
            _ => None,
        }
    }

    /// The command-line name.
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Hat => "hat",
            Mode::Sharp => "sharp",
        }
    }
}

/// A weighted grammar: outputs and per-letter steps for each nonterminal,
/// plus a start polynomial. Missing output or step entries mean zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGrammar<S: Semiring> {
    /// Rewriteable symbols.
    pub nonterminals: Alphabet,
    /// Input letters.
    pub terminals: Alphabet,
    /// Output weight per nonterminal; absent means zero.
    pub out: BTreeMap<Sym, S>,
    /// Step polynomial per (nonterminal, letter); absent means zero. Each
    /// step consumes exactly one letter, so its support stays over
    /// nonterminals; general grammars must be rewritten into this form first.
    pub step: BTreeMap<(Sym, Sym), Poly<S>>,
    /// Where runs begin; a polynomial over nonterminals.
    pub start: Poly<S>,
}

impl<S: Semiring> WeightedGrammar<S> {
    /// Collect every static defect as a human-readable diagnostic.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for s in self.nonterminals.iter() {
            if self.terminals.contains(s) {
                problems.push(format!("symbol `{s}` is both a nonterminal and a letter"));
            }
        }
        for x in self.out.keys() {
            if !self.nonterminals.contains(x) {
                problems.push(format!("output clause for undeclared nonterminal `{x}`"));
            }
        }
        for ((x, letter), poly) in &self.step {
            if !self.nonterminals.contains(x) {
                problems.push(format!("step clause for undeclared nonterminal `{x}`"));
            }
            if !self.terminals.contains(letter) {
                problems.push(format!("step clause for `{x}` reads undeclared letter `{letter}`"));
            }
            for (word, _) in poly.iter() {
                for s in word.iter() {
                    if !self.nonterminals.contains(s) {
                        problems.push(format!(
                            "step clause for `{x}` on `{letter}` uses `{s}`, which is not a declared nonterminal"
                        ));
                    }
                }
            }
        }
        for (word, _) in self.start.iter() {
            for s in word.iter() {
                if !self.nonterminals.contains(s) {
                    problems.push(format!(
                        "start polynomial uses `{s}`, which is not a declared nonterminal"
                    ));
                }
            }
        }
        problems
    }

    fn require_valid(&self) -> Result<()> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(problems.join("; ")))
        }
    }

    /// Nonterminals followed by letters, as one alphabet. Fails when the
    /// two overlap.
    pub fn combined(&self) -> Result<Alphabet> {
        Alphabet::new(
            self.nonterminals
                .iter()
                .chain(self.terminals.iter())
                .cloned()
                .collect(),
        )
    }

    /// Output weight of one symbol: declared weight for nonterminals, zero
    /// for letters.
    pub fn out_of(&self, s: &Sym) -> S {
        self.out.get(s).cloned().unwrap_or_else(S::zero)
    }

    /// Step polynomial of one symbol under one letter: the declared clause
    /// for nonterminals; for a letter, one exactly at itself, else zero.
    pub fn step_of(&self, s: &Sym, letter: &Sym) -> Poly<S> {
        if self.terminals.contains(s) {
            if s == letter {
                Poly::one()
            } else {
                Poly::zero()
            }
        } else {
            self.step
                .get(&(s.clone(), letter.clone()))
                .cloned()
                .unwrap_or_else(Poly::zero)
        }
    }

    /// Output of a monomial: the product of its symbols' outputs, one for
    /// the empty monomial. Short-circuits on zero, which most long
    /// monomials hit early because letters have output zero.
    pub fn monomial_out(&self, u: &[Sym]) -> S {
        let mut acc = S::one();
        for s in u {
            acc = acc.mul(&self.out_of(s));
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Step of a monomial under one letter, by the product rule: the head's
    /// step times the untouched tail monomial, plus the head's output times
    /// the tail's step.
    pub fn monomial_step(&self, u: &[Sym], letter: &Sym) -> Poly<S> {
        match u.split_first() {
            None => Poly::zero(),
            Some((head, tail)) => {
                let via_head = self
                    .step_of(head, letter)
                    .mul(&Poly::of_word(Word::from(tail)));
                let via_tail = self.monomial_step(tail, letter).scale(&self.out_of(head));
                via_head.add(&via_tail)
            }
        }
    }

    /// The word-indexed extension as a runnable behaviour.
    pub fn hat(&self) -> Result<HatView<'_, S>> {
        self.require_valid()?;
        Ok(HatView { g: self })
    }

    /// The algebra-fold extension as a runnable behaviour.
    pub fn sharp(&self) -> Result<SharpView<'_, S>> {
        self.require_valid()?;
        let mut fuses = BTreeMap::new();
        for x in self.nonterminals.iter() {
            let mut fused = Poly::one().scale(&self.out_of(x));
            for letter in self.terminals.iter() {
                fused = fused.add(&Poly::unit(letter.clone()).mul(&self.step_of(x, letter)));
            }
            fuses.insert(x.clone(), fused);
        }
        for letter in self.terminals.iter() {
            fuses.insert(letter.clone(), Poly::unit(letter.clone()));
        }
        Ok(SharpView {
            g: self,
            moore: MooreAlgebra::new(PolyAlgebra::new(self.terminals.clone())),
            fuses,
        })
    }

    /// The behaviour selected by `mode`.
    pub fn view(&self, mode: Mode) -> Result<GrammarView<'_, S>> {
        Ok(match mode {
            Mode::Hat => GrammarView::Hat(self.hat()?),
            Mode::Sharp => GrammarView::Sharp(self.sharp()?),
        })
    }

    /// Check that a polynomial can serve as a state of the given mode: hat
    /// states range over nonterminals, sharp states over nonterminals and
    /// letters alike.
    pub fn check_state(&self, mode: Mode, p: &Poly<S>) -> Result<()> {
        match mode {
            Mode::Hat => p.ensure_support(&self.nonterminals),
            Mode::Sharp => p.ensure_support(&self.combined()?),
        }
    }

    /// Parse a state polynomial and check its support for the given mode.
    pub fn parse_state(&self, mode: Mode, text: &str) -> Result<Poly<S>> {
        let p = Poly::parse(text)?;
        self.check_state(mode, &p)?;
        Ok(p)
    }

    /// The weight this grammar assigns to `w` starting from `from`, under
    /// the chosen mode. Both modes agree on every word.
    pub fn coeff(&self, mode: Mode, from: &Poly<S>, w: &Word) -> Result<S> {
        self.check_state(mode, from)?;
        run_word(&self.view(mode)?, from, w)
    }
}

/// Word-indexed extension: outputs and steps of a polynomial state are the
/// weighted sums of its monomials' outputs and steps.
pub struct HatView<'g, S: Semiring> {
    g: &'g WeightedGrammar<S>,
}

impl<S: Semiring> Behavior for HatView<'_, S> {
    type State = Poly<S>;
    type Out = S;

    fn alphabet(&self) -> &Alphabet {
        &self.g.terminals
    }

    fn output(&self, p: &Poly<S>) -> S {
        sum(p.iter().map(|(u, c)| c.mul(&self.g.monomial_out(u.as_slice()))))
    }

    fn step(&self, p: &Poly<S>, letter: &Sym) -> Poly<S> {
        p.iter().fold(Poly::zero(), |acc, (u, c)| {
            acc.add(&self.g.monomial_step(u.as_slice(), letter).scale(c))
        })
    }

    fn show_state(&self, p: &Poly<S>) -> String {
        p.render()
    }
}

/// Algebra-fold extension: a polynomial state is interpreted in the lifted
/// observation algebra — letters as pointings, nonterminals as their declared
/// observations — and the resulting pair is read off.
pub struct SharpView<'g, S: Semiring> {
    g: &'g WeightedGrammar<S>,
    moore: MooreAlgebra<S, PolyAlgebra<S>>,
    // Per symbol, the fused carrier value of its observation pair. Fusing
    // commutes with the fold, so a monomial's fused value is the product of
    // these, which lets derivatives share their tail computations.
    fuses: BTreeMap<Sym, Poly<S>>,
}

impl<S: Semiring> SharpView<'_, S> {
    /// The lifted algebra the fold runs in; its base points the letters.
    pub fn algebra(&self) -> &MooreAlgebra<S, PolyAlgebra<S>> {
        &self.moore
    }

    /// The observation pair of one symbol: a letter becomes its pointing,
    /// a nonterminal its declared output and steps.
    pub fn symbol_elem(&self, s: &Sym) -> MooreElem<S, Poly<S>> {
        MooreElem::build(&self.g.terminals, self.g.out_of(s), |letter| {
            self.g.step_of(s, letter)
        })
    }

    /// The fused carrier value of one symbol's observation pair: its output
    /// times the empty word, plus each letter prepended to its step under
    /// that letter. A letter fuses to itself.
    pub fn symbol_fuse(&self, s: &Sym) -> &Poly<S> {
        &self.fuses[s]
    }

    /// The fused value of a whole monomial: the product of its symbols'
    /// fused values, because fusing turns observation products into carrier
    /// products.
    pub fn monomial_fuse(&self, u: &[Sym]) -> Poly<S> {
        u.iter().fold(Poly::one(), |acc, s| acc.mul(self.symbol_fuse(s)))
    }

    /// An estimate of the work one `step` from `p` costs, measured in
    /// monomials written: each monomial contributes the product of its
    /// symbols' fused support sizes, once per suffix. The estimate is
    /// letter-independent and cheap, so callers can refuse steps whose
    /// results are too large to materialize — live sharp trajectories
    /// roughly square their support with every consumed letter.
    pub fn step_work_bound(&self, p: &Poly<S>) -> f64 {
        p.iter()
            .map(|(u, _)| {
                let product: f64 = u
                    .iter()
                    .map(|s| self.symbol_fuse(s).support_len() as f64)
                    .product();
                (u.len() + 1) as f64 * product
            })
            .sum()
    }

    /// One derivative of a monomial. Walks the monomial back to front so
    /// every suffix's fused value and derivative are computed once:
    /// stepping s·u under a letter gives step(s)·fuse(u) + out(s)·step(u).
    fn monomial_deriv(&self, u: &[Sym], letter: &Sym) -> Poly<S> {
        let mut fused = Poly::one();
        let mut deriv = Poly::zero();
        for s in u.iter().rev() {
            deriv = self
                .g
                .step_of(s, letter)
                .mul(&fused)
                .add(&deriv.scale(&self.g.out_of(s)));
            fused = self.symbol_fuse(s).mul(&fused);
        }
        deriv
    }

    /// Fold a whole polynomial into its observation pair, literally: each
    /// monomial becomes the product of its symbols' pairs, and the state is
    /// the weighted sum of those. Feasible on small states only, since
    /// every product recomputes its tail per letter; `observe` yields the
    /// same pair with shared tails.
    pub fn fold_state(&self, p: &Poly<S>) -> MooreElem<S, Poly<S>> {
        let mut acc = self.moore.zero();
        for (u, c) in p.iter() {
            let product = u.iter().fold(self.moore.one(), |m, s| {
                self.moore.mul(&m, &self.symbol_elem(s))
            });
            acc = self.moore.add(&acc, &self.moore.scale(c, &product));
        }
        acc
    }

    /// The observation pair of a polynomial state: output and one derivative
    /// per letter. Agrees with `fold_state` everywhere.
    pub fn observe(&self, p: &Poly<S>) -> MooreElem<S, Poly<S>> {
        MooreElem::build(&self.g.terminals, self.output(p), |letter| {
            self.step(p, letter)
        })
    }
}

impl<S: Semiring> Behavior for SharpView<'_, S> {
    type State = Poly<S>;
    type Out = S;

    fn alphabet(&self) -> &Alphabet {
        &self.g.terminals
    }

    fn output(&self, p: &Poly<S>) -> S {
        sum(p.iter().map(|(u, c)| c.mul(&self.g.monomial_out(u.as_slice()))))
    }

    fn step(&self, p: &Poly<S>, letter: &Sym) -> Poly<S> {
        p.iter().fold(Poly::zero(), |acc, (u, c)| {
            acc.add(&self.monomial_deriv(u.as_slice(), letter).scale(c))
        })
    }

    fn show_state(&self, p: &Poly<S>) -> String {
        p.render()
    }
}

/// Either view behind one type, for mode-driven callers.
pub enum GrammarView<'g, S: Semiring> {
    /// Word-indexed extension.
    Hat(HatView<'g, S>),
    /// Algebra-fold extension.
    Sharp(SharpView<'g, S>),
}

impl<S: Semiring> Behavior for GrammarView<'_, S> {
    type State = Poly<S>;
    type Out = S;

    fn alphabet(&self) -> &Alphabet {
        match self {
            GrammarView::Hat(v) => v.alphabet(),
            GrammarView::Sharp(v) => v.alphabet(),
        }
    }

    fn output(&self, p: &Poly<S>) -> S {
        match self {
            GrammarView::Hat(v) => v.output(p),
            GrammarView::Sharp(v) => v.output(p),
        }
    }

    fn step(&self, p: &Poly<S>, letter: &Sym) -> Poly<S> {
        match self {
            GrammarView::Hat(v) => v.step(p, letter),
            GrammarView::Sharp(v) => v.step(p, letter),
        }
    }

    fn show_state(&self, p: &Poly<S>) -> String {
        p.render()
    }
}
