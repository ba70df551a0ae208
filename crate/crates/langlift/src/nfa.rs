//! Nondeterministic finite automata, their subset-construction behaviour,
//! and exact language equivalence via bisimulation up to union-congruence.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::{bounded_bisim, run_word, Behavior, Verdict};
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Sym, Word};

/// A finite automaton with set-valued transitions. Missing entries mean the
/// empty successor set, so the transition map is total by default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    states: Vec<Sym>,
    alphabet: Alphabet,
    start: Sym,
    accepting: BTreeSet<Sym>,
    trans: BTreeMap<(Sym, Sym), BTreeSet<Sym>>,
}

impl Nfa {
    /// Build and validate an automaton: all names must be declared states
    /// and letters, and state declarations must be duplicate-free.
    pub fn new(
        states: Vec<Sym>,
        alphabet: Alphabet,
        start: Sym,
        accepting: BTreeSet<Sym>,
        trans: BTreeMap<(Sym, Sym), BTreeSet<Sym>>,
    ) -> Result<Nfa> {
        for (i, q) in states.iter().enumerate() {
            if states[..i].contains(q) {
                return Err(Error::DuplicateSymbol(q.clone()));
            }
        }
        let declared = |q: &Sym| states.contains(q);
        if !declared(&start) {
            return Err(Error::Invalid(format!("undeclared start state `{start}`")));
        }
        if let Some(q) = accepting.iter().find(|q| !declared(q)) {
            return Err(Error::Invalid(format!("undeclared accepting state `{q}`")));
        }
        for ((q, a), targets) in &trans {
            if !declared(q) {
                return Err(Error::Invalid(format!("transition from undeclared state `{q}`")));
            }
            if !alphabet.contains(a) {
                return Err(Error::UnknownLetter(a.clone()));
            }
            if let Some(t) = targets.iter().find(|t| !declared(t)) {
                return Err(Error::Invalid(format!("transition to undeclared state `{t}`")));
            }
        }
        Ok(Nfa {
            states,
            alphabet,
            start,
            accepting,
            trans,
        })
    }

    /// Declared states, in declaration order.
    pub fn states(&self) -> &[Sym] {
        &self.states
    }

    /// The input alphabet.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The declared start state.
    pub fn start(&self) -> &Sym {
        &self.start
    }

    /// Accepting states.
    pub fn accepting(&self) -> &BTreeSet<Sym> {
        &self.accepting
    }

    /// Successor set of one state under one letter.
    pub fn targets(&self, q: &Sym, a: &Sym) -> BTreeSet<Sym> {
        self.trans
            .get(&(q.clone(), a.clone()))
            .cloned()
            .unwrap_or_default()
    }

    /// Iterate over present transition entries.
    pub fn trans_entries(&self) -> impl Iterator<Item = (&(Sym, Sym), &BTreeSet<Sym>)> {
        self.trans.iter()
    }

    /// The singleton subset of the start state.
    pub fn start_set(&self) -> BTreeSet<Sym> {
        BTreeSet::from([self.start.clone()])
    }

    /// The subset-construction behaviour: states are sorted state sets, a
    /// set accepts when it meets the accepting set, and steps take the
    /// union of member transitions.
    pub fn determinized(&self) -> Subsets<'_> {
        Subsets { nfa: self }
    }

    /// Parse a subset state like `{q0,q1}`, `{}`, or a bare state name.
    pub fn parse_subset(&self, text: &str) -> Result<BTreeSet<Sym>> {
        let inner = match text.strip_prefix('{') {
            Some(rest) => rest
                .strip_suffix('}')
                .ok_or_else(|| Error::Invalid(format!("unclosed subset `{text}`")))?,
            None => text,
        };
        let mut set = BTreeSet::new();
        for name in inner
            .split([',', ' '])
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let sym = Sym::from(name);
            if !self.states.contains(&sym) {
                return Err(Error::Invalid(format!("undeclared state `{name}`")));
            }
            set.insert(sym);
        }
        Ok(set)
    }
}

/// Subset-construction view of an automaton.
pub struct Subsets<'a> {
    nfa: &'a Nfa,
}

impl Behavior for Subsets<'_> {
    type State = BTreeSet<Sym>;
    type Out = bool;

    fn alphabet(&self) -> &Alphabet {
        &self.nfa.alphabet
    }

    fn output(&self, q: &Self::State) -> bool {
        q.iter().any(|s| self.nfa.accepting.contains(s))
    }

    fn step(&self, q: &Self::State, letter: &Sym) -> Self::State {
        let mut out = BTreeSet::new();
        for s in q {
            out.extend(self.nfa.targets(s, letter));
        }
        out
    }

    fn show_state(&self, q: &Self::State) -> String {
        let names: Vec<&str> = q.iter().map(Sym::as_str).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Acceptance of a word from one explicit state, through the subset
/// construction.
pub fn nfa_accepts(nfa: &Nfa, q0: &Sym, w: &Word) -> Result<bool> {
    if !nfa.states.contains(q0) {
        return Err(Error::Invalid(format!("undeclared state `{q0}`")));
    }
    run_word(&nfa.determinized(), &BTreeSet::from([q0.clone()]), w)
}

/// True when `x` and `y` rewrite to the same normal form under the visited
/// pairs read as union rules: whenever one side of a visited pair is
/// contained in the current set, the other side joins it, to fixpoint.
/// Skipping such pairs keeps the search sound because acceptance is a
/// join morphism on subset states.
fn union_congruent(
    visited: &[(BTreeSet<Sym>, BTreeSet<Sym>)],
    x: &BTreeSet<Sym>,
    y: &BTreeSet<Sym>,
) -> bool {
    fn normalize(seed: &BTreeSet<Sym>, rules: &[(BTreeSet<Sym>, BTreeSet<Sym>)]) -> BTreeSet<Sym> {
        let mut nf = seed.clone();
        loop {
            let mut grew = false;
            for (a, b) in rules {
                if a.is_subset(&nf) && !b.is_subset(&nf) {
                    nf.extend(b.iter().cloned());
                    grew = true;
                }
                if b.is_subset(&nf) && !a.is_subset(&nf) {
                    nf.extend(a.iter().cloned());
                    grew = true;
                }
            }
            if !grew {
                return nf;
            }
        }
    }
    normalize(x, visited) == normalize(y, visited)
}

/// Exact language equivalence of two subset states of one automaton:
/// bounded bisimulation with unlimited depth and the union-congruence
/// closure, which always terminates because the subset lattice is finite
/// and congruence-closed searches cannot revisit it forever.
pub fn nfa_equiv_hkc(nfa: &Nfa, s1: &BTreeSet<Sym>, s2: &BTreeSet<Sym>) -> Result<Verdict> {
    let det = nfa.determinized();
    bounded_bisim(&det, s1, &det, s2, usize::MAX, union_congruent)
}

/// Disjoint union of two automata, for equivalence checks across files.
/// States are renamed `l.{name}` and `r.{name}`; the returned subset states
/// are the renamed start sets of the two sides.
pub fn disjoint_union(a: &Nfa, b: &Nfa) -> Result<(Nfa, BTreeSet<Sym>, BTreeSet<Sym>)> {
    if a.alphabet != b.alphabet {
        return Err(Error::AlphabetMismatch(
            "equivalence needs identical input alphabets".to_string(),
        ));
    }
    let left = |q: &Sym| Sym::from(format!("l.{q}"));
    let right = |q: &Sym| Sym::from(format!("r.{q}"));
    let states: Vec<Sym> = a
        .states
        .iter()
        .map(left)
        .chain(b.states.iter().map(right))
        .collect();
    let accepting: BTreeSet<Sym> = a
        .accepting
        .iter()
        .map(left)
        .chain(b.accepting.iter().map(right))
        .collect();
    let mut trans = BTreeMap::new();
    for ((q, l), ts) in &a.trans {
        trans.insert((left(q), l.clone()), ts.iter().map(left).collect());
    }
    for ((q, l), ts) in &b.trans {
        trans.insert((right(q), l.clone()), ts.iter().map(right).collect());
    }
    let start = left(&a.start);
    let union = Nfa::new(states, a.alphabet.clone(), start, accepting, trans)?;
    let s1 = a.start_set().iter().map(left).collect();
    let s2 = b.start_set().iter().map(right).collect();
    Ok((union, s1, s2))
}
