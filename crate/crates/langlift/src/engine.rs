//! The shared behavioural core: run words through any deterministic
//! unfolded system, enumerate reachable states breadth-first, compare two
//! states by bounded bisimulation with a pluggable up-to closure, and solve
//! finite systems of guarded equations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Sym, Word};

/// A deterministic system unfolded on demand: total output and step
/// functions over canonical states. Equal states must be behaviourally
/// interchangeable; instances guarantee this by normalizing (sorted sets,
/// normalized polynomials, canonical configurations).
pub trait Behavior {
    /// Canonical state representation.
    type State: Clone + Eq + Ord;

    /// Observation attached to each state.
    type Out: Clone + Eq + fmt::Debug;

    /// The input alphabet.
    fn alphabet(&self) -> &Alphabet;

    /// Observe a state.
    fn output(&self, q: &Self::State) -> Self::Out;

    /// The successor of `q` under one letter. Total for letters of the
    /// alphabet; callers validate letters first.
    fn step(&self, q: &Self::State, letter: &Sym) -> Self::State;

    /// Canonical printing, used for sorted listings and diagnostics.
    fn show_state(&self, q: &Self::State) -> String;
}

/// Fold `step` along a word from `start`, then observe. Rejects letters
/// outside the behaviour's alphabet.
pub fn run_word<B: Behavior>(b: &B, start: &B::State, w: &Word) -> Result<B::Out> {
    let mut q = start.clone();
    for letter in w.iter() {
        if !b.alphabet().contains(letter) {
            return Err(Error::UnknownLetter(letter.clone()));
        }
        q = b.step(&q, letter);
    }
    Ok(b.output(&q))
}

/// Result of a bounded reachability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reachable<Q> {
    /// Distinct states in breadth-first discovery order.
    pub states: Vec<Q>,
    /// True when the search closed; false when `max_states` truncated it.
    pub complete: bool,
}

/// Breadth-first closure of `{start}` under `step`, truncated at
/// `max_states`. The state space may be infinite, so completeness is
/// reported, never assumed. `max_states` of zero yields an empty,
/// incomplete result.
pub fn enumerate_reachable<B: Behavior>(
    b: &B,
    start: &B::State,
    max_states: usize,
) -> Reachable<B::State> {
    if max_states == 0 {
        return Reachable {
            states: Vec::new(),
            complete: false,
        };
    }
    let mut seen: BTreeSet<B::State> = BTreeSet::new();
    let mut order: Vec<B::State> = Vec::new();
    let mut queue: VecDeque<B::State> = VecDeque::new();
    seen.insert(start.clone());
    order.push(start.clone());
    queue.push_back(start.clone());
    while let Some(q) = queue.pop_front() {
        for letter in b.alphabet().iter() {
            let next = b.step(&q, letter);
            if seen.contains(&next) {
                continue;
            }
            if order.len() == max_states {
                return Reachable {
                    states: order,
                    complete: false,
                };
            }
            seen.insert(next.clone());
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    Reachable {
        states: order,
        complete: true,
    }
}

/// Outcome of a bounded equivalence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No output difference found.
    EquivalentUpTo {
        /// Depth to which outputs were verified.
        depth: usize,
        /// Number of state pairs the search related.
        pairs: usize,
        /// True when the search space closed before the depth bound, making
        /// the verdict a proof of full equivalence rather than a bounded one.
        exact: bool,
    },
    /// Outputs differ after reading the witness word.
    Distinguished {
        /// A shortest distinguishing word; among those, least in the
        /// alphabet's declaration order.
        witness: Word,
    },
}

/// Breadth-first bisimulation check between two behaviours with the same
/// alphabet and output type, exploring word length up to `max_depth`.
///
/// `skip` is the up-to closure hook: given the pairs enqueued so far and a
/// candidate pair, returning true declares the candidate already related,
/// so it is not expanded. The hook must be sound for the outputs (pairs it
/// skips must be output-equal whenever all enqueued pairs are); the trivial
/// hook `|_, _, _| false` always is. Exactly-repeated pairs are skipped
/// regardless of the hook.
pub fn bounded_bisim<A, B, F>(
    a: &A,
    qa: &A::State,
    b: &B,
    qb: &B::State,
    max_depth: usize,
    mut skip: F,
) -> Result<Verdict>
where
    A: Behavior,
    B: Behavior<Out = A::Out>,
    F: FnMut(&[(A::State, B::State)], &A::State, &B::State) -> bool,
{
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(
            "equivalence needs identical input alphabets".to_string(),
        ));
    }
    let mut visited: Vec<(A::State, B::State)> = Vec::new();
    let mut visited_set: BTreeSet<(A::State, B::State)> = BTreeSet::new();
    let mut queue: VecDeque<(A::State, B::State, Word)> = VecDeque::new();
    let mut deepest = 0usize;
    let mut depth_truncated = false;

    if !skip(&visited, qa, qb) {
        visited.push((qa.clone(), qb.clone()));
        visited_set.insert((qa.clone(), qb.clone()));
        queue.push_back((qa.clone(), qb.clone(), Word::empty()));
    }

    while let Some((x, y, w)) = queue.pop_front() {
        if a.output(&x) != b.output(&y) {
            return Ok(Verdict::Distinguished { witness: w });
        }
        deepest = deepest.max(w.len());
        if w.len() == max_depth {
            depth_truncated = true;
            continue;
        }
        for letter in a.alphabet().iter() {
            let nx = a.step(&x, letter);
            let ny = b.step(&y, letter);
            let pair = (nx, ny);
            if visited_set.contains(&pair) || skip(&visited, &pair.0, &pair.1) {
                continue;
            }
            let mut nw = w.clone();
            nw.push(letter.clone());
            visited.push(pair.clone());
            visited_set.insert(pair.clone());
            queue.push_back((pair.0, pair.1, nw));
        }
    }

    Ok(Verdict::EquivalentUpTo {
        depth: if depth_truncated { max_depth } else { deepest },
        pairs: visited.len(),
        exact: !depth_truncated,
    })
}

/// The up-to hook that skips nothing beyond exact repetition.
pub fn no_closure<Q1, Q2>(_: &[(Q1, Q2)], _: &Q1, _: &Q2) -> bool {
    false
}

/// Defining clause of one variable in a guarded system: either a concrete
/// observation with one successor variable per letter, or a reference to a
/// state of an external behaviour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarDef<O> {
    /// Guarded clause: output now, named successors after one letter.
    Guarded {
        /// The variable's observation.
        out: O,
        /// Successor variable per letter; must be total on the alphabet.
        succ: BTreeMap<Sym, Sym>,
    },
    /// The variable behaves as an external state, named by a handle that
    /// the solver resolves.
    Imported {
        /// Resolution key into the caller-supplied bindings.
        handle: String,
    },
}

/// A finite system of equations: every variable is defined exactly once,
/// guardedly or by import.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatEquation<O> {
    /// The common input alphabet.
    pub alphabet: Alphabet,
    /// Variables in declaration order.
    pub vars: Vec<Sym>,
    /// One defining clause per variable.
    pub defs: BTreeMap<Sym, VarDef<O>>,
}

/// A state of a solved system: one of the system's variables, or a state
/// of the external behaviour reached after leaving the variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SolvedState<Q> {
    /// Still at a variable of the system.
    Var(Sym),
    /// Moved into the external behaviour.
    Ext(Q),
}

/// The unique behaviour satisfying a system: variables observe and step as
/// their clauses prescribe; imported variables are identified with their
/// bound external states.
pub struct Solution<'a, B: Behavior> {
    eq: &'a FlatEquation<B::Out>,
    ext: &'a B,
    bindings: BTreeMap<String, B::State>,
}

impl<'a, B: Behavior> Solution<'a, B> {
    /// The system being solved.
    pub fn system(&self) -> &FlatEquation<B::Out> {
        self.eq
    }

    /// The solved state for a variable; errors on undeclared names.
    pub fn var_state(&self, var: &Sym) -> Result<SolvedState<B::State>> {
        if self.eq.defs.contains_key(var) {
            Ok(SolvedState::Var(var.clone()))
        } else {
            Err(Error::Invalid(format!("unknown variable `{var}`")))
        }
    }

    fn def(&self, var: &Sym) -> &VarDef<B::Out> {
        self.eq
            .defs
            .get(var)
            .expect("solution state names a declared variable")
    }

    fn binding(&self, handle: &str) -> &B::State {
        self.bindings
            .get(handle)
            .expect("solver validated every import handle")
    }
}

impl<'a, B: Behavior> Behavior for Solution<'a, B> {
    type State = SolvedState<B::State>;
    type Out = B::Out;

    fn alphabet(&self) -> &Alphabet {
        &self.eq.alphabet
    }

    fn output(&self, q: &Self::State) -> Self::Out {
        match q {
            SolvedState::Var(x) => match self.def(x) {
                VarDef::Guarded { out, .. } => out.clone(),
                VarDef::Imported { handle } => self.ext.output(self.binding(handle)),
            },
            SolvedState::Ext(e) => self.ext.output(e),
        }
    }

    fn step(&self, q: &Self::State, letter: &Sym) -> Self::State {
        match q {
            SolvedState::Var(x) => match self.def(x) {
                VarDef::Guarded { succ, .. } => SolvedState::Var(
                    succ.get(letter)
                        .expect("solver validated successor totality")
                        .clone(),
                ),
                VarDef::Imported { handle } => {
                    SolvedState::Ext(self.ext.step(self.binding(handle), letter))
                }
            },
            SolvedState::Ext(e) => SolvedState::Ext(self.ext.step(e, letter)),
        }
    }

    fn show_state(&self, q: &Self::State) -> String {
        match q {
            SolvedState::Var(x) => x.to_string(),
            SolvedState::Ext(e) => self.ext.show_state(e),
        }
    }
}

/// Validate a system against an external behaviour and handle bindings,
/// returning its solution. Fails on: alphabet mismatch with the external
/// behaviour, variables without clauses or clauses without variables,
/// non-total or dangling successors, and unresolved import handles.
pub fn solve_flat_equation<'a, B: Behavior>(
    eq: &'a FlatEquation<B::Out>,
    ext: &'a B,
    bindings: BTreeMap<String, B::State>,
) -> Result<Solution<'a, B>> {
    if eq.vars.is_empty() {
        return Err(Error::Invalid("system declares no variables".to_string()));
    }
    for (i, v) in eq.vars.iter().enumerate() {
        if eq.vars[..i].contains(v) {
            return Err(Error::DuplicateSymbol(v.clone()));
        }
    }
    if eq.defs.len() != eq.vars.len() || !eq.vars.iter().all(|v| eq.defs.contains_key(v)) {
        return Err(Error::Invalid(
            "variables and defining clauses do not match one-to-one".to_string(),
        ));
    }
    let uses_imports = eq
        .defs
        .values()
        .any(|d| matches!(d, VarDef::Imported { .. }));
    if uses_imports && eq.alphabet != *ext.alphabet() {
        return Err(Error::AlphabetMismatch(
            "system and imported behaviour alphabets differ".to_string(),
        ));
    }
    for (x, def) in &eq.defs {
        match def {
            VarDef::Guarded { succ, .. } => {
                for letter in eq.alphabet.iter() {
                    match succ.get(letter) {
                        None => {
                            return Err(Error::Invalid(format!(
                                "variable `{x}` has no successor for letter `{letter}`"
                            )))
                        }
                        Some(y) if !eq.defs.contains_key(y) => {
                            return Err(Error::Invalid(format!(
                                "variable `{x}` steps to undeclared variable `{y}`"
                            )))
                        }
                        Some(_) => {}
                    }
                }
                if let Some((letter, _)) = succ.iter().find(|(l, _)| !eq.alphabet.contains(l)) {
                    return Err(Error::UnknownLetter(letter.clone()));
                }
            }
            VarDef::Imported { handle } => {
                if !bindings.contains_key(handle) {
                    return Err(Error::Invalid(format!(
                        "variable `{x}` imports unresolved handle `{handle}`"
                    )));
                }
            }
        }
    }
    Ok(Solution { eq, ext, bindings })
}

/// Check the defining identity of a solution at every state reachable from
/// its variables within `depth` steps: each variable observes what its
/// clause declares and steps where its clause points (imported variables
/// matching their bound external state), and external states step inside
/// the external behaviour. Returns the number of states checked.
pub fn check_solution<B: Behavior>(sol: &Solution<'_, B>, depth: usize) -> Result<usize> {
    let mut layer: Vec<SolvedState<B::State>> = sol
        .eq
        .vars
        .iter()
        .map(|v| SolvedState::Var(v.clone()))
        .collect();
    let mut seen: BTreeSet<SolvedState<B::State>> = layer.iter().cloned().collect();
    let mut checked = 0usize;
    for _ in 0..=depth {
        let mut next = Vec::new();
        for q in &layer {
            let holds = match q {
                SolvedState::Var(x) => match sol.def(x) {
                    VarDef::Guarded { out, succ } => {
                        sol.output(q) == *out
                            && sol.eq.alphabet.iter().all(|l| {
                                sol.step(q, l) == SolvedState::Var(succ[l].clone())
                            })
                    }
                    VarDef::Imported { handle } => {
                        let bound = sol.binding(handle);
                        sol.output(q) == sol.ext.output(bound)
                            && sol.eq.alphabet.iter().all(|l| {
                                sol.step(q, l) == SolvedState::Ext(sol.ext.step(bound, l))
                            })
                    }
                },
                SolvedState::Ext(e) => sol.eq.alphabet.iter().all(|l| {
                    sol.step(q, l) == SolvedState::Ext(sol.ext.step(e, l))
                        && sol.output(q) == sol.ext.output(e)
                }),
            };
            if !holds {
                return Err(Error::Invalid(format!(
                    "solution violates its defining clause at state `{}`",
                    sol.show_state(q)
                )));
            }
            checked += 1;
            for l in sol.eq.alphabet.iter() {
                let n = sol.step(q, l);
                if seen.insert(n.clone()) {
                    next.push(n);
                }
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(checked)
}

/// An external behaviour with no states, for systems whose clauses are all
/// guarded. Its state type is uninhabited, so its methods are unreachable.
pub struct NoImports<O> {
    alphabet: Alphabet,
    _out: PhantomData<O>,
}

impl<O> NoImports<O> {
    /// An empty behaviour over the given alphabet.
    pub fn new(alphabet: Alphabet) -> Self {
        NoImports {
            alphabet,
            _out: PhantomData,
        }
    }
}

/// The uninhabited state type of [`NoImports`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum NoState {}

impl<O: Clone + Eq + fmt::Debug> Behavior for NoImports<O> {
    type State = NoState;
    type Out = O;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn output(&self, q: &NoState) -> O {
        match *q {}
    }

    fn step(&self, q: &NoState, _letter: &Sym) -> NoState {
        match *q {}
    }

    fn show_state(&self, q: &NoState) -> String {
        match *q {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A two-state toggle: outputs its state name, flips on `a`, stays on `b`.
    struct Toggle {
        alphabet: Alphabet,
    }

    impl Behavior for Toggle {
        type State = bool;
        type Out = bool;

        fn alphabet(&self) -> &Alphabet {
            &self.alphabet
        }

        fn output(&self, q: &bool) -> bool {
            *q
        }

        fn step(&self, q: &bool, letter: &Sym) -> bool {
            if letter.as_str() == "a" {
                !*q
            } else {
                *q
            }
        }

        fn show_state(&self, q: &bool) -> String {
            q.to_string()
        }
    }

    fn toggle() -> Toggle {
        Toggle {
            alphabet: Alphabet::of(&["a", "b"]),
        }
    }

    fn w(s: &str) -> Word {
        Word::parse(s, "").unwrap()
    }

    #[test]
    fn run_word_folds_steps() {
        let t = toggle();
        assert_eq!(run_word(&t, &false, &w("")).unwrap(), false);
        assert_eq!(run_word(&t, &false, &w("aba")).unwrap(), false);
        assert_eq!(run_word(&t, &false, &w("ab")).unwrap(), true);
        assert_eq!(
            run_word(&t, &false, &w("ax")).unwrap_err(),
            Error::UnknownLetter(Sym::from("x"))
        );
    }

    #[test]
    fn run_word_decomposes_over_concat() {
        let t = toggle();
        for u in t.alphabet.words_up_to(3) {
            for v in t.alphabet.words_up_to(3) {
                let mut mid = false;
                for l in u.iter() {
                    mid = t.step(&mid, l);
                }
                assert_eq!(
                    run_word(&t, &false, &u.concat(&v)).unwrap(),
                    run_word(&t, &mid, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn enumerate_toggle() {
        let t = toggle();
        let r = enumerate_reachable(&t, &false, 10);
        assert!(r.complete);
        assert_eq!(r.states, vec![false, true]);
        let r = enumerate_reachable(&t, &false, 1);
        assert!(!r.complete);
        assert_eq!(r.states, vec![false]);
        let r = enumerate_reachable(&t, &false, 0);
        assert!(!r.complete);
        assert!(r.states.is_empty());
    }

    #[test]
    fn bisim_reflexive_and_distinguishing() {
        let t = toggle();
        let v = bounded_bisim(&t, &false, &t, &false, 5, no_closure).unwrap();
        assert!(matches!(v, Verdict::EquivalentUpTo { exact: true, .. }));

        let v = bounded_bisim(&t, &false, &t, &true, 5, no_closure).unwrap();
        assert_eq!(
            v,
            Verdict::Distinguished {
                witness: Word::empty()
            }
        );
    }

    #[test]
    fn bisim_witness_is_minimal_and_replayable() {
        // Outputs true only at state 3; reached from 0 in three `a` steps.
        struct Count;
        impl Behavior for Count {
            type State = u8;
            type Out = bool;
            fn alphabet(&self) -> &Alphabet {
                static ONCE: std::sync::OnceLock<Alphabet> = std::sync::OnceLock::new();
                ONCE.get_or_init(|| Alphabet::of(&["a", "b"]))
            }
            fn output(&self, q: &u8) -> bool {
                *q == 3
            }
            fn step(&self, q: &u8, letter: &Sym) -> u8 {
                if letter.as_str() == "a" && *q < 3 {
                    q + 1
                } else {
                    *q
                }
            }
            fn show_state(&self, q: &u8) -> String {
                q.to_string()
            }
        }
        let c = Count;
        let v = bounded_bisim(&c, &0, &c, &1, 10, no_closure).unwrap();
        let witness = match v {
            Verdict::Distinguished { witness } => witness,
            other => panic!("expected a distinction, got {other:?}"),
        };
        assert_eq!(witness, w("aa"), "shortest lexicographically least witness");
        assert_ne!(
            run_word(&c, &0, &witness).unwrap(),
            run_word(&c, &1, &witness).unwrap(),
            "witness replays to unequal outputs"
        );
    }

    #[test]
    fn bisim_depth_bound_reported() {
        let t = toggle();
        let v = bounded_bisim(&t, &false, &t, &false, 0, no_closure).unwrap();
        assert_eq!(
            v,
            Verdict::EquivalentUpTo {
                depth: 0,
                pairs: 1,
                exact: false
            }
        );
    }

    #[test]
    fn bisim_rejects_alphabet_mismatch() {
        let t1 = toggle();
        let t2 = Toggle {
            alphabet: Alphabet::of(&["a"]),
        };
        assert!(matches!(
            bounded_bisim(&t1, &false, &t2, &false, 3, no_closure),
            Err(Error::AlphabetMismatch(_))
        ));
    }

    fn guarded(out: bool, a: &str, b: &str) -> VarDef<bool> {
        VarDef::Guarded {
            out,
            succ: BTreeMap::from([
                (Sym::from("a"), Sym::from(a)),
                (Sym::from("b"), Sym::from(b)),
            ]),
        }
    }

    #[test]
    fn solve_guarded_self_loop_is_constant() {
        let eq = FlatEquation {
            alphabet: Alphabet::of(&["a", "b"]),
            vars: vec![Sym::from("x")],
            defs: BTreeMap::from([(Sym::from("x"), guarded(true, "x", "x"))]),
        };
        let ext = NoImports::<bool>::new(Alphabet::of(&["a", "b"]));
        let sol = solve_flat_equation(&eq, &ext, BTreeMap::new()).unwrap();
        let x = sol.var_state(&Sym::from("x")).unwrap();
        for word in sol.alphabet().words_up_to(4) {
            assert_eq!(run_word(&sol, &x, &word).unwrap(), true);
        }
        assert_eq!(check_solution(&sol, 4).unwrap(), 1);
    }

    #[test]
    fn solve_imported_variable_tracks_external_state() {
        let t = toggle();
        let eq = FlatEquation {
            alphabet: Alphabet::of(&["a", "b"]),
            vars: vec![Sym::from("y")],
            defs: BTreeMap::from([(
                Sym::from("y"),
                VarDef::Imported {
                    handle: "h".to_string(),
                },
            )]),
        };
        let sol =
            solve_flat_equation(&eq, &t, BTreeMap::from([("h".to_string(), false)])).unwrap();
        let y = sol.var_state(&Sym::from("y")).unwrap();
        for word in t.alphabet.words_up_to(4) {
            assert_eq!(
                run_word(&sol, &y, &word).unwrap(),
                run_word(&t, &false, &word).unwrap(),
                "imported variable coincides with its external state"
            );
        }
        assert!(check_solution(&sol, 4).unwrap() >= 2);
    }

    #[test]
    fn solve_rejects_malformed_systems() {
        let ext = NoImports::<bool>::new(Alphabet::of(&["a", "b"]));
        let alphabet = Alphabet::of(&["a", "b"]);

        let dangling = FlatEquation {
            alphabet: alphabet.clone(),
            vars: vec![Sym::from("x")],
            defs: BTreeMap::from([(
                Sym::from("x"),
                VarDef::Imported {
                    handle: "missing".to_string(),
                },
            )]),
        };
        assert!(solve_flat_equation(&dangling, &ext, BTreeMap::new()).is_err());

        let partial = FlatEquation {
            alphabet: alphabet.clone(),
            vars: vec![Sym::from("x")],
            defs: BTreeMap::from([(
                Sym::from("x"),
                VarDef::Guarded {
                    out: true,
                    succ: BTreeMap::from([(Sym::from("a"), Sym::from("x"))]),
                },
            )]),
        };
        assert!(solve_flat_equation(&partial, &ext, BTreeMap::new()).is_err());

        let stray = FlatEquation {
            alphabet,
            vars: vec![Sym::from("x")],
            defs: BTreeMap::from([(Sym::from("x"), guarded(true, "x", "z"))]),
        };
        assert!(solve_flat_equation(&stray, &ext, BTreeMap::new()).is_err());
    }
}
