//! Pushdown machines that read one input letter per step, inspect at most
//! the top `k` stack symbols, and either rewrite in place (deterministic
//! kind) or branch over finitely many rewrites (nondeterministic kind).
//!
//! The transition tables come in two halves sharing one bound `k`: a
//! `short` half with exact entries for whole stacks shorter than `k`, and
//! a `full` half keyed by length-`k` prefixes whose entries apply to every
//! longer stack by carrying the untouched suffix along. Missing entries
//! default to a single absorbing, non-accepting dead state.

use std::collections::{BTreeMap, BTreeSet};

use crate::engine::Behavior;
use crate::error::{Error, Result};
use crate::symbol::{Alphabet, Sym, Word};

/// Whether a machine resolves each step to one configuration or many.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MachineKind {
    /// At most one applicable rule per (state, letter, stack).
    Det,
    /// Any number of applicable rules per (state, letter, stack).
    Nd,
}

/// One rewrite rule: in `state`, reading `letter`, with the stack matching
/// `prefix`, move to `target` and replace the matched part by `rewrite`.
/// A prefix shorter than `k` matches only that exact whole stack; a prefix
/// of length `k` matches every stack it starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackRule {
    /// Source control state.
    pub state: Sym,
    /// Input letter consumed.
    pub letter: Sym,
    /// Stack pattern, at most `k` symbols, topmost first.
    pub prefix: Word,
    /// Target control state.
    pub target: Sym,
    /// Replacement for the matched stack part, topmost first.
    pub rewrite: Word,
}

/// A pushdown machine as declared: control states, input and stack
/// alphabets, inspection bound, start configuration, accepting stack
/// patterns per state, and rewrite rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackMachine {
    /// Deterministic or nondeterministic resolution.
    pub kind: MachineKind,
    /// How many top stack symbols rules and acceptance may inspect.
    pub k: usize,
    /// Declared control states.
    pub states: Vec<Sym>,
    /// Input letters.
    pub input: Alphabet,
    /// Stack symbols.
    pub stack: Alphabet,
    /// Initial control state.
    pub start: Sym,
    /// Initial stack contents, topmost first.
    pub start_stack: Word,
    /// Accepting patterns `(state, stack pattern)`, matched like prefixes.
    pub accepts: Vec<(Sym, Word)>,
    /// Rewrite rules in declaration order.
    pub rules: Vec<StackRule>,
}

impl StackMachine {
    /// Collect every static defect as a human-readable diagnostic. An empty
    /// result means the machine is well-formed for its kind.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, q) in self.states.iter().enumerate() {
            if self.states[..i].contains(q) {
                out.push(format!("state `{q}` declared twice"));
            }
        }
        if !self.states.contains(&self.start) {
            out.push(format!("start state `{}` not declared", self.start));
        }
        for sym in self.start_stack.iter() {
            if !self.stack.contains(sym) {
                out.push(format!("start stack uses undeclared symbol `{sym}`"));
            }
        }
        for (i, (q, pat)) in self.accepts.iter().enumerate() {
            if !self.states.contains(q) {
                out.push(format!("accept clause names undeclared state `{q}`"));
            }
            for sym in pat.iter() {
                if !self.stack.contains(sym) {
                    out.push(format!("accept clause for `{q}` uses undeclared symbol `{sym}`"));
                }
            }
            if pat.len() > self.k {
                out.push(format!(
                    "accept clause for `{q}` inspects {} stack symbols but k is {}",
                    pat.len(),
                    self.k
                ));
            }
            if self.accepts[..i].contains(&(q.clone(), pat.clone())) {
                out.push(format!("duplicate accept clause for `{q}`"));
            }
        }
        let mut seen = BTreeSet::new();
        for r in &self.rules {
            if !self.states.contains(&r.state) {
                out.push(format!("rule reads from undeclared state `{}`", r.state));
            }
            if !self.states.contains(&r.target) {
                out.push(format!("rule moves to undeclared state `{}`", r.target));
            }
            if !self.input.contains(&r.letter) {
                out.push(format!("rule consumes undeclared input letter `{}`", r.letter));
            }
            for sym in r.prefix.iter().chain(r.rewrite.iter()) {
                if !self.stack.contains(sym) {
                    out.push(format!("rule uses undeclared stack symbol `{sym}`"));
                }
            }
            if r.prefix.len() > self.k {
                out.push(format!(
                    "rule in `{}` inspects {} stack symbols but k is {}",
                    r.state,
                    r.prefix.len(),
                    self.k
                ));
            }
            let key = (r.state.clone(), r.letter.clone(), r.prefix.clone());
            if !seen.insert(key) && self.kind == MachineKind::Det {
                out.push(format!(
                    "rules in `{}` on `{}` with stack `{}` conflict",
                    r.state,
                    r.letter,
                    render_stack(&r.prefix)
                ));
            }
        }
        out
    }

    fn require_valid(&self) -> Result<()> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(problems.join("; ")))
        }
    }

    /// Compile to single-successor semantics. Fails on nondeterministic
    /// machines and on validation defects.
    pub fn det(&self) -> Result<DetStack> {
        if self.kind != MachineKind::Det {
            return Err(Error::Invalid(
                "machine is nondeterministic; deterministic semantics unavailable".to_string(),
            ));
        }
        self.require_valid()?;
        let mut delta: BTreeMap<(Sym, Sym), StackFn<(Sym, Word)>> = BTreeMap::new();
        for r in &self.rules {
            delta
                .entry((r.state.clone(), r.letter.clone()))
                .or_insert_with(|| StackFn::empty(self.k))
                .set(r.prefix.clone(), (r.target.clone(), r.rewrite.clone()));
        }
        Ok(DetStack {
            k: self.k,
            input: self.input.clone(),
            accept: self.accept_tables(),
            delta,
            start: Config::Go(self.start.clone(), self.start_stack.clone()),
        })
    }

    /// Compile to set-of-successors semantics; accepts either kind.
    pub fn nd(&self) -> Result<NdStack> {
        self.require_valid()?;
        let mut delta: BTreeMap<(Sym, Sym), StackFn<BTreeSet<(Sym, Word)>>> = BTreeMap::new();
        for r in &self.rules {
            let table = delta
                .entry((r.state.clone(), r.letter.clone()))
                .or_insert_with(|| StackFn::empty(self.k));
            let mut targets = table.get(&r.prefix).cloned().unwrap_or_default();
            targets.insert((r.target.clone(), r.rewrite.clone()));
            table.set(r.prefix.clone(), targets);
        }
        Ok(NdStack {
            k: self.k,
            input: self.input.clone(),
            accept: self.accept_tables(),
            delta,
            start: (self.start.clone(), self.start_stack.clone()),
        })
    }

    fn accept_tables(&self) -> BTreeMap<Sym, StackFn<bool>> {
        let mut accept: BTreeMap<Sym, StackFn<bool>> = BTreeMap::new();
        for (q, pat) in &self.accepts {
            accept
                .entry(q.clone())
                .or_insert_with(|| StackFn::empty(self.k))
                .set(pat.clone(), true);
        }
        accept
    }

    /// Parse a configuration designator `state:stack`, the stack written
    /// topmost first with symbols either run together or comma-separated;
    /// an empty or `ε` stack part means the empty stack.
    pub fn parse_config(&self, text: &str) -> Result<(Sym, Word)> {
        let (state, stack) = text
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("configuration `{text}` needs a `state:stack` form")))?;
        let q = Sym::from(state.trim());
        if !self.states.contains(&q) {
            return Err(Error::Invalid(format!("undeclared state `{q}`")));
        }
        Ok((q, self.parse_stack_word(stack)?))
    }

    /// Parse a stack word: `ε` or the empty string is the empty stack,
    /// a token with commas is split on them, anything else is read one
    /// character per symbol. Every symbol must be declared.
    pub fn parse_stack_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" || text == "\"\"" {
            return Ok(Word::empty());
        }
        let sep = if text.contains(',') { "," } else { "" };
        let word = Word::parse(text, sep)?;
        for sym in word.iter() {
            if !self.stack.contains(sym) {
                return Err(Error::Invalid(format!("undeclared stack symbol `{sym}`")));
            }
        }
        Ok(word)
    }
}

/// Render a stack topmost-first with its symbols run together; the empty
/// stack renders as `ε`.
pub fn render_stack(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().map(Sym::as_str).collect()
    }
}

/// A `k`-bounded table from stacks to values: exact entries for stacks
/// shorter than `k` plus prefix entries for length-`k` tops. This is the
/// shape every stack-indexed component of a machine shares — targets,
/// target sets, and acceptance alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackFn<V> {
    k: usize,
    short: BTreeMap<Word, V>,
    full: BTreeMap<Word, V>,
}

impl<V> StackFn<V> {
    /// The everywhere-undefined table.
    pub fn empty(k: usize) -> StackFn<V> {
        StackFn {
            k,
            short: BTreeMap::new(),
            full: BTreeMap::new(),
        }
    }

    /// The inspection bound this table was built for.
    pub fn bound(&self) -> usize {
        self.k
    }

    /// Insert an entry for a pattern of length at most `k`.
    pub fn set(&mut self, pattern: Word, value: V) {
        assert!(pattern.len() <= self.k, "pattern longer than the bound");
        if pattern.len() == self.k {
            self.full.insert(pattern, value);
        } else {
            self.short.insert(pattern, value);
        }
    }

    /// Entry stored for exactly this pattern, if any.
    pub fn get(&self, pattern: &Word) -> Option<&V> {
        if pattern.len() == self.k {
            self.full.get(pattern)
        } else {
            self.short.get(pattern)
        }
    }

    /// Resolve a stack: stacks shorter than `k` hit the exact half and the
    /// value stands alone, longer stacks hit the prefix half and keep their
    /// suffix. `None` is the dead default.
    pub fn apply<'a>(&self, stack: &'a Word) -> Option<(&V, &'a [Sym])> {
        if stack.len() < self.k {
            self.short.get(stack).map(|v| (v, &[][..]))
        } else {
            let top = Word::from(&stack.as_slice()[..self.k]);
            self.full.get(&top).map(|v| (v, &stack.as_slice()[self.k..]))
        }
    }
}

impl StackFn<bool> {
    /// Predicate view: missing entries are false.
    pub fn holds(&self, stack: &Word) -> bool {
        self.apply(stack).map(|(v, _)| *v).unwrap_or(false)
    }
}

/// A deterministic configuration: a live control state with its stack, or
/// the absorbing dead state that missing table entries fall into.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Config {
    /// Live configuration, stack topmost first.
    Go(Sym, Word),
    /// Absorbing, never-accepting sink.
    Dead,
}

/// Compiled deterministic machine; its states are [`Config`]s.
pub struct DetStack {
    k: usize,
    input: Alphabet,
    accept: BTreeMap<Sym, StackFn<bool>>,
    delta: BTreeMap<(Sym, Sym), StackFn<(Sym, Word)>>,
    start: Config,
}

impl DetStack {
    /// The start configuration as declared.
    pub fn start(&self) -> &Config {
        &self.start
    }

    /// The inspection bound.
    pub fn bound(&self) -> usize {
        self.k
    }

    /// Longest rewrite in any rule: one step grows the stack by at most
    /// this many symbols.
    pub fn max_rewrite_len(&self) -> usize {
        self.delta
            .values()
            .flat_map(|t| t.short.values().chain(t.full.values()))
            .map(|(_, v)| v.len())
            .max()
            .unwrap_or(0)
    }

    fn accepts_config(&self, q: &Sym, s: &Word) -> bool {
        self.accept.get(q).map(|p| p.holds(s)).unwrap_or(false)
    }
}

impl Behavior for DetStack {
    type State = Config;
    type Out = bool;

    fn alphabet(&self) -> &Alphabet {
        &self.input
    }

    fn output(&self, q: &Config) -> bool {
        match q {
            Config::Go(state, stack) => self.accepts_config(state, stack),
            Config::Dead => false,
        }
    }

    fn step(&self, q: &Config, letter: &Sym) -> Config {
        let Config::Go(state, stack) = q else {
            return Config::Dead;
        };
        let Some(table) = self.delta.get(&(state.clone(), letter.clone())) else {
            return Config::Dead;
        };
        match table.apply(stack) {
            Some(((target, rewrite), suffix)) => {
                Config::Go(target.clone(), rewrite.concat(&Word::from(suffix)))
            }
            None => Config::Dead,
        }
    }

    fn show_state(&self, q: &Config) -> String {
        match q {
            Config::Go(state, stack) => format!("{state}:{}", render_stack(stack)),
            Config::Dead => "dead".to_string(),
        }
    }
}

/// Compiled nondeterministic machine; its determinized states are finite
/// sets of live configurations, the empty set playing dead.
pub struct NdStack {
    k: usize,
    input: Alphabet,
    accept: BTreeMap<Sym, StackFn<bool>>,
    delta: BTreeMap<(Sym, Sym), StackFn<BTreeSet<(Sym, Word)>>>,
    start: (Sym, Word),
}

impl NdStack {
    /// The declared start configuration.
    pub fn start(&self) -> &(Sym, Word) {
        &self.start
    }

    /// The inspection bound.
    pub fn bound(&self) -> usize {
        self.k
    }

    /// Successors of a single live configuration under one letter.
    pub fn moves(&self, q: &Sym, stack: &Word, letter: &Sym) -> BTreeSet<(Sym, Word)> {
        let Some(table) = self.delta.get(&(q.clone(), letter.clone())) else {
            return BTreeSet::new();
        };
        match table.apply(stack) {
            Some((targets, suffix)) => targets
                .iter()
                .map(|(t, rw)| (t.clone(), rw.concat(&Word::from(suffix))))
                .collect(),
            None => BTreeSet::new(),
        }
    }

    fn accepts_config(&self, q: &Sym, s: &Word) -> bool {
        self.accept.get(q).map(|p| p.holds(s)).unwrap_or(false)
    }
}

impl Behavior for NdStack {
    type State = BTreeSet<(Sym, Word)>;
    type Out = bool;

    fn alphabet(&self) -> &Alphabet {
        &self.input
    }

    fn output(&self, qs: &Self::State) -> bool {
        qs.iter().any(|(q, s)| self.accepts_config(q, s))
    }

    fn step(&self, qs: &Self::State, letter: &Sym) -> Self::State {
        let mut out = BTreeSet::new();
        for (q, s) in qs {
            out.extend(self.moves(q, s, letter));
        }
        out
    }

    fn show_state(&self, qs: &Self::State) -> String {
        let parts: Vec<String> = qs
            .iter()
            .map(|(q, s)| format!("{q}:{}", render_stack(s)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Run a deterministic machine on a word from an explicit configuration.
pub fn dpda_member(m: &DetStack, q0: &Sym, stack: &Word, w: &Word) -> Result<bool> {
    crate::engine::run_word(m, &Config::Go(q0.clone(), stack.clone()), w)
}

/// Run a nondeterministic machine on a word from an explicit configuration,
/// keeping whole configuration layers. A layer larger than `max_configs`
/// aborts with a resource error — deliberately distinct from rejection.
pub fn npda_member(
    m: &NdStack,
    q0: &Sym,
    stack: &Word,
    w: &Word,
    max_configs: usize,
) -> Result<bool> {
    if max_configs == 0 {
        return Err(Error::Invalid("max-configs must be at least 1".to_string()));
    }
    if let Some(bad) = w.iter().find(|l| !m.input.contains(l)) {
        return Err(Error::UnknownLetter(bad.clone()));
    }
    let mut layer = BTreeSet::from([(q0.clone(), stack.clone())]);
    for letter in w.iter() {
        layer = m.step(&layer, letter);
        if layer.len() > max_configs {
            return Err(Error::ResourceLimit(format!(
                "configuration layer grew to {} entries (limit {max_configs})",
                layer.len()
            )));
        }
    }
    Ok(m.output(&layer))
}
