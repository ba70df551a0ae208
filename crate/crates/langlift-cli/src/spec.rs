//! The spec-file format: UTF-8, line-oriented, one artifact per file.
//!
//! The first significant line is the header and selects the kind:
//! `machine nfa`, `machine stack`, `machine stack-nd`, `grammar`, `rps`,
//! or `eqsys`. Lines whose first non-blank character is `#` are comments.
//! Parsing reports the first defect with its 1-based line number;
//! rendering produces canonical text that parses back to an equal
//! artifact.

use std::collections::{BTreeMap, BTreeSet};

use langlift::engine::{FlatEquation, VarDef};
use langlift::grammar::WeightedGrammar;
use langlift::nfa::Nfa;
use langlift::rps::{Def, Scheme, Term};
use langlift::stack::{MachineKind, StackMachine, StackRule};
use langlift::{Alphabet, Int, Nat, Poly, Semiring, SemiringKind, Sym, Word};

/// A parse failure pointing at the first offending line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    /// 1-based line number in the file.
    pub line: usize,
    /// What is wrong with that line.
    pub message: String,
}

impl std::fmt::Display for SpecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SpecError {}

fn err(line: usize, message: impl Into<String>) -> SpecError {
    SpecError {
        line,
        message: message.into(),
    }
}

/// A grammar over whichever semiring its file declares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGrammar {
    /// Weights are truth values.
    Bool(WeightedGrammar<bool>),
    /// Weights are unbounded naturals.
    Nat(WeightedGrammar<Nat>),
    /// Weights are unbounded integers.
    Int(WeightedGrammar<Int>),
}

impl AnyGrammar {
    /// Which semiring the grammar weighs words in.
    pub fn kind(&self) -> SemiringKind {
        match self {
            AnyGrammar::Bool(_) => SemiringKind::Bool,
            AnyGrammar::Nat(_) => SemiringKind::Nat,
            AnyGrammar::Int(_) => SemiringKind::Int,
        }
    }

    /// Static defects, in the underlying grammar's wording.
    pub fn validate(&self) -> Vec<String> {
        match self {
            AnyGrammar::Bool(g) => g.validate(),
            AnyGrammar::Nat(g) => g.validate(),
            AnyGrammar::Int(g) => g.validate(),
        }
    }
}

/// One defining line of an equation system, in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqsysDef {
    /// `guard x <out> a -> y b -> x ...`: observe `out` now, then step to
    /// the named variable per letter.
    Guard {
        /// The observation, kept as its source token so rendering
        /// round-trips; the declared semiring validates it.
        out: String,
        /// `(letter, successor variable)` pairs in file order.
        succ: Vec<(Sym, Sym)>,
    },
    /// `import y <designator>`: the variable behaves as an external state,
    /// named in the import machine's own designator syntax.
    Import {
        /// Resolved against the `--imports` spec at solve time.
        designator: String,
    },
}

/// A parsed equation-system file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqsysSpec {
    /// The semiring the observations live in.
    pub semiring: SemiringKind,
    /// The common input alphabet.
    pub alphabet: Alphabet,
    /// One definition per variable, in file order.
    pub defs: Vec<(Sym, EqsysDef)>,
}

impl EqsysSpec {
    /// True when any variable is defined by import.
    pub fn has_imports(&self) -> bool {
        self.defs
            .iter()
            .any(|(_, d)| matches!(d, EqsysDef::Import { .. }))
    }

    /// Convert to the solver's form, parsing observations in `S`. Import
    /// handles are the designator strings; callers bind them to states.
    pub fn to_flat<S: Semiring>(&self) -> langlift::Result<FlatEquation<S>> {
        let mut defs = BTreeMap::new();
        let mut vars = Vec::new();
        for (var, def) in &self.defs {
            let converted = match def {
                EqsysDef::Guard { out, succ } => VarDef::Guarded {
                    out: S::parse(out)?,
                    succ: succ.iter().cloned().collect(),
                },
                EqsysDef::Import { designator } => VarDef::Imported {
                    handle: designator.clone(),
                },
            };
            vars.push(var.clone());
            defs.insert(var.clone(), converted);
        }
        Ok(FlatEquation {
            alphabet: self.alphabet.clone(),
            vars,
            defs,
        })
    }

    /// Static defects not already rejected by parsing, in the solver's
    /// wording: observation tokens outside the semiring, missing or
    /// duplicated successors, dangling successor variables.
    pub fn validate(&self) -> Vec<String> {
        let outcome = match self.semiring {
            SemiringKind::Bool => self.to_flat::<bool>().map(|_| ()),
            SemiringKind::Nat => self.to_flat::<Nat>().map(|_| ()),
            SemiringKind::Int => self.to_flat::<Int>().map(|_| ()),
        };
        match outcome {
            Ok(()) => Vec::new(),
            Err(e) => vec![e.to_string()],
        }
    }
}

/// Any artifact a spec file can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Artifact {
    /// A finite automaton.
    Nfa(Nfa),
    /// A pushdown machine, deterministic or not.
    Stack(StackMachine),
    /// A weighted grammar.
    Grammar(AnyGrammar),
    /// A recursion scheme.
    Rps(Scheme),
    /// A guarded equation system.
    Eqsys(EqsysSpec),
}

impl Artifact {
    /// The header line that introduces this artifact's kind.
    pub fn kind_name(&self) -> &'static str {
        match self {
            Artifact::Nfa(_) => "machine nfa",
            Artifact::Stack(m) => match m.kind {
                MachineKind::Det => "machine stack",
                MachineKind::Nd => "machine stack-nd",
            },
            Artifact::Grammar(_) => "grammar",
            Artifact::Rps(_) => "rps",
            Artifact::Eqsys(_) => "eqsys",
        }
    }
}

type Lines<'a> = [(usize, &'a str)];

/// Parse a whole spec file.
pub fn parse_spec(text: &str) -> Result<Artifact, SpecError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let Some(&(hline, header)) = lines.first() else {
        return Err(err(1, "empty spec file"));
    };
    let body = &lines[1..];
    match header {
        "machine nfa" => parse_nfa(hline, body),
        "machine stack" => parse_stack(MachineKind::Det, hline, body),
        "machine stack-nd" => parse_stack(MachineKind::Nd, hline, body),
        "grammar" => parse_grammar(hline, body),
        "rps" => parse_rps(hline, body),
        "eqsys" => parse_eqsys(hline, body),
        other => Err(err(hline, format!("unknown header `{other}`"))),
    }
}

/// Render an artifact in the canonical form that [`parse_spec`] reads
/// back to an equal value.
pub fn render_spec(artifact: &Artifact) -> String {
    let mut lines = match artifact {
        Artifact::Nfa(n) => render_nfa(n),
        Artifact::Stack(m) => render_stack(m),
        Artifact::Grammar(AnyGrammar::Bool(g)) => render_grammar(g),
        Artifact::Grammar(AnyGrammar::Nat(g)) => render_grammar(g),
        Artifact::Grammar(AnyGrammar::Int(g)) => render_grammar(g),
        Artifact::Rps(s) => render_rps(s),
        Artifact::Eqsys(e) => render_eqsys(e),
    };
    lines.push(String::new());
    lines.join("\n")
}

fn syms(tokens: &[&str]) -> Vec<Sym> {
    tokens.iter().map(|t| Sym::from(*t)).collect()
}

fn alphabet(line: usize, tokens: &[&str]) -> Result<Alphabet, SpecError> {
    Alphabet::new(syms(tokens)).map_err(|e| err(line, e.to_string()))
}

fn set_once<T>(
    slot: &mut Option<T>,
    value: T,
    line: usize,
    what: &str,
) -> Result<(), SpecError> {
    if slot.is_some() {
        return Err(err(line, format!("duplicate `{what}` line")));
    }
    *slot = Some(value);
    Ok(())
}

fn required<T>(slot: Option<T>, hline: usize, what: &str) -> Result<T, SpecError> {
    slot.ok_or_else(|| err(hline, format!("missing `{what}` line")))
}

fn join_syms<'a>(it: impl Iterator<Item = &'a Sym>) -> String {
    it.map(Sym::as_str).collect::<Vec<_>>().join(" ")
}

// ---------------------------------------------------------------------
// machine nfa

fn parse_nfa(hline: usize, body: &Lines) -> Result<Artifact, SpecError> {
    let mut states: Option<Vec<Sym>> = None;
    let mut input: Option<Alphabet> = None;
    let mut start_raw: Option<(usize, Sym)> = None;
    let mut trans_raw: Vec<(usize, Sym, Sym, Vec<Sym>)> = Vec::new();
    let mut accept_raw: Vec<(usize, Vec<Sym>)> = Vec::new();

    for &(ln, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "states" => set_once(&mut states, syms(&t[1..]), ln, "states")?,
            "input" => {
                let a = alphabet(ln, &t[1..])?;
                set_once(&mut input, a, ln, "input")?;
            }
            "trans" => {
                if t.len() < 4 || t[3] != "->" {
                    return Err(err(ln, "expected `trans <state> <letter> -> <states...>`"));
                }
                trans_raw.push((ln, Sym::from(t[1]), Sym::from(t[2]), syms(&t[4..])));
            }
            "accept" => accept_raw.push((ln, syms(&t[1..]))),
            "start" => {
                if t.len() != 2 {
                    return Err(err(ln, "expected `start <state>`"));
                }
                if start_raw.is_some() {
                    return Err(err(ln, "duplicate `start` line"));
                }
                start_raw = Some((ln, Sym::from(t[1])));
            }
            other => return Err(err(ln, format!("unknown line `{other}` in an nfa spec"))),
        }
    }

    let states = required(states, hline, "states")?;
    let input = required(input, hline, "input")?;
    let (start_line, start) = required(start_raw, hline, "start")?;
    if !states.contains(&start) {
        return Err(err(start_line, format!("undeclared start state `{start}`")));
    }

    let mut trans: BTreeMap<(Sym, Sym), BTreeSet<Sym>> = BTreeMap::new();
    for (ln, q, a, targets) in trans_raw {
        if !states.contains(&q) {
            return Err(err(ln, format!("transition from undeclared state `{q}`")));
        }
        if !input.contains(&a) {
            return Err(err(ln, format!("undeclared input letter `{a}`")));
        }
        if let Some(bad) = targets.iter().find(|s| !states.contains(s)) {
            return Err(err(ln, format!("transition to undeclared state `{bad}`")));
        }
        if !targets.is_empty() {
            trans.entry((q, a)).or_default().extend(targets);
        }
    }

    let mut accepting = BTreeSet::new();
    for (ln, qs) in accept_raw {
        if let Some(bad) = qs.iter().find(|s| !states.contains(s)) {
            return Err(err(ln, format!("undeclared accepting state `{bad}`")));
        }
        accepting.extend(qs);
    }

    Nfa::new(states, input, start, accepting, trans)
        .map(Artifact::Nfa)
        .map_err(|e| err(hline, e.to_string()))
}

fn render_nfa(n: &Nfa) -> Vec<String> {
    let mut lines = vec!["machine nfa".to_string()];
    lines.push(format!("states {}", join_syms(n.states().iter())));
    lines.push(format!("input {}", join_syms(n.alphabet().iter())));
    for ((q, a), targets) in n.trans_entries() {
        if !targets.is_empty() {
            lines.push(format!("trans {q} {a} -> {}", join_syms(targets.iter())));
        }
    }
    if !n.accepting().is_empty() {
        lines.push(format!("accept {}", join_syms(n.accepting().iter())));
    }
    lines.push(format!("start {}", n.start()));
    lines
}

// ---------------------------------------------------------------------
// machine stack / machine stack-nd

/// Read file tokens as a stack word: the single token `""` (or nothing at
/// all) is the empty word, anything else is one symbol per token.
fn stack_word(tokens: &[&str]) -> Word {
    if tokens.is_empty() || tokens == ["\"\""] {
        Word::empty()
    } else {
        Word::from_syms(syms(tokens))
    }
}

/// Render a stack word in file syntax.
fn stack_word_text(w: &Word) -> String {
    if w.is_empty() {
        "\"\"".to_string()
    } else {
        join_syms(w.iter())
    }
}

fn parse_stack(kind: MachineKind, hline: usize, body: &Lines) -> Result<Artifact, SpecError> {
    let mut k: Option<usize> = None;
    let mut gamma: Option<Alphabet> = None;
    let mut rules_raw: Vec<(usize, StackRule)> = Vec::new();
    let mut accepts_raw: Vec<(usize, Sym, Word)> = Vec::new();
    let mut start_raw: Option<(usize, Sym, Word)> = None;

    for &(ln, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "k" => {
                if t.len() != 2 {
                    return Err(err(ln, "expected `k <depth>`"));
                }
                let depth: usize = t[1]
                    .parse()
                    .map_err(|_| err(ln, format!("invalid inspection depth `{}`", t[1])))?;
                set_once(&mut k, depth, ln, "k")?;
            }
            "stack" => {
                let a = alphabet(ln, &t[1..])?;
                set_once(&mut gamma, a, ln, "stack")?;
            }
            "trans" => {
                let Some(arrow) = t.iter().position(|x| *x == "->") else {
                    return Err(err(ln, "expected `trans <state> <letter> <stack> -> <state> <stack>`"));
                };
                if arrow < 3 || arrow + 1 >= t.len() {
                    return Err(err(ln, "expected `trans <state> <letter> <stack> -> <state> <stack>`"));
                }
                rules_raw.push((
                    ln,
                    StackRule {
                        state: Sym::from(t[1]),
                        letter: Sym::from(t[2]),
                        prefix: stack_word(&t[3..arrow]),
                        target: Sym::from(t[arrow + 1]),
                        rewrite: stack_word(&t[arrow + 2..]),
                    },
                ));
            }
            "accept" => {
                if t.len() < 2 {
                    return Err(err(ln, "expected `accept <state> <stack>`"));
                }
                accepts_raw.push((ln, Sym::from(t[1]), stack_word(&t[2..])));
            }
            "start" => {
                if t.len() < 2 {
                    return Err(err(ln, "expected `start <state> <stack>`"));
                }
                if start_raw.is_some() {
                    return Err(err(ln, "duplicate `start` line"));
                }
                start_raw = Some((ln, Sym::from(t[1]), stack_word(&t[2..])));
            }
            other => return Err(err(ln, format!("unknown line `{other}` in a stack spec"))),
        }
    }

    let k = required(k, hline, "k")?;
    let gamma = required(gamma, hline, "stack")?;
    let (start_line, start, start_stack) = required(start_raw, hline, "start")?;

    let check_stack_syms = |ln: usize, w: &Word| -> Result<(), SpecError> {
        match w.iter().find(|s| !gamma.contains(s)) {
            Some(bad) => Err(err(ln, format!("undeclared stack symbol `{bad}`"))),
            None => Ok(()),
        }
    };
    check_stack_syms(start_line, &start_stack)?;
    for (ln, rule) in &rules_raw {
        check_stack_syms(*ln, &rule.prefix)?;
        check_stack_syms(*ln, &rule.rewrite)?;
        if rule.prefix.len() > k {
            return Err(err(
                *ln,
                format!("rule inspects {} stack symbols but k is {k}", rule.prefix.len()),
            ));
        }
    }
    for (ln, _, pattern) in &accepts_raw {
        check_stack_syms(*ln, pattern)?;
        if pattern.len() > k {
            return Err(err(
                *ln,
                format!("accept clause inspects {} stack symbols but k is {k}", pattern.len()),
            ));
        }
    }

    // Control states and input letters are not declared; they are the
    // names the rules, accept clauses, and start line use, in order of
    // first appearance.
    let mut states: Vec<Sym> = Vec::new();
    let mut letters: Vec<Sym> = Vec::new();
    let note_state = |q: &Sym, states: &mut Vec<Sym>| {
        if !states.contains(q) {
            states.push(q.clone());
        }
    };
    for (_, rule) in &rules_raw {
        note_state(&rule.state, &mut states);
        note_state(&rule.target, &mut states);
        if !letters.contains(&rule.letter) {
            letters.push(rule.letter.clone());
        }
    }
    for (_, q, _) in &accepts_raw {
        note_state(q, &mut states);
    }
    note_state(&start, &mut states);

    let machine = StackMachine {
        kind,
        k,
        states,
        input: Alphabet::new(letters).map_err(|e| err(hline, e.to_string()))?,
        stack: gamma,
        start,
        start_stack,
        accepts: accepts_raw.into_iter().map(|(_, q, w)| (q, w)).collect(),
        rules: rules_raw.into_iter().map(|(_, r)| r).collect(),
    };
    Ok(Artifact::Stack(machine))
}

fn render_stack(m: &StackMachine) -> Vec<String> {
    let header = match m.kind {
        MachineKind::Det => "machine stack",
        MachineKind::Nd => "machine stack-nd",
    };
    let mut lines = vec![header.to_string()];
    lines.push(format!("k {}", m.k));
    lines.push(format!("stack {}", join_syms(m.stack.iter())));
    for r in &m.rules {
        lines.push(format!(
            "trans {} {} {} -> {} {}",
            r.state,
            r.letter,
            stack_word_text(&r.prefix),
            r.target,
            stack_word_text(&r.rewrite)
        ));
    }
    for (q, pattern) in &m.accepts {
        lines.push(format!("accept {q} {}", stack_word_text(pattern)));
    }
    lines.push(format!("start {} {}", m.start, stack_word_text(&m.start_stack)));
    lines
}

// ---------------------------------------------------------------------
// grammar

fn parse_grammar(hline: usize, body: &Lines) -> Result<Artifact, SpecError> {
    let Some(&(sline, sem)) = body
        .iter()
        .find(|(_, l)| l.split_whitespace().next() == Some("semiring"))
    else {
        return Err(err(hline, "missing `semiring` line"));
    };
    let t: Vec<&str> = sem.split_whitespace().collect();
    if t.len() != 2 {
        return Err(err(sline, "expected `semiring <bool|nat|int>`"));
    }
    let kind = SemiringKind::from_name(t[1]).map_err(|e| err(sline, e.to_string()))?;
    let grammar = match kind {
        SemiringKind::Bool => AnyGrammar::Bool(parse_grammar_typed::<bool>(hline, body)?),
        SemiringKind::Nat => AnyGrammar::Nat(parse_grammar_typed::<Nat>(hline, body)?),
        SemiringKind::Int => AnyGrammar::Int(parse_grammar_typed::<Int>(hline, body)?),
    };
    Ok(Artifact::Grammar(grammar))
}

fn parse_grammar_typed<S: Semiring>(
    hline: usize,
    body: &Lines,
) -> Result<WeightedGrammar<S>, SpecError> {
    let mut seen_semiring = false;
    let mut nonterminals: Option<Alphabet> = None;
    let mut terminals: Option<Alphabet> = None;
    let mut start_raw: Option<(usize, Poly<S>)> = None;
    let mut out_raw: Vec<(usize, Sym, S)> = Vec::new();
    let mut step_raw: Vec<(usize, Sym, Sym, Poly<S>)> = Vec::new();

    for &(ln, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "semiring" => {
                if seen_semiring {
                    return Err(err(ln, "duplicate `semiring` line"));
                }
                seen_semiring = true;
            }
            "nonterminals" => {
                let a = alphabet(ln, &t[1..])?;
                set_once(&mut nonterminals, a, ln, "nonterminals")?;
            }
            "input" => {
                let a = alphabet(ln, &t[1..])?;
                set_once(&mut terminals, a, ln, "input")?;
            }
            "start" => {
                let rest = line["start".len()..].trim();
                let p = Poly::parse(rest).map_err(|e| err(ln, e.to_string()))?;
                if start_raw.is_some() {
                    return Err(err(ln, "duplicate `start` line"));
                }
                start_raw = Some((ln, p));
            }
            "out" => {
                if t.len() != 4 || t[2] != "=" {
                    return Err(err(ln, "expected `out <nonterminal> = <scalar>`"));
                }
                let value = S::parse(t[3]).map_err(|e| err(ln, e.to_string()))?;
                out_raw.push((ln, Sym::from(t[1]), value));
            }
            "step" => {
                let Some(eq_at) = line.find('=') else {
                    return Err(err(ln, "expected `step <nonterminal> <letter> = <polynomial>`"));
                };
                let lhs: Vec<&str> = line[..eq_at].split_whitespace().collect();
                if lhs.len() != 3 {
                    return Err(err(ln, "expected `step <nonterminal> <letter> = <polynomial>`"));
                }
                let p = Poly::parse(line[eq_at + 1..].trim())
                    .map_err(|e| err(ln, e.to_string()))?;
                step_raw.push((ln, Sym::from(lhs[1]), Sym::from(lhs[2]), p));
            }
            other => return Err(err(ln, format!("unknown line `{other}` in a grammar spec"))),
        }
    }

    let nonterminals = required(nonterminals, hline, "nonterminals")?;
    let terminals = required(terminals, hline, "input")?;
    let (start_line, start) = required(start_raw, hline, "start")?;
    if let Some(clash) = nonterminals.iter().find(|s| terminals.contains(s)) {
        return Err(err(
            hline,
            format!("symbol `{clash}` is both a nonterminal and an input letter"),
        ));
    }
    start
        .ensure_support(&nonterminals)
        .map_err(|e| err(start_line, format!("start polynomial: {e}")))?;

    // Zero entries mean the same as missing entries; dropping them keeps
    // the maps canonical, so duplicates are tracked separately.
    let mut out = BTreeMap::new();
    let mut seen_out = BTreeSet::new();
    for (ln, x, value) in out_raw {
        if !nonterminals.contains(&x) {
            return Err(err(ln, format!("output for undeclared nonterminal `{x}`")));
        }
        if !seen_out.insert(x.clone()) {
            return Err(err(ln, format!("duplicate output for `{x}`")));
        }
        if value != S::zero() {
            out.insert(x, value);
        }
    }

    let mut step = BTreeMap::new();
    let mut seen_step = BTreeSet::new();
    for (ln, x, letter, p) in step_raw {
        if !nonterminals.contains(&x) {
            return Err(err(ln, format!("step for undeclared nonterminal `{x}`")));
        }
        if !terminals.contains(&letter) {
            return Err(err(ln, format!("step on undeclared input letter `{letter}`")));
        }
        p.ensure_support(&nonterminals)
            .map_err(|e| err(ln, format!("step for `{x}` on `{letter}`: {e}")))?;
        if !seen_step.insert((x.clone(), letter.clone())) {
            return Err(err(ln, format!("duplicate step for `{x}` on `{letter}`")));
        }
        if !p.is_zero() {
            step.insert((x, letter), p);
        }
    }

    let g = WeightedGrammar {
        nonterminals,
        terminals,
        out,
        step,
        start,
    };
    match g.validate().first() {
        None => Ok(g),
        Some(problem) => Err(err(hline, problem.clone())),
    }
}

fn render_grammar<S: Semiring>(g: &WeightedGrammar<S>) -> Vec<String> {
    let mut lines = vec!["grammar".to_string()];
    lines.push(format!("semiring {}", S::NAME));
    lines.push(format!("nonterminals {}", join_syms(g.nonterminals.iter())));
    lines.push(format!("input {}", join_syms(g.terminals.iter())));
    lines.push(format!("start {}", g.start.render()));
    for (x, value) in &g.out {
        lines.push(format!("out {x} = {value}"));
    }
    for ((x, letter), p) in &g.step {
        lines.push(format!("step {x} {letter} = {}", p.render()));
    }
    lines
}

// ---------------------------------------------------------------------
// rps

fn arity_entries(line: usize, tokens: &[&str]) -> Result<Vec<(Sym, usize)>, SpecError> {
    let mut out = Vec::new();
    for tok in tokens {
        let Some((name, arity)) = tok.rsplit_once('/') else {
            return Err(err(line, format!("expected `name/arity`, got `{tok}`")));
        };
        if name.is_empty() {
            return Err(err(line, format!("empty symbol name in `{tok}`")));
        }
        let arity: usize = arity
            .parse()
            .map_err(|_| err(line, format!("invalid arity in `{tok}`")))?;
        out.push((Sym::from(name), arity));
    }
    Ok(out)
}

fn parse_rps(hline: usize, body: &Lines) -> Result<Artifact, SpecError> {
    let mut givens: Option<Vec<(Sym, usize)>> = None;
    let mut defined: Option<Vec<(Sym, usize)>> = None;
    let mut def_lines: Vec<(usize, &str)> = Vec::new();

    for &(ln, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "givens" => set_once(&mut givens, arity_entries(ln, &t[1..])?, ln, "givens")?,
            "defs" => set_once(&mut defined, arity_entries(ln, &t[1..])?, ln, "defs")?,
            _ => def_lines.push((ln, line)),
        }
    }

    let givens = required(givens, hline, "givens")?;
    let defined = required(defined, hline, "defs")?;
    let scheme_shell = Scheme {
        givens,
        defined,
        defs: BTreeMap::new(),
    };
    let arities = scheme_shell.arities();

    let mut defs: BTreeMap<Sym, Def> = BTreeMap::new();
    for (ln, line) in def_lines {
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(err(ln, format!("expected `name(params) = term`, got `{line}`")));
        };
        let lhs = lhs.trim();
        let (name, params) = match lhs.split_once('(') {
            Some((name, rest)) => {
                let Some(inside) = rest.trim_end().strip_suffix(')') else {
                    return Err(err(ln, format!("unclosed parameter list in `{lhs}`")));
                };
                let params: Vec<Sym> = inside
                    .split(',')
                    .map(str::trim)
                    .filter(|p| !p.is_empty())
                    .map(Sym::from)
                    .collect();
                (name.trim(), params)
            }
            None => (lhs, Vec::new()),
        };
        if name.is_empty() || name.split_whitespace().count() != 1 {
            return Err(err(ln, format!("invalid defined symbol name in `{lhs}`")));
        }
        let name = Sym::from(name);
        let Some(&arity) = scheme_shell
            .defined
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, a)| a)
        else {
            return Err(err(ln, format!("definition for undeclared symbol `{name}`")));
        };
        if params.len() != arity {
            return Err(err(
                ln,
                format!("`{name}` is declared with arity {arity} but takes {} parameters", params.len()),
            ));
        }
        if defs.contains_key(&name) {
            return Err(err(ln, format!("duplicate definition for `{name}`")));
        }
        let body = Term::parse(rhs.trim(), &arities).map_err(|e| err(ln, e.to_string()))?;
        defs.insert(name, Def { params, body });
    }

    for (name, _) in &scheme_shell.defined {
        if !defs.contains_key(name) {
            return Err(err(hline, format!("no definition for `{name}`")));
        }
    }

    // Deeper defects — arity misuse inside bodies, unguarded heads — stay
    // in the artifact for the `validate` command to report.
    Ok(Artifact::Rps(Scheme { defs, ..scheme_shell }))
}

fn render_rps(s: &Scheme) -> Vec<String> {
    let entries = |list: &[(Sym, usize)]| {
        list.iter()
            .map(|(n, a)| format!("{n}/{a}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut lines = vec!["rps".to_string()];
    lines.push(format!("givens {}", entries(&s.givens)));
    lines.push(format!("defs {}", entries(&s.defined)));
    for (name, _) in &s.defined {
        let def = &s.defs[name];
        let lhs = if def.params.is_empty() {
            name.to_string()
        } else {
            let params: Vec<&str> = def.params.iter().map(Sym::as_str).collect();
            format!("{name}({})", params.join(", "))
        };
        lines.push(format!("{lhs} = {}", def.body.render()));
    }
    lines
}

// ---------------------------------------------------------------------
// eqsys

fn parse_eqsys(hline: usize, body: &Lines) -> Result<Artifact, SpecError> {
    let mut semiring: Option<SemiringKind> = None;
    let mut input: Option<Alphabet> = None;
    let mut defs_raw: Vec<(usize, Sym, EqsysDef)> = Vec::new();

    for &(ln, line) in body {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t[0] {
            "output" => {
                if t.len() != 2 {
                    return Err(err(ln, "expected `output <bool|nat|int>`"));
                }
                let kind = SemiringKind::from_name(t[1]).map_err(|e| err(ln, e.to_string()))?;
                set_once(&mut semiring, kind, ln, "output")?;
            }
            "input" => {
                let a = alphabet(ln, &t[1..])?;
                set_once(&mut input, a, ln, "input")?;
            }
            "guard" => {
                if t.len() < 3 {
                    return Err(err(ln, "expected `guard <var> <out> <letter> -> <var> ...`"));
                }
                let steps = &t[3..];
                if steps.len() % 3 != 0 || steps.chunks(3).any(|c| c[1] != "->") {
                    return Err(err(ln, "expected `<letter> -> <var>` groups after the output"));
                }
                let succ: Vec<(Sym, Sym)> = steps
                    .chunks(3)
                    .map(|c| (Sym::from(c[0]), Sym::from(c[2])))
                    .collect();
                defs_raw.push((
                    ln,
                    Sym::from(t[1]),
                    EqsysDef::Guard {
                        out: t[2].to_string(),
                        succ,
                    },
                ));
            }
            "import" => {
                if t.len() < 3 {
                    return Err(err(ln, "expected `import <var> <designator>`"));
                }
                defs_raw.push((
                    ln,
                    Sym::from(t[1]),
                    EqsysDef::Import {
                        designator: t[2..].join(" "),
                    },
                ));
            }
            other => return Err(err(ln, format!("unknown line `{other}` in an eqsys spec"))),
        }
    }

    let semiring = required(semiring, hline, "output")?;
    let alphabet = required(input, hline, "input")?;

    let vars: Vec<Sym> = defs_raw.iter().map(|(_, v, _)| v.clone()).collect();
    let mut defs = Vec::new();
    for (ln, var, def) in defs_raw {
        if defs.iter().any(|(v, _)| *v == var) {
            return Err(err(ln, format!("duplicate definition for `{var}`")));
        }
        if let EqsysDef::Guard { out, succ } = &def {
            let parses = match semiring {
                SemiringKind::Bool => bool::parse(out).map(|_| ()),
                SemiringKind::Nat => Nat::parse(out).map(|_| ()),
                SemiringKind::Int => Int::parse(out).map(|_| ()),
            };
            parses.map_err(|e| err(ln, e.to_string()))?;
            let mut seen_letters = BTreeSet::new();
            for (letter, target) in succ {
                if !alphabet.contains(letter) {
                    return Err(err(ln, format!("undeclared input letter `{letter}`")));
                }
                if !seen_letters.insert(letter.clone()) {
                    return Err(err(ln, format!("two successors for letter `{letter}`")));
                }
                if !vars.contains(target) {
                    return Err(err(ln, format!("successor `{target}` is not a defined variable")));
                }
            }
            if let Some(missing) = alphabet.iter().find(|l| !seen_letters.contains(l)) {
                return Err(err(ln, format!("no successor for letter `{missing}`")));
            }
        }
        defs.push((var, def));
    }
    if defs.is_empty() {
        return Err(err(hline, "system defines no variables"));
    }

    Ok(Artifact::Eqsys(EqsysSpec {
        semiring,
        alphabet,
        defs,
    }))
}

fn render_eqsys(e: &EqsysSpec) -> Vec<String> {
    let mut lines = vec!["eqsys".to_string()];
    lines.push(format!("output {}", e.semiring.name()));
    lines.push(format!("input {}", join_syms(e.alphabet.iter())));
    for (var, def) in &e.defs {
        match def {
            EqsysDef::Guard { out, succ } => {
                let steps: Vec<String> = succ
                    .iter()
                    .map(|(letter, target)| format!("{letter} -> {target}"))
                    .collect();
                lines.push(format!("guard {var} {out} {}", steps.join(" ")));
            }
            EqsysDef::Import { designator } => {
                lines.push(format!("import {var} {designator}"));
            }
        }
    }
    lines
}
