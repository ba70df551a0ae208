//! One function per subcommand. Each returns the lines to print plus the
//! process exit code, or a failure with the exit code it deserves:
//! 0 success, 1 negative verdict, 2 usage or parse error, 3 resource
//! bound hit.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Display;
use std::path::Path;

use langlift::engine::{
    bounded_bisim, check_solution, enumerate_reachable, no_closure, run_word,
    solve_flat_equation, Behavior, FlatEquation, NoImports, Reachable, Verdict,
};
use langlift::grammar::{Mode, SharpView, WeightedGrammar};
use langlift::nfa::{disjoint_union, nfa_accepts, nfa_equiv_hkc, Nfa};
use langlift::rps::Term;
use langlift::stack::{dpda_member, npda_member, Config, MachineKind, StackMachine};
use langlift::{Error, Poly, Semiring, Sym, Word};

use crate::spec::{parse_spec, AnyGrammar, Artifact, EqsysDef, EqsysSpec};

/// Printable result of a successful dispatch.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Lines for stdout, in order.
    pub lines: Vec<String>,
    /// Process exit code: 0 for success, 1 for a negative verdict.
    pub code: i32,
}

impl Outcome {
    fn ok(lines: Vec<String>) -> Outcome {
        Outcome { lines, code: 0 }
    }
}

/// A failed dispatch: message for stderr plus the exit code.
#[derive(Debug, PartialEq, Eq)]
pub struct Failure {
    /// Human-readable description.
    pub message: String,
    /// Process exit code: 2 for usage/parse errors, 3 for resource bounds.
    pub code: i32,
}

/// Alias for command results.
pub type CmdResult = Result<Outcome, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 2,
    }
}

fn resource(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: 3,
    }
}

/// Library errors keep their wording; resource aborts keep their own code.
fn lib_fail(e: Error) -> Failure {
    let code = match e {
        Error::ResourceLimit(_) => 3,
        _ => 2,
    };
    Failure {
        message: e.to_string(),
        code,
    }
}

/// Settings shared by every subcommand, resolved from the global flags.
pub struct Opts {
    /// Letter separator for words on the command line and in output.
    pub sep: String,
    /// Layer bound for nondeterministic stack runs and work budget for
    /// sharp-mode grammar steps.
    pub max_configs: usize,
    /// Reachability cap for `enumerate`.
    pub max_states: usize,
    /// Word-length bound for `equiv`, `solve`, and `unfold`.
    pub depth: usize,
    /// Which grammar determinization to run.
    pub mode: Mode,
    /// Replacement for a stack machine's declared start stack.
    pub initial_stack: Option<String>,
    /// Demand a closure proof instead of a depth-bounded check.
    pub exact: bool,
}

/// Load and parse a spec file, mapping every defect to exit code 2.
pub fn load(path: &Path) -> Result<Artifact, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read `{}`: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Parse a word argument; `ε` names the empty word so witness words can be
/// pasted back in.
fn parse_word(text: &str, sep: &str) -> Result<Word, Failure> {
    if text == "ε" {
        return Ok(Word::empty());
    }
    Word::parse(text, sep).map_err(lib_fail)
}

// ---------------------------------------------------------------------
// member

/// Acceptance of one word by a machine spec.
pub fn member(artifact: &Artifact, word: &str, o: &Opts) -> CmdResult {
    let w = parse_word(word, &o.sep)?;
    let accepted = match artifact {
        Artifact::Nfa(n) => {
            if o.initial_stack.is_some() {
                return Err(usage("--initial-stack applies only to stack machines"));
            }
            nfa_accepts(n, n.start(), &w).map_err(lib_fail)?
        }
        Artifact::Stack(m) => {
            let stack = initial_stack(m, o)?;
            match m.kind {
                MachineKind::Det => {
                    let det = m.det().map_err(lib_fail)?;
                    dpda_member(&det, &m.start, &stack, &w).map_err(lib_fail)?
                }
                MachineKind::Nd => {
                    let nd = m.nd().map_err(lib_fail)?;
                    npda_member(&nd, &m.start, &stack, &w, o.max_configs).map_err(lib_fail)?
                }
            }
        }
        other => {
            return Err(usage(format!(
                "member needs a machine spec, got {}",
                other.kind_name()
            )))
        }
    };
    Ok(if accepted {
        Outcome::ok(vec!["accept".to_string()])
    } else {
        Outcome {
            lines: vec!["reject".to_string()],
            code: 1,
        }
    })
}

fn initial_stack(m: &StackMachine, o: &Opts) -> Result<Word, Failure> {
    match &o.initial_stack {
        Some(text) => m.parse_stack_word(text).map_err(lib_fail),
        None => Ok(m.start_stack.clone()),
    }
}

// ---------------------------------------------------------------------
// coeff

/// The weight a grammar assigns to one word from its start polynomial.
pub fn coeff(artifact: &Artifact, word: &str, o: &Opts) -> CmdResult {
    let Artifact::Grammar(g) = artifact else {
        return Err(usage(format!(
            "coeff needs a grammar spec, got {}",
            artifact.kind_name()
        )));
    };
    let w = parse_word(word, &o.sep)?;
    match g {
        AnyGrammar::Bool(g) => coeff_typed(g, &w, o),
        AnyGrammar::Nat(g) => coeff_typed(g, &w, o),
        AnyGrammar::Int(g) => coeff_typed(g, &w, o),
    }
}

fn coeff_typed<S: Semiring>(g: &WeightedGrammar<S>, w: &Word, o: &Opts) -> CmdResult {
    let value = match o.mode {
        Mode::Hat => g.coeff(Mode::Hat, &g.start, w).map_err(lib_fail)?,
        Mode::Sharp => {
            let view = g.sharp().map_err(lib_fail)?;
            let mut state = g.start.clone();
            for letter in w.iter() {
                if !g.terminals.contains(letter) {
                    return Err(lib_fail(Error::UnknownLetter(letter.clone())));
                }
                check_sharp_budget(&view, &state, o)?;
                state = view.step(&state, letter);
            }
            view.output(&state)
        }
    };
    Ok(Outcome::ok(vec![value.to_string()]))
}

/// Refuse a sharp step whose result cannot be materialized within the
/// budget; the states themselves grow doubly exponentially along live
/// runs, so this is the honest alternative to exhausting memory.
fn check_sharp_budget<S: Semiring>(
    view: &SharpView<'_, S>,
    state: &Poly<S>,
    o: &Opts,
) -> Result<(), Failure> {
    let bound = view.step_work_bound(state);
    if bound > o.max_configs as f64 {
        return Err(resource(format!(
            "a sharp step out of a state with {} monomials needs about {bound:.0} work units \
             (budget {}); raise --max-configs or use --mode hat",
            state.support_len(),
            o.max_configs
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------
// equiv

/// Compare two designated states for behavioural equivalence.
pub fn equiv(a: &Artifact, state_a: &str, b: &Artifact, state_b: &str, o: &Opts) -> CmdResult {
    match (a, b) {
        (Artifact::Nfa(na), Artifact::Nfa(nb)) => equiv_nfa(na, state_a, nb, state_b, o),
        (Artifact::Stack(ma), Artifact::Stack(mb)) => {
            if o.exact {
                return Err(usage("--exact needs finite-state specs on both sides (nfa)"));
            }
            equiv_stack(ma, state_a, mb, state_b, o)
        }
        (Artifact::Grammar(ga), Artifact::Grammar(gb)) => {
            if o.exact {
                return Err(usage("--exact needs finite-state specs on both sides (nfa)"));
            }
            match (ga, gb) {
                (AnyGrammar::Bool(ga), AnyGrammar::Bool(gb)) => {
                    equiv_grammar(ga, state_a, gb, state_b, o)
                }
                (AnyGrammar::Nat(ga), AnyGrammar::Nat(gb)) => {
                    equiv_grammar(ga, state_a, gb, state_b, o)
                }
                (AnyGrammar::Int(ga), AnyGrammar::Int(gb)) => {
                    equiv_grammar(ga, state_a, gb, state_b, o)
                }
                _ => Err(usage(format!(
                    "grammars weigh words in different semirings (`{}` vs `{}`)",
                    ga.kind().name(),
                    gb.kind().name()
                ))),
            }
        }
        _ => Err(usage(format!(
            "cannot compare {} with {}",
            a.kind_name(),
            b.kind_name()
        ))),
    }
}

fn nfa_state(n: &Nfa, text: &str) -> Result<BTreeSet<Sym>, Failure> {
    if text == "start" {
        Ok(n.start_set())
    } else {
        n.parse_subset(text).map_err(lib_fail)
    }
}

fn equiv_nfa(na: &Nfa, sa: &str, nb: &Nfa, sb: &str, o: &Opts) -> CmdResult {
    let qa = nfa_state(na, sa)?;
    let qb = nfa_state(nb, sb)?;
    let verdict = if o.exact {
        // The union renames states `l.{name}` / `r.{name}`; carry the
        // designated subsets across the same renaming.
        let (union, _, _) = disjoint_union(na, nb).map_err(lib_fail)?;
        let left: BTreeSet<Sym> = qa.iter().map(|q| Sym::from(format!("l.{q}"))).collect();
        let right: BTreeSet<Sym> = qb.iter().map(|q| Sym::from(format!("r.{q}"))).collect();
        nfa_equiv_hkc(&union, &left, &right).map_err(lib_fail)?
    } else {
        let da = na.determinized();
        let db = nb.determinized();
        bounded_bisim(&da, &qa, &db, &qb, o.depth, no_closure).map_err(lib_fail)?
    };
    Ok(verdict_outcome(verdict, &o.sep))
}

fn equiv_stack(ma: &StackMachine, sa: &str, mb: &StackMachine, sb: &str, o: &Opts) -> CmdResult {
    let na = ma.nd().map_err(lib_fail)?;
    let nb = mb.nd().map_err(lib_fail)?;
    let qa = stack_state(ma, sa)?;
    let qb = stack_state(mb, sb)?;
    let verdict = bounded_bisim(&na, &qa, &nb, &qb, o.depth, no_closure).map_err(lib_fail)?;
    Ok(verdict_outcome(verdict, &o.sep))
}

fn stack_state(m: &StackMachine, text: &str) -> Result<BTreeSet<(Sym, Word)>, Failure> {
    let config = if text == "start" {
        (m.start.clone(), m.start_stack.clone())
    } else {
        m.parse_config(text).map_err(lib_fail)?
    };
    Ok(BTreeSet::from([config]))
}

fn grammar_state<S: Semiring>(
    g: &WeightedGrammar<S>,
    mode: Mode,
    text: &str,
) -> Result<Poly<S>, Failure> {
    if text == "start" {
        Ok(g.start.clone())
    } else {
        g.parse_state(mode, text).map_err(lib_fail)
    }
}

fn equiv_grammar<S: Semiring>(
    ga: &WeightedGrammar<S>,
    sa: &str,
    gb: &WeightedGrammar<S>,
    sb: &str,
    o: &Opts,
) -> CmdResult {
    let pa = grammar_state(ga, o.mode, sa)?;
    let pb = grammar_state(gb, o.mode, sb)?;
    let verdict = match o.mode {
        Mode::Hat => {
            let va = ga.hat().map_err(lib_fail)?;
            let vb = gb.hat().map_err(lib_fail)?;
            bounded_bisim(&va, &pa, &vb, &pb, o.depth, no_closure).map_err(lib_fail)?
        }
        Mode::Sharp => {
            let va = ga.sharp().map_err(lib_fail)?;
            let vb = gb.sharp().map_err(lib_fail)?;
            guarded_bisim(&va, &pa, &vb, &pb, o)?
        }
    };
    Ok(verdict_outcome(verdict, &o.sep))
}

/// Breadth-first output comparison of two sharp states, refusing any step
/// whose work bound exceeds the budget. Mirrors the engine's bounded
/// bisimulation, which cannot abort from inside its step function.
fn guarded_bisim<S: Semiring>(
    va: &SharpView<'_, S>,
    pa: &Poly<S>,
    vb: &SharpView<'_, S>,
    pb: &Poly<S>,
    o: &Opts,
) -> Result<Verdict, Failure> {
    if va.alphabet() != vb.alphabet() {
        return Err(usage("equivalence needs identical input alphabets"));
    }
    let mut visited: BTreeSet<(Poly<S>, Poly<S>)> = BTreeSet::new();
    let mut queue: VecDeque<(Poly<S>, Poly<S>, Word)> = VecDeque::new();
    visited.insert((pa.clone(), pb.clone()));
    queue.push_back((pa.clone(), pb.clone(), Word::empty()));
    let mut deepest = 0;
    let mut truncated = false;
    while let Some((x, y, w)) = queue.pop_front() {
        if va.output(&x) != vb.output(&y) {
            return Ok(Verdict::Distinguished { witness: w });
        }
        deepest = deepest.max(w.len());
        if w.len() == o.depth {
            truncated = true;
            continue;
        }
        check_sharp_budget(va, &x, o)?;
        check_sharp_budget(vb, &y, o)?;
        for letter in va.alphabet().iter() {
            let pair = (va.step(&x, letter), vb.step(&y, letter));
            if visited.contains(&pair) {
                continue;
            }
            let mut nw = w.clone();
            nw.push(letter.clone());
            visited.insert(pair.clone());
            queue.push_back((pair.0, pair.1, nw));
        }
    }
    Ok(Verdict::EquivalentUpTo {
        depth: if truncated { o.depth } else { deepest },
        pairs: visited.len(),
        exact: !truncated,
    })
}

fn verdict_outcome(verdict: Verdict, sep: &str) -> Outcome {
    match verdict {
        Verdict::EquivalentUpTo { exact: true, .. } => {
            Outcome::ok(vec!["equivalent (exact)".to_string()])
        }
        Verdict::EquivalentUpTo { depth, .. } => {
            Outcome::ok(vec![format!("equivalent up to depth {depth}")])
        }
        Verdict::Distinguished { witness } => Outcome {
            lines: vec![format!("distinguished by {}", witness.render(sep))],
            code: 1,
        },
    }
}

// ---------------------------------------------------------------------
// enumerate

/// List the determinized states reachable from a designated one.
pub fn enumerate(artifact: &Artifact, start: &str, o: &Opts) -> CmdResult {
    match artifact {
        Artifact::Nfa(n) => {
            let q = nfa_state(n, start)?;
            let det = n.determinized();
            Ok(listing(enumerate_reachable(&det, &q, o.max_states), &det))
        }
        Artifact::Stack(m) => match m.kind {
            MachineKind::Det => {
                let det = m.det().map_err(lib_fail)?;
                let q = if start == "start" {
                    det.start().clone()
                } else {
                    let (state, stack) = m.parse_config(start).map_err(lib_fail)?;
                    Config::Go(state, stack)
                };
                Ok(listing(enumerate_reachable(&det, &q, o.max_states), &det))
            }
            MachineKind::Nd => {
                let nd = m.nd().map_err(lib_fail)?;
                let q = stack_state(m, start)?;
                Ok(listing(enumerate_reachable(&nd, &q, o.max_states), &nd))
            }
        },
        Artifact::Grammar(g) => match g {
            AnyGrammar::Bool(g) => enumerate_grammar(g, start, o),
            AnyGrammar::Nat(g) => enumerate_grammar(g, start, o),
            AnyGrammar::Int(g) => enumerate_grammar(g, start, o),
        },
        other => Err(usage(format!(
            "enumerate needs a machine or grammar spec, got {}",
            other.kind_name()
        ))),
    }
}

fn enumerate_grammar<S: Semiring>(g: &WeightedGrammar<S>, start: &str, o: &Opts) -> CmdResult {
    let p = grammar_state(g, o.mode, start)?;
    match o.mode {
        Mode::Hat => {
            let view = g.hat().map_err(lib_fail)?;
            Ok(listing(enumerate_reachable(&view, &p, o.max_states), &view))
        }
        Mode::Sharp => {
            let view = g.sharp().map_err(lib_fail)?;
            let reached = guarded_enumerate(&view, &p, o)?;
            Ok(listing(reached, &view))
        }
    }
}

/// Breadth-first reachability with the sharp-step budget; mirrors the
/// engine's enumeration, which cannot abort from inside its step function.
fn guarded_enumerate<S: Semiring>(
    view: &SharpView<'_, S>,
    start: &Poly<S>,
    o: &Opts,
) -> Result<Reachable<Poly<S>>, Failure> {
    if o.max_states == 0 {
        return Ok(Reachable {
            states: Vec::new(),
            complete: false,
        });
    }
    let mut seen = BTreeSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(q) = queue.pop_front() {
        check_sharp_budget(view, &q, o)?;
        for letter in view.alphabet().iter() {
            let next = view.step(&q, letter);
            if seen.contains(&next) {
                continue;
            }
            if order.len() == o.max_states {
                return Ok(Reachable {
                    states: order,
                    complete: false,
                });
            }
            seen.insert(next.clone());
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    Ok(Reachable {
        states: order,
        complete: true,
    })
}

fn listing<B: Behavior>(reached: Reachable<B::State>, b: &B) -> Outcome {
    let mut lines: Vec<String> = reached.states.iter().map(|q| b.show_state(q)).collect();
    lines.sort();
    lines.push(if reached.complete { "complete" } else { "truncated" }.to_string());
    Outcome::ok(lines)
}

// ---------------------------------------------------------------------
// unfold

/// Print the depth-bounded unfolding of a term over a scheme.
pub fn unfold(artifact: &Artifact, root: &str, o: &Opts) -> CmdResult {
    let Artifact::Rps(scheme) = artifact else {
        return Err(usage(format!(
            "unfold needs an rps spec, got {}",
            artifact.kind_name()
        )));
    };
    let root = Term::parse(root, &scheme.arities()).map_err(lib_fail)?;
    let tree = scheme.unfold(&root, o.depth).map_err(lib_fail)?;
    Ok(Outcome::ok(tree.render_lines()))
}

// ---------------------------------------------------------------------
// solve

/// Solve an equation system and print each variable's outputs along all
/// words up to the depth, then the substitution-identity check.
pub fn solve(artifact: &Artifact, imports: Option<&Artifact>, o: &Opts) -> CmdResult {
    let Artifact::Eqsys(eq) = artifact else {
        return Err(usage(format!(
            "solve needs an eqsys spec, got {}",
            artifact.kind_name()
        )));
    };
    match eq.semiring {
        langlift::SemiringKind::Bool => solve_bool(eq, imports, o),
        langlift::SemiringKind::Nat => solve_grammar_imports::<Nat2>(eq, imports, o),
        langlift::SemiringKind::Int => solve_grammar_imports::<Int2>(eq, imports, o),
    }
}

// Local aliases keep the import-dispatch signatures readable.
type Nat2 = langlift::Nat;
type Int2 = langlift::Int;

/// Pick out each imported variable's designator and resolve it to a state.
fn bindings<Q>(
    eq: &EqsysSpec,
    mut resolve: impl FnMut(&str) -> langlift::Result<Q>,
) -> Result<BTreeMap<String, Q>, Failure> {
    let mut out = BTreeMap::new();
    for (var, def) in &eq.defs {
        if let EqsysDef::Import { designator } = def {
            let state = resolve(designator)
                .map_err(|e| usage(format!("import for `{var}`: {e}")))?;
            out.insert(designator.clone(), state);
        }
    }
    Ok(out)
}

fn solve_bool(eq: &EqsysSpec, imports: Option<&Artifact>, o: &Opts) -> CmdResult {
    let flat: FlatEquation<bool> = eq.to_flat().map_err(lib_fail)?;
    if !eq.has_imports() {
        let ext = NoImports::<bool>::new(flat.alphabet.clone());
        return run_solution(&flat, &ext, BTreeMap::new(), o);
    }
    match imports {
        None => Err(usage(
            "the system imports external states; pass --imports <machine spec>",
        )),
        Some(Artifact::Nfa(n)) => {
            let resolved = bindings(eq, |d| n.parse_subset(d))?;
            run_solution(&flat, &n.determinized(), resolved, o)
        }
        Some(Artifact::Stack(m)) => match m.kind {
            MachineKind::Det => {
                let det = m.det().map_err(lib_fail)?;
                let resolved = bindings(eq, |d| {
                    m.parse_config(d).map(|(q, s)| Config::Go(q, s))
                })?;
                run_solution(&flat, &det, resolved, o)
            }
            MachineKind::Nd => {
                let nd = m.nd().map_err(lib_fail)?;
                let resolved = bindings(eq, |d| m.parse_config(d).map(|c| BTreeSet::from([c])))?;
                run_solution(&flat, &nd, resolved, o)
            }
        },
        Some(Artifact::Grammar(AnyGrammar::Bool(g))) => {
            let view = g.hat().map_err(lib_fail)?;
            let resolved = bindings(eq, |d| g.parse_state(Mode::Hat, d))?;
            run_solution(&flat, &view, resolved, o)
        }
        Some(other) => Err(usage(format!(
            "a bool system imports from a machine or bool grammar, got {}",
            other.kind_name()
        ))),
    }
}

/// Weighted systems import from a grammar over the same semiring; imported
/// designators are hat states, and the two grammar behaviours weigh every
/// word identically, so driving the word-indexed one loses nothing.
fn solve_grammar_imports<S: Semiring>(
    eq: &EqsysSpec,
    imports: Option<&Artifact>,
    o: &Opts,
) -> CmdResult
where
    AnyGrammar: GrammarOf<S>,
{
    let flat: FlatEquation<S> = eq.to_flat().map_err(lib_fail)?;
    if !eq.has_imports() {
        let ext = NoImports::<S>::new(flat.alphabet.clone());
        return run_solution(&flat, &ext, BTreeMap::new(), o);
    }
    match imports {
        None => Err(usage(
            "the system imports external states; pass --imports <grammar spec>",
        )),
        Some(Artifact::Grammar(any)) => match AnyGrammar::grammar_of(any) {
            Some(g) => {
                let view = g.hat().map_err(lib_fail)?;
                let resolved = bindings(eq, |d| g.parse_state(Mode::Hat, d))?;
                run_solution(&flat, &view, resolved, o)
            }
            None => Err(usage(format!(
                "a {} system imports from a {} grammar, got a `{}` one",
                S::NAME,
                S::NAME,
                any.kind().name()
            ))),
        },
        Some(other) => Err(usage(format!(
            "a {} system imports from a {} grammar, got {}",
            S::NAME,
            S::NAME,
            other.kind_name()
        ))),
    }
}

/// Selects the grammar of matching scalar type out of [`AnyGrammar`].
pub trait GrammarOf<S: Semiring> {
    /// The grammar, when its semiring is `S`.
    fn grammar_of(any: &AnyGrammar) -> Option<&WeightedGrammar<S>>;
}

impl GrammarOf<langlift::Nat> for AnyGrammar {
    fn grammar_of(any: &AnyGrammar) -> Option<&WeightedGrammar<langlift::Nat>> {
        match any {
            AnyGrammar::Nat(g) => Some(g),
            _ => None,
        }
    }
}

impl GrammarOf<langlift::Int> for AnyGrammar {
    fn grammar_of(any: &AnyGrammar) -> Option<&WeightedGrammar<langlift::Int>> {
        match any {
            AnyGrammar::Int(g) => Some(g),
            _ => None,
        }
    }
}

fn run_solution<B: Behavior>(
    flat: &FlatEquation<B::Out>,
    ext: &B,
    resolved: BTreeMap<String, B::State>,
    o: &Opts,
) -> CmdResult
where
    B::Out: Display,
{
    let sol = solve_flat_equation(flat, ext, resolved).map_err(lib_fail)?;
    let mut lines = Vec::new();
    for var in &flat.vars {
        let q0 = sol.var_state(var).map_err(lib_fail)?;
        for w in flat.alphabet.words_up_to(o.depth) {
            let out = run_word(&sol, &q0, &w).map_err(lib_fail)?;
            lines.push(format!("{var} {} = {out}", w.render(&o.sep)));
        }
    }
    match check_solution(&sol, o.depth) {
        Ok(states) => {
            lines.push(format!("eq:sol satisfied at {states} states"));
            Ok(Outcome::ok(lines))
        }
        Err(e) => {
            lines.push(format!("eq:sol violated: {e}"));
            Ok(Outcome { lines, code: 1 })
        }
    }
}

// ---------------------------------------------------------------------
// validate

/// Report every static defect in an artifact.
pub fn validate(artifact: &Artifact) -> CmdResult {
    let problems = match artifact {
        Artifact::Nfa(_) => Vec::new(),
        Artifact::Stack(m) => m.validate(),
        Artifact::Grammar(g) => g.validate(),
        Artifact::Rps(s) => s.validate(),
        Artifact::Eqsys(e) => e.validate(),
    };
    if problems.is_empty() {
        Ok(Outcome::ok(vec!["ok".to_string()]))
    } else {
        Ok(Outcome {
            lines: problems,
            code: 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> Opts {
        Opts {
            sep: String::new(),
            max_configs: 100_000,
            max_states: 1000,
            depth: 8,
            mode: Mode::Hat,
            initial_stack: None,
            exact: false,
        }
    }

    fn dyck_grammar() -> Artifact {
        parse_spec(
            "grammar\nsemiring bool\nnonterminals S R\ninput ( )\nstart 1 S\n\
             out S = 1\nstep S ( = 1 S R S\nstep R ) = 1 eps\n",
        )
        .unwrap()
    }

    #[test]
    fn member_splits_verdicts_across_exit_codes() {
        let m = parse_spec(
            "machine stack\nk 1\nstack Z A\ntrans p a Z -> p A Z\ntrans p a A -> p A A\n\
             trans p b A -> q \"\"\ntrans q b A -> q \"\"\naccept p Z\naccept q Z\nstart p Z\n",
        )
        .unwrap();
        let yes = member(&m, "aabb", &opts()).unwrap();
        assert_eq!((yes.code, yes.lines), (0, vec!["accept".to_string()]));
        let no = member(&m, "abab", &opts()).unwrap();
        assert_eq!((no.code, no.lines), (1, vec!["reject".to_string()]));
    }

    #[test]
    fn coeff_prints_bare_semiring_values() {
        let g = dyck_grammar();
        assert_eq!(coeff(&g, "()", &opts()).unwrap().lines, vec!["true"]);
        assert_eq!(coeff(&g, ")(", &opts()).unwrap().lines, vec!["false"]);
        let mut sharp = opts();
        sharp.mode = Mode::Sharp;
        assert_eq!(coeff(&g, "(())", &sharp).unwrap().lines, vec!["true"]);
    }

    #[test]
    fn sharp_budget_refuses_rather_than_diverging() {
        let g = dyck_grammar();
        let mut o = opts();
        o.mode = Mode::Sharp;
        o.max_configs = 50;
        let failure = coeff(&g, "((((((", &o).unwrap_err();
        assert_eq!(failure.code, 3);
        assert!(failure.message.contains("budget"));
    }

    #[test]
    fn equiv_reports_a_shortest_witness() {
        let trivial = parse_spec(
            "grammar\nsemiring bool\nnonterminals T\ninput ( )\nstart 1 T\nout T = 1\n",
        )
        .unwrap();
        let mut o = opts();
        o.depth = 4;
        let out = equiv(&dyck_grammar(), "start", &trivial, "start", &o).unwrap();
        assert_eq!(out.code, 1);
        assert_eq!(out.lines, vec!["distinguished by ()"]);
    }

    #[test]
    fn solve_without_imports_needs_none() {
        let eq = parse_spec("eqsys\noutput nat\ninput a\nguard x 3 a -> x\n").unwrap();
        let out = solve(&eq, None, &opts()).unwrap();
        assert_eq!(out.code, 0);
        assert!(out.lines.iter().all(|l| l.ends_with("= 3") || l.starts_with("eq:sol")));
        assert_eq!(out.lines.last().unwrap(), "eq:sol satisfied at 1 states");
    }
}
