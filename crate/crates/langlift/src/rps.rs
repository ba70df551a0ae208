//! Recursion schemes over a signature of given operation symbols: each
//! defined symbol has one equation, and unfolding rewrites defined heads
//! until a given symbol or variable surfaces, then descends. The result of
//! a depth-bounded unfolding is a tree prefix carrying every label up to
//! the requested depth, with cut markers at the positions just below it.
//!
//! Equations must be guarded for head rewriting to terminate: following
//! body heads through defined symbols must reach a given symbol without
//! passing a definition whose body is a bare variable, and must not cycle.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::symbol::Sym;

/// A finite term over operation symbols and variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    /// A variable leaf.
    Var(Sym),
    /// An operation symbol applied to arguments.
    App(Sym, Vec<Term>),
}

impl Term {
    /// Parse `name`, `name(arg, ...)`, or nested applications. A bare name
    /// that appears in `arities` is a nullary application; any other bare
    /// name is a variable. Symbol names may be any run of characters other
    /// than whitespace, parentheses, and commas.
    pub fn parse(text: &str, arities: &BTreeMap<Sym, usize>) -> Result<Term> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let term = parse_term(&tokens, &mut pos, arities)?;
        if pos != tokens.len() {
            return Err(Error::Invalid(format!(
                "trailing input after term in `{text}`"
            )));
        }
        Ok(term)
    }

    /// Render with nullary applications as bare names, so parsing the
    /// result against the same declarations reproduces the term.
    pub fn render(&self) -> String {
        match self {
            Term::Var(x) => x.to_string(),
            Term::App(f, args) if args.is_empty() => f.to_string(),
            Term::App(f, args) => {
                let inner: Vec<String> = args.iter().map(Term::render).collect();
                format!("{f}({})", inner.join(", "))
            }
        }
    }

    /// Replace variables by terms; variables without an entry stay put.
    pub fn subst(&self, env: &BTreeMap<Sym, Term>) -> Term {
        match self {
            Term::Var(x) => env.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.subst(env)).collect())
            }
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Name(Sym),
    Open,
    Close,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut name = String::new();
    for c in text.chars() {
        if c.is_whitespace() || matches!(c, '(' | ')' | ',') {
            if !name.is_empty() {
                tokens.push(Token::Name(Sym::from(std::mem::take(&mut name))));
            }
            match c {
                '(' => tokens.push(Token::Open),
                ')' => tokens.push(Token::Close),
                ',' => tokens.push(Token::Comma),
                _ => {}
            }
        } else {
            name.push(c);
        }
    }
    if !name.is_empty() {
        tokens.push(Token::Name(Sym::from(name)));
    }
    if tokens.is_empty() {
        return Err(Error::Invalid("empty term".to_string()));
    }
    Ok(tokens)
}

fn parse_term(tokens: &[Token], pos: &mut usize, arities: &BTreeMap<Sym, usize>) -> Result<Term> {
    let Some(Token::Name(name)) = tokens.get(*pos) else {
        return Err(Error::Invalid("expected a name".to_string()));
    };
    *pos += 1;
    if tokens.get(*pos) != Some(&Token::Open) {
        return if arities.contains_key(name) {
            Ok(Term::App(name.clone(), Vec::new()))
        } else {
            Ok(Term::Var(name.clone()))
        };
    }
    *pos += 1;
    let mut args = Vec::new();
    if tokens.get(*pos) == Some(&Token::Close) {
        *pos += 1;
        return Ok(Term::App(name.clone(), args));
    }
    loop {
        args.push(parse_term(tokens, pos, arities)?);
        match tokens.get(*pos) {
            Some(Token::Comma) => *pos += 1,
            Some(Token::Close) => {
                *pos += 1;
                return Ok(Term::App(name.clone(), args));
            }
            _ => return Err(Error::Invalid("expected `,` or `)`".to_string())),
        }
    }
}

/// One defining equation: formal parameters and the body they scope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Def {
    /// Formal parameters, in order.
    pub params: Vec<Sym>,
    /// Right-hand side; its variables must be parameters.
    pub body: Term,
}

/// A recursion scheme: given symbols, defined symbols, and one equation
/// per defined symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scheme {
    /// Operation symbols with their arities, in declaration order.
    pub givens: Vec<(Sym, usize)>,
    /// Defined symbols with their arities, in declaration order.
    pub defined: Vec<(Sym, usize)>,
    /// The defining equations.
    pub defs: BTreeMap<Sym, Def>,
}

impl Scheme {
    /// Declared arity of a symbol, given or defined.
    pub fn arity_of(&self, s: &Sym) -> Option<usize> {
        self.givens
            .iter()
            .chain(self.defined.iter())
            .find(|(n, _)| n == s)
            .map(|(_, a)| *a)
    }

    /// All declared symbols with arities, for term parsing.
    pub fn arities(&self) -> BTreeMap<Sym, usize> {
        self.givens
            .iter()
            .chain(self.defined.iter())
            .cloned()
            .collect()
    }

    fn is_defined(&self, s: &Sym) -> bool {
        self.defined.iter().any(|(n, _)| n == s)
    }

    /// Collect every static defect as a human-readable diagnostic.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut seen = BTreeSet::new();
        for (name, _) in self.givens.iter().chain(self.defined.iter()) {
            if !seen.insert(name.clone()) {
                problems.push(format!("symbol `{name}` declared twice"));
            }
        }
        for (name, arity) in &self.defined {
            match self.defs.get(name) {
                None => problems.push(format!("defined symbol `{name}` has no equation")),
                Some(def) => {
                    if def.params.len() != *arity {
                        problems.push(format!(
                            "equation for `{name}` has {} parameters but arity {arity}",
                            def.params.len()
                        ));
                    }
                    for (i, p) in def.params.iter().enumerate() {
                        if def.params[..i].contains(p) {
                            problems.push(format!("equation for `{name}` repeats parameter `{p}`"));
                        }
                        if seen.contains(p) {
                            problems.push(format!(
                                "parameter `{p}` of `{name}` shadows a declared symbol"
                            ));
                        }
                    }
                    self.term_problems(&def.body, Some(&def.params), name.as_str(), &mut problems);
                }
            }
        }
        for name in self.defs.keys() {
            if !self.is_defined(name) {
                problems.push(format!("equation for undeclared symbol `{name}`"));
            }
        }
        if problems.is_empty() {
            self.guardedness_problems(&mut problems);
        }
        problems
    }

    fn term_problems(
        &self,
        t: &Term,
        allowed_vars: Option<&[Sym]>,
        context: &str,
        problems: &mut Vec<String>,
    ) {
        match t {
            Term::Var(x) => {
                if let Some(params) = allowed_vars {
                    if !params.contains(x) {
                        problems.push(format!(
                            "variable `{x}` in the equation for `{context}` is not a parameter"
                        ));
                    }
                }
            }
            Term::App(f, args) => {
                match self.arity_of(f) {
                    None => problems.push(format!("undeclared symbol `{f}` in `{context}`")),
                    Some(a) if a != args.len() => problems.push(format!(
                        "symbol `{f}` in `{context}` expects {a} arguments, got {}",
                        args.len()
                    )),
                    Some(_) => {}
                }
                for arg in args {
                    self.term_problems(arg, allowed_vars, context, problems);
                }
            }
        }
    }

    /// Guardedness: walking body heads through defined symbols must reach a
    /// given symbol. A cycle of heads, or a definition whose body is a bare
    /// variable sitting behind another defined head, would let head
    /// rewriting run forever.
    fn guardedness_problems(&self, problems: &mut Vec<String>) {
        for (name, _) in &self.defined {
            let mut chain = vec![name.clone()];
            let mut current = name.clone();
            loop {
                let def = &self.defs[&current];
                match &def.body {
                    Term::Var(_) => {
                        if chain.len() > 1 {
                            problems.push(format!(
                                "definition of `{name}` reaches `{current}`, whose body is a bare \
                                 variable; head rewriting could not terminate"
                            ));
                        }
                        break;
                    }
                    Term::App(head, _) if self.is_defined(head) => {
                        if chain.contains(head) {
                            problems.push(format!(
                                "definitions {} form a head cycle",
                                chain
                                    .iter()
                                    .map(|s| format!("`{s}`"))
                                    .collect::<Vec<_>>()
                                    .join(" -> ")
                            ));
                            break;
                        }
                        chain.push(head.clone());
                        current = head.clone();
                    }
                    Term::App(_, _) => break,
                }
            }
        }
    }

    fn require_valid(&self) -> Result<()> {
        let problems = self.validate();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(problems.join("; ")))
        }
    }

    /// Check a standalone term against the declarations; free variables are
    /// allowed and become leaves when unfolded.
    pub fn check_root(&self, t: &Term) -> Result<()> {
        let mut problems = Vec::new();
        self.term_problems(t, None, "the root term", &mut problems);
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(problems.join("; ")))
        }
    }

    /// Rewrite the root while it is a defined symbol, substituting arguments
    /// unevaluated. Terminates on schemes that validate cleanly; the
    /// guardedness check exists precisely to ensure this.
    pub fn head_normalize(&self, t: &Term) -> Term {
        let mut current = t.clone();
        loop {
            let Term::App(f, args) = &current else {
                return current;
            };
            if !self.is_defined(f) {
                return current;
            }
            let def = &self.defs[f];
            let env: BTreeMap<Sym, Term> = def
                .params
                .iter()
                .cloned()
                .zip(args.iter().cloned())
                .collect();
            current = def.body.subst(&env);
        }
    }

    /// Unfold a term to the given depth: every label at depth up to `depth`
    /// appears, every child position just below it is cut, and variables
    /// are leaves wherever they surface.
    pub fn unfold(&self, root: &Term, depth: usize) -> Result<TreePrefix> {
        self.require_valid()?;
        self.check_root(root)?;
        Ok(self.unfold_rec(root, depth))
    }

    fn unfold_rec(&self, t: &Term, depth: usize) -> TreePrefix {
        match self.head_normalize(t) {
            Term::Var(x) => TreePrefix::Var(x),
            Term::App(f, args) => {
                let children = if depth == 0 {
                    args.iter().map(|_| TreePrefix::Cut).collect()
                } else {
                    args.iter().map(|a| self.unfold_rec(a, depth - 1)).collect()
                };
                TreePrefix::Node(f, children)
            }
        }
    }
}

/// A finite prefix of a possibly infinite operation tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreePrefix {
    /// A variable leaf.
    Var(Sym),
    /// An operation node with one subtree per argument.
    Node(Sym, Vec<TreePrefix>),
    /// An unexpanded position.
    Cut,
}

impl TreePrefix {
    /// One label per line, children indented two spaces below their parent,
    /// cuts printed as `...`.
    pub fn render_lines(&self) -> Vec<String> {
        fn go(t: &TreePrefix, indent: usize, lines: &mut Vec<String>) {
            let pad = "  ".repeat(indent);
            match t {
                TreePrefix::Var(x) => lines.push(format!("{pad}{x}")),
                TreePrefix::Cut => lines.push(format!("{pad}...")),
                TreePrefix::Node(f, children) => {
                    lines.push(format!("{pad}{f}"));
                    for c in children {
                        go(c, indent + 1, lines);
                    }
                }
            }
        }
        let mut lines = Vec::new();
        go(self, 0, &mut lines);
        lines
    }
}

/// Whether two prefixes agree on every label at depth up to `depth`. A cut
/// at or above that depth in either tree means the tree does not reach far
/// enough to answer, and is an error rather than a mismatch.
pub fn tree_prefix_eq(a: &TreePrefix, b: &TreePrefix, depth: usize) -> Result<bool> {
    fn go(a: &TreePrefix, b: &TreePrefix, at: usize, depth: usize) -> Result<bool> {
        if matches!(a, TreePrefix::Cut) || matches!(b, TreePrefix::Cut) {
            return Err(Error::CutAboveDepth {
                cut: at,
                needed: depth,
            });
        }
        match (a, b) {
            (TreePrefix::Var(x), TreePrefix::Var(y)) => Ok(x == y),
            (TreePrefix::Node(f, cs), TreePrefix::Node(g, ds)) => {
                if f != g || cs.len() != ds.len() {
                    return Ok(false);
                }
                if at == depth {
                    return Ok(true);
                }
                for (c, d) in cs.iter().zip(ds) {
                    if !go(c, d, at + 1, depth)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Ok(false),
        }
    }
    go(a, b, 0, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Sym {
        Sym::from(s)
    }

    /// The scheme with one defined unary symbol: φ(z) = +(z, φ(×(⋆, z))).
    fn example() -> Scheme {
        let givens = vec![(sym("+"), 2), (sym("×"), 2), (sym("⋆"), 0)];
        let defined = vec![(sym("φ"), 1)];
        let scheme = Scheme {
            givens,
            defined,
            defs: BTreeMap::new(),
        };
        let body = Term::parse("+(z, φ(×(⋆, z)))", &scheme.arities()).unwrap();
        Scheme {
            defs: BTreeMap::from([(sym("φ"), Def { params: vec![sym("z")], body })]),
            ..scheme
        }
    }

    fn n(name: &str, children: Vec<TreePrefix>) -> TreePrefix {
        TreePrefix::Node(sym(name), children)
    }

    fn v(name: &str) -> TreePrefix {
        TreePrefix::Var(sym(name))
    }

    #[test]
    fn term_parse_render_round_trip() {
        let s = example();
        let arities = s.arities();
        for text in ["+(z, φ(×(⋆, z)))", "⋆", "z", "φ(⋆)", "×(×(z, z), ⋆)"] {
            let t = Term::parse(text, &arities).unwrap();
            let rendered = t.render();
            assert_eq!(Term::parse(&rendered, &arities).unwrap(), t);
        }
        assert_eq!(
            Term::parse("⋆()", &arities).unwrap(),
            Term::App(sym("⋆"), vec![]),
            "explicit empty argument lists are accepted"
        );
        assert_eq!(Term::App(sym("⋆"), vec![]).render(), "⋆");
        assert!(Term::parse("+(z,)", &arities).is_err());
        assert!(Term::parse("", &arities).is_err());
        assert!(Term::parse("+(z", &arities).is_err());
        assert!(Term::parse("z y", &arities).is_err());
    }

    #[test]
    fn head_normalization_exposes_a_given_root() {
        let s = example();
        let t = Term::parse("φ(z)", &s.arities()).unwrap();
        let hn = s.head_normalize(&t);
        assert_eq!(hn, Term::parse("+(z, φ(×(⋆, z)))", &s.arities()).unwrap());
        // Bare-variable bodies simply select an argument.
        let id = Scheme {
            givens: vec![(sym("c"), 0)],
            defined: vec![(sym("id"), 1)],
            defs: BTreeMap::from([(sym("id"), Def {
                params: vec![sym("x")],
                body: Term::Var(sym("x")),
            })]),
        };
        assert!(id.validate().is_empty());
        let nested = Term::parse("id(id(c))", &id.arities()).unwrap();
        assert_eq!(id.head_normalize(&nested), Term::App(sym("c"), vec![]));
    }

    #[test]
    fn depth_zero_shows_only_the_root_label() {
        let s = example();
        let root = Term::parse("φ(z)", &s.arities()).unwrap();
        assert_eq!(
            s.unfold(&root, 0).unwrap(),
            n("+", vec![TreePrefix::Cut, TreePrefix::Cut])
        );
    }

    #[test]
    fn depth_four_unfolding_by_hand() {
        let s = example();
        let root = Term::parse("φ(z)", &s.arities()).unwrap();
        let cut2 = |name: &str| n(name, vec![TreePrefix::Cut, TreePrefix::Cut]);
        let expect = n("+", vec![
            v("z"),
            n("+", vec![
                n("×", vec![n("⋆", vec![]), v("z")]),
                n("+", vec![
                    n("×", vec![n("⋆", vec![]), cut2("×")]),
                    n("+", vec![cut2("×"), cut2("+")]),
                ]),
            ]),
        ]);
        assert_eq!(s.unfold(&root, 4).unwrap(), expect);
    }

    #[test]
    fn deeper_unfoldings_agree_on_shallow_labels() {
        let s = example();
        let root = Term::parse("φ(z)", &s.arities()).unwrap();
        for d in 0..=6 {
            let shallow = s.unfold(&root, d).unwrap();
            let deep = s.unfold(&root, d + 1).unwrap();
            assert_eq!(tree_prefix_eq(&deep, &shallow, d), Ok(true), "depth {d}");
        }
    }

    #[test]
    fn comparing_past_a_cut_is_an_error_not_a_mismatch() {
        let s = example();
        let root = Term::parse("φ(z)", &s.arities()).unwrap();
        let t = s.unfold(&root, 2).unwrap();
        let err = tree_prefix_eq(&t, &t, 3).unwrap_err();
        assert_eq!(err, Error::CutAboveDepth { cut: 3, needed: 3 });
        // Label disagreement at the boundary is an honest false.
        let other = n("+", vec![v("z"), v("z")]);
        assert_eq!(tree_prefix_eq(&s.unfold(&root, 1).unwrap(), &other, 1), Ok(false));
    }

    #[test]
    fn unguarded_schemes_are_rejected() {
        let direct = Scheme {
            givens: vec![(sym("c"), 0)],
            defined: vec![(sym("ψ"), 1)],
            defs: BTreeMap::from([(sym("ψ"), Def {
                params: vec![sym("y")],
                body: Term::App(sym("ψ"), vec![Term::Var(sym("y"))]),
            })]),
        };
        assert!(direct.validate().iter().any(|p| p.contains("head cycle")));

        // ψ(y) = φ(ψ(y)) with φ(z) = z: rewriting ψ's head never ends.
        let via_transparent = Scheme {
            givens: vec![(sym("c"), 0)],
            defined: vec![(sym("φ"), 1), (sym("ψ"), 1)],
            defs: BTreeMap::from([
                (sym("φ"), Def { params: vec![sym("z")], body: Term::Var(sym("z")) }),
                (sym("ψ"), Def {
                    params: vec![sym("y")],
                    body: Term::App(sym("φ"), vec![Term::App(sym("ψ"), vec![Term::Var(sym("y"))])]),
                }),
            ]),
        };
        assert!(via_transparent
            .validate()
            .iter()
            .any(|p| p.contains("bare variable")));
        assert!(via_transparent
            .unfold(&Term::App(sym("ψ"), vec![Term::Var(sym("y"))]), 3)
            .is_err());
    }

    #[test]
    fn validation_names_structural_defects() {
        let mut s = example();
        s.defined.push((sym("g"), 2));
        let problems = s.validate();
        assert!(problems.iter().any(|p| p.contains("`g` has no equation")));

        let mut s = example();
        s.defs.insert(sym("φ"), Def {
            params: vec![sym("z"), sym("z")],
            body: Term::Var(sym("z")),
        });
        let problems = s.validate();
        assert!(problems.iter().any(|p| p.contains("repeats parameter")));
        assert!(problems.iter().any(|p| p.contains("has 2 parameters but arity 1")));

        let mut s = example();
        s.defs.insert(sym("φ"), Def {
            params: vec![sym("z")],
            body: Term::parse("+(q, z)", &s.arities()).unwrap(),
        });
        assert!(s.validate().iter().any(|p| p.contains("not a parameter")));

        let mut s = example();
        s.defs.insert(sym("φ"), Def {
            params: vec![sym("⋆")],
            body: Term::Var(sym("⋆")),
        });
        assert!(s.validate().iter().any(|p| p.contains("shadows")));

        let s = example();
        let bad_root = Term::App(sym("+"), vec![Term::Var(sym("z"))]);
        assert!(s.unfold(&bad_root, 1).is_err(), "root arity is checked");
    }

    #[test]
    fn rendering_indents_two_spaces_per_level() {
        let s = example();
        let root = Term::parse("φ(z)", &s.arities()).unwrap();
        let lines = s.unfold(&root, 1).unwrap().render_lines();
        assert_eq!(lines, vec!["+", "  z", "  +", "    ...", "    ..."]);
    }
}
