//! The generic machinery against brute force: bounded equivalence verdicts
//! against full language tables, congruence-closed equivalence against
//! exhaustive comparison, reachability bounds, and equation solutions
//! against a hand-rolled recursion.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use langlift::engine::{
    bounded_bisim, check_solution, enumerate_reachable, no_closure, run_word,
    solve_flat_equation, Behavior, FlatEquation, VarDef, Verdict,
};
use langlift::nfa::{disjoint_union, nfa_equiv_hkc, Nfa};
use langlift::{Alphabet, Sym, Word};
use langlift_testkit::gen::Gen;
use langlift_testkit::nfaref;

fn letters() -> Alphabet {
    Alphabet::of(&["a", "b"])
}

/// Accepts the words whose last letter is `a`.
fn ends_in_a() -> Nfa {
    let q0 = Sym::from("q0");
    let q1 = Sym::from("q1");
    Nfa::new(
        vec![q0.clone(), q1.clone()],
        letters(),
        q0.clone(),
        BTreeSet::from([q1.clone()]),
        BTreeMap::from([
            ((q0.clone(), Sym::from("a")), BTreeSet::from([q0.clone(), q1])),
            ((q0.clone(), Sym::from("b")), BTreeSet::from([q0])),
        ]),
    )
    .unwrap()
}

#[test]
fn bounded_equivalence_verdicts_match_language_tables() {
    let mut gen = Gen::new(51);
    for _ in 0..40 {
        let na = gen.nfa(3, &letters(), 0.3);
        let nb = gen.nfa(3, &letters(), 0.3);
        let da = na.determinized();
        let db = nb.determinized();
        let verdict =
            bounded_bisim(&da, &na.start_set(), &db, &nb.start_set(), 6, no_closure).unwrap();
        let ta = nfaref::language_table(&na, na.start(), 7);
        let tb = nfaref::language_table(&nb, nb.start(), 7);
        match verdict {
            Verdict::Distinguished { witness } => {
                assert_ne!(
                    nfaref::accepts(&na, na.start(), &witness),
                    nfaref::accepts(&nb, nb.start(), &witness),
                    "witness {} does not distinguish",
                    witness.render("")
                );
                // No shorter word distinguishes: the witness is minimal.
                for ((w, a), (_, b)) in ta.iter().zip(tb.iter()) {
                    if w.len() < witness.len() {
                        assert_eq!(a, b, "shorter distinguisher {} exists", w.render(""));
                    }
                }
            }
            Verdict::EquivalentUpTo { depth, .. } => {
                for ((w, a), (_, b)) in ta.iter().zip(tb.iter()) {
                    if w.len() <= depth {
                        assert_eq!(a, b, "tables split at {} within depth", w.render(""));
                    }
                }
            }
        }
    }
}

#[test]
fn congruence_closed_equivalence_matches_exhaustive_comparison() {
    let mut gen = Gen::new(52);
    for _ in 0..40 {
        let na = gen.nfa(4, &letters(), 0.3);
        let nb = gen.nfa(4, &letters(), 0.3);
        let (union, sa, sb) = disjoint_union(&na, &nb).unwrap();
        let verdict = nfa_equiv_hkc(&union, &sa, &sb).unwrap();
        let ta = nfaref::language_table(&na, na.start(), 10);
        let tb = nfaref::language_table(&nb, nb.start(), 10);
        let tables_equal = ta == tb;
        match &verdict {
            Verdict::Distinguished { witness } => {
                assert_ne!(
                    nfaref::accepts(&na, na.start(), witness),
                    nfaref::accepts(&nb, nb.start(), witness),
                    "witness {} does not distinguish",
                    witness.render("")
                );
            }
            Verdict::EquivalentUpTo { exact, .. } => {
                assert!(exact, "congruence closure terminated without a proof");
                assert!(tables_equal, "claimed equivalent but tables split");
            }
        }
        // Either way the verdict kind must agree with the tables whenever a
        // length-10 distinguisher exists.
        if !tables_equal {
            assert!(matches!(verdict, Verdict::Distinguished { .. }));
        }
    }
}

#[test]
fn reachability_respects_caps_and_closure() {
    let mut gen = Gen::new(53);
    for _ in 0..25 {
        let n = gen.nfa(4, &letters(), 0.35);
        let det = n.determinized();
        let all = enumerate_reachable(&det, &n.start_set(), 16);
        assert!(all.complete, "sixteen subsets always suffice for four states");
        assert!(all.states.len() <= 16);
        // Closure: every successor of a listed state is listed.
        let listed: BTreeSet<_> = all.states.iter().cloned().collect();
        for q in &all.states {
            for letter in letters().iter() {
                assert!(listed.contains(&det.step(q, letter)), "reachable set not closed");
            }
        }
        // A tighter cap cuts the same prefix of the breadth-first order.
        if all.states.len() > 1 {
            let cut = enumerate_reachable(&det, &n.start_set(), all.states.len() - 1);
            assert!(!cut.complete);
            assert_eq!(cut.states[..], all.states[..all.states.len() - 1]);
        }
    }
}

/// The solved system of the bundled demo: `x` outputs true, steps to the
/// imported `y` on `a` and back to itself on `b`; `y` is the automaton's
/// start subset.
fn demo_system() -> FlatEquation<bool> {
    FlatEquation {
        alphabet: letters(),
        vars: vec![Sym::from("x"), Sym::from("y")],
        defs: BTreeMap::from([
            (
                Sym::from("x"),
                VarDef::Guarded {
                    out: true,
                    succ: BTreeMap::from([
                        (Sym::from("a"), Sym::from("y")),
                        (Sym::from("b"), Sym::from("x")),
                    ]),
                },
            ),
            (
                Sym::from("y"),
                VarDef::Imported {
                    handle: "q0".to_string(),
                },
            ),
        ]),
    }
}

/// What the system prescribes for `x`, computed by direct recursion on the
/// word — no solver machinery involved.
fn shadow_x(nfa: &Nfa, w: &[Sym]) -> bool {
    match w.split_first() {
        None => true,
        Some((letter, rest)) => {
            if letter.as_str() == "a" {
                nfaref::accepts(nfa, nfa.start(), &Word::from(rest))
            } else {
                shadow_x(nfa, rest)
            }
        }
    }
}

#[test]
fn solved_systems_match_a_direct_recursion() {
    let nfa = ends_in_a();
    let eq = demo_system();
    let det = nfa.determinized();
    let bindings = BTreeMap::from([("q0".to_string(), nfa.start_set())]);
    let sol = solve_flat_equation(&eq, &det, bindings).unwrap();

    let x = sol.var_state(&Sym::from("x")).unwrap();
    let y = sol.var_state(&Sym::from("y")).unwrap();
    for w in letters().words_up_to(6) {
        assert_eq!(
            run_word(&sol, &x, &w).unwrap(),
            shadow_x(&nfa, w.as_slice()),
            "x disagrees with the recursion on {}",
            w.render("")
        );
        assert_eq!(
            run_word(&sol, &y, &w).unwrap(),
            nfaref::accepts(&nfa, nfa.start(), &w),
            "y disagrees with the automaton on {}",
            w.render("")
        );
    }

    // The defining identity holds at every state the check explores: both
    // variables and both reachable subsets.
    assert_eq!(check_solution(&sol, 6).unwrap(), 4);
}

#[test]
fn solver_rejects_structural_defects() {
    let nfa = ends_in_a();
    let det = nfa.determinized();

    // Unresolved import handle.
    let eq = demo_system();
    let err = match solve_flat_equation(&eq, &det, BTreeMap::new()) {
        Err(e) => e,
        Ok(_) => panic!("an unresolved handle solved anyway"),
    };
    assert!(err.to_string().contains("q0"), "got: {err}");

    // Successor outside the declared variables.
    let mut eq = demo_system();
    eq.defs.insert(
        Sym::from("x"),
        VarDef::Guarded {
            out: true,
            succ: BTreeMap::from([
                (Sym::from("a"), Sym::from("ghost")),
                (Sym::from("b"), Sym::from("x")),
            ]),
        },
    );
    let bindings = BTreeMap::from([("q0".to_string(), nfa.start_set())]);
    assert!(solve_flat_equation(&eq, &det, bindings).is_err());

    // Missing letter in a successor map.
    let mut eq = demo_system();
    eq.defs.insert(
        Sym::from("x"),
        VarDef::Guarded {
            out: true,
            succ: BTreeMap::from([(Sym::from("a"), Sym::from("y"))]),
        },
    );
    let bindings = BTreeMap::from([("q0".to_string(), nfa.start_set())]);
    assert!(solve_flat_equation(&eq, &det, bindings).is_err());
}
