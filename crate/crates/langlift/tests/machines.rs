//! Pushdown machines against independent deciders: direct word scans that
//! never touch stacks. Exhaustive over all words up to the stated lengths.

use langlift::engine::{run_word, Behavior};
use langlift::stack::{dpda_member, npda_member, Config, MachineKind, StackMachine, StackRule};
use langlift::{Alphabet, Error, Sym, Word};
use langlift_testkit::stackref;

fn w(text: &str) -> Word {
    Word::parse(text, "").unwrap()
}

fn rule(state: &str, letter: &str, prefix: &str, target: &str, rewrite: &str) -> StackRule {
    StackRule {
        state: Sym::from(state),
        letter: Sym::from(letter),
        prefix: w(prefix),
        target: Sym::from(target),
        rewrite: w(rewrite),
    }
}

/// `a^n b^n`: count `a`s on the stack, pop them against `b`s.
fn anbn() -> StackMachine {
    StackMachine {
        kind: MachineKind::Det,
        k: 1,
        states: vec![Sym::from("p"), Sym::from("q")],
        input: Alphabet::of(&["a", "b"]),
        stack: Alphabet::of(&["Z", "A"]),
        start: Sym::from("p"),
        start_stack: w("Z"),
        accepts: vec![(Sym::from("p"), w("Z")), (Sym::from("q"), w("Z"))],
        rules: vec![
            rule("p", "a", "Z", "p", "AZ"),
            rule("p", "a", "A", "p", "AA"),
            rule("p", "b", "A", "q", ""),
            rule("q", "b", "A", "q", ""),
        ],
    }
}

/// Balanced parentheses: push on open, pop on close.
fn dyck() -> StackMachine {
    StackMachine {
        kind: MachineKind::Det,
        k: 1,
        states: vec![Sym::from("p")],
        input: Alphabet::of(&["(", ")"]),
        stack: Alphabet::of(&["Z", "P"]),
        start: Sym::from("p"),
        start_stack: w("Z"),
        accepts: vec![(Sym::from("p"), w("Z"))],
        rules: vec![
            rule("p", "(", "Z", "p", "PZ"),
            rule("p", "(", "P", "p", "PP"),
            rule("p", ")", "P", "p", ""),
        ],
    }
}

/// Palindromes over {a,b}: push while guessing the first half, then match
/// the reverse; the middle letter of an odd palindrome is skipped at the
/// switch.
fn palindrome() -> StackMachine {
    let mut rules = Vec::new();
    for letter in ["a", "b"] {
        let pushed = if letter == "a" { "A" } else { "B" };
        for top in ["Z", "A", "B"] {
            let mut rewrite = String::from(pushed);
            rewrite.push_str(top);
            rules.push(rule("p", letter, top, "p", &rewrite));
            rules.push(rule("p", letter, top, "q", top));
        }
    }
    rules.push(rule("p", "a", "A", "q", ""));
    rules.push(rule("p", "b", "B", "q", ""));
    rules.push(rule("q", "a", "A", "q", ""));
    rules.push(rule("q", "b", "B", "q", ""));
    StackMachine {
        kind: MachineKind::Nd,
        k: 1,
        states: vec![Sym::from("p"), Sym::from("q")],
        input: Alphabet::of(&["a", "b"]),
        stack: Alphabet::of(&["Z", "A", "B"]),
        start: Sym::from("p"),
        start_stack: w("Z"),
        accepts: vec![(Sym::from("p"), w("Z")), (Sym::from("q"), w("Z"))],
        rules,
    }
}

#[test]
fn block_language_machine_matches_the_direct_scan() {
    let m = anbn();
    let det = m.det().unwrap();
    for word in m.input.words_up_to(10) {
        let got = dpda_member(&det, &m.start, &m.start_stack, &word).unwrap();
        assert_eq!(
            got,
            stackref::is_anbn(&word),
            "block machine wrong on {}",
            word.render("")
        );
    }
}

#[test]
fn bracket_machine_matches_the_direct_scan() {
    let m = dyck();
    let det = m.det().unwrap();
    for word in m.input.words_up_to(10) {
        let got = dpda_member(&det, &m.start, &m.start_stack, &word).unwrap();
        assert_eq!(
            got,
            stackref::is_balanced(&word, "(", ")"),
            "bracket machine wrong on {}",
            word.render("")
        );
    }
}

#[test]
fn palindrome_machine_matches_the_direct_scan() {
    let m = palindrome();
    let nd = m.nd().unwrap();
    for word in m.input.words_up_to(9) {
        let got = npda_member(&nd, &m.start, &m.start_stack, &word, 100_000).unwrap();
        assert_eq!(
            got,
            stackref::is_palindrome(&word),
            "palindrome machine wrong on {}",
            word.render("")
        );
    }
}

#[test]
fn deterministic_machines_agree_with_their_nondeterministic_reading() {
    let m = anbn();
    let det = m.det().unwrap();
    let nd = m.nd().unwrap();
    for word in m.input.words_up_to(8) {
        let d = dpda_member(&det, &m.start, &m.start_stack, &word).unwrap();
        let n = npda_member(&nd, &m.start, &m.start_stack, &word, 100_000).unwrap();
        assert_eq!(d, n, "readings split on {}", word.render(""));
    }
}

#[test]
fn configuration_layers_respect_the_cap() {
    let m = palindrome();
    let nd = m.nd().unwrap();
    let word = w("aabbaa");
    let err = npda_member(&nd, &m.start, &m.start_stack, &word, 2).unwrap_err();
    assert!(matches!(err, Error::ResourceLimit(_)), "got {err:?}");
    assert!(npda_member(&nd, &m.start, &m.start_stack, &word, 100_000).unwrap());
}

#[test]
fn dead_configurations_absorb() {
    let m = anbn();
    let det = m.det().unwrap();
    // `b` first kills the run; everything after stays dead, and dead
    // states reject.
    let mut state = det.start().clone();
    state = det.step(&state, &Sym::from("b"));
    assert_eq!(state, Config::Dead);
    for letter in m.input.iter() {
        assert_eq!(det.step(&state, letter), Config::Dead);
    }
    assert!(!det.output(&state));
    assert!(!run_word(&det, det.start(), &w("ba")).unwrap());
}
