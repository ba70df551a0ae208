//! Reference word acceptance for finite automata by memoized path search:
//! a word is accepted when some transition path ends accepting. No subset
//! states are ever formed.

use std::collections::BTreeMap;

use langlift::nfa::Nfa;
use langlift::{Sym, Word};

/// Does some path from `from` spelling `w` end in an accepting state?
pub fn accepts(nfa: &Nfa, from: &Sym, w: &Word) -> bool {
    fn go(
        nfa: &Nfa,
        q: &Sym,
        w: &[Sym],
        pos: usize,
        memo: &mut BTreeMap<(Sym, usize), bool>,
    ) -> bool {
        if let Some(&v) = memo.get(&(q.clone(), pos)) {
            return v;
        }
        let v = match w.get(pos) {
            None => nfa.accepting().contains(q),
            Some(letter) => nfa
                .targets(q, letter)
                .iter()
                .any(|t| go(nfa, t, w, pos + 1, memo)),
        };
        memo.insert((q.clone(), pos), v);
        v
    }
    go(nfa, from, w.as_slice(), 0, &mut BTreeMap::new())
}

/// Acceptance of every word up to `max_len`, in word order.
pub fn language_table(nfa: &Nfa, from: &Sym, max_len: usize) -> Vec<(Word, bool)> {
    nfa.alphabet()
        .words_up_to(max_len)
        .into_iter()
        .map(|w| {
            let a = accepts(nfa, from, &w);
            (w, a)
        })
        .collect()
}
