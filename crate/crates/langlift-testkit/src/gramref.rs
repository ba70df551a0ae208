//! Reference word weights for grammars by memoized recursion over
//! sentential forms: the head symbol either finishes with its output
//! weight or consumes the next letter through one of its productions.
//! The library's behaviour machinery is never invoked.

use std::collections::BTreeMap;

use langlift::grammar::WeightedGrammar;
use langlift::{Semiring, Sym, Word};

/// The weight of deriving `word` from the sentential form `form`.
///
/// Recursion, on the measure (letters left, form length): the empty form
/// derives exactly the empty remainder with weight one; a letter at the
/// head consumes itself; a nonterminal head either finishes (its output
/// weight times the tail's derivation) or consumes the next letter via each
/// production body, prepended to the tail.
pub fn derivation_weight<S: Semiring>(g: &WeightedGrammar<S>, form: &Word, word: &Word) -> S {
    fn go<S: Semiring>(
        g: &WeightedGrammar<S>,
        form: &[Sym],
        pos: usize,
        word: &[Sym],
        memo: &mut BTreeMap<(Word, usize), S>,
    ) -> S {
        let key = (Word::from(form), pos);
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let value = match form.split_first() {
            None => {
                if pos == word.len() {
                    S::one()
                } else {
                    S::zero()
                }
            }
            Some((head, tail)) if g.terminals.contains(head) => {
                if word.get(pos) == Some(head) {
                    go(g, tail, pos + 1, word, memo)
                } else {
                    S::zero()
                }
            }
            Some((head, tail)) => {
                let finish = g
                    .out
                    .get(head)
                    .map(|o| o.mul(&go(g, tail, pos, word, memo)))
                    .unwrap_or_else(S::zero);
                let consume = match word.get(pos) {
                    None => S::zero(),
                    Some(letter) => {
                        let mut acc = S::zero();
                        if let Some(body) = g.step.get(&(head.clone(), letter.clone())) {
                            for (v, c) in body.iter() {
                                let mut next: Vec<Sym> = v.as_slice().to_vec();
                                next.extend_from_slice(tail);
                                acc = acc.add(&c.mul(&go(g, &next, pos + 1, word, memo)));
                            }
                        }
                        acc
                    }
                };
                finish.add(&consume)
            }
        };
        memo.insert(key, value.clone());
        value
    }
    go(g, form.as_slice(), 0, word.as_slice(), &mut BTreeMap::new())
}

/// The weight of `word` from a polynomial state: the weighted sum of its
/// monomials' derivation weights.
pub fn poly_weight<S: Semiring>(
    g: &WeightedGrammar<S>,
    from: &langlift::Poly<S>,
    word: &Word,
) -> S {
    let mut acc = S::zero();
    for (u, c) in from.iter() {
        acc = acc.add(&c.mul(&derivation_weight(g, u, word)));
    }
    acc
}

/// The weight of every word up to `max_len` from `form`, in word order.
pub fn weight_table<S: Semiring>(
    g: &WeightedGrammar<S>,
    form: &Word,
    max_len: usize,
) -> Vec<(Word, S)> {
    g.terminals
        .words_up_to(max_len)
        .into_iter()
        .map(|w| {
            let weight = derivation_weight(g, form, &w);
            (w, weight)
        })
        .collect()
}
