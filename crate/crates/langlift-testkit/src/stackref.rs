//! Reference deciders for the context-free languages the bundled pushdown
//! machines recognize, written as direct scans over the word.

use langlift::Word;

/// A block of `a`s followed by an equally long block of `b`s.
pub fn is_anbn(w: &Word) -> bool {
    let letters: Vec<&str> = w.iter().map(|s| s.as_str()).collect();
    let a_count = letters.iter().take_while(|&&l| l == "a").count();
    let rest = &letters[a_count..];
    rest.len() == a_count && rest.iter().all(|&l| l == "b")
}

/// Balanced nesting of `open` and `close`, never dipping below zero.
pub fn is_balanced(w: &Word, open: &str, close: &str) -> bool {
    let mut depth: i64 = 0;
    for s in w.iter() {
        if s.as_str() == open {
            depth += 1;
        } else if s.as_str() == close {
            depth -= 1;
        } else {
            return false;
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Reads the same forwards and backwards.
pub fn is_palindrome(w: &Word) -> bool {
    let letters = w.as_slice();
    letters.iter().eq(letters.iter().rev())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, "").unwrap()
    }

    #[test]
    fn spot_checks() {
        assert!(is_anbn(&w("")));
        assert!(is_anbn(&w("aabb")));
        assert!(!is_anbn(&w("aab")));
        assert!(!is_anbn(&w("ba")));
        assert!(!is_anbn(&w("abab")));

        assert!(is_balanced(&w("(())()"), "(", ")"));
        assert!(!is_balanced(&w(")("), "(", ")"));
        assert!(!is_balanced(&w("(()"), "(", ")"));

        assert!(is_palindrome(&w("")));
        assert!(is_palindrome(&w("aba")));
        assert!(is_palindrome(&w("abba")));
        assert!(!is_palindrome(&w("ab")));
    }
}
