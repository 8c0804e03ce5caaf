//! Fixed inputs shared by the benchmarks.

use fragcheck::{parse_formula, parse_regex, Dfa, Formula};

/// The example languages with their alphabets.
pub const LANGUAGES: [(&str, &str, &str); 6] = [
    ("L1", "((a|b)(a|b))*(aa|bb)(a|b)*", "ab"),
    ("L2", "(a|b)*aa(a|b)*", "ab"),
    ("L3", "(a|b)*(aa|bb)(a|b)*", "ab"),
    ("L4", "(a|b)*(ab|ba)(a|b)*", "ab"),
    ("L5", "(bc)*", "bc"),
    ("L6", "(a|b)*(aa|bb)(a|b)*|(bc)*", "abc"),
];

pub fn alphabet(letters: &str) -> Vec<String> {
    letters.chars().map(|c| c.to_string()).collect()
}

pub fn languages() -> Vec<(&'static str, Dfa)> {
    LANGUAGES
        .iter()
        .map(|&(name, re, al)| (name, parse_regex(re, Some(&alphabet(al))).unwrap()))
        .collect()
}

/// A Π₂ sentence with three variables and a successor macro.
pub fn bc_star_sentence() -> Formula {
    parse_formula(
        "(and (forall z (or (lab z b) (exists x (< x z)))) \
         (forall z (or (lab z c) (exists x (< z x)))) \
         (forall x (forall y (-> (suc x y) \
           (or (and (lab x b) (lab y c)) (and (lab x c) (lab y b)))))))",
    )
    .unwrap()
}

/// A language whose syntactic monoid grows quickly with `k`: words whose
/// `k`-th letter from the end is `a`.
pub fn kth_from_end(k: usize) -> Dfa {
    let re = format!("(a|b)*a{}", "(a|b)".repeat(k - 1));
    parse_regex(&re, Some(&alphabet("ab"))).unwrap()
}
