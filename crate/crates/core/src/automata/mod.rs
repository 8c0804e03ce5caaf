//! Deterministic automata, regular expressions and the decoration `τ_n`.

mod decorate;
mod dfa;
mod format;
pub(crate) mod nfa;
mod regex;

pub use decorate::{
    decorate, decorated_alphabet, decorated_alphabet_names, decorated_index, decorated_letters,
    is_well_formed, length_residues, residue, split_decorated, tau, DecoratedLetter,
};
pub(crate) use dfa::format_word;
#[cfg(test)]
pub(crate) use dfa::parse_word;
pub use dfa::{words_up_to, BoolOp, Dfa, Word};
pub use format::{dfa_to_json, parse_dfa};
pub use regex::parse_regex;
