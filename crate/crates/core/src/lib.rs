//! Decision procedures for definability of regular languages in first-order
//! fragments with and without modular predicates.
//!
//! A language is given as a [`Dfa`]. Its syntactic morphism, ordered
//! syntactic monoid and stability data are computed once and shared by the
//! fragment criteria in [`fragments`]. The remaining modules provide semantic
//! oracles: a formula compiler in [`fologic`], modular products in
//! [`modprod`] and wreath products in [`wreath`].

pub mod automata;
pub mod crosscheck;
mod error;
pub mod fologic;
pub mod fragments;
pub mod hierarchy;
pub mod modprod;
pub mod monoid;
mod sexp;
pub mod stability;
pub mod wreath;

pub use automata::{
    decorate, decorated_alphabet, dfa_to_json, length_residues, parse_dfa, parse_regex,
    DecoratedLetter, Dfa, Word,
};
pub use error::{Error, Result};
pub use fologic::{compile_formula, eval_formula, parse_formula, Formula};
pub use fragments::{analyze, check_fragment, Fragment, FragmentReport};
pub use modprod::{eval_expr, expr_to_formula, parse_expr, validate, LangExpr};
pub use monoid::{transition_monoid, Morphism, OrderedMonoid};
pub use stability::{stability_index, StabilityInfo};

/// Default bound on the number of monoid elements.
pub const DEFAULT_MONOID_CAP: usize = 10_000;

/// Default bound on the number of states of intermediate automata.
pub const DEFAULT_STATE_CAP: usize = 200_000;
