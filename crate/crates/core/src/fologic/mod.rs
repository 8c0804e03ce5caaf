//! First-order logic over words with order and modular predicates.

mod compile;
mod eval;
mod info;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use compile::{compile_formula, compile_formula_with_cap};
pub use eval::eval_formula;
pub use info::{classify, FormulaInfo};
pub use parse::{parse_formula, parse_formula_doc, FormulaDoc};

use crate::error::{Error, Result};

/// Formula syntax tree. Positions are 1-based; residues of `Mod` and `Len`
/// lie in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// `λ(x) = a`
    Lab(String, String),
    Eq(String, String),
    Lt(String, String),
    /// `x ≡ i mod n`
    Mod(String, usize, usize),
    /// `|w| ≡ i mod n`
    Len(usize, usize),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn lab(x: &str, a: &str) -> Formula {
        Formula::Lab(x.into(), a.into())
    }

    pub fn lt(x: &str, y: &str) -> Formula {
        Formula::Lt(x.into(), y.into())
    }

    pub fn eq(x: &str, y: &str) -> Formula {
        Formula::Eq(x.into(), y.into())
    }

    /// `x ≡ i mod n` with `i` normalized into `1..=n`.
    pub fn modulo(x: &str, n: usize, i: usize) -> Formula {
        Formula::Mod(x.into(), n, crate::automata::residue(i as i64, n))
    }

    pub fn len(n: usize, i: usize) -> Formula {
        Formula::Len(n, crate::automata::residue(i as i64, n))
    }

    /// Conjunction, simplifying constants.
    pub fn and(self, other: Formula) -> Formula {
        match (self, other) {
            (Formula::True, f) | (f, Formula::True) => f,
            (Formula::False, _) | (_, Formula::False) => Formula::False,
            (f, g) => Formula::And(Box::new(f), Box::new(g)),
        }
    }

    /// Disjunction, simplifying constants.
    pub fn or(self, other: Formula) -> Formula {
        match (self, other) {
            (Formula::False, f) | (f, Formula::False) => f,
            (Formula::True, _) | (_, Formula::True) => Formula::True,
            (f, g) => Formula::Or(Box::new(f), Box::new(g)),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(f) => *f,
            f => Formula::Not(Box::new(f)),
        }
    }

    pub fn implies(self, other: Formula) -> Formula {
        self.not().or(other)
    }

    pub fn iff(self, other: Formula) -> Formula {
        self.clone().implies(other.clone()).and(other.implies(self))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        match body {
            Formula::True | Formula::False => body,
            b => Formula::Exists(x.into(), Box::new(b)),
        }
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        match body {
            Formula::True | Formula::False => body,
            b => Formula::Forall(x.into(), Box::new(b)),
        }
    }

    pub fn all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().fold(Formula::True, Formula::and)
    }

    pub fn any(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().fold(Formula::False, Formula::or)
    }

    /// Free variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        fn see(v: &str, bound: &[&str], out: &mut BTreeSet<String>) {
            if !bound.contains(&v) {
                out.insert(v.to_string());
            }
        }
        match self {
            Formula::True | Formula::False | Formula::Len(..) => {}
            Formula::Lab(x, _) | Formula::Mod(x, _, _) => see(x, bound, out),
            Formula::Eq(x, y) | Formula::Lt(x, y) => {
                see(x, bound, out);
                see(y, bound, out);
            }
            Formula::And(f, g) | Formula::Or(f, g) => {
                f.collect_free(bound, out);
                g.collect_free(bound, out);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Lab(x, _) | Formula::Mod(x, _, _) => {
                out.insert(x.clone());
            }
            Formula::Eq(x, y) | Formula::Lt(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Exists(x, _) | Formula::Forall(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// Every letter mentioned by a `Lab` atom.
    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Lab(_, a) = f {
                out.insert(a.clone());
            }
        });
        out
    }

    pub(crate) fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.visit(f),
            _ => {}
        }
    }

    /// Fails with the first free variable, if any.
    pub fn check_sentence(&self) -> Result<()> {
        match self.free_vars().into_iter().next() {
            Some(v) => Err(Error::UnboundVariable(v)),
            None => Ok(()),
        }
    }

    pub(crate) fn check_letters(&self, alphabet: &[String]) -> Result<()> {
        for a in self.letters() {
            if !alphabet.contains(&a) {
                return Err(Error::semantic(format!(
                    "letter `{a}` is not in the alphabet"
                )));
            }
        }
        Ok(())
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl fmt::Display for Formula {
    /// Renders in the s-expression syntax accepted by [`parse_formula`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Lab(x, a) => write!(f, "(lab {x} {a})"),
            Formula::Eq(x, y) => write!(f, "(= {x} {y})"),
            Formula::Lt(x, y) => write!(f, "(< {x} {y})"),
            Formula::Mod(x, n, i) => write!(f, "(mod {x} {n} {i})"),
            Formula::Len(n, i) => write!(f, "(len {n} {i})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Exists(x, a) => write!(f, "(exists {x} {a})"),
            Formula::Forall(x, a) => write!(f, "(forall {x} {a})"),
        }
    }
}
