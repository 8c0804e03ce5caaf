use std::collections::BTreeSet;

use serde::Serialize;

use crate::fologic::Formula;

/// Syntactic metadata of a formula. Purely descriptive: definability is
/// decided on the syntactic monoid, never from these fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormulaInfo {
    /// Distinct variable names, bound or free.
    pub variables: BTreeSet<String>,
    /// At most two distinct variable names.
    pub two_variable: bool,
    /// Uses `mod` or `len` atoms.
    pub uses_modular: bool,
    pub quantifier_depth: usize,
    /// After pushing negations to the atoms, every path from the root meets
    /// existential quantifiers before universal ones.
    pub sigma2_shape: bool,
    /// The dual: universals before existentials.
    pub pi2_shape: bool,
}

/// Negation normal form; negations only directly above atoms.
fn nnf(f: &Formula, neg: bool) -> Formula {
    match f {
        Formula::Not(g) => nnf(g, !neg),
        Formula::And(a, b) | Formula::Or(a, b) => {
            let (a, b) = (Box::new(nnf(a, neg)), Box::new(nnf(b, neg)));
            if matches!(f, Formula::And(..)) != neg {
                Formula::And(a, b)
            } else {
                Formula::Or(a, b)
            }
        }
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let g = Box::new(nnf(g, neg));
            if matches!(f, Formula::Exists(..)) != neg {
                Formula::Exists(x.clone(), g)
            } else {
                Formula::Forall(x.clone(), g)
            }
        }
        Formula::True if neg => Formula::False,
        Formula::False if neg => Formula::True,
        atom if neg => Formula::Not(Box::new(atom.clone())),
        atom => atom.clone(),
    }
}

/// Whether every root path in an NNF formula has quantifier pattern
/// `first* second*`.
fn two_blocks(f: &Formula, first: bool, in_second: bool) -> bool {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => {
            two_blocks(a, first, in_second) && two_blocks(b, first, in_second)
        }
        Formula::Exists(_, g) | Formula::Forall(_, g) => {
            let is_first = matches!(f, Formula::Exists(..)) == first;
            if is_first && in_second {
                false
            } else {
                two_blocks(g, first, in_second || !is_first)
            }
        }
        _ => true,
    }
}

fn depth(f: &Formula) -> usize {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => depth(a).max(depth(b)),
        Formula::Not(a) => depth(a),
        Formula::Exists(_, a) | Formula::Forall(_, a) => 1 + depth(a),
        _ => 0,
    }
}

pub fn classify(f: &Formula) -> FormulaInfo {
    let variables = f.all_vars();
    let mut uses_modular = false;
    f.visit(&mut |g| uses_modular |= matches!(g, Formula::Mod(..) | Formula::Len(..)));
    let normal = nnf(f, false);
    FormulaInfo {
        two_variable: variables.len() <= 2,
        variables,
        uses_modular,
        quantifier_depth: depth(f),
        sigma2_shape: two_blocks(&normal, true, false),
        pi2_shape: two_blocks(&normal, false, false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fologic::parse_formula;

    #[test]
    fn contains_aa_is_sigma2_but_not_two_variable() {
        let f = parse_formula("(exists x (exists y (and (suc x y) (lab x a) (lab y a))))").unwrap();
        let i = classify(&f);
        assert!(i.sigma2_shape && !i.pi2_shape);
        assert!(!i.two_variable);
        assert!(!i.uses_modular);
        assert_eq!(i.quantifier_depth, 3);
    }

    #[test]
    fn negation_flips_the_shape() {
        let f = parse_formula("(not (exists x (forall y (< x y))))").unwrap();
        let i = classify(&f);
        assert!(i.pi2_shape && !i.sigma2_shape);
        assert!(i.two_variable);
    }

    #[test]
    fn quantifier_free_is_both() {
        let i = classify(&parse_formula("(len 2 0)").unwrap());
        assert!(i.sigma2_shape && i.pi2_shape && i.uses_modular);
        assert_eq!(i.quantifier_depth, 0);
    }

    #[test]
    fn alternation_three_is_neither() {
        let f = parse_formula("(exists x (forall y (exists z (and (< x z) (< y z)))))").unwrap();
        let i = classify(&f);
        assert!(!i.sigma2_shape && !i.pi2_shape);
    }
}
