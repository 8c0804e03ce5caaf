use serde::Serialize;

use crate::monoid::Morphism;

/// Structured form of a morphism for golden files.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MonoidDoc {
    pub alphabet: Vec<String>,
    pub elements: Vec<String>,
    pub identity: usize,
    pub letters: Vec<usize>,
    pub mult: Vec<Vec<usize>>,
    /// Pairs `(x, y)` with `x < y`.
    pub order: Vec<(usize, usize)>,
    pub accepting: Vec<usize>,
}

impl MonoidDoc {
    pub fn new(h: &Morphism) -> Self {
        let m = h.monoid();
        let n = m.size();
        MonoidDoc {
            alphabet: h.alphabet().to_vec(),
            elements: (0..n).map(|x| h.repr_text(x)).collect(),
            identity: m.identity(),
            letters: h.letter_map().to_vec(),
            mult: (0..n)
                .map(|x| (0..n).map(|y| m.mul(x, y)).collect())
                .collect(),
            order: m.order_pairs(),
            accepting: h.accepting().ones().collect(),
        }
    }
}

pub fn monoid_to_json(h: &Morphism) -> String {
    serde_json::to_string_pretty(&MonoidDoc::new(h)).expect("serializable")
}
