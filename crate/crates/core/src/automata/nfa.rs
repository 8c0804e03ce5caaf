use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};

/// Nondeterministic automaton with epsilon moves, used only as an
/// intermediate form before subset construction.
#[derive(Clone, Debug, Default)]
pub(crate) struct Nfa {
    letters: usize,
    edges: Vec<Vec<(usize, usize)>>,
    eps: Vec<Vec<usize>>,
    finals: Vec<bool>,
    initials: Vec<usize>,
}

impl Nfa {
    pub(crate) fn new(letters: usize) -> Self {
        Nfa {
            letters,
            ..Default::default()
        }
    }

    pub(crate) fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.eps.push(Vec::new());
        self.finals.push(false);
        self.edges.len() - 1
    }

    pub(crate) fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub(crate) fn add_edge(&mut self, from: usize, letter: usize, to: usize) {
        self.edges[from].push((letter, to));
    }

    pub(crate) fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub(crate) fn set_final(&mut self, q: usize) {
        self.finals[q] = true;
    }

    pub(crate) fn clear_finals(&mut self) {
        self.finals.iter_mut().for_each(|f| *f = false);
    }

    pub(crate) fn add_initial(&mut self, q: usize) {
        self.initials.push(q);
    }

    /// Copies `other` into `self` as a disjoint block and returns the offset
    /// of its states. Initial states of `other` are dropped, final flags kept.
    pub(crate) fn append(&mut self, other: &Nfa) -> usize {
        let offset = self.num_states();
        for q in 0..other.num_states() {
            self.add_state();
            for &(a, t) in &other.edges[q] {
                self.edges[offset + q].push((a, offset + t));
            }
            for &t in &other.eps[q] {
                self.eps[offset + q].push(offset + t);
            }
            self.finals[offset + q] = other.finals[q];
        }
        offset
    }

    fn closure(&self, set: &mut FixedBitSet) {
        let mut stack: Vec<usize> = set.ones().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if !set.put(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction. Fails once more than `cap` subsets are reached.
    pub(crate) fn determinize(&self, alphabet: Vec<String>, cap: usize) -> Result<Dfa> {
        assert_eq!(alphabet.len(), self.letters);
        let n = self.num_states();
        let mut start = FixedBitSet::with_capacity(n);
        for &q in &self.initials {
            start.insert(q);
        }
        self.closure(&mut start);
        let mut ids: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        ids.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut targets = vec![FixedBitSet::with_capacity(n); self.letters];
            for q in sets[i].ones() {
                for &(a, t) in &self.edges[q] {
                    targets[a].insert(t);
                }
            }
            let mut row = Vec::with_capacity(self.letters);
            for mut t in targets {
                self.closure(&mut t);
                let id = match ids.get(&t) {
                    Some(&id) => id,
                    None => {
                        if sets.len() >= cap {
                            return Err(Error::StateCap { cap });
                        }
                        ids.insert(t.clone(), sets.len());
                        sets.push(t);
                        sets.len() - 1
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = sets
            .iter()
            .map(|s| s.ones().any(|q| self.finals[q]))
            .collect();
        Ok(Dfa::from_table(alphabet, 0, finals, delta))
    }
}
