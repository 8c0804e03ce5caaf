use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::automata::nfa::Nfa;
use crate::error::{Error, Result};

/// A word as a sequence of letter indices into some alphabet.
pub type Word = Vec<usize>;

/// Complete deterministic finite automaton over a finite, ordered alphabet.
///
/// States and letters are addressed by index; the names are kept for
/// serialization and error messages only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: usize,
    finals: Vec<bool>,
    delta: Vec<Vec<usize>>,
}

/// Boolean combinations supported by [`Dfa::boolean_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Complement,
    Intersect,
    Union,
}

impl Dfa {
    /// Builds an automaton from its parts, checking completeness and ranges.
    pub fn new(
        alphabet: Vec<String>,
        states: Vec<String>,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::semantic("empty alphabet"));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::semantic("empty letter"));
            }
            if alphabet[..i].contains(a) {
                return Err(Error::semantic(format!("duplicate letter `{a}`")));
            }
        }
        if states.is_empty() {
            return Err(Error::semantic("automaton without states"));
        }
        if initial >= states.len() {
            return Err(Error::semantic("initial state out of range"));
        }
        if finals.len() != states.len() || delta.len() != states.len() {
            return Err(Error::semantic("state table size mismatch"));
        }
        for row in &delta {
            if row.len() != alphabet.len() {
                return Err(Error::semantic("incomplete delta"));
            }
            if row.iter().any(|&t| t >= states.len()) {
                return Err(Error::semantic("transition target out of range"));
            }
        }
        Ok(Dfa {
            alphabet,
            states,
            initial,
            finals,
            delta,
        })
    }

    pub(crate) fn from_table(
        alphabet: Vec<String>,
        initial: usize,
        finals: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Self {
        let states = (0..finals.len()).map(|i| format!("q{i}")).collect();
        Dfa {
            alphabet,
            states,
            initial,
            finals,
            delta,
        }
    }

    /// The automaton accepting every word.
    pub fn universal(alphabet: Vec<String>) -> Self {
        let k = alphabet.len();
        Self::from_table(alphabet, 0, vec![true], vec![vec![0; k]])
    }

    /// The automaton accepting nothing.
    pub fn empty(alphabet: Vec<String>) -> Self {
        let k = alphabet.len();
        Self::from_table(alphabet, 0, vec![false], vec![vec![0; k]])
    }

    /// The automaton accepting exactly the given word.
    pub fn single_word(alphabet: Vec<String>, word: &[usize]) -> Self {
        let k = alphabet.len();
        let sink = word.len() + 1;
        let mut delta = vec![vec![sink; k]; word.len() + 2];
        for (i, &a) in word.iter().enumerate() {
            delta[i][a] = i + 1;
        }
        let mut finals = vec![false; word.len() + 2];
        finals[word.len()] = true;
        Self::from_table(alphabet, 0, finals, delta)
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q][a]
    }

    pub fn run_from(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    pub fn letter_index(&self, letter: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == letter)
    }

    /// Parses a word: whitespace- or comma-separated letters when separators
    /// are present, otherwise one letter per character.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(&self.alphabet, text)
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        format_word(&self.alphabet, word)
    }

    /// Renames the alphabet, keeping the transition structure.
    pub fn with_alphabet(mut self, alphabet: Vec<String>) -> Result<Self> {
        if alphabet.len() != self.alphabet.len() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: alphabet,
            });
        }
        self.alphabet = alphabet;
        Ok(self)
    }

    /// Reorders the letters of `self` to follow `alphabet`, which must contain
    /// the same set of letters.
    pub fn aligned_to(&self, alphabet: &[String]) -> Result<Dfa> {
        if self.alphabet == alphabet {
            return Ok(self.clone());
        }
        let perm: Option<Vec<usize>> = alphabet.iter().map(|a| self.letter_index(a)).collect();
        match perm {
            Some(perm) if alphabet.len() == self.alphabet.len() => {
                let delta = self
                    .delta
                    .iter()
                    .map(|row| perm.iter().map(|&j| row[j]).collect())
                    .collect();
                Ok(Dfa {
                    alphabet: alphabet.to_vec(),
                    states: self.states.clone(),
                    initial: self.initial,
                    finals: self.finals.clone(),
                    delta,
                })
            }
            _ => Err(Error::AlphabetMismatch {
                left: self.alphabet.clone(),
                right: alphabet.to_vec(),
            }),
        }
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// States from which a final state can be reached.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds = vec![Vec::new(); n];
        for (q, row) in self.delta.iter().enumerate() {
            for &t in row {
                preds[t].push(q);
            }
        }
        let mut live = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// The minimal complete automaton for the same language, with states
    /// numbered in breadth-first order over the alphabet.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let mut local = vec![usize::MAX; self.num_states()];
        for (i, &q) in reach.iter().enumerate() {
            local[q] = i;
        }
        let k = self.alphabet.len();
        let delta: Vec<Vec<usize>> = reach
            .iter()
            .map(|&q| self.delta[q].iter().map(|&t| local[t]).collect())
            .collect();
        let finals: Vec<bool> = reach.iter().map(|&q| self.finals[q]).collect();

        // Moore refinement.
        let n = reach.len();
        let mut class: Vec<usize> = finals.iter().map(|&f| f as usize).collect();
        let mut count = if finals.iter().all(|&f| f) || finals.iter().all(|&f| !f) {
            class.iter_mut().for_each(|c| *c = 0);
            1
        } else {
            2
        };
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend(delta[q].iter().map(|&t| class[t]));
                let len = ids.len();
                next[q] = *ids.entry(sig).or_insert(len);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Canonical renumbering by BFS from the initial class.
        let mut rep = vec![usize::MAX; count];
        for q in (0..n).rev() {
            rep[class[q]] = q;
        }
        let mut canon = vec![usize::MAX; count];
        let mut order = vec![class[0]];
        canon[class[0]] = 0;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            for a in 0..k {
                let t = class[delta[rep[c]][a]];
                if canon[t] == usize::MAX {
                    canon[t] = order.len();
                    order.push(t);
                }
            }
        }
        let new_delta = order
            .iter()
            .map(|&c| (0..k).map(|a| canon[class[delta[rep[c]][a]]]).collect())
            .collect();
        let new_finals = order.iter().map(|&c| finals[rep[c]]).collect();
        Dfa::from_table(self.alphabet.clone(), 0, new_finals, new_delta)
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d.minimize()
    }

    fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        let other = other.aligned_to(&self.alphabet)?;
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            i += 1;
            let row = (0..k)
                .map(|a| {
                    let t = (self.delta[p][a], other.delta[q][a]);
                    *ids.entry(t).or_insert_with(|| {
                        pairs.push(t);
                        pairs.len() - 1
                    })
                })
                .collect();
            delta.push(row);
        }
        let finals = pairs
            .iter()
            .map(|&(p, q)| combine(self.finals[p], other.finals[q]))
            .collect();
        Ok(Dfa::from_table(self.alphabet.clone(), 0, finals, delta).minimize())
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.product(other, |a, b| a && !b)
    }

    pub fn boolean_op(op: BoolOp, left: &Dfa, right: Option<&Dfa>) -> Result<Dfa> {
        match (op, right) {
            (BoolOp::Complement, _) => Ok(left.complement()),
            (BoolOp::Intersect, Some(r)) => left.intersect(r),
            (BoolOp::Union, Some(r)) => left.union(r),
            _ => Err(Error::semantic("binary operation needs two automata")),
        }
    }

    /// A shortest (and among those, alphabet-least) word on which the two
    /// automata disagree, or `None` when they accept the same language.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Word>> {
        let other = other.aligned_to(&self.alphabet)?;
        let k = self.alphabet.len();
        type Back = Option<((usize, usize), usize)>;
        let mut parent: HashMap<(usize, usize), Back> = HashMap::new();
        let start = (self.initial, other.initial);
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.finals[p] != other.finals[q] {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for a in 0..k {
                let t = (self.delta[p][a], other.delta[q][a]);
                if let Entry::Vacant(slot) = parent.entry(t) {
                    slot.insert(Some(((p, q), a)));
                    queue.push_back(t);
                }
            }
        }
        Ok(None)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// Shortest accepted word, if any.
    pub fn shortest_word(&self) -> Option<Word> {
        self.distinguishing_word(&Dfa::empty(self.alphabet.clone()))
            .expect("same alphabet")
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_word().is_none()
    }

    pub(crate) fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.len());
        for _ in 0..self.num_states() {
            nfa.add_state();
        }
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                nfa.add_edge(q, a, t);
            }
            if self.finals[q] {
                nfa.set_final(q);
            }
        }
        nfa.add_initial(self.initial);
        nfa
    }

    /// Automaton for `L(self) · L(other)`.
    pub fn concat(&self, other: &Dfa) -> Result<Dfa> {
        let other = other.aligned_to(&self.alphabet)?;
        let mut nfa = self.to_nfa();
        let offset = nfa.append(&other.to_nfa());
        nfa.clear_finals();
        for q in 0..self.num_states() {
            if self.finals[q] {
                nfa.add_eps(q, offset + other.initial);
            }
        }
        for q in 0..other.num_states() {
            if other.finals[q] {
                nfa.set_final(offset + q);
            }
        }
        Ok(nfa
            .determinize(self.alphabet.clone(), crate::DEFAULT_STATE_CAP)?
            .minimize())
    }

    /// Automaton for the mirror image of the language.
    pub fn reverse(&self) -> Result<Dfa> {
        let mut nfa = Nfa::new(self.alphabet.len());
        for _ in 0..self.num_states() {
            nfa.add_state();
        }
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                nfa.add_edge(t, a, q);
            }
            if self.finals[q] {
                nfa.add_initial(q);
            }
        }
        nfa.set_final(self.initial);
        Ok(nfa
            .determinize(self.alphabet.clone(), crate::DEFAULT_STATE_CAP)?
            .minimize())
    }
}

pub(crate) fn parse_word(alphabet: &[String], text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = if text.contains(|c: char| c.is_whitespace() || c == ',') {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect()
    } else {
        text.char_indices()
            .map(|(i, c)| &text[i..i + c.len_utf8()])
            .collect()
    };
    tokens
        .into_iter()
        .map(|t| {
            alphabet
                .iter()
                .position(|a| a == t)
                .ok_or_else(|| Error::semantic(format!("unknown letter `{t}`")))
        })
        .collect()
}

pub(crate) fn format_word(alphabet: &[String], word: &[usize]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let single = alphabet.iter().all(|a| a.chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&a| alphabet[a].as_str()).collect();
    if single {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

/// All words of length at most `max_len`, in shortlex order.
pub fn words_up_to(num_letters: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for a in 0..num_letters {
                let mut w = out[i].clone();
                w.push(a);
                out.push(w);
            }
        }
        start = end;
    }
    out
}
