//! Position decoration `w ↦ τ_{j,n}(w)` and the derived analyses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};

/// A letter paired with a position residue in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedLetter {
    pub base: String,
    pub residue: usize,
}

impl DecoratedLetter {
    pub fn new(base: impl Into<String>, residue: usize) -> Self {
        DecoratedLetter {
            base: base.into(),
            residue,
        }
    }

    /// Parses `a@i`; residue 0 is read as `n`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (base, res) = text
            .rsplit_once('@')
            .ok_or_else(|| Error::semantic(format!("decorated letter `{text}` lacks `@`")))?;
        let r: usize = res
            .parse()
            .map_err(|_| Error::semantic(format!("bad residue in `{text}`")))?;
        if base.is_empty() || r > n {
            return Err(Error::semantic(format!(
                "decorated letter `{text}` out of range for modulus {n}"
            )));
        }
        Ok(DecoratedLetter::new(base, if r == 0 { n } else { r }))
    }
}

impl fmt::Display for DecoratedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.base, self.residue)
    }
}

impl FromStr for DecoratedLetter {
    type Err = Error;

    /// Parses without a modulus bound; residue 0 is rejected since it cannot
    /// be normalized.
    fn from_str(s: &str) -> Result<Self> {
        let d = DecoratedLetter::parse(s, usize::MAX)?;
        if d.residue == usize::MAX {
            return Err(Error::semantic("residue 0 needs a modulus"));
        }
        Ok(d)
    }
}

/// Normalizes an integer into the `1..=n` convention.
pub fn residue(k: i64, n: usize) -> usize {
    let n = n as i64;
    let r = k.rem_euclid(n);
    (if r == 0 { n } else { r }) as usize
}

/// Index of `(a, i)` in the decorated alphabet `A × {1..n}`.
pub fn decorated_index(letter: usize, i: usize, n: usize) -> usize {
    debug_assert!((1..=n).contains(&i));
    letter * n + (i - 1)
}

/// Inverse of [`decorated_index`].
pub fn split_decorated(index: usize, n: usize) -> (usize, usize) {
    (index / n, index % n + 1)
}

/// The decorated alphabet `A × {1..n}` rendered as `a@i`, ordered by letter
/// then residue.
pub fn decorated_alphabet_names(alphabet: &[String], n: usize) -> Vec<String> {
    alphabet
        .iter()
        .flat_map(|a| (1..=n).map(move |i| format!("{a}@{i}")))
        .collect()
}

/// `τ_{j,n}(w)`: the `k`-th letter (1-based) gets residue `j + k` mod n.
pub fn tau(word: &[usize], j: usize, n: usize) -> Vec<usize> {
    word.iter()
        .enumerate()
        .map(|(k, &a)| decorated_index(a, residue((j + k + 1) as i64, n), n))
        .collect()
}

/// Whether a decorated word has consecutive residues, i.e. equals
/// `τ_{j,n}(w)` for some `j` and `w`.
pub fn is_well_formed(word: &[usize], n: usize) -> bool {
    word.windows(2).all(|p| {
        let (_, i) = split_decorated(p[0], n);
        let (_, k) = split_decorated(p[1], n);
        k == i % n + 1
    })
}

/// Automaton over `A × {1..n}` accepting exactly `τ_n(L(d))`.
pub fn decorate(d: &Dfa, n: usize) -> Result<Dfa> {
    if n == 0 {
        return Err(Error::semantic("modulus must be positive"));
    }
    let k = d.alphabet().len();
    let q = d.num_states();
    // Product state (p, c) = p * n + c, where c is the number of letters read
    // mod n; sink is q * n.
    let sink = q * n;
    let mut delta = vec![vec![sink; k * n]; q * n + 1];
    let mut finals = vec![false; q * n + 1];
    for p in 0..q {
        for c in 0..n {
            let s = p * n + c;
            finals[s] = d.is_final(p);
            for a in 0..k {
                let i = c + 1; // residue of the next position
                delta[s][decorated_index(a, i, n)] = d.step(p, a) * n + (c + 1) % n;
            }
        }
    }
    let names = decorated_alphabet_names(d.alphabet(), n);
    Ok(Dfa::from_table(names, d.initial() * n, finals, delta).minimize())
}

/// Residues (in `1..=n`) of the lengths of words in `L(d)`.
pub fn length_residues(d: &Dfa, n: usize) -> BTreeSet<usize> {
    let q = d.num_states();
    let mut seen = vec![false; q * n];
    let start = d.initial() * n;
    seen[start] = true;
    let mut stack = vec![start];
    let mut out = BTreeSet::new();
    while let Some(s) = stack.pop() {
        let (p, c) = (s / n, s % n);
        if d.is_final(p) {
            out.insert(if c == 0 { n } else { c });
        }
        for a in 0..d.alphabet().len() {
            let t = d.step(p, a) * n + (c + 1) % n;
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    out
}

/// `α(τ_n(L(d)))` as pairs `(letter, residue)`.
pub fn decorated_letters(d: &Dfa, n: usize) -> BTreeSet<(usize, usize)> {
    let q = d.num_states();
    let k = d.alphabet().len();
    let step = |s: usize, a: usize| d.step(s / n, a) * n + (s % n + 1) % n;
    let mut reach = vec![false; q * n];
    let start = d.initial() * n;
    reach[start] = true;
    let mut stack = vec![start];
    while let Some(s) = stack.pop() {
        for a in 0..k {
            let t = step(s, a);
            if !reach[t] {
                reach[t] = true;
                stack.push(t);
            }
        }
    }
    let mut preds = vec![Vec::new(); q * n];
    for s in 0..q * n {
        for a in 0..k {
            preds[step(s, a)].push(s);
        }
    }
    let mut live: Vec<bool> = (0..q * n).map(|s| d.is_final(s / n)).collect();
    let mut stack: Vec<usize> = (0..q * n).filter(|&s| live[s]).collect();
    while let Some(s) = stack.pop() {
        for &p in &preds[s] {
            if !live[p] {
                live[p] = true;
                stack.push(p);
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..q * n {
        if !reach[s] {
            continue;
        }
        for a in 0..k {
            if live[step(s, a)] {
                out.insert((a, s % n + 1));
            }
        }
    }
    out
}

/// `α(τ_n(L(d)))` as decorated letters.
pub fn decorated_alphabet(d: &Dfa, n: usize) -> BTreeSet<DecoratedLetter> {
    decorated_letters(d, n)
        .into_iter()
        .map(|(a, i)| DecoratedLetter::new(d.alphabet()[a].clone(), i))
        .collect()
}
