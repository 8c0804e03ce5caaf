//! Formula to automaton compilation over track alphabets `A × {0,1}^k`.
//!
//! With `k` variables in scope, symbol `letter·2^k + mask` carries the letter
//! and one marker bit per variable; bit `j` belongs to the `j`-th variable of
//! the scope. Automata built here are only required to be correct on words in
//! which every variable in scope is marked exactly once.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::automata::nfa::Nfa;
use crate::automata::Dfa;
use crate::error::Result;
use crate::fologic::Formula;

fn track_alphabet(alphabet: &[String], k: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(alphabet.len() << k);
    for a in alphabet {
        for mask in 0..1usize << k {
            let bits: String = (0..k)
                .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
                .collect();
            out.push(if k == 0 {
                a.clone()
            } else {
                format!("{a}:{bits}")
            });
        }
    }
    out
}

struct Compiler<'a> {
    alphabet: &'a [String],
    cap: usize,
    /// Quantified subformulas already compiled, keyed with their scope.
    cache: RefCell<HashMap<(Formula, Vec<String>), Dfa>>,
}

impl Compiler<'_> {
    fn symbols(&self, k: usize) -> usize {
        self.alphabet.len() << k
    }

    /// Automaton over `k` tracks: `states` states, initial 0, transitions
    /// given by `step(state, letter, mask)`.
    fn table(
        &self,
        k: usize,
        states: usize,
        finals: Vec<bool>,
        step: impl Fn(usize, usize, usize) -> usize,
    ) -> Dfa {
        let delta = (0..states)
            .map(|q| {
                (0..self.symbols(k))
                    .map(|sym| step(q, sym >> k, sym & ((1 << k) - 1)))
                    .collect()
            })
            .collect();
        Dfa::from_table(track_alphabet(self.alphabet, k), 0, finals, delta).minimize()
    }

    fn letter(&self, a: &str) -> usize {
        self.alphabet
            .iter()
            .position(|x| x == a)
            .expect("letters checked")
    }

    fn compile(&self, f: &Formula, scope: &mut Vec<String>) -> Result<Dfa> {
        let k = scope.len();
        let bit = |scope: &[String], x: &str| {
            1usize
                << scope
                    .iter()
                    .rposition(|v| v == x)
                    .expect("variables checked")
        };
        Ok(match f {
            Formula::True => Dfa::universal(track_alphabet(self.alphabet, k)),
            Formula::False => Dfa::empty(track_alphabet(self.alphabet, k)),
            Formula::Lab(x, a) => {
                let (bx, la) = (bit(scope, x), self.letter(a));
                // 0: before x, 1: x seen with the right letter, 2: sink
                self.table(k, 3, vec![false, true, false], |q, l, m| match q {
                    0 if m & bx != 0 => {
                        if l == la {
                            1
                        } else {
                            2
                        }
                    }
                    0 => 0,
                    1 if m & bx == 0 => 1,
                    _ => 2,
                })
            }
            Formula::Eq(x, y) => {
                let (bx, by) = (bit(scope, x), bit(scope, y));
                self.table(k, 3, vec![false, true, false], |q, _, m| {
                    let (hx, hy) = (m & bx != 0, m & by != 0);
                    match (q, hx, hy) {
                        (0, false, false) => 0,
                        (0, true, true) | (1, false, false) => 1,
                        _ => 2,
                    }
                })
            }
            Formula::Lt(x, y) => {
                let (bx, by) = (bit(scope, x), bit(scope, y));
                // 0: neither, 1: x seen, 2: both in order, 3: sink
                self.table(k, 4, vec![false, false, true, false], |q, _, m| {
                    let (hx, hy) = (m & bx != 0, m & by != 0);
                    match (q, hx, hy) {
                        (0, false, false) => 0,
                        (0, true, false) | (1, false, false) => 1,
                        (1, false, true) | (2, false, false) => 2,
                        _ => 3,
                    }
                })
            }
            Formula::Mod(x, n, i) => {
                let (n, i, bx) = (*n, *i, bit(scope, x));
                // states 0..n count letters mod n; n: accepted; n+1: sink
                let mut finals = vec![false; n + 2];
                finals[n] = true;
                self.table(k, n + 2, finals, |q, _, m| {
                    if q < n {
                        if m & bx == 0 {
                            (q + 1) % n
                        } else if (q % n) + 1 == i {
                            n
                        } else {
                            n + 1
                        }
                    } else if q == n && m & bx == 0 {
                        n
                    } else {
                        n + 1
                    }
                })
            }
            Formula::Len(n, i) => {
                let n = *n;
                let finals = (0..n).map(|c| (if c == 0 { n } else { c }) == *i).collect();
                self.table(k, n, finals, |q, _, _| (q + 1) % n)
            }
            Formula::Not(g) => self.compile(g, scope)?.complement(),
            Formula::And(a, b) => self
                .compile(a, scope)?
                .intersect(&self.compile(b, scope)?)?,
            Formula::Or(a, b) => self.compile(a, scope)?.union(&self.compile(b, scope)?)?,
            Formula::Exists(..) | Formula::Forall(..) => {
                let key = (f.clone(), scope.clone());
                if let Some(d) = self.cache.borrow().get(&key) {
                    return Ok(d.clone());
                }
                let d = match f {
                    Formula::Exists(x, body) => self.exists(x, body, scope)?,
                    Formula::Forall(x, body) => {
                        let neg = Formula::Not(body.clone());
                        self.exists(x, &neg, scope)?.complement()
                    }
                    _ => unreachable!(),
                };
                self.cache.borrow_mut().insert(key, d.clone());
                d
            }
        })
    }

    fn exists(&self, x: &str, body: &Formula, scope: &mut Vec<String>) -> Result<Dfa> {
        let k = scope.len();
        // A shadowed variable is never read again, so its track is reused.
        let (j, tracks) = match scope.iter().position(|v| v == x) {
            Some(j) => (j, k),
            None => (k, k + 1),
        };
        if tracks > k {
            scope.push(x.to_string());
        }
        let inner = self.compile(body, scope);
        if tracks > k {
            scope.pop();
        }
        let bj = 1usize << j;
        let once = self.table(tracks, 3, vec![false, true, false], |q, _, m| {
            match (q, m & bj != 0) {
                (0, false) => 0,
                (0, true) | (1, false) => 1,
                _ => 2,
            }
        });
        let marked = inner?.intersect(&once)?;
        let mut nfa = Nfa::new(self.symbols(k));
        for _ in 0..marked.num_states() {
            nfa.add_state();
        }
        let low = bj - 1;
        for q in 0..marked.num_states() {
            for sym in 0..self.symbols(k) {
                let (l, m) = (sym >> k, sym & ((1 << k) - 1));
                // Symbols of `marked` that project onto `sym`.
                let rest = if tracks > k { m } else { m & !bj };
                for b in [0, bj] {
                    let full = (rest & low) | b | ((rest & !low) << (tracks - k));
                    nfa.add_edge(q, sym, marked.step(q, (l << tracks) | full));
                }
            }
            if marked.is_final(q) {
                nfa.set_final(q);
            }
        }
        nfa.add_initial(marked.initial());
        Ok(nfa
            .determinize(track_alphabet(self.alphabet, k), self.cap)?
            .minimize())
    }
}

/// Minimal automaton of the language defined by a sentence.
pub fn compile_formula(f: &Formula, alphabet: &[String]) -> Result<Dfa> {
    compile_formula_with_cap(f, alphabet, crate::DEFAULT_STATE_CAP)
}

/// As [`compile_formula`], failing when a subset construction exceeds `cap`
/// states.
pub fn compile_formula_with_cap(f: &Formula, alphabet: &[String], cap: usize) -> Result<Dfa> {
    f.check_sentence()?;
    f.check_letters(alphabet)?;
    Compiler {
        alphabet,
        cap,
        cache: RefCell::default(),
    }
    .compile(f, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_regex, words_up_to};
    use crate::error::Error;
    use crate::fologic::{eval_formula, parse_formula};

    fn al(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    const SAMPLES: &[&str] = &[
        "(exists x (exists y (and (< x y) (lab x a) (lab y b))))",
        "(forall x (-> (lab x a) (exists y (and (< x y) (lab y b)))))",
        "(exists x (and (mod x 3 2) (lab x b)))",
        "(len 3 3)",
        "(forall x (forall y (-> (suc x y) (not (= x y)))))",
        "(exists x (and (lab x a) (exists x (lab x b))))",
        "(or (len 2 1) (forall x (<-> (mod x 2 0) (lab x a))))",
        "(exists x (forall y (<= y x)))",
    ];

    #[test]
    fn agrees_with_evaluation() {
        let a = al("ab");
        for src in SAMPLES {
            let f = parse_formula(src).unwrap();
            let d = compile_formula(&f, &a).unwrap();
            for w in words_up_to(2, 7) {
                assert_eq!(
                    d.accepts(&w),
                    eval_formula(&f, &a, &w).unwrap(),
                    "{src} on {w:?}"
                );
            }
        }
    }

    #[test]
    fn boolean_homomorphism() {
        let a = al("ab");
        let f = parse_formula(SAMPLES[0]).unwrap();
        let g = parse_formula(SAMPLES[2]).unwrap();
        let cf = compile_formula(&f, &a).unwrap();
        let cg = compile_formula(&g, &a).unwrap();
        let not_f = compile_formula(&f.clone().not(), &a).unwrap();
        assert!(not_f.equivalent(&cf.complement()).unwrap());
        let both = compile_formula(&Formula::And(Box::new(f), Box::new(g)), &a).unwrap();
        assert!(both.equivalent(&cf.intersect(&cg).unwrap()).unwrap());
    }

    #[test]
    fn length_mod_three() {
        let d = compile_formula(&Formula::Len(3, 3), &al("a")).unwrap();
        let r = parse_regex("(aaa)*", None).unwrap();
        assert!(d.equivalent(&r).unwrap());
    }

    #[test]
    fn a_then_b() {
        let a = al("ab");
        let f = parse_formula(SAMPLES[0]).unwrap();
        let d = compile_formula(&f, &a).unwrap();
        let r = parse_regex("(a|b)*a(a|b)*b(a|b)*", None).unwrap();
        assert!(d.equivalent(&r).unwrap());
    }

    #[test]
    fn state_cap() {
        let f = parse_formula(SAMPLES[1]).unwrap();
        assert!(matches!(
            compile_formula_with_cap(&f, &al("ab"), 1),
            Err(Error::StateCap { .. })
        ));
    }
}
