//! JSON document format for automata.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::automata::dfa::Dfa;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaDoc {
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: String,
    finals: Vec<String>,
    transitions: Vec<(String, String, String)>,
}

/// Parses the JSON automaton document.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let doc: DfaDoc = serde_json::from_str(text).map_err(|e| {
        if e.is_syntax() || e.is_eof() {
            Error::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        } else {
            Error::semantic(e.to_string())
        }
    })?;
    let index = |names: &[String], what: &str| -> Result<HashMap<String, usize>> {
        let mut map = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if map.insert(n.clone(), i).is_some() {
                return Err(Error::semantic(format!("duplicate {what} `{n}`")));
            }
        }
        Ok(map)
    };
    let states = index(&doc.states, "state")?;
    let letters = index(&doc.alphabet, "letter")?;
    let state = |s: &str| {
        states
            .get(s)
            .copied()
            .ok_or_else(|| Error::semantic(format!("unknown state `{s}`")))
    };
    let initial = state(&doc.initial)?;
    let mut finals = vec![false; doc.states.len()];
    for f in &doc.finals {
        finals[state(f)?] = true;
    }
    let mut delta = vec![vec![None; doc.alphabet.len()]; doc.states.len()];
    for (p, a, q) in &doc.transitions {
        let p = state(p)?;
        let q = state(q)?;
        let a_idx = *letters
            .get(a)
            .ok_or_else(|| Error::semantic(format!("unknown letter `{a}`")))?;
        match delta[p][a_idx] {
            Some(old) if old != q => {
                return Err(Error::semantic(format!(
                    "nondeterministic transition from `{}` on `{a}`",
                    doc.states[p]
                )))
            }
            _ => delta[p][a_idx] = Some(q),
        }
    }
    let mut table = Vec::with_capacity(delta.len());
    for (p, row) in delta.into_iter().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (a, t) in row.into_iter().enumerate() {
            r.push(t.ok_or_else(|| {
                Error::semantic(format!(
                    "incomplete delta: no transition from `{}` on `{}`",
                    doc.states[p], doc.alphabet[a]
                ))
            })?);
        }
        table.push(r);
    }
    Dfa::new(doc.alphabet, doc.states, initial, finals, table)
}

/// Serializes an automaton; transitions are listed letter by letter, each in
/// state order.
pub fn dfa_to_json(d: &Dfa) -> String {
    let states = d.states();
    let mut transitions = Vec::new();
    for (a, name) in d.alphabet().iter().enumerate() {
        for (q, qn) in states.iter().enumerate() {
            transitions.push((qn.clone(), name.clone(), states[d.step(q, a)].clone()));
        }
    }
    let doc = DfaDoc {
        alphabet: d.alphabet().to_vec(),
        states: states.to_vec(),
        initial: states[d.initial()].clone(),
        finals: (0..d.num_states())
            .filter(|&q| d.is_final(q))
            .map(|q| states[q].clone())
            .collect(),
        transitions,
    };
    serde_json::to_string(&doc).expect("serializable")
}
