//! Regular expressions: letters, concatenation, `|`, `*`, parentheses and
//! `()` for the empty word. Whitespace is ignored.

use std::collections::BTreeSet;

use crate::automata::dfa::Dfa;
use crate::automata::nfa::Nfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Epsilon,
    Letter(char),
    Concat(Vec<Node>),
    Alt(Vec<Node>),
    Star(Box<Node>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

fn is_meta(c: char) -> bool {
    matches!(c, '(' | ')' | '|' | '*')
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn error(&self, message: &str) -> Error {
        let byte = self
            .chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.src.len());
        let column = self.src[..byte].chars().count() + 1;
        Error::Syntax {
            line: 1,
            column,
            message: message.to_string(),
        }
    }

    fn alt(&mut self) -> Result<Node> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            Node::Alt(branches)
        })
    }

    fn concat(&mut self) -> Result<Node> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.star()?);
        }
        Ok(match parts.len() {
            0 => Node::Epsilon,
            1 => parts.pop().unwrap(),
            _ => Node::Concat(parts),
        })
    }

    fn star(&mut self) -> Result<Node> {
        let mut node = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            node = Node::Star(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('*') => Err(self.error("`*` without operand")),
            Some(c) if !is_meta(c) => {
                self.pos += 1;
                Ok(Node::Letter(c))
            }
            _ => Err(self.error("unexpected character")),
        }
    }
}

fn parse(src: &str) -> Result<Node> {
    let chars = src
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser { chars, pos: 0, src };
    let node = p.alt()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unbalanced `)`"));
    }
    Ok(node)
}

fn collect_letters(node: &Node, out: &mut BTreeSet<char>) {
    match node {
        Node::Epsilon => {}
        Node::Letter(c) => {
            out.insert(*c);
        }
        Node::Concat(v) | Node::Alt(v) => v.iter().for_each(|n| collect_letters(n, out)),
        Node::Star(n) => collect_letters(n, out),
    }
}

/// Thompson fragment: returns (entry, exit).
fn build(node: &Node, alphabet: &[String], nfa: &mut Nfa) -> (usize, usize) {
    match node {
        Node::Epsilon => {
            let s = nfa.add_state();
            (s, s)
        }
        Node::Letter(c) => {
            let a = alphabet
                .iter()
                .position(|x| x.chars().eq(std::iter::once(*c)))
                .expect("letters checked");
            let s = nfa.add_state();
            let t = nfa.add_state();
            nfa.add_edge(s, a, t);
            (s, t)
        }
        Node::Concat(parts) => {
            let (first_in, mut last_out) = build(&parts[0], alphabet, nfa);
            for p in &parts[1..] {
                let (i, o) = build(p, alphabet, nfa);
                nfa.add_eps(last_out, i);
                last_out = o;
            }
            (first_in, last_out)
        }
        Node::Alt(branches) => {
            let s = nfa.add_state();
            let t = nfa.add_state();
            for b in branches {
                let (i, o) = build(b, alphabet, nfa);
                nfa.add_eps(s, i);
                nfa.add_eps(o, t);
            }
            (s, t)
        }
        Node::Star(inner) => {
            let s = nfa.add_state();
            let (i, o) = build(inner, alphabet, nfa);
            nfa.add_eps(s, i);
            nfa.add_eps(o, s);
            (s, s)
        }
    }
}

/// Compiles a regular expression to a minimal DFA.
///
/// With `alphabet = None` the alphabet is the sorted set of letters that occur
/// in the expression. An explicit alphabet must contain every such letter.
pub fn parse_regex(src: &str, alphabet: Option<&[String]>) -> Result<Dfa> {
    let node = parse(src)?;
    let mut letters = BTreeSet::new();
    collect_letters(&node, &mut letters);
    let alphabet: Vec<String> = match alphabet {
        Some(al) => {
            for c in &letters {
                if !al.iter().any(|x| x.chars().eq(std::iter::once(*c))) {
                    return Err(Error::semantic(format!(
                        "letter `{c}` is not in the alphabet"
                    )));
                }
            }
            al.to_vec()
        }
        None => letters.iter().map(|c| c.to_string()).collect(),
    };
    if alphabet.is_empty() {
        return Err(Error::semantic(
            "cannot infer an alphabet from an expression without letters",
        ));
    }
    let mut nfa = Nfa::new(alphabet.len());
    let (i, o) = build(&node, &alphabet, &mut nfa);
    nfa.add_initial(i);
    nfa.set_final(o);
    Ok(nfa
        .determinize(alphabet, crate::DEFAULT_STATE_CAP)?
        .minimize())
}
