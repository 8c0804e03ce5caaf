//! Languages built from `(A₁⋯Aₙ)*` by disjoint unions and modularly
//! (co-)deterministic products, with a translation to two-variable
//! sentences.

use std::collections::BTreeSet;
use std::fmt;
use std::rc::Rc;

use serde::Serialize;

use crate::automata::{decorated_letters, format_word, length_residues, residue, Dfa};
use crate::error::{Error, Result};
use crate::fologic::Formula;
use crate::sexp::{read_all, Sexp};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LangExpr {
    /// `(A₁⋯Aₙ)*`; `n` is the number of sets.
    Base(Vec<BTreeSet<String>>),
    Union(Box<LangExpr>, Box<LangExpr>),
    /// `L·a·K`, required to be `n`-modularly deterministic.
    DetProd {
        n: usize,
        left: Box<LangExpr>,
        letter: String,
        right: Box<LangExpr>,
    },
    /// `L·a·K`, required to be `n`-modularly co-deterministic.
    CodetProd {
        n: usize,
        left: Box<LangExpr>,
        letter: String,
        right: Box<LangExpr>,
    },
}

impl LangExpr {
    pub fn base<S: AsRef<str>>(sets: &[&[S]]) -> LangExpr {
        LangExpr::Base(
            sets.iter()
                .map(|s| s.iter().map(|a| a.as_ref().to_string()).collect())
                .collect(),
        )
    }

    pub fn union(a: LangExpr, b: LangExpr) -> LangExpr {
        LangExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn dprod(n: usize, left: LangExpr, letter: &str, right: LangExpr) -> LangExpr {
        LangExpr::DetProd {
            n,
            left: Box::new(left),
            letter: letter.into(),
            right: Box::new(right),
        }
    }

    pub fn cprod(n: usize, left: LangExpr, letter: &str, right: LangExpr) -> LangExpr {
        LangExpr::CodetProd {
            n,
            left: Box::new(left),
            letter: letter.into(),
            right: Box::new(right),
        }
    }

    /// Letters mentioned anywhere in the expression.
    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        match self {
            LangExpr::Base(sets) => sets.iter().flatten().for_each(|a| {
                out.insert(a.clone());
            }),
            LangExpr::Union(a, b) => {
                a.collect_letters(out);
                b.collect_letters(out);
            }
            LangExpr::DetProd {
                left,
                letter,
                right,
                ..
            }
            | LangExpr::CodetProd {
                left,
                letter,
                right,
                ..
            } => {
                left.collect_letters(out);
                out.insert(letter.clone());
                right.collect_letters(out);
            }
        }
    }
}

impl fmt::Display for LangExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LangExpr::Base(sets) => {
                f.write_str("(base (")?;
                for (i, s) in sets.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    let inner: Vec<&str> = s.iter().map(String::as_str).collect();
                    write!(f, "({})", inner.join(" "))?;
                }
                f.write_str("))")
            }
            LangExpr::Union(a, b) => write!(f, "(union {a} {b})"),
            LangExpr::DetProd {
                n,
                left,
                letter,
                right,
            } => write!(f, "(dprod {n} {left} {letter} {right})"),
            LangExpr::CodetProd {
                n,
                left,
                letter,
                right,
            } => write!(f, "(cprod {n} {left} {letter} {right})"),
        }
    }
}

/// A parsed expression file: optional `(alphabet ...)` header and one
/// expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprDoc {
    pub alphabet: Option<Vec<String>>,
    pub expr: LangExpr,
}

pub fn parse_expr(text: &str) -> Result<LangExpr> {
    Ok(parse_expr_doc(text)?.expr)
}

pub fn parse_expr_doc(text: &str) -> Result<ExprDoc> {
    let mut alphabet = None;
    let mut exprs = Vec::new();
    for item in read_all(text)? {
        if item.head() == Some("alphabet") {
            if alphabet.is_some() {
                return Err(item.error("duplicate alphabet header"));
            }
            let letters: Vec<String> = item.list().unwrap()[1..]
                .iter()
                .map(letter)
                .collect::<Result<_>>()?;
            if letters.is_empty() {
                return Err(item.error("empty alphabet"));
            }
            alphabet = Some(letters);
        } else {
            exprs.push(item);
        }
    }
    let [item] = &exprs[..] else {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: format!("expected exactly one expression, found {}", exprs.len()),
        });
    };
    Ok(ExprDoc {
        alphabet,
        expr: convert(item)?,
    })
}

fn letter(x: &Sexp) -> Result<String> {
    x.atom()
        .map(str::to_string)
        .ok_or_else(|| x.error("letters must be atoms"))
}

fn convert(item: &Sexp) -> Result<LangExpr> {
    let head = item
        .head()
        .ok_or_else(|| item.error("expected `base`, `union`, `dprod` or `cprod`"))?;
    let args = &item.list().unwrap()[1..];
    let want = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(item.error(format!(
                "`{head}` takes {n} argument(s), found {}",
                args.len()
            )))
        }
    };
    match head {
        "base" => {
            want(1)?;
            let sets = args[0]
                .list()
                .ok_or_else(|| args[0].error("expected a list of letter sets"))?;
            if sets.is_empty() {
                return Err(args[0].error("a base language needs at least one letter set"));
            }
            let sets = sets
                .iter()
                .map(|s| match s {
                    Sexp::Atom(..) => Ok(BTreeSet::from([letter(s)?])),
                    Sexp::List(xs, _) => xs.iter().map(letter).collect(),
                })
                .collect::<Result<_>>()?;
            Ok(LangExpr::Base(sets))
        }
        "union" => {
            want(2)?;
            Ok(LangExpr::union(convert(&args[0])?, convert(&args[1])?))
        }
        "dprod" | "cprod" => {
            want(4)?;
            let n = args[0]
                .atom()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| args[0].error("expected a positive modulus"))?;
            let (l, a, r) = (convert(&args[1])?, letter(&args[2])?, convert(&args[3])?);
            Ok(if head == "dprod" {
                LangExpr::dprod(n, l, &a, r)
            } else {
                LangExpr::cprod(n, l, &a, r)
            })
        }
        other => Err(item.error(format!("unknown form `{other}`"))),
    }
}

fn check_letters(e: &LangExpr, alphabet: &[String]) -> Result<()> {
    for a in e.letters() {
        if !alphabet.contains(&a) {
            return Err(Error::semantic(format!(
                "letter `{a}` is not in the alphabet"
            )));
        }
    }
    Ok(())
}

/// Minimal automaton of the expression's language over `alphabet`.
pub fn eval_expr(e: &LangExpr, alphabet: &[String]) -> Result<Dfa> {
    check_letters(e, alphabet)?;
    eval(e, alphabet)
}

fn eval(e: &LangExpr, alphabet: &[String]) -> Result<Dfa> {
    Ok(match e {
        LangExpr::Base(sets) => {
            let n = sets.len();
            // state c: c letters read mod n; state n: sink
            let mut delta = vec![vec![n; alphabet.len()]; n + 1];
            for (c, set) in sets.iter().enumerate() {
                for (a, name) in alphabet.iter().enumerate() {
                    if set.contains(name) {
                        delta[c][a] = (c + 1) % n;
                    }
                }
            }
            let mut finals = vec![false; n + 1];
            finals[0] = true;
            Dfa::from_table(alphabet.to_vec(), 0, finals, delta).minimize()
        }
        LangExpr::Union(a, b) => eval(a, alphabet)?.union(&eval(b, alphabet)?)?,
        LangExpr::DetProd {
            left,
            letter,
            right,
            ..
        }
        | LangExpr::CodetProd {
            left,
            letter,
            right,
            ..
        } => {
            let a = alphabet
                .iter()
                .position(|x| x == letter)
                .expect("letters checked");
            eval(left, alphabet)?
                .concat(&Dfa::single_word(alphabet.to_vec(), &[a]))?
                .concat(&eval(right, alphabet)?)?
        }
    })
}

/// A structural defect of an expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Path from the root, e.g. `root.left.right`.
    pub at: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.message)
    }
}

/// Checks disjointness of unions and modular (co-)determinism of products.
/// Letters outside the alphabet are reported as violations.
pub fn validate(e: &LangExpr, alphabet: &[String]) -> Vec<Violation> {
    let mut out = Vec::new();
    if let Err(err) = check_letters(e, alphabet) {
        out.push(Violation {
            at: "root".into(),
            message: err.to_string(),
        });
        return out;
    }
    if let Err(err) = check(e, alphabet, "root", &mut out) {
        out.push(Violation {
            at: "root".into(),
            message: err.to_string(),
        });
    }
    out
}

/// The common length residue of a language, if it has exactly one.
fn uniform_residue(d: &Dfa, n: usize) -> Option<usize> {
    let r = length_residues(d, n);
    (r.len() == 1).then(|| *r.iter().next().unwrap())
}

fn check(e: &LangExpr, alphabet: &[String], at: &str, out: &mut Vec<Violation>) -> Result<()> {
    let mut report = |message: String| {
        out.push(Violation {
            at: at.to_string(),
            message,
        })
    };
    match e {
        LangExpr::Base(sets) => {
            if sets.is_empty() {
                report("a base language needs at least one letter set".into());
            }
        }
        LangExpr::Union(a, b) => {
            let both = eval(a, alphabet)?.intersect(&eval(b, alphabet)?)?;
            if let Some(w) = both.shortest_word() {
                report(format!(
                    "union operands are not disjoint; both contain {}",
                    format_word(alphabet, &w)
                ));
            }
            check(a, alphabet, &format!("{at}.left"), out)?;
            check(b, alphabet, &format!("{at}.right"), out)?;
        }
        LangExpr::DetProd {
            n,
            left,
            letter,
            right,
        }
        | LangExpr::CodetProd {
            n,
            left,
            letter,
            right,
        } => {
            let codet = matches!(e, LangExpr::CodetProd { .. });
            let (side, name) = if codet {
                (right, "right")
            } else {
                (left, "left")
            };
            let mut d = eval(side, alphabet)?;
            if codet {
                d = d.reverse()?;
            }
            let a = alphabet
                .iter()
                .position(|x| x == letter)
                .expect("letters checked");
            match uniform_residue(&d, *n) {
                None => report(format!(
                    "{name} operand has length residues {:?} modulo {n}, expected exactly one",
                    length_residues(&d, *n)
                )),
                Some(i) => {
                    let next = i % n + 1;
                    if decorated_letters(&d, *n).contains(&(a, next)) {
                        report(format!(
                            "{letter}@{next} occurs in the decorated {}{name} operand",
                            if codet { "reversed " } else { "" }
                        ));
                    }
                }
            }
            check(left, alphabet, &format!("{at}.left"), out)?;
            check(right, alphabet, &format!("{at}.right"), out)?;
        }
    }
    Ok(())
}

/// An interval of positions, described by formulas over the enclosing word.
#[derive(Clone)]
enum Window {
    Whole,
    Left(Rc<Cut>),
    Right(Rc<Cut>),
}

/// The position splitting a product inside a window.
struct Cut {
    outer: Window,
    n: usize,
    letter: String,
    /// Relative position residue of the cut; counted from the window end
    /// (as the length residue of the right part) when `from_right`.
    residue: usize,
    from_right: bool,
}

fn other(v: &str) -> &'static str {
    if v == "x" {
        "y"
    } else {
        "x"
    }
}

impl Window {
    /// `v` lies in the window.
    fn inside(&self, v: &str) -> Formula {
        let u = other(v);
        match self {
            Window::Whole => Formula::True,
            Window::Left(c) => c
                .outer
                .inside(v)
                .and(Formula::exists(u, c.at(u).and(Formula::lt(v, u)))),
            Window::Right(c) => c
                .outer
                .inside(v)
                .and(Formula::exists(u, c.at(u).and(Formula::lt(u, v)))),
        }
    }

    /// The window-relative position of `v` is `j` modulo `m`.
    fn rel(&self, v: &str, m: usize, j: usize) -> Formula {
        if m == 1 {
            return Formula::True;
        }
        match self {
            Window::Whole => Formula::modulo(v, m, j),
            Window::Left(c) => c.outer.rel(v, m, j),
            Window::Right(c) => {
                let u = other(v);
                let shifted = Formula::any((1..=m).map(|t| {
                    c.outer
                        .rel(u, m, t)
                        .and(c.outer.rel(v, m, residue((t + j) as i64, m)))
                }));
                Formula::exists(u, c.at(u).and(shifted))
            }
        }
    }

    /// The window has length `j` modulo `m`.
    fn len(&self, m: usize, j: usize) -> Formula {
        if m == 1 {
            return Formula::True;
        }
        match self {
            Window::Whole => Formula::len(m, j),
            Window::Left(c) => Formula::exists(
                "x",
                c.at("x").and(c.outer.rel("x", m, residue(j as i64 + 1, m))),
            ),
            Window::Right(c) => {
                let diff = Formula::any((1..=m).map(|t| {
                    c.outer
                        .rel("x", m, t)
                        .and(c.outer.len(m, residue((t + j) as i64, m)))
                }));
                Formula::exists("x", c.at("x").and(diff))
            }
        }
    }
}

impl Cut {
    /// `p` carries the letter at the cut residue (not yet the extremal one).
    fn candidate(&self, p: &str) -> Formula {
        let at_residue = if self.from_right {
            Formula::any((1..=self.n).map(|t| {
                self.outer.len(self.n, t).and(self.outer.rel(
                    p,
                    self.n,
                    residue(t as i64 - self.residue as i64, self.n),
                ))
            }))
        } else {
            self.outer.rel(p, self.n, self.residue)
        };
        Formula::lab(p, &self.letter).and(at_residue)
    }

    /// `v` is the cut: the first candidate in the window, or the last one
    /// when counting from the right.
    fn at(&self, v: &str) -> Formula {
        let u = other(v);
        let beyond = if self.from_right {
            Formula::lt(v, u)
        } else {
            Formula::lt(u, v)
        };
        let extremal = Formula::forall(
            u,
            self.outer
                .inside(u)
                .and(beyond)
                .implies(self.candidate(u).not()),
        );
        self.outer.inside(v).and(self.candidate(v)).and(extremal)
    }
}

fn translate(e: &LangExpr, alphabet: &[String], w: &Window) -> Result<Formula> {
    Ok(match e {
        LangExpr::Base(sets) => {
            let n = sets.len();
            let letters = Formula::all(sets.iter().enumerate().map(|(k, set)| {
                let any = Formula::any(set.iter().map(|a| Formula::lab("x", a)));
                let any = if set.len() == alphabet.len() {
                    Formula::True
                } else {
                    any
                };
                w.rel("x", n, k + 1).implies(any)
            }));
            w.len(n, n)
                .and(Formula::forall("x", w.inside("x").implies(letters)))
        }
        LangExpr::Union(a, b) => translate(a, alphabet, w)?.or(translate(b, alphabet, w)?),
        LangExpr::DetProd {
            n,
            left,
            letter,
            right,
        }
        | LangExpr::CodetProd {
            n,
            left,
            letter,
            right,
        } => {
            let from_right = matches!(e, LangExpr::CodetProd { .. });
            let side = if from_right { right } else { left };
            let residue = uniform_residue(&eval(side, alphabet)?, *n)
                .ok_or_else(|| Error::InvalidExpression("non-uniform length residue".into()))?;
            let cut = Rc::new(Cut {
                outer: w.clone(),
                n: *n,
                letter: letter.clone(),
                residue: if from_right { residue } else { residue % n + 1 },
                from_right,
            });
            Formula::exists("x", cut.at("x"))
                .and(translate(left, alphabet, &Window::Left(cut.clone()))?)
                .and(translate(right, alphabet, &Window::Right(cut))?)
        }
    })
}

/// A two-variable sentence with modular predicates defining the language of
/// a valid expression.
pub fn expr_to_formula(e: &LangExpr, alphabet: &[String]) -> Result<Formula> {
    let violations = validate(e, alphabet);
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(Violation::to_string).collect();
        return Err(Error::InvalidExpression(text.join("; ")));
    }
    translate(e, alphabet, &Window::Whole)
}
