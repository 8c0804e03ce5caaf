//! Minimal s-expression reader shared by the formula and expression parsers.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Sexp {
    pub(crate) fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub(crate) fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub(crate) fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(v, _) => Some(v),
            Sexp::Atom(..) => None,
        }
    }

    /// The head keyword of a list, if the first element is an atom.
    pub(crate) fn head(&self) -> Option<&str> {
        self.list().and_then(|v| v.first()).and_then(Sexp::atom)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Error {
        let p = self.pos();
        Error::Syntax {
            line: p.line,
            column: p.column,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for Sexp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sexp::Atom(s, _) => f.write_str(s),
            Sexp::List(v, _) => {
                f.write_str("(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Reads every top-level expression in `src`. `;` starts a line comment.
pub(crate) fn read_all(src: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut line = 1;
    let mut column = 0;
    let mut chars = src.chars().peekable();
    let mut atom: Option<(String, Pos)> = None;

    fn flush(
        atom: &mut Option<(String, Pos)>,
        stack: &mut [(Vec<Sexp>, Pos)],
        top: &mut Vec<Sexp>,
    ) {
        if let Some((s, p)) = atom.take() {
            let x = Sexp::Atom(s, p);
            match stack.last_mut() {
                Some((v, _)) => v.push(x),
                None => top.push(x),
            }
        }
    }

    while let Some(c) = chars.next() {
        column += 1;
        let here = Pos { line, column };
        match c {
            '\n' => {
                flush(&mut atom, &mut stack, &mut top);
                line += 1;
                column = 0;
            }
            ';' => {
                flush(&mut atom, &mut stack, &mut top);
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            '(' => {
                flush(&mut atom, &mut stack, &mut top);
                stack.push((Vec::new(), here));
            }
            ')' => {
                flush(&mut atom, &mut stack, &mut top);
                let (v, p) = stack.pop().ok_or(Error::Syntax {
                    line,
                    column,
                    message: "unbalanced `)`".into(),
                })?;
                let x = Sexp::List(v, p);
                match stack.last_mut() {
                    Some((v, _)) => v.push(x),
                    None => top.push(x),
                }
            }
            c if c.is_whitespace() => flush(&mut atom, &mut stack, &mut top),
            c => match &mut atom {
                Some((s, _)) => s.push(c),
                None => atom = Some((c.to_string(), here)),
            },
        }
    }
    flush(&mut atom, &mut stack, &mut top);
    if let Some((_, p)) = stack.last() {
        return Err(Error::Syntax {
            line: p.line,
            column: p.column,
            message: "unclosed `(`".into(),
        });
    }
    Ok(top)
}
