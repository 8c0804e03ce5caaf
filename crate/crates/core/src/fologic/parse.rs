use crate::error::{Error, Result};
use crate::fologic::Formula;
use crate::sexp::{read_all, Sexp};

/// A parsed formula file: optional `(alphabet ...)` header and one formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaDoc {
    pub alphabet: Option<Vec<String>>,
    pub formula: Formula,
}

/// Parses a sentence, expanding the macro forms.
pub fn parse_formula(text: &str) -> Result<Formula> {
    Ok(parse_formula_doc(text)?.formula)
}

/// Parses a sentence with an optional alphabet header.
pub fn parse_formula_doc(text: &str) -> Result<FormulaDoc> {
    let items = read_all(text)?;
    let mut alphabet = None;
    let mut formulas = Vec::new();
    for item in &items {
        if item.head() == Some("alphabet") {
            if alphabet.is_some() {
                return Err(item.error("duplicate alphabet header"));
            }
            let letters = item.list().unwrap()[1..]
                .iter()
                .map(|x| {
                    x.atom()
                        .map(str::to_string)
                        .ok_or_else(|| x.error("letters must be atoms"))
                })
                .collect::<Result<Vec<_>>>()?;
            if letters.is_empty() {
                return Err(item.error("empty alphabet"));
            }
            alphabet = Some(letters);
        } else {
            formulas.push(item);
        }
    }
    let [item] = formulas[..] else {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: format!("expected exactly one formula, found {}", formulas.len()),
        });
    };
    let mut fresh = Fresh::new(text);
    let formula = convert(item, &mut fresh)?;
    formula.check_sentence()?;
    Ok(FormulaDoc { alphabet, formula })
}

/// Supplies variable names that do not occur in the input.
struct Fresh {
    taken: Vec<String>,
    next: usize,
}

impl Fresh {
    fn new(text: &str) -> Self {
        let taken = text
            .split(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect();
        Fresh { taken, next: 0 }
    }

    fn var(&mut self) -> String {
        loop {
            let v = format!("z{}", self.next);
            self.next += 1;
            if !self.taken.contains(&v) {
                self.taken.push(v.clone());
                return v;
            }
        }
    }
}

fn var(x: &Sexp) -> Result<String> {
    match x.atom() {
        Some(v) if is_ident(v) => Ok(v.to_string()),
        _ => Err(x.error(format!("expected a variable, found `{x}`"))),
    }
}

fn is_ident(v: &str) -> bool {
    let mut chars = v.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        && !matches!(v, "true" | "false")
}

fn number(x: &Sexp) -> Result<usize> {
    x.atom()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| x.error(format!("expected a number, found `{x}`")))
}

/// Modulus and residue, with residue 0 read as `n`.
fn modulus(n: &Sexp, i: &Sexp) -> Result<(usize, usize)> {
    let nv = number(n)?;
    let iv = number(i)?;
    if nv == 0 {
        return Err(n.error("modulus must be positive"));
    }
    if iv > nv {
        return Err(i.error(format!("residue {iv} out of range for modulus {nv}")));
    }
    Ok((nv, if iv == 0 { nv } else { iv }))
}

fn arity(item: &Sexp, args: &[Sexp], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(item.error(format!(
            "`{}` takes {n} argument(s), found {}",
            item.head().unwrap_or(""),
            args.len()
        )));
    }
    Ok(())
}

fn convert(item: &Sexp, fresh: &mut Fresh) -> Result<Formula> {
    if let Some(a) = item.atom() {
        return match a {
            "true" => Ok(Formula::True),
            "false" => Ok(Formula::False),
            _ => Err(item.error(format!("unexpected atom `{a}`"))),
        };
    }
    let list = item.list().unwrap();
    let head = item
        .head()
        .ok_or_else(|| item.error("expected a keyword at the head of the list"))?;
    let args = &list[1..];
    let f = match head {
        "lab" => {
            if args.len() < 2 {
                return Err(item.error("`lab` takes a variable and at least one letter"));
            }
            let x = var(&args[0])?;
            let mut f = None;
            for a in &args[1..] {
                let letter = a
                    .atom()
                    .ok_or_else(|| a.error("letters must be atoms"))?
                    .to_string();
                let atom = Formula::Lab(x.clone(), letter);
                f = Some(match f {
                    None => atom,
                    Some(g) => Formula::Or(Box::new(g), Box::new(atom)),
                });
            }
            f.unwrap()
        }
        "=" | "<" | "<=" | "suc" => {
            arity(item, args, 2)?;
            let x = var(&args[0])?;
            let y = var(&args[1])?;
            match head {
                "=" => Formula::Eq(x, y),
                "<" => Formula::Lt(x, y),
                "<=" => Formula::Or(
                    Box::new(Formula::Lt(x.clone(), y.clone())),
                    Box::new(Formula::Eq(x, y)),
                ),
                _ => {
                    // x < y and every z is at most x or at least y
                    let z = fresh.var();
                    let le = |a: &str, b: &str| {
                        Formula::Or(
                            Box::new(Formula::Lt(a.into(), b.into())),
                            Box::new(Formula::Eq(a.into(), b.into())),
                        )
                    };
                    Formula::And(
                        Box::new(Formula::Lt(x.clone(), y.clone())),
                        Box::new(Formula::Forall(
                            z.clone(),
                            Box::new(Formula::Or(Box::new(le(&z, &x)), Box::new(le(&y, &z)))),
                        )),
                    )
                }
            }
        }
        "mod" => {
            arity(item, args, 3)?;
            let x = var(&args[0])?;
            let (n, i) = modulus(&args[1], &args[2])?;
            Formula::Mod(x, n, i)
        }
        "len" => {
            arity(item, args, 2)?;
            let (n, i) = modulus(&args[0], &args[1])?;
            Formula::Len(n, i)
        }
        "and" | "or" => {
            if args.is_empty() {
                return Ok(if head == "and" {
                    Formula::True
                } else {
                    Formula::False
                });
            }
            let mut parts = args.iter().map(|a| convert(a, fresh));
            let mut acc = parts.next().unwrap()?;
            for p in parts {
                let p = p?;
                acc = if head == "and" {
                    Formula::And(Box::new(acc), Box::new(p))
                } else {
                    Formula::Or(Box::new(acc), Box::new(p))
                };
            }
            acc
        }
        "not" => {
            arity(item, args, 1)?;
            Formula::Not(Box::new(convert(&args[0], fresh)?))
        }
        "->" => {
            arity(item, args, 2)?;
            let f = convert(&args[0], fresh)?;
            let g = convert(&args[1], fresh)?;
            Formula::Or(Box::new(Formula::Not(Box::new(f))), Box::new(g))
        }
        "<->" => {
            arity(item, args, 2)?;
            let f = convert(&args[0], fresh)?;
            let g = convert(&args[1], fresh)?;
            let imp = |a: &Formula, b: &Formula| {
                Formula::Or(
                    Box::new(Formula::Not(Box::new(a.clone()))),
                    Box::new(b.clone()),
                )
            };
            Formula::And(Box::new(imp(&f, &g)), Box::new(imp(&g, &f)))
        }
        "exists" | "forall" => {
            arity(item, args, 2)?;
            let x = var(&args[0])?;
            let body = Box::new(convert(&args[1], fresh)?);
            if head == "exists" {
                Formula::Exists(x, body)
            } else {
                Formula::Forall(x, body)
            }
        }
        other => return Err(item.error(format!("unknown form `{other}`"))),
    };
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn len_zero_is_normalized() {
        assert_eq!(parse_formula("(len 2 0)").unwrap(), Formula::Len(2, 2));
        assert_eq!(parse_formula("(len 2 2)").unwrap(), Formula::Len(2, 2));
        assert!(parse_formula("(len 2 3)").is_err());
        assert!(parse_formula("(len 0 0)").is_err());
    }

    #[test]
    fn plain_existential() {
        let f = parse_formula("(exists x (and (lab x a) (mod x 2 1)))").unwrap();
        assert_eq!(
            f,
            Formula::Exists(
                "x".into(),
                Box::new(Formula::And(
                    Box::new(Formula::lab("x", "a")),
                    Box::new(Formula::Mod("x".into(), 2, 1))
                ))
            )
        );
    }

    #[test]
    fn unbound_variable() {
        assert_eq!(
            parse_formula("(exists x (< x y))"),
            Err(Error::UnboundVariable("y".into()))
        );
    }

    #[test]
    fn macros_expand() {
        let f = parse_formula("(forall x (forall y (-> (suc x y) (lab x a b))))").unwrap();
        assert!(f.all_vars().contains("z0"));
        let g = parse_formula("(forall z0 (exists x (exists y (suc x y))))").unwrap();
        assert!(g.all_vars().contains("z1"));
    }

    #[test]
    fn header_and_errors() {
        let doc = parse_formula_doc("; comment\n(alphabet a b)\n(exists x (lab x a))").unwrap();
        assert_eq!(doc.alphabet, Some(vec!["a".into(), "b".into()]));
        assert!(matches!(
            parse_formula("(frob x)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_formula("(not)"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_formula("true false"),
            Err(Error::Syntax { .. })
        ));
        match parse_formula("(exists x\n  (lab 3 a))") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("{other:?}"),
        }
    }
}
