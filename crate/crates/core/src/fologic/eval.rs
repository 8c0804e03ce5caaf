use crate::automata::residue;
use crate::error::Result;
use crate::fologic::Formula;

/// Satisfaction of a sentence by a word over `alphabet`. Positions are
/// `1..=|w|`; over the empty word existentials are false and universals true.
pub fn eval_formula(f: &Formula, alphabet: &[String], word: &[usize]) -> Result<bool> {
    f.check_sentence()?;
    f.check_letters(alphabet)?;
    let mut env = Vec::new();
    Ok(eval(f, alphabet, word, &mut env))
}

fn lookup(env: &[(&str, usize)], x: &str) -> usize {
    env.iter()
        .rev()
        .find(|(v, _)| *v == x)
        .map(|&(_, p)| p)
        .expect("sentence has no free variables")
}

fn eval<'a>(
    f: &'a Formula,
    alphabet: &[String],
    w: &[usize],
    env: &mut Vec<(&'a str, usize)>,
) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Lab(x, a) => alphabet[w[lookup(env, x) - 1]] == *a,
        Formula::Eq(x, y) => lookup(env, x) == lookup(env, y),
        Formula::Lt(x, y) => lookup(env, x) < lookup(env, y),
        Formula::Mod(x, n, i) => residue(lookup(env, x) as i64, *n) == *i,
        Formula::Len(n, i) => residue(w.len() as i64, *n) == *i,
        Formula::And(a, b) => eval(a, alphabet, w, env) && eval(b, alphabet, w, env),
        Formula::Or(a, b) => eval(a, alphabet, w, env) || eval(b, alphabet, w, env),
        Formula::Not(a) => !eval(a, alphabet, w, env),
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let want = matches!(f, Formula::Exists(..));
            for p in 1..=w.len() {
                env.push((x, p));
                let v = eval(body, alphabet, w, env);
                env.pop();
                if v == want {
                    return want;
                }
            }
            !want
        }
    }
}
