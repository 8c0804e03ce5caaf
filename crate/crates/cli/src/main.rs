use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fragcheck::crosscheck::{check_all, check_wreath_triple, corpus, wreath_triples, CorpusParams};
use fragcheck::fologic::{compile_formula_with_cap, parse_formula_doc, FormulaDoc};
use fragcheck::fragments::{build_mod_witness, verify_vmod_implication, Analysis};
use fragcheck::modprod::parse_expr_doc;
use fragcheck::{
    dfa_to_json, eval_expr, eval_formula, expr_to_formula, parse_dfa, parse_regex, validate, Dfa,
    Error, Fragment,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "fragcheck",
    version,
    about = "Definability of regular languages in first-order fragments"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Input automaton (JSON document).
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "regex")]
    dfa: Option<PathBuf>,
    /// Input regular expression.
    #[arg(long, global = true, value_name = "EXPR")]
    regex: Option<String>,
    /// Comma-separated alphabet, e.g. `a,b,c`.
    #[arg(long, global = true, value_delimiter = ',', value_name = "LETTERS")]
    alphabet: Option<Vec<String>>,
    /// Structured output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed of the random instance stream.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on the number of monoid elements (default 10000; 2000 for
    /// random instances).
    #[arg(long, global = true, env = "FRAGCHECK_MAX_MONOID", value_name = "K")]
    max_monoid: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide every fragment and print the report.
    Analyze,
    /// Decide one fragment; exit status 0 if definable, 1 if not.
    Check {
        #[arg(long, value_name = "ID")]
        fragment: String,
    },
    /// Formulas in s-expression syntax.
    #[command(subcommand)]
    Fo(FoCommand),
    /// Modular product expressions.
    #[command(subcommand)]
    Expr(ExprCommand),
    /// Build the ordered witness for Σ₂ with modular predicates.
    Witness {
        /// Length bound for the exhaustive implication check (default 2s + 2).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Check the cross-module invariants on a seeded random corpus.
    Xcheck {
        /// Number of random automata.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Largest number of states of a random automaton.
        #[arg(long, default_value_t = 5)]
        states: usize,
        /// Largest alphabet size of a random automaton.
        #[arg(long, default_value_t = 3)]
        letters: usize,
        /// Number of ordered-monoid triples for the wreath product checks.
        #[arg(long, default_value_t = 36)]
        triples: usize,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Subcommand)]
enum FoCommand {
    /// Print the minimal automaton of a sentence.
    Compile {
        #[arg(long, value_name = "PATH")]
        formula: PathBuf,
        /// Bound on the states of intermediate automata.
        #[arg(long, default_value_t = fragcheck::DEFAULT_STATE_CAP)]
        state_cap: usize,
    },
    /// Evaluate a sentence on a word.
    Eval {
        #[arg(long, value_name = "PATH")]
        formula: PathBuf,
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum ExprCommand {
    /// List the violated side conditions; exit status 1 if there are any.
    Check {
        #[arg(long, value_name = "PATH")]
        expr: PathBuf,
    },
    /// Print the two-variable sentence defining the expression.
    ToFo {
        #[arg(long, value_name = "PATH")]
        expr: PathBuf,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

impl Common {
    /// The input automaton with a label for reports.
    fn language(&self) -> Result<(Dfa, String), Failure> {
        let (d, label) = match (&self.dfa, &self.regex) {
            (Some(p), _) => (parse_dfa(&read(p)?)?, p.display().to_string()),
            (None, Some(r)) => return Ok((parse_regex(r, self.alphabet.as_deref())?, r.clone())),
            (None, None) => {
                return Err(Failure::Input("one of --dfa or --regex is required".into()))
            }
        };
        match &self.alphabet {
            Some(a) => Ok((d.aligned_to(a)?, label)),
            None => Ok((d, label)),
        }
    }

    fn cap(&self) -> usize {
        self.max_monoid.unwrap_or(fragcheck::DEFAULT_MONOID_CAP)
    }

    fn alphabet_for(
        &self,
        declared: Option<Vec<String>>,
        used: impl FnOnce() -> Vec<String>,
    ) -> Vec<String> {
        self.alphabet.clone().or(declared).unwrap_or_else(used)
    }
}

fn formula(common: &Common, path: &Path) -> Result<(FormulaDoc, Vec<String>), Failure> {
    let doc = parse_formula_doc(&read(path)?)?;
    let alphabet = common.alphabet_for(doc.alphabet.clone(), || {
        doc.formula.letters().into_iter().collect()
    });
    Ok((doc, alphabet))
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn analyze(c: &Common) -> Outcome {
    let (d, label) = c.language()?;
    let report = Analysis::new(&d, c.cap())?.report(label)?;
    if c.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_table());
    }
    Ok(true)
}

fn check(c: &Common, fragment: &str) -> Outcome {
    let f: Fragment = fragment.parse()?;
    let (d, _) = c.language()?;
    let witness = Analysis::new(&d, c.cap())?.evaluate(f)?;
    if c.json {
        print_json(
            &json!({ "fragment": f.id(), "definable": witness.is_none(), "witness": witness }),
        );
    } else {
        match &witness {
            None => println!("{}: yes", f.id()),
            Some(w) => println!("{}: no (e = {}, x = {})", f.id(), w.idempotent, w.element),
        }
    }
    Ok(witness.is_none())
}

fn fo(c: &Common, cmd: &FoCommand) -> Outcome {
    match cmd {
        FoCommand::Compile {
            formula: p,
            state_cap,
        } => {
            let (doc, alphabet) = formula(c, p)?;
            let d = compile_formula_with_cap(&doc.formula, &alphabet, *state_cap)?;
            println!("{}", dfa_to_json(&d));
            Ok(true)
        }
        FoCommand::Eval { formula: p, word } => {
            let (doc, alphabet) = formula(c, p)?;
            let w = Dfa::universal(alphabet.clone()).parse_word(word)?;
            let v = eval_formula(&doc.formula, &alphabet, &w)?;
            if c.json {
                print_json(&json!({ "word": word, "value": v }));
            } else {
                println!("{v}");
            }
            Ok(true)
        }
    }
}

fn expr(c: &Common, cmd: &ExprCommand) -> Outcome {
    let path = match cmd {
        ExprCommand::Check { expr } | ExprCommand::ToFo { expr } => expr,
    };
    let doc = parse_expr_doc(&read(path)?)?;
    let alphabet = c.alphabet_for(doc.alphabet.clone(), || {
        doc.expr.letters().into_iter().collect()
    });
    match cmd {
        ExprCommand::Check { .. } => {
            let violations = validate(&doc.expr, &alphabet);
            if c.json {
                print_json(&json!({ "valid": violations.is_empty(), "violations": violations }));
            } else if violations.is_empty() {
                let states = eval_expr(&doc.expr, &alphabet)?.num_states();
                println!("valid ({states} states)");
            } else {
                for v in &violations {
                    println!("{v}");
                }
            }
            Ok(violations.is_empty())
        }
        ExprCommand::ToFo { .. } => {
            let f = expr_to_formula(&doc.expr, &alphabet)?;
            println!("{f}");
            Ok(true)
        }
    }
}

fn witness(c: &Common, max_len: Option<usize>) -> Outcome {
    let (d, _) = c.language()?;
    let a = Analysis::new(&d, c.cap())?;
    let (h, info) = (&a.morphism, &a.info);
    let s = info.s();
    let w = match build_mod_witness(h, info) {
        Ok(w) => w,
        Err(Error::Hypothesis(msg)) => {
            if c.json {
                print_json(&json!({ "built": false, "reason": msg }));
            } else {
                println!("no witness: {msg}");
            }
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let n = w.monoid();
    let max_len = max_len.unwrap_or(2 * s + 2);
    let verified = verify_vmod_implication(h, &w.g, s, max_len).is_none();
    let names = fragcheck::automata::decorated_alphabet_names(h.alphabet(), s);
    let images: Vec<(String, String)> = names
        .iter()
        .zip(&w.g.images)
        .map(|(a, &x)| (a.clone(), n.label(x).to_string()))
        .collect();
    let order: Vec<(String, String)> = n
        .order_pairs()
        .into_iter()
        .map(|(x, y)| (n.label(x).to_string(), n.label(y).to_string()))
        .collect();
    if c.json {
        print_json(&json!({
            "built": true,
            "modulus": s,
            "size": n.size(),
            "bound": s * s * h.monoid().size() + 2,
            "elements": n.labels(),
            "images": images,
            "order": order,
            "verified_up_to": max_len,
            "verified": verified,
        }));
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "modulus: {s}  size: {}  bound: {}",
            n.size(),
            s * s * h.monoid().size() + 2
        );
        for (a, x) in &images {
            let _ = writeln!(out, "g({a}) = {x}");
        }
        let _ = writeln!(out, "strict order pairs: {}", order.len());
        for (x, y) in &order {
            let _ = writeln!(out, "  {x} < {y}");
        }
        let _ = writeln!(
            out,
            "implication verified up to length {max_len}: {verified}"
        );
        print!("{out}");
    }
    Ok(verified)
}

fn xcheck(
    c: &Common,
    count: usize,
    states: usize,
    letters: usize,
    triples: usize,
    threads: Option<usize>,
) -> Outcome {
    if states == 0 || !(1..=26).contains(&letters) {
        return Err(Failure::Input(
            "need at least one state and 1 to 26 letters".into(),
        ));
    }
    let params = CorpusParams {
        count,
        max_states: states,
        max_letters: letters,
        cap: c.max_monoid.unwrap_or(CorpusParams::default().cap),
        seed: c.seed,
    };
    let threads =
        threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let dfas = corpus(&params);
    let mut failures = Vec::new();
    for r in check_all(&dfas, params.cap, threads) {
        let r = r?;
        for v in &r.violations {
            failures.push(json!({
                "instance": r.index,
                "check": v.check,
                "detail": v.detail,
                "dfa": serde_json::from_str::<serde_json::Value>(&dfa_to_json(&r.dfa)).expect("valid json"),
            }));
        }
    }
    let mut triple_failures = Vec::new();
    for t in wreath_triples(c.seed, triples)? {
        triple_failures.extend(check_wreath_triple(&t)?.violations);
    }
    if c.json {
        print_json(&json!({
            "seed": c.seed,
            "instances": dfas.len(),
            "violations": failures,
            "triples": triples,
            "triple_violations": triple_failures,
        }));
    } else {
        for f in &failures {
            println!(
                "instance {} {}: {}",
                f["instance"],
                f["check"].as_str().unwrap_or("?"),
                f["detail"].as_str().unwrap_or("")
            );
            println!("  {}", f["dfa"]);
        }
        for f in &triple_failures {
            println!("{f}");
        }
        println!(
            "seed {}: {} instances, {} violations; {triples} triples, {} violations",
            c.seed,
            dfas.len(),
            failures.len(),
            triple_failures.len()
        );
    }
    Ok(failures.is_empty() && triple_failures.is_empty())
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Analyze => analyze(c),
        Command::Check { fragment } => check(c, fragment),
        Command::Fo(cmd) => fo(c, cmd),
        Command::Expr(cmd) => expr(c, cmd),
        Command::Witness { max_len } => witness(c, *max_len),
        Command::Xcheck {
            count,
            states,
            letters,
            triples,
            threads,
        } => xcheck(c, *count, *states, *letters, *triples, *threads),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
