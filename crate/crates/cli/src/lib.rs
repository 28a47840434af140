//! Command-line front end: argument parsing, dispatch and rendering.
//!
//! [`execute`] is the whole program minus process I/O, so tests can run
//! commands in-process and inspect the exit code and both output streams.

use std::ffi::OsString;
use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};
use conjlogic::analysis::{cz_consistency_check, law_report, pm_square};
use conjlogic::kernel::{law_suite, logically_equivalent, logically_implies, parse_formulas, TruthTable};
use conjlogic::pauli::parse_conjunction;
use conjlogic::{
    bench, Assignment, CheckResult, CzChoice, Formula, KnowledgeState, Proposition, Theory, TheoryVariant,
    Transcript, TruthValue,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoryArg {
    Quantum,
    Toy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CzArg {
    Standard,
    Tilde,
}

#[derive(Debug, Parser)]
#[command(name = "conjlogic", version, about = "Three-valued logic of Pauli-string propositions")]
struct Args {
    /// Sign rules for S and H.
    #[arg(long, global = true, value_enum)]
    theory: Option<TheoryArg>,
    /// Sign rule for CZ.
    #[arg(long, global = true, value_enum)]
    cz: Option<CzArg>,
    #[arg(long, global = true, value_enum, env = "CONJLOGIC_FORMAT")]
    format: Option<OutputFormat>,
    /// Seed for measurement outcomes and benchmark states.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Truth table of a formula, or check it against another.
    Eval {
        formula: String,
        /// Check that both formulas have identical truth tables.
        #[arg(long, conflicts_with = "implies")]
        equiv: Option<String>,
        /// Check that FORMULA → IMPLIES is 1 everywhere.
        #[arg(long)]
        implies: Option<String>,
    },
    /// Check the equivalence and implication laws.
    Laws {
        /// Also print every law's truth table.
        #[arg(long)]
        tables: bool,
    },
    /// Reduce one proposition, a pair, or a compatible set to single-system form.
    Reduce {
        #[arg(required = true)]
        props: Vec<String>,
        /// Show the propositions after every gate.
        #[arg(long)]
        trace: bool,
    },
    /// Truth values a conjunction predicts for queries.
    Predict {
        generators: String,
        #[arg(required = true)]
        queries: Vec<String>,
    },
    /// Every prediction of a conjunction.
    Closure { generators: String },
    /// Measure questions in sequence, starting from a conjunction.
    Measure {
        generators: String,
        #[arg(required = true)]
        questions: Vec<String>,
    },
    /// Apply a gate transcript such as "S@2; H@1; CZ@(1,2)".
    Apply {
        transcript: String,
        #[arg(required = true)]
        props: Vec<String>,
    },
    /// Value assignments for the Peres-Mermin square.
    Pm,
    /// Derive the YIY prediction of <-YYI,-IYY> two ways.
    Consistency,
    /// Time reduction and closure on random states.
    Bench {
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        reps: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Equivalence,
    Implication,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Eval { formula: String, against: Option<(CheckKind, String)> },
    Laws { tables: bool },
    Reduce { props: Vec<Proposition>, trace: bool, theory: Theory },
    Predict { generators: Vec<Proposition>, queries: Vec<Proposition>, n: usize, theory: Theory },
    Closure { generators: Vec<Proposition>, n: usize, theory: Theory },
    Measure { generators: Vec<Proposition>, questions: Vec<Proposition>, n: usize, seed: Option<u64>, theory: Theory },
    Apply { transcript: Transcript, props: Vec<Proposition>, theory: Theory },
    Pm { variant: TheoryVariant },
    Consistency { cz: CzChoice },
    Bench { n: usize, k: usize, reps: usize, seed: u64, theory: Theory },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub format: OutputFormat,
}

/// Exit status and captured output of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Rejected command line. Help and version requests come back as errors
/// with exit code 0 and their text in `message`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    pub code: i32,
}

fn usage(message: impl Into<String>) -> UsageError {
    UsageError { message: format!("error: {}", message.into()), code: 1 }
}

fn props_arg(text: &str, n: Option<usize>) -> Result<Vec<Proposition>, UsageError> {
    parse_conjunction(text, n).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))
}

fn props_args(texts: &[String], n: Option<usize>) -> Result<Vec<Proposition>, UsageError> {
    let mut out: Vec<Proposition> = Vec::new();
    for t in texts {
        let n = n.or(out.first().map(Proposition::n));
        out.extend(props_arg(t, n)?);
    }
    Ok(out)
}

/// Parses generators plus one or more further propositions, taking the
/// system count from the generators or, for `<>`, from the others.
fn state_args(generators: &str, rest: &[String]) -> Result<(Vec<Proposition>, Vec<Proposition>, usize), UsageError> {
    let gens = props_arg(generators, None)?;
    let rest = props_args(rest, gens.first().map(Proposition::n))?;
    let n = gens
        .first()
        .or(rest.first())
        .map(Proposition::n)
        .ok_or_else(|| usage("cannot infer the number of systems from an empty conjunction"))?;
    Ok((gens, rest, n))
}

fn reject(flag: &str, given: bool, command: &str) -> Result<(), UsageError> {
    if given {
        return Err(usage(format!("--{flag} has no effect on {command}")));
    }
    Ok(())
}

/// Parses a full argument vector, program name first.
pub fn parse_command<I, T>(argv: I) -> Result<Invocation, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        UsageError { message: e.render().to_string(), code }
    })?;
    let variant = match args.theory {
        Some(TheoryArg::Toy) => TheoryVariant::SpekkensToy,
        _ => TheoryVariant::Quantum,
    };
    let cz = match args.cz {
        Some(CzArg::Tilde) => CzChoice::Tilde,
        _ => CzChoice::Standard,
    };
    let theory = Theory::new(variant, cz);
    let (has_theory, has_cz, has_seed) = (args.theory.is_some(), args.cz.is_some(), args.seed.is_some());

    let command = match args.command {
        Sub::Eval { formula, equiv, implies } => {
            reject("theory", has_theory, "eval")?;
            reject("cz", has_cz, "eval")?;
            reject("seed", has_seed, "eval")?;
            let against = equiv
                .map(|e| (CheckKind::Equivalence, e))
                .or(implies.map(|i| (CheckKind::Implication, i)));
            Command::Eval { formula, against }
        }
        Sub::Laws { tables } => {
            reject("theory", has_theory, "laws")?;
            reject("cz", has_cz, "laws")?;
            reject("seed", has_seed, "laws")?;
            Command::Laws { tables }
        }
        Sub::Reduce { props, trace } => {
            reject("seed", has_seed, "reduce")?;
            Command::Reduce { props: props_args(&props, None)?, trace, theory }
        }
        Sub::Predict { generators, queries } => {
            reject("seed", has_seed, "predict")?;
            let (generators, queries, n) = state_args(&generators, &queries)?;
            Command::Predict { generators, queries, n, theory }
        }
        Sub::Closure { generators } => {
            reject("seed", has_seed, "closure")?;
            let (generators, _, n) = state_args(&generators, &[])?;
            Command::Closure { generators, n, theory }
        }
        Sub::Measure { generators, questions } => {
            let (generators, questions, n) = state_args(&generators, &questions)?;
            if args.seed.is_none() {
                // Predicted questions leave the state alone, so a seed is
                // needed exactly when some question is not predicted now.
                let state = KnowledgeState::from_generators(n, theory, generators.clone())
                    .map_err(|e| usage(e.to_string()))?;
                if let Some(q) = questions
                    .iter()
                    .find(|q| state.predicts(&q.question()).is_ok_and(|v| !v.is_determinate()))
                {
                    return Err(usage(format!("{} is not predicted; pass --seed to draw outcomes", q.question())));
                }
            }
            Command::Measure { generators, questions, n, seed: args.seed, theory }
        }
        Sub::Apply { transcript, props } => {
            reject("seed", has_seed, "apply")?;
            let transcript: Transcript = transcript.parse().map_err(|e: conjlogic::Error| usage(e.to_string()))?;
            Command::Apply { transcript, props: props_args(&props, None)?, theory }
        }
        Sub::Pm => {
            reject("cz", has_cz, "pm")?;
            reject("seed", has_seed, "pm")?;
            Command::Pm { variant }
        }
        Sub::Consistency => {
            if args.theory == Some(TheoryArg::Toy) {
                return Err(usage("consistency uses the quantum sign rules; --theory toy conflicts"));
            }
            reject("seed", has_seed, "consistency")?;
            Command::Consistency { cz }
        }
        Sub::Bench { n, k, reps } => {
            if k > n {
                return Err(usage(format!("--k {k} exceeds --n {n}")));
            }
            Command::Bench { n, k, reps, seed: args.seed.unwrap_or(0), theory }
        }
    };
    Ok(Invocation { command, format: args.format.unwrap_or_default() })
}

/// Parses and runs `argv`.
pub fn execute<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_command(argv) {
        Ok(inv) => run(&inv),
        Err(e) if e.code == 0 => Outcome { code: 0, stdout: e.message, stderr: String::new() },
        Err(e) => Outcome { code: e.code, stdout: String::new(), stderr: ensure_newline(e.message) },
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

struct Rendered {
    code: i32,
    text: String,
    json: Value,
}

fn ok(text: String, json: Value) -> Rendered {
    Rendered { code: 0, text, json }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Runs a parsed command.
pub fn run(inv: &Invocation) -> Outcome {
    match dispatch(&inv.command) {
        Ok(r) => {
            let stdout = match inv.format {
                OutputFormat::Text => ensure_newline(r.text),
                OutputFormat::Json => render_json(&r.json),
            };
            Outcome { code: r.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// `<ZI,-IX>`.
fn conj_text(props: &[Proposition]) -> String {
    let inner: Vec<String> = props
        .iter()
        .map(|p| format!("{}{}", if p.sign() { "-" } else { "" }, p.letter_string()))
        .collect();
    format!("<{}>", inner.join(","))
}

fn dispatch(cmd: &Command) -> conjlogic::Result<Rendered> {
    match cmd {
        Command::Eval { formula, against } => eval(formula, against.as_ref()),
        Command::Laws { tables } => laws(*tables),
        Command::Reduce { props, trace, theory } => reduce(props, *trace, *theory),
        Command::Predict { generators, queries, n, theory } => {
            let state = KnowledgeState::from_generators(*n, *theory, generators.clone())?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for q in queries {
                let v = state.predicts(q)?;
                let _ = writeln!(text, "{v}");
                rows.push(json!({ "query": q, "value": v }));
            }
            Ok(ok(text, json!({ "state": state, "predictions": rows })))
        }
        Command::Closure { generators, n, theory } => {
            let state = KnowledgeState::from_generators(*n, *theory, generators.clone())?;
            let closure = state.closure()?;
            let text = closure.iter().map(|p| format!("{p}\n")).collect();
            Ok(ok(text, json!({ "state": state, "closure": closure })))
        }
        Command::Measure { generators, questions, n, seed, theory } => {
            let mut state = KnowledgeState::from_generators(*n, *theory, generators.clone())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
            let mut text = String::new();
            let mut records = Vec::new();
            for q in questions {
                let (rec, next) = state.measure(q, &mut rng)?;
                let _ = writeln!(
                    text,
                    "{} -> {}  (outcome {}, predicted {})",
                    rec.measured, rec.resulting_prop, rec.outcome, rec.predicted
                );
                records.push(rec);
                state = next;
            }
            let _ = writeln!(text, "state: {}", conj_text(state.generators()));
            Ok(ok(text, json!({ "records": records, "state": state })))
        }
        Command::Apply { transcript, props, theory } => {
            let mut text = String::new();
            let mut results = Vec::new();
            for p in props {
                let q = transcript.apply(p, *theory)?;
                let _ = writeln!(text, "{p} -> {q}");
                results.push(json!({ "input": p, "output": q }));
            }
            Ok(ok(text, json!({ "transcript": transcript, "results": results })))
        }
        Command::Pm { variant } => {
            let r = pm_square(*variant);
            Ok(ok(r.render_text(), to_json(&r)))
        }
        Command::Consistency { cz } => {
            let r = cz_consistency_check(*cz);
            let code = if r.contradiction_found { 2 } else { 0 };
            Ok(Rendered { code, text: r.render_text(), json: to_json(&r) })
        }
        Command::Bench { n, k, reps, seed, theory } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let r = bench::run(*n, *k, *reps, *theory, &mut rng)?;
            let mut text = String::new();
            let _ = writeln!(text, "n {}, generators {}, repetitions {}", r.n, r.generators, r.repetitions);
            let _ = writeln!(
                text,
                "reduce median: {:.3} ms ({} gates, {:.3e} gate applications/s)",
                r.reduce_median_ms, r.transcript_gates, r.gate_applications_per_sec
            );
            match (r.closure_median_ms, r.closure_size) {
                (Some(ms), Some(size)) => {
                    let _ = writeln!(text, "closure median: {ms:.3} ms ({size} predictions)");
                }
                _ => {
                    let _ = writeln!(text, "closure: skipped above {} generators", bench::BENCH_CLOSURE_LIMIT);
                }
            }
            Ok(ok(text, to_json(&r)))
        }
    }
}

fn assignment_text(a: &Assignment, names: &[&str]) -> String {
    let parts: Vec<String> = a.values().iter().zip(names).map(|(v, n)| format!("{n}:{v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn eval(formula: &str, against: Option<&(CheckKind, String)>) -> conjlogic::Result<Rendered> {
    let mut texts = vec![formula];
    if let Some((_, other)) = against {
        texts.push(other);
    }
    let (formulas, names) = parse_formulas(&texts)?;
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let f = &formulas[0];
    let shown = |g: &Formula| g.display_with(&names).to_string();

    if let Some((kind, _)) = against {
        let g = &formulas[1];
        let (result, symbol, relation) = match kind {
            CheckKind::Equivalence => (logically_equivalent(f, g)?, "⇔", "equivalence"),
            CheckKind::Implication => (logically_implies(f, g)?, "⇒", "implication"),
        };
        let counterexample = match &result {
            CheckResult::Holds => None,
            CheckResult::Counterexample(a) => Some(a.clone()),
        };
        let verdict = match &counterexample {
            None => "holds".to_string(),
            Some(a) => format!("fails at {}", assignment_text(a, &names)),
        };
        let text = format!("{} {symbol} {}: {verdict}\n", shown(f), shown(g));
        let json = json!({
            "lhs": shown(f),
            "rhs": shown(g),
            "relation": relation,
            "holds": result.holds(),
            "counterexample": counterexample.map(|a| {
                names.iter().zip(a.values()).map(|(n, v)| (n.to_string(), to_json(v))).collect::<serde_json::Map<_, _>>()
            }),
        });
        return Ok(ok(text, json));
    }

    let k = names.len();
    let mut header: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    header.push(shown(f));
    let mut rows = Vec::new();
    for a in Assignment::enumerate(k) {
        let mut row = a.values().to_vec();
        row.push(f.evaluate(&a)?);
        rows.push(row);
    }
    let tautology = rows.iter().all(|r| r[k] == TruthValue::True);
    let table = TruthTable { header, rows };
    let text = format!("{}tautology: {}\n", table.render(), if tautology { "yes" } else { "no" });
    let json = json!({ "formula": shown(f), "atoms": names, "table": table, "tautology": tautology });
    Ok(ok(text, json))
}

fn laws(tables: bool) -> conjlogic::Result<Rendered> {
    if tables {
        let t = law_report()?;
        Ok(ok(t.render_text(), to_json(&t)))
    } else {
        let r = law_suite()?;
        Ok(ok(r.render_text(), to_json(&r)))
    }
}

fn reduce(props: &[Proposition], trace: bool, theory: Theory) -> conjlogic::Result<Rendered> {
    use conjlogic::reduction::{reduce_pair, reduce_set, reduce_single};
    let r = match props {
        [p] => reduce_single(p, theory)?,
        [p, q] => reduce_pair(p, q, theory)?,
        _ => reduce_set(props, theory)?,
    };
    let mut text = String::new();
    let _ = writeln!(text, "transcript: {}", r.transcript);
    if trace {
        let traces = props
            .iter()
            .map(|p| r.transcript.trace(p, theory))
            .collect::<conjlogic::Result<Vec<_>>>()?;
        let _ = writeln!(text, "  {}", conj_text(props));
        for (i, gate) in r.transcript.gates().iter().enumerate() {
            let step: Vec<Proposition> = traces.iter().map(|t| t[i].clone()).collect();
            let _ = writeln!(text, "  {} after {gate}", conj_text(&step));
        }
    }
    for (p, red) in props.iter().zip(&r.reduced) {
        let _ = writeln!(text, "{p} -> {red}");
    }
    let relation = serde_json::to_value(r.relation).expect("serializable");
    let _ = writeln!(text, "relation: {}", relation.as_str().unwrap_or_default());
    Ok(ok(text, to_json(&r)))
}
