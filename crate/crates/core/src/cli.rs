//! Command-line interface.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cat::CatFormula;
use crate::order::{parse_facts, OrderStore};
use crate::parse::{parse_cat, parse_sequent};
use crate::patterns::{
    count_patterns, count_wellnested, enumerate_patterns, is_well_nested, label, schema, ConnectiveSchema, Pattern,
    Role,
};
use crate::proofnet::{abstract_to_dot, prove_net_with, structure_to_dot, NetConfig, NetReport};
use crate::prover::Prover;
use crate::term::Sequent;
use crate::translate::{instantiate_sentence, Lexicon, TranslateError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "follres", version, about = "First-order linear logic prover and pattern-indexed categorial parser")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Net,
    Sequent,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the patterns with a given number of segments.
    Enumerate {
        #[arg(long)]
        segments: usize,
        #[arg(long)]
        well_nested: bool,
        /// Also print the connective schema of each pattern.
        #[arg(long)]
        schemas: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print pattern counts for 1..=max segments.
    Count {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        well_nested: bool,
    },
    /// Print the connective schema of a pattern.
    Schema {
        pattern: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide a sequent `F1, F2 |- G`.
    Prove {
        sequent: String,
        /// Order facts such as `0<1,X<=1`.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value = "net")]
        method: Method,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        deterministic: bool,
    },
    /// Parse a sentence with a lexicon.
    Parse {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        goal: String,
        sentence: String,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        deterministic: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "net")]
        method: Method,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Summary of a proving or parsing run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub outcome: String,
    pub proofs: u64,
    pub matchings_explored: u64,
    pub backtracks: u64,
    /// Milliseconds; zero under `--deterministic`.
    pub elapsed: u64,
}

/// Output and exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Output {
        Output { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Parses the arguments and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if code == EXIT_OK {
                Output::ok(text)
            } else {
                Output { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cmd: Command) -> Output {
    match cmd {
        Command::Enumerate { segments, well_nested, schemas, json } => enumerate(segments, well_nested, schemas, json),
        Command::Count { max, well_nested } => {
            let f = if well_nested { count_wellnested } else { count_patterns };
            let counts: Vec<String> = (1..=max).map(|k| f(k).to_string()).collect();
            Output::ok(format!("{}\n", counts.join(",")))
        }
        Command::Schema { pattern, json } => match pattern.parse::<Pattern>() {
            Ok(p) => {
                let s = schema(&p);
                if json {
                    Output::ok(format!("{}\n", serde_json::to_string_pretty(&s).expect("schema serializes")))
                } else {
                    Output::ok(schema_text(&s))
                }
            }
            Err(e) => Output::error(EXIT_PARSE, e),
        },
        Command::Prove { sequent, order, method, dot, trace, all, json, jobs, deterministic } => {
            prove(&sequent, order.as_deref(), method, dot, trace, all, json, jobs, deterministic)
        }
        Command::Parse { lexicon, goal, sentence, all, dot, stats, deterministic, json, method, jobs } => {
            parse(&lexicon, &goal, &sentence, all, dot, stats, deterministic, json, method, jobs)
        }
    }
}

fn enumerate(k: usize, well_nested: bool, schemas: bool, json: bool) -> Output {
    let patterns = enumerate_patterns(k, false);
    let rows: Vec<(String, &Pattern)> = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (label(k, i), p))
        .filter(|(_, p)| !well_nested || is_well_nested(p))
        .collect();
    if json {
        #[derive(Serialize)]
        struct Row {
            label: String,
            pattern: String,
            well_nested: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            schema: Option<ConnectiveSchema>,
        }
        let rows: Vec<Row> = rows
            .iter()
            .map(|(l, p)| Row {
                label: l.clone(),
                pattern: p.to_string(),
                well_nested: is_well_nested(p),
                schema: schemas.then(|| schema(p)),
            })
            .collect();
        return Output::ok(format!("{}\n", serde_json::to_string_pretty(&rows).expect("rows serialize")));
    }
    let mut out = String::new();
    for (l, p) in rows {
        let marker = if is_well_nested(p) { "" } else { "  (not well-nested)" };
        let _ = writeln!(out, "{l}  {p}{marker}");
        if schemas {
            for line in schema_text(&schema(p)).lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
    }
    Output::ok(out)
}

fn schema_text(s: &ConnectiveSchema) -> String {
    let tuple = |t: &[usize]| t.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
    let set = |t: &std::collections::BTreeSet<usize>| t.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(",");
    let facts = |role: Role| {
        let f: Vec<String> = s.required_facts(role).iter().map(|f| f.to_string()).collect();
        if f.is_empty() {
            "none".to_string()
        } else {
            f.join(", ")
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "pattern {}", s.pattern);
    let _ = writeln!(out, "A ({})  B ({})  C ({})", tuple(&s.tuple_a), tuple(&s.tuple_b), tuple(&s.tuple_c));
    let _ = writeln!(out, "product  exists {{{}}}  requires {}", set(&s.exist_vars), facts(Role::Product));
    let _ = writeln!(out, "under    forall {{{}}}  requires {}", set(&s.under_vars), facts(Role::Under));
    let _ = writeln!(out, "over     forall {{{}}}  requires {}", set(&s.over_vars), facts(Role::Over));
    out
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Output> {
    std::fs::write(path, text).map_err(|e| Output::error(EXIT_NEGATIVE, format!("cannot write {}: {e}", path.display())))
}

fn render(report: &RunReport, json: bool, text: String) -> String {
    if json {
        format!("{}\n", serde_json::to_string(report).expect("report serializes"))
    } else {
        text
    }
}

#[allow(clippy::too_many_arguments)]
fn prove(
    text: &str,
    order: Option<&str>,
    method: Method,
    dot: Option<PathBuf>,
    trace: bool,
    all: bool,
    json: bool,
    jobs: usize,
    deterministic: bool,
) -> Output {
    let seq = match parse_sequent(text) {
        Ok(s) => s,
        Err(e) => return Output::error(EXIT_PARSE, e),
    };
    let store = match order.map(parse_facts).transpose() {
        Ok(facts) => match OrderStore::from_facts(facts.iter().flatten()) {
            Ok(s) => s,
            Err(e) => return Output::error(EXIT_PARSE, e),
        },
        Err(e) => return Output::error(EXIT_PARSE, e),
    };
    let start = Instant::now();
    let mut out = String::new();
    let mut report = RunReport {
        outcome: String::new(),
        proofs: 0,
        matchings_explored: 0,
        backtracks: 0,
        elapsed: 0,
    };
    let mut net_ok = None;
    let mut seq_ok = None;
    if method != Method::Sequent {
        let cfg = NetConfig { all, jobs: jobs.max(1), ..NetConfig::default() };
        let r = prove_net_with(&seq, &store, cfg);
        report.proofs = r.nets.len() as u64;
        report.matchings_explored = r.stats.matchings;
        report.backtracks = r.stats.backtracks;
        net_ok = Some(!r.nets.is_empty());
        if trace {
            describe_nets(&r, &mut out);
        }
        if let Some(path) = &dot {
            if let Err(o) = write_file(path, &net_dot(&r)) {
                return o;
            }
        }
    }
    if method != Method::Net {
        let prover = Prover::new();
        let ds = prover.prove_all(&seq, &store, if all { 64 } else { 1 });
        seq_ok = Some(!ds.is_empty());
        if method == Method::Sequent {
            report.proofs = ds.len() as u64;
        }
        if trace {
            for d in &ds {
                let _ = write!(out, "{d}");
            }
        }
    }
    let derivable = net_ok.or(seq_ok).unwrap_or(false);
    if let (Some(a), Some(b)) = (net_ok, seq_ok) {
        if a != b {
            return Output {
                code: EXIT_NEGATIVE,
                stdout: out,
                stderr: format!("discrepancy: proof nets say {a}, sequent search says {b}\n"),
            };
        }
        let _ = writeln!(out, "methods agree");
    }
    report.outcome = if derivable { "derivable" } else { "not-derivable" }.to_string();
    report.elapsed = if deterministic { 0 } else { start.elapsed().as_millis() as u64 };
    let _ = writeln!(out, "{}: {}", report.outcome, seq);
    let code = if derivable { EXIT_OK } else { EXIT_NEGATIVE };
    Output { code, stdout: render(&report, json, out), stderr: String::new() }
}

fn describe_nets(r: &NetReport, out: &mut String) {
    let ps = &r.structure;
    for (i, net) in r.nets.iter().enumerate() {
        let _ = writeln!(out, "net {}", i + 1);
        for (p, q) in &net.matching.pairs {
            let _ = writeln!(
                out,
                "  {} ~ {}",
                net.matching.subst.apply(&ps.occurrences[*p].formula),
                net.matching.subst.apply(&ps.occurrences[*q].formula)
            );
        }
        let steps: String = net.contraction.trace.iter().map(|s| s.kind).collect();
        let _ = writeln!(out, "  contractions {steps}");
    }
}

fn net_dot(r: &NetReport) -> String {
    match r.nets.first() {
        Some(net) => {
            let mut s = structure_to_dot(&r.structure, &net.matching.pairs, &net.matching.subst);
            s.push_str(&abstract_to_dot(&net.abstract_structure));
            s
        }
        None => structure_to_dot(&r.structure, &Default::default(), &Default::default()),
    }
}

fn translate_error_code(e: &TranslateError) -> i32 {
    match e {
        TranslateError::UnknownWord(_) => EXIT_NEGATIVE,
        _ => EXIT_PARSE,
    }
}

#[allow(clippy::too_many_arguments)]
fn parse(
    lexicon: &Path,
    goal: &str,
    sentence: &str,
    all: bool,
    dot: Option<PathBuf>,
    stats: bool,
    deterministic: bool,
    json: bool,
    method: Method,
    jobs: usize,
) -> Output {
    let lex = match Lexicon::load(lexicon) {
        Ok(l) => l,
        Err(e) => return Output::error(EXIT_PARSE, e),
    };
    let goal: CatFormula = match parse_cat(goal) {
        Ok(g) => lex.expand(&g),
        Err(e) => return Output::error(EXIT_PARSE, e),
    };
    let words: Vec<&str> = sentence.split_whitespace().collect();
    let readings = match lex.readings(&words) {
        Ok(r) => r,
        Err(e) => return Output::error(translate_error_code(&e), e),
    };
    let start = Instant::now();
    let mut report = RunReport {
        outcome: "parse-count".to_string(),
        proofs: 0,
        matchings_explored: 0,
        backtracks: 0,
        elapsed: 0,
    };
    let mut out = String::new();
    let mut first_dot = None;
    for cats in &readings {
        let inst = match instantiate_sentence(cats, &goal) {
            Ok(i) => i,
            Err(TranslateError::Order(_)) => continue,
            Err(e) => return Output::error(translate_error_code(&e), e),
        };
        let reading = cats.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" | ");
        let (found, detail) = match method {
            Method::Sequent => {
                let ds = Prover::new().prove_all(&inst.sequent, &inst.store, if all { 64 } else { 1 });
                (ds.len() as u64, String::new())
            }
            Method::Net | Method::Both => {
                let cfg = NetConfig { all, jobs: jobs.max(1), ..NetConfig::default() };
                let r = prove_net_with(&inst.sequent, &inst.store, cfg);
                report.matchings_explored += r.stats.matchings;
                report.backtracks += r.stats.backtracks;
                if method == Method::Both {
                    let seq_ok = Prover::new().prove(&inst.sequent, &inst.store).is_some();
                    if seq_ok != !r.nets.is_empty() {
                        return Output {
                            code: EXIT_NEGATIVE,
                            stdout: out,
                            stderr: format!("discrepancy on reading {reading}\n"),
                        };
                    }
                }
                if first_dot.is_none() && !r.nets.is_empty() {
                    first_dot = Some(net_dot(&r));
                }
                let mut d = String::new();
                if stats {
                    let _ = writeln!(
                        d,
                        "  matchings {} branches {} backtracks {} unpruned {} rejected {}",
                        r.stats.matchings, r.stats.branches, r.stats.backtracks, r.stats.unpruned, r.rejected
                    );
                }
                (r.nets.len() as u64, d)
            }
        };
        if found > 0 {
            let _ = writeln!(out, "reading {reading}: {found} parse(s)");
            let _ = writeln!(out, "  {}", inst.sequent);
        }
        out.push_str(&detail);
        report.proofs += found;
        if found > 0 && !all {
            break;
        }
    }
    if let (Some(path), Some(text)) = (&dot, &first_dot) {
        if let Err(o) = write_file(path, text) {
            return o;
        }
    }
    report.elapsed = if deterministic { 0 } else { start.elapsed().as_millis() as u64 };
    let _ = writeln!(out, "parses: {}", report.proofs);
    let code = if report.proofs > 0 { EXIT_OK } else { EXIT_NEGATIVE };
    Output { code, stdout: render(&report, json, out), stderr: String::new() }
}

/// Convenience for tests: the sequent of the first reading of a sentence.
pub fn sentence_sequent(lex: &Lexicon, goal: &CatFormula, sentence: &str) -> Result<Sequent, TranslateError> {
    let words: Vec<&str> = sentence.split_whitespace().collect();
    let cats = lex.readings(&words)?.into_iter().next().unwrap_or_default();
    Ok(instantiate_sentence(&cats, goal)?.sequent)
}
