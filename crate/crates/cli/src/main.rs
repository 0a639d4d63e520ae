use std::fmt::Display;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use incidence_core::corpus::{self, Payload};
use incidence_core::io::{self, element_repr, FormatError};
use incidence_core::replay::{replay_second_proof, run_counterexample};
use incidence_core::ring::Ring;
use incidence_core::selftest::{self, DEFAULT_SEED};
use incidence_core::statement::{check_instance, statement_wellformed, Verdict};
use incidence_core::tiling::{certify_cancellation, generate_statement, Tiling, TilingError};

/// Exact checker for projective incidence theorems over rings.
#[derive(Parser)]
#[command(name = "incidence", version)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Print every condition, not only failures.
    #[arg(long, global = true)]
    verbose: bool,
    /// Ring for matrices that do not name one (file path or builtin:NAME).
    #[arg(long, global = true, value_name = "SOURCE")]
    ring: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a point configuration against a statement.
    Check {
        /// Statement file or builtin:NAME.
        statement: String,
        /// Matrix file or builtin:NAME.
        matrix: String,
    },
    /// Generate or certify the statement of a tiling.
    Master {
        #[command(subcommand)]
        action: MasterAction,
    },
    /// Replay the symbolic derivation for the 13-point statement.
    Replay,
    /// Check the 13-point counterexample over Q[x, eps]/(eps^2, x^2 - 2 - eps/4).
    Counterexample,
    /// Run the randomized identity suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List or print built-in objects.
    Corpus {
        /// Name of the entry to print; lists all entries when omitted.
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum MasterAction {
    /// Print the generated statement and its labels.
    Gen { tiling: String },
    /// Print the cancellation certificate.
    Certify { tiling: String },
}

const EXIT_INPUT: u8 = 3;

struct InputError(String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Out {
    json: bool,
    verbose: bool,
    color: bool,
}

impl Out {
    fn mark(&self, ok: bool) -> String {
        let (text, code) = if ok { ("PASS", "32") } else { ("FAIL", "31") };
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

/// Read a source: `builtin:NAME` or a file path.
fn load(source: &str, kind: &str) -> Result<Payload, InputError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        let entry = corpus::lookup(name).ok_or_else(|| InputError(format!("{source}: no such builtin")))?;
        if entry.payload.kind() != kind {
            return Err(InputError(format!("{source}: is a {}, expected a {kind}", entry.payload.kind())));
        }
        return Ok(entry.payload);
    }
    let text = std::fs::read_to_string(PathBuf::from(source)).map_err(|e| InputError(format!("{source}: {e}")))?;
    let fail = |e: FormatError| InputError(format!("{source}: {e}"));
    Ok(match kind {
        "matrix" => Payload::Matrix(io::matrix_from_json(&text, None).map_err(fail)?),
        _ => Payload::from_json(kind, &text).map_err(fail)?,
    })
}

fn load_matrix(source: &str, ring: Option<&Ring>) -> Result<incidence_core::geometry::PointMatrix, InputError> {
    if source.starts_with("builtin:") {
        return match load(source, "matrix")? {
            Payload::Matrix(m) => Ok(m),
            _ => unreachable!("kind checked"),
        };
    }
    let text = std::fs::read_to_string(source).map_err(|e| InputError(format!("{source}: {e}")))?;
    io::matrix_from_json(&text, ring).map_err(|e| InputError(format!("{source}: {e}")))
}

fn load_tiling(source: &str) -> Result<Tiling, InputError> {
    match load(source, "tiling")? {
        Payload::Tiling(t) => Ok(t),
        _ => unreachable!("kind checked"),
    }
}

fn print_json(value: &str) {
    print!("{value}");
}

fn cmd_check(out: &Out, ring: Option<&Ring>, statement: &str, matrix: &str) -> Result<u8, InputError> {
    let Payload::Statement(s) = load(statement, "statement")? else { unreachable!("kind checked") };
    let violations = statement_wellformed(&s);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(InputError(format!("{statement}: ill-formed statement: {}", list.join("; "))));
    }
    let m = load_matrix(matrix, ring)?;
    let report = check_instance(&s, &m)?;
    if out.json {
        print_json(&io::report_to_json(&report));
    } else {
        if out.verbose {
            for (i, ok) in &report.column_checks {
                println!("{} column {i} generates the unit ideal", out.mark(*ok));
            }
            for (p, ok) in &report.pair_checks {
                println!("{} pair {p:?} nondegenerate", out.mark(*ok));
            }
            for (t, ok) in &report.triple_unit_checks {
                println!("{} minor {t:?} is a unit", out.mark(*ok));
            }
            for (t, v) in &report.collinear_checks {
                println!("{} minor {t:?} = {v}", out.mark(v.is_zero()));
            }
        } else {
            for f in report.failures() {
                println!("{} {f}", out.mark(false));
            }
        }
        println!("conclusion minor {:?} = {}", report.conclusion, report.conclusion_value);
        println!("verdict: {}", report.verdict);
    }
    Ok(match report.verdict {
        Verdict::ConclusionHolds => 0,
        Verdict::ConclusionFails => 1,
        Verdict::HypothesesFail => 2,
    })
}

fn tiling_error(source: &str, e: TilingError) -> InputError {
    InputError(format!("{source}: {e}"))
}

fn cmd_master(out: &Out, action: &MasterAction) -> Result<u8, InputError> {
    match action {
        MasterAction::Gen { tiling } => {
            let t = load_tiling(tiling)?;
            let (s, map) = generate_statement(&t).map_err(|e| tiling_error(tiling, e))?;
            if out.json {
                print_json(&io::generated_to_json(&s, &map));
            } else {
                println!("{} points:", s.n);
                for (i, e) in map.elements.iter().enumerate() {
                    println!("  {} = {e}", i + 1);
                }
                let name = |t: &[usize]| t.iter().map(|&i| map.name(i)).collect::<Vec<_>>().join(", ");
                for p in &s.nondeg_pairs {
                    println!("distinct {{{}}}", name(p));
                }
                for t in &s.nondeg_triples {
                    println!("not collinear {{{}}}", name(t));
                }
                for t in &s.collinear {
                    println!("collinear {{{}}}", name(t));
                }
                println!("conclusion {{{}}}", name(&s.conclusion));
            }
        }
        MasterAction::Certify { tiling } => {
            let t = load_tiling(tiling)?;
            let cert = certify_cancellation(&t).map_err(|e| tiling_error(tiling, e))?;
            if out.json {
                print_json(&io::certificate_to_json(&cert));
            } else {
                for e in &cert.equations {
                    let auto = if e.automatic { " (automatic)" } else { "" };
                    println!("tile {}: {}{} = {}{}{auto}", e.tile, e.left[0], e.left[1], e.right[0], e.right[1]);
                }
                if out.verbose {
                    for p in &cert.pairing {
                        println!("cancel {} (edge {}-{}) between tiles {} and {}", p.term, p.black, p.white, p.left_tile, p.right_tile);
                    }
                }
                let join = |v: &[incidence_core::tiling::Term]| v.iter().map(ToString::to_string).collect::<String>();
                println!(
                    "product telescopes to {} = {}, the equation of tile {}",
                    join(&cert.residual_left),
                    join(&cert.residual_right),
                    cert.conclusion.tile
                );
            }
        }
    }
    Ok(0)
}

fn cmd_replay(out: &Out) -> u8 {
    let t = replay_second_proof();
    if out.json {
        let steps: Vec<_> = t
            .steps
            .iter()
            .map(|s| {
                json!({
                    "name": s.name,
                    "passed": s.passed(),
                    "checks": s.checks.iter().map(|c| json!({
                        "claim": c.claim, "computed": c.computed, "passed": c.passed,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"passed": t.passed(), "steps": steps})).expect("json"));
    } else {
        for (n, s) in t.steps.iter().enumerate() {
            println!("{} step {}: {}", out.mark(s.passed()), n + 1, s.name);
            for c in &s.checks {
                if out.verbose || !c.passed {
                    println!("    {} {}", out.mark(c.passed), c.claim);
                }
                if !c.passed {
                    println!("      computed: {}", c.computed);
                }
            }
        }
    }
    u8::from(!t.passed())
}

fn cmd_counterexample(out: &Out) -> u8 {
    let run = run_counterexample();
    if out.json {
        let checks: Vec<_> = run
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "value": c.value}))
            .collect();
        let value = json!({
            "passed": run.passed(),
            "conclusion": [11, 12, 13],
            "conclusion_value": element_repr(&run.conclusion_value),
            "conclusion_text": run.conclusion_value.to_string(),
            "checks": checks,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
    } else {
        for c in &run.checks {
            if out.verbose || !c.passed {
                println!("{} {} ({})", out.mark(c.passed), c.name, c.value);
            }
        }
        let passed = run.checks.iter().filter(|c| c.passed).count();
        println!("{passed}/{} hypotheses hold", run.checks.len());
        println!(
            "{} conclusion minor [11, 12, 13] = {}",
            out.mark(!run.conclusion_value.is_zero()),
            run.conclusion_value
        );
    }
    u8::from(!run.passed())
}

fn cmd_selftest(out: &Out, seed: u64) -> u8 {
    let results = selftest::run_all(seed);
    let ok = results.iter().all(|r| r.passed());
    if out.json {
        let suites: Vec<_> = results
            .iter()
            .map(|r| json!({"name": r.name, "ring": r.ring, "cases": r.cases, "failures": r.failures}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({"seed": seed, "passed": ok, "suites": suites})).expect("json"));
    } else {
        for r in &results {
            println!("{} {} over {}: {} cases, {} failures", out.mark(r.passed()), r.name, r.ring, r.cases, r.failures.len());
            for f in r.failures.iter().take(if out.verbose { usize::MAX } else { 3 }) {
                println!("    {f}");
            }
        }
    }
    u8::from(!ok)
}

fn cmd_corpus(out: &Out, name: Option<&str>) -> Result<u8, InputError> {
    match name {
        None => {
            let entries = corpus::entries();
            if out.json {
                let list: Vec<_> = entries
                    .iter()
                    .map(|e| json!({"name": e.name, "kind": e.payload.kind(), "description": e.description}))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&list).expect("json"));
            } else {
                for e in entries {
                    println!("{:<24} {:<16} {}", e.name, e.payload.kind(), e.description);
                }
            }
        }
        Some(name) => {
            let name = name.strip_prefix("builtin:").unwrap_or(name);
            let e = corpus::lookup(name).ok_or_else(|| InputError(format!("no builtin named {name}")))?;
            print_json(&e.payload.to_json()?);
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, InputError> {
    let out = Out {
        json: cli.json,
        verbose: cli.verbose,
        color: std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal(),
    };
    let ring = match &cli.ring {
        None => None,
        Some(src) => match load(src, "ring")? {
            Payload::Ring(r) => Some(r),
            _ => unreachable!("kind checked"),
        },
    };
    match &cli.command {
        Command::Check { statement, matrix } => cmd_check(&out, ring.as_ref(), statement, matrix),
        Command::Master { action } => cmd_master(&out, action),
        Command::Replay => Ok(cmd_replay(&out)),
        Command::Counterexample => Ok(cmd_counterexample(&out)),
        Command::Selftest { seed } => Ok(cmd_selftest(&out, *seed)),
        Command::Corpus { name } => cmd_corpus(&out, name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
