mod input;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fourdl::oracle::{search_roots, EnumerationSpec, OracleError, DEFAULT_CEILING};
use fourdl::selftest::{run_all, SelftestConfig};
use fourdl::semantics::{diagram_lines, emit_model, satisfies, globally_satisfies, Model};
use fourdl::syntax::{render, Signature, SignedFormula};
use fourdl::tableau::{prove_roots, ProverConfig, Run, Stats, TableauResult};

use input::{Item, Role};

#[derive(Parser)]
#[command(name = "fourdl", version, about = "Four-valued dynamic hybrid logic toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate formulas on a model, world by world and globally.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Print the diagram of a named model.
    Diagram {
        #[arg(long)]
        model: PathBuf,
    },
    /// Decide whether the assumptions globally entail the formula.
    Prove {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
    },
    /// Decide whether the formula is valid.
    Valid {
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search small models for a countermodel.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, env = "FOURDL_MAX_WORLDS", default_value_t = 3)]
        max_worlds: usize,
        /// Sample this many random models per world count instead of
        /// enumerating all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest search space an exhaustive run accepts.
        #[arg(long, default_value_t = DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// Run the built-in invariant suites.
    Selftest {
        /// Smaller randomised suites.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args)]
struct Input {
    /// The formula to evaluate or prove.
    #[arg(long)]
    formula: Option<String>,
    /// An assumption; may be repeated.
    #[arg(long)]
    assume: Vec<String>,
    /// A file of `assert:`, `query:` and `deny:` lines.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct Limits {
    /// Bound on rule applications.
    #[arg(long, env = "FOURDL_MAX_STEPS", default_value_t = 100_000)]
    max_steps: usize,
    /// Wall-clock bound in milliseconds.
    #[arg(long, env = "FOURDL_TIMEOUT_MS")]
    timeout_ms: Option<u64>,
    /// Print one line per rule application.
    #[arg(long)]
    transcript: bool,
}

impl Limits {
    fn config(&self) -> ProverConfig {
        ProverConfig {
            max_steps: self.max_steps,
            timeout: self.timeout_ms.map(Duration::from_millis),
            transcript: self.transcript,
            ..ProverConfig::default()
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
    File(String),
    Resource(String),
    Internal(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Input(m) => write!(f, "input: {m}"),
            Failure::File(m) => write!(f, "file: {m}"),
            Failure::Resource(m) => write!(f, "resource limit: {m}"),
            Failure::Internal(m) => write!(f, "internal: {m}"),
        }
    }
}

/// Outcome of a successful run: exit status 0 or 1.
struct Report {
    success: bool,
    text: String,
    json: Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", report.json),
            }
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Check { model, input } => {
            let m = input::model(&model)?;
            let items = input::items(input.file.as_deref(), &input.assume, input.formula.as_deref())?;
            if items.is_empty() {
                return Err(Failure::Usage("nothing to check: give --formula, --assume or --file".into()));
            }
            check(&m, &items)
        }
        Command::Diagram { model } => {
            let m = input::model(&model)?;
            let lines = diagram_lines(&m).map_err(|e| Failure::Input(e.to_string()))?;
            Ok(Report {
                success: true,
                text: lines.iter().map(|l| format!("{l}\n")).collect(),
                json: json!({ "diagram": lines }),
            })
        }
        Command::Prove { input, limits } => {
            let items = input::items(input.file.as_deref(), &input.assume, input.formula.as_deref())?;
            input::problem(&items)?;
            prove(&items, &limits)
        }
        Command::Valid { formula, limits } => {
            let items = input::items(None, &[], Some(&formula))?;
            prove(&items, &limits)
        }
        Command::Oracle {
            input,
            max_worlds,
            samples,
            seed,
            ceiling,
        } => {
            let items = input::items(input.file.as_deref(), &input.assume, input.formula.as_deref())?;
            input::problem(&items)?;
            let roots: Vec<SignedFormula> = items.iter().map(Item::root).collect();
            let sig = Signature::of_formulas(roots.iter().map(|r| &r.formula));
            let spec = match samples {
                Some(count) => EnumerationSpec::randomized(sig, max_worlds, count, seed),
                None => EnumerationSpec::exhaustive(sig, max_worlds),
            }
            .with_ceiling(ceiling);
            oracle(&roots, &spec)
        }
        Command::Selftest { quick, seed } => {
            let mut cfg = if quick {
                SelftestConfig::quick()
            } else {
                SelftestConfig::default()
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let outcomes = run_all(&cfg);
            let text = outcomes.iter().map(|o| format!("{o}\n")).collect();
            let json = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "criterion": o.criterion,
                        "title": o.title,
                        "passed": o.passed,
                        "detail": o.detail,
                        "seconds": o.elapsed.as_secs_f64(),
                    })
                })
                .collect();
            Ok(Report {
                success: outcomes.iter().all(|o| o.passed),
                text,
                json: Value::Array(json),
            })
        }
    }
}

fn check(m: &Model, items: &[Item]) -> Result<Report, Failure> {
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut success = true;
    for item in items {
        let mut worlds = serde_json::Map::new();
        text.push_str(&format!("{} {}\n", item.role, render(&item.formula)));
        for w in 0..m.size() {
            let value = satisfies(m, w, &item.formula).map_err(|e| Failure::Input(e.to_string()))?;
            text.push_str(&format!("  {} {}\n", m.world_name(w), value));
            worlds.insert(m.world_name(w).to_string(), Value::Bool(value));
        }
        let global = globally_satisfies(m, &SignedFormula::plain(item.formula.clone()))
            .map_err(|e| Failure::Input(e.to_string()))?;
        let expected = item.role != Role::Deny;
        success &= global == expected;
        text.push_str(&format!("  global {}\n", if global { "holds" } else { "fails" }));
        entries.push(json!({
            "role": item.role.to_string(),
            "formula": render(&item.formula),
            "worlds": worlds,
            "global": global,
        }));
    }
    text.push_str(if success { "HOLDS\n" } else { "FAILS\n" });
    Ok(Report {
        success,
        text,
        json: json!({ "items": entries, "holds": success }),
    })
}

fn stats_json(s: &Stats) -> Value {
    json!({
        "steps": s.steps,
        "branches": s.branches,
        "closed_branches": s.closed_branches,
        "pruned_branches": s.pruned_branches,
        "ignorable_branches": s.ignorable_branches,
        "blocked_existentials": s.blocked_existentials,
        "fresh_nominals": s.fresh_nominals,
        "max_branch_statements": s.max_branch_statements,
    })
}

fn prove(items: &[Item], limits: &Limits) -> Result<Report, Failure> {
    let roots: Vec<SignedFormula> = items.iter().map(Item::root).collect();
    let config = limits.config();
    let Run {
        result,
        stats,
        transcript,
    } = prove_roots(&roots, &config).map_err(|e| Failure::Internal(e.to_string()))?;
    let (success, verdict, model) = match result {
        TableauResult::Proved => (true, "PROVED", None),
        TableauResult::Refuted { countermodel, .. } => (false, "REFUTED", Some(emit_model(&countermodel))),
        TableauResult::ResourceExhausted => {
            return Err(Failure::Resource(format!(
                "no verdict after {} rule applications",
                stats.steps
            )))
        }
    };
    let mut text = format!("{verdict}\n");
    if let Some(m) = &model {
        text.push_str(m);
    }
    for line in &transcript {
        text.push_str(&format!("# {line}\n"));
    }
    let mut json = json!({
        "verdict": verdict,
        "countermodel": model,
        "stats": stats_json(&stats),
    });
    if limits.transcript {
        json["transcript"] = json!(transcript);
    }
    Ok(Report { success, text, json })
}

fn oracle(roots: &[SignedFormula], spec: &EnumerationSpec) -> Result<Report, Failure> {
    let report = search_roots(roots, spec).map_err(|e| match e {
        OracleError::CeilingExceeded { .. } | OracleError::TooManyWorlds(_) => Failure::Resource(e.to_string()),
        OracleError::NoWorlds => Failure::Usage(e.to_string()),
        other => Failure::Internal(other.to_string()),
    })?;
    let model = report.countermodel.as_ref().map(emit_model);
    let text = match &model {
        Some(m) => format!("COUNTERMODEL\n{m}"),
        None => "NONE-UP-TO-BOUND\n".to_string(),
    };
    Ok(Report {
        success: model.is_none(),
        text,
        json: json!({
            "verdict": if model.is_some() { "COUNTERMODEL" } else { "NONE-UP-TO-BOUND" },
            "countermodel": model,
            "examined": report.examined,
            "space": report.space.to_string(),
        }),
    })
}
