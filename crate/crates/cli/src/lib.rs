//! Argument handling and subcommands for the `diverse-cuts` binary.
//!
//! Every subcommand prints one JSON document (or DOT / graph text) on
//! standard output. Failures print `{"error": <kind>, "message": ...}` on
//! standard error; computation errors exit 1, usage errors exit 2.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diverse_cuts::oracle::verify::run_verification;
use diverse_cuts::oracle::{brute_force_diverse, cut_ids, gen_random_instance, Model, OracleCaps};
use diverse_cuts::sfm::{DEFAULT_EXHAUSTIVE_CAP, DEFAULT_MNP_ITERATIONS};
use diverse_cuts::{
    fixture, max_disjoint_mincuts, parse_graph, solve_diverse, Backend, ClosureDag, DirectedGraph, Error, GraphFormat,
    Measure, MinCut, Objective,
};

pub const ENV_CAP_IDEALS: &str = "DIVERSE_CUTS_CAP_IDEALS";
pub const ENV_CAP_MULTISETS: &str = "DIVERSE_CUTS_CAP_MULTISETS";
/// Oracle cap on the number of mincuts searched for disjoint families in `verify`.
const VERIFY_DISJOINT_CAP: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "diverse-cuts", version, about = "Diverse minimum s-t cuts in directed graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximize a diversity measure over k minimum cuts.
    Solve {
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        k: usize,
        /// Graph file (DIMACS or JSON) or `fixture:<name>`.
        #[arg(long)]
        input: String,
        /// Defaults to `mnp` for sum/cov and `oracle` for min.
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Element cap for the exhaustive backend.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        exhaustive_cap: usize,
        /// Iteration cap for the minimum-norm-point backend.
        #[arg(long, default_value_t = DEFAULT_MNP_ITERATIONS)]
        max_iter: usize,
    },
    /// Largest family of pairwise-disjoint minimum cuts.
    Disjoint {
        #[arg(long)]
        input: String,
    },
    /// List minimum cuts, or print the contracted residual DAG.
    Enumerate {
        #[arg(long)]
        input: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = EmitArg::Json)]
        emit: EmitArg,
    },
    /// Cross-check the fast solvers against the brute-force oracles.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        nmax: usize,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        model: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Dimacs)]
        format: FormatArg,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Sum,
    Cov,
    Min,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exhaustive,
    Mnp,
    Oracle,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EmitArg {
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Dimacs,
    Json,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dimacs => GraphFormat::Dimacs,
            FormatArg::Json => GraphFormat::Json,
        }
    }
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Sum => Measure::Sum,
            MeasureArg::Cov => Measure::Cov,
            MeasureArg::Min => Measure::Min,
        }
    }
}

enum Failure {
    Usage(String),
    Compute(Error),
    /// Ran to completion but found mismatches; the report is already on stdout.
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "{}", json!({ "error": "usage", "message": message }));
            2
        }
        Err(Failure::Compute(e)) => {
            let _ = writeln!(err, "{}", json!({ "error": e.kind(), "message": e.to_string() }));
            1
        }
        Err(Failure::Mismatch) => {
            let _ = writeln!(err, "{}", json!({ "error": "mismatch", "message": "oracle comparison failed" }));
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Solve { measure, k, input, backend, exhaustive_cap, max_iter } => {
            let g = load_graph(&input)?;
            let backend = backend.unwrap_or(if measure == MeasureArg::Min { BackendArg::Oracle } else { BackendArg::Mnp });
            let doc = solve(&g, measure, k, backend, exhaustive_cap, max_iter)?;
            emit(out, &doc)
        }
        Command::Disjoint { input } => {
            let g = load_graph(&input)?;
            let cuts = max_disjoint_mincuts(&g)?;
            emit(out, &json!({ "k_max": cuts.len(), "cuts": cut_list(&cuts) }))
        }
        Command::Enumerate { input, limit, emit: format } => {
            let g = load_graph(&input)?;
            let dag = ClosureDag::from_graph(&g)?;
            match format {
                EmitArg::Dot => {
                    let _ = write!(out, "{}", dag.to_dot());
                    Ok(())
                }
                EmitArg::Json => {
                    let (cuts, truncated) = dag.enumerate_mincuts(limit.unwrap_or(usize::MAX));
                    emit(out, &json!({ "lambda": dag.lambda(), "cuts": cut_list(&cuts), "truncated": truncated }))
                }
            }
        }
        Command::Verify { seed, trials, nmax } => {
            if nmax < 2 {
                return Err(Failure::Usage("--nmax must be at least 2".into()));
            }
            let caps = OracleCaps { disjoint: VERIFY_DISJOINT_CAP, ..caps_from_env()? };
            let report = run_verification(seed, trials, nmax, &caps)?;
            emit(
                out,
                &json!({
                    "seed": seed,
                    "trials": report.trials,
                    "checks": report.checks,
                    "skipped": report.skipped,
                    "failures": report.failures,
                    "passed": report.passed(),
                }),
            )?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
        Command::Gen { model, seed, n, m, format } => {
            let model: Model = model.parse().map_err(Failure::Usage)?;
            let g = gen_random_instance(seed, n, m, model)?;
            let _ = write!(out, "{}", g.serialize(format.into()));
            if format == FormatArg::Json {
                let _ = writeln!(out);
            }
            Ok(())
        }
    }
}

fn solve(
    g: &DirectedGraph,
    measure: MeasureArg,
    k: usize,
    backend: BackendArg,
    exhaustive_cap: usize,
    max_iter: usize,
) -> Result<Value, Failure> {
    let (value, cuts, backend_name) = match backend {
        BackendArg::Oracle => {
            let r = brute_force_diverse(g, k, measure.into(), &caps_from_env()?)?;
            (r.value, r.witness, "oracle")
        }
        BackendArg::Exhaustive | BackendArg::Mnp => {
            let objective = match measure {
                MeasureArg::Sum => Objective::Sum,
                MeasureArg::Cov => Objective::Cov,
                MeasureArg::Min => {
                    return Err(Failure::Usage(
                        "measure `min` is only available with --backend oracle: maximizing the bottleneck \
                         diversity (Min-k-DMC) is NP-hard, so only the exponential brute-force search is exact"
                            .into(),
                    ))
                }
            };
            let (engine, name) = if backend == BackendArg::Exhaustive {
                (Backend::Exhaustive { cap: exhaustive_cap }, "exhaustive")
            } else {
                (Backend::MinNormPoint { max_iter }, "mnp")
            };
            let (c, value) = solve_diverse(g, k, objective, engine)?;
            (value, c.into_cuts(), name)
        }
    };
    Ok(json!({
        "measure": Measure::from(measure).to_string(),
        "k": k,
        "value": value,
        "backend": backend_name,
        "cuts": cut_list(&cuts),
    }))
}

fn cut_list(cuts: &[MinCut]) -> Vec<Vec<usize>> {
    cuts.iter().map(cut_ids).collect()
}

fn emit(out: &mut dyn Write, doc: &Value) -> Result<(), Failure> {
    let _ = writeln!(out, "{doc}");
    Ok(())
}

fn caps_from_env() -> Result<OracleCaps, Failure> {
    let mut caps = OracleCaps::default();
    if let Some(v) = env_number(ENV_CAP_IDEALS)? {
        caps.ideals = usize::try_from(v).map_err(|_| Failure::Usage(format!("{ENV_CAP_IDEALS} is too large")))?;
    }
    if let Some(v) = env_number(ENV_CAP_MULTISETS)? {
        caps.multisets = v;
    }
    Ok(caps)
}

fn env_number(name: &str) -> Result<Option<u128>, Failure> {
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{name} must be a non-negative integer, got `{raw}`"))),
        Err(_) => Ok(None),
    }
}

/// Reads `fixture:<name>` or a file; the format is JSON when the text starts with `{`.
fn load_graph(input: &str) -> Result<DirectedGraph, Failure> {
    if let Some(name) = input.strip_prefix("fixture:") {
        return fixture(name).ok_or_else(|| Failure::Usage(format!("unknown fixture `{name}`")));
    }
    let text = std::fs::read_to_string(Path::new(input))
        .map_err(|e| Failure::Usage(format!("cannot read `{input}`: {e}")))?;
    let format = if text.trim_start().starts_with('{') { GraphFormat::Json } else { GraphFormat::Dimacs };
    Ok(parse_graph(&text, format)?)
}
