//! `swknot` command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad knot data, non-fibered
//! input without `--force`, failed wall-crossing check), 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::classify::{self, Outcome, Verdict};
use crate::knots::{self, BraidWord, KnotInput, KnotSource, SeifertMatrix, TableRow};
use crate::laurent::LaurentPoly;
use crate::swseries::{self, SWSeries};

/// Environment variable naming a default knot table (CSV).
pub const TABLE_ENV: &str = "SWKNOT_TABLE";

#[derive(Debug, Parser)]
#[command(name = "swknot", version, about = "Seiberg-Witten invariants of knot-surgered elliptic surfaces E(1)_K")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalized Alexander polynomial of a knot.
    Alex(InputArgs),
    /// Small-perturbation SW invariant of E(1)_K.
    Sw {
        #[command(flatten)]
        input: InputArgs,
        /// Skip the fiberedness screen.
        #[arg(long)]
        force: bool,
    },
    /// Classify E(1)_K.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Report non-fibered input as NOT_APPLICABLE instead of failing.
        #[arg(long)]
        force: bool,
    },
    /// Check SW+ - SW- = -1 on every class λ[T] with odd |λ| <= window.
    Wallcross {
        #[command(flatten)]
        input: InputArgs,
        /// Truncation window for the chamber series (default 4g + 5).
        #[arg(long)]
        window: Option<i64>,
    },
    /// Find a torus knot with the same Alexander polynomial.
    TorusMatch(InputArgs),
    /// SW invariant of the Dolgachev surface E(1;p,q).
    Dolgachev {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Classify every row of a knot table, writing JSON lines.
    Batch {
        /// Knot table CSV (`name,braid_word,alexander`); defaults to
        /// $SWKNOT_TABLE, then the built-in table.
        csv: Option<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(id = "source", required = true, multiple = false)]
struct SourceArgs {
    /// Braid word, e.g. "1 -2 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    braid: Option<String>,
    /// Seifert matrix, e.g. "[[-1,1],[0,-1]]".
    #[arg(long, allow_hyphen_values = true)]
    seifert: Option<String>,
    /// Alexander polynomial, e.g. "t^-1 - 1 + t".
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Name of a knot in the knot table.
    #[arg(long)]
    knot: Option<String>,
}

#[derive(Debug, Args)]
struct InputArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Strand count for --braid (default: max |index| + 1).
    #[arg(long)]
    strands: Option<usize>,
    /// Name reported in the output.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Io(io::Error),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(e)
}

type CliResult = Result<(), CliError>;

/// Per-outcome counts for a batch run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub total: usize,
    pub rational_or_ruled: usize,
    pub dolgachev: usize,
    pub minimal_non_complex: usize,
    pub errors: usize,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    if let Err(e) = validate(&cli) {
        let _ = write!(err, "{}", e.render());
        return e.exit_code();
    }
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(CliError::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn input_args(command: &Command) -> Option<&InputArgs> {
    match command {
        Command::Alex(input) | Command::TorusMatch(input) => Some(input),
        Command::Sw { input, .. } | Command::Classify { input, .. } | Command::Wallcross { input, .. } => Some(input),
        Command::Dolgachev { .. } | Command::Batch { .. } => None,
    }
}

/// Cross-flag checks clap cannot express across the flattened source group.
fn validate(cli: &Cli) -> Result<(), clap::Error> {
    if let Some(input) = input_args(&cli.command) {
        if input.strands.is_some() && input.source.braid.is_none() {
            return Err(Cli::command().error(ErrorKind::MissingRequiredArgument, "--strands requires --braid"));
        }
    }
    Ok(())
}

fn load_table(path: Option<&Path>) -> Result<Vec<TableRow>, CliError> {
    let env_path = std::env::var_os(TABLE_ENV).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(env_path) {
        Some(p) => Ok(knots::read_table_file(&p)?),
        None => Ok(knots::builtin_table()),
    }
}

fn resolve(input: &InputArgs) -> Result<KnotInput, CliError> {
    let src = &input.source;
    let mut knot = if let Some(w) = &src.braid {
        KnotInput::new("K", KnotSource::Braid(BraidWord::parse(w, input.strands)?))
    } else if let Some(m) = &src.seifert {
        KnotInput::new("K", KnotSource::Seifert(SeifertMatrix::parse(m)?))
    } else if let Some(d) = &src.delta {
        KnotInput::new("K", KnotSource::Polynomial(d.parse::<LaurentPoly>()?))
    } else if let Some(name) = &src.knot {
        let table = load_table(None)?;
        knots::lookup(&table, name)?.to_input()?
    } else {
        unreachable!("clap enforces exactly one source")
    };
    if let Some(name) = &input.name {
        knot.name = name.clone();
    }
    Ok(knot)
}

fn not_fibered(delta: &LaurentPoly) -> CliError {
    CliError::Domain(format!(
        "not fibered-screened: Alexander polynomial {delta} has leading coefficient {}, not +1 or -1 (use --force to override)",
        delta.leading_coeff().unwrap_or(0)
    ))
}

fn write_series(out: &mut dyn Write, sw: &SWSeries, as_json: bool) -> CliResult {
    if as_json {
        writeln!(out, "{}", serde_json::to_string(&sw.records())?).map_err(io_err)
    } else {
        writeln!(out, "{sw}").map_err(io_err)
    }
}

fn write_verdict_text(out: &mut dyn Write, v: &Verdict) -> io::Result<()> {
    writeln!(out, "knot: {}", v.knot_name)?;
    writeln!(out, "alexander: {}", v.delta)?;
    writeln!(out, "sw: {}", v.sw)?;
    writeln!(out, "outcome: {}", v.outcome)?;
    writeln!(out, "minimal: {}", v.minimal)?;
    writeln!(out, "evidence:")?;
    for rule in &v.evidence {
        writeln!(out, "  - {rule}")?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult {
    let as_json = cli.json;
    match &cli.command {
        Command::Alex(input) => {
            let knot = resolve(input)?;
            let delta = knot.alexander()?;
            if as_json {
                writeln!(out, "{}", json!({ "name": knot.name, "alexander": delta })).map_err(io_err)
            } else {
                writeln!(out, "{delta}").map_err(io_err)
            }
        }
        Command::Sw { input, force } => {
            let delta = resolve(input)?.alexander()?;
            let sw = if knots::is_fibered_candidate(&delta) {
                swseries::sw_small_perturbation(&delta)?
            } else if *force {
                swseries::sw_small_perturbation_unscreened(&delta)?
            } else {
                return Err(not_fibered(&delta));
            };
            write_series(out, &sw, as_json)
        }
        Command::Classify { input, force } => {
            let verdict = classify::classify(&resolve(input)?)?;
            if matches!(verdict.outcome, Outcome::NotApplicable { .. }) && !force {
                return Err(not_fibered(&verdict.delta));
            }
            if as_json {
                writeln!(out, "{}", verdict.to_json_string()).map_err(io_err)
            } else {
                write_verdict_text(out, &verdict).map_err(io_err)
            }
        }
        Command::Wallcross { input, window } => {
            let delta = resolve(input)?.alexander()?;
            if !knots::is_fibered_candidate(&delta) {
                return Err(not_fibered(&delta));
            }
            let window = window.unwrap_or_else(|| swseries::default_window(&delta));
            let report = swseries::wall_crossing_check(&delta, window)?;
            if as_json {
                let violation = report.first_violation.map(|v| {
                    json!({ "lambda": v.lambda, "plus": v.plus, "minus": v.minus, "expected": v.expected })
                });
                let line = json!({
                    "alexander": delta,
                    "window": report.window,
                    "checked": report.checked,
                    "holds": report.holds(),
                    "violation": violation,
                });
                writeln!(out, "{line}").map_err(io_err)?;
            }
            match report.first_violation {
                None => {
                    if !as_json {
                        writeln!(
                            out,
                            "wall crossing holds: SW+ - SW- = -1 for all {} classes with odd |lambda| <= {}",
                            report.checked, report.window
                        )
                        .map_err(io_err)?;
                    }
                    Ok(())
                }
                Some(v) => Err(CliError::Domain(format!(
                    "wall crossing fails at lambda = {}: SW+ = {}, SW- = {}, expected difference {}",
                    v.lambda, v.plus, v.minus, v.expected
                ))),
            }
        }
        Command::TorusMatch(input) => {
            let delta = resolve(input)?.alexander()?;
            let m = knots::match_torus(&delta);
            if as_json {
                writeln!(out, "{}", json!({ "alexander": delta, "match": m })).map_err(io_err)
            } else {
                match m {
                    Some((p, q)) => writeln!(out, "T({p},{q})"),
                    None => writeln!(out, "no match"),
                }
                .map_err(io_err)
            }
        }
        Command::Dolgachev { p, q } => write_series(out, &classify::dolgachev_series(*p, *q)?, as_json),
        Command::Batch { csv, out: out_path } => {
            let rows = load_table(csv.as_deref())?;
            let (lines, summary) = batch(&rows);
            let summary_line = serde_json::to_string(&summary)?;
            match out_path {
                Some(path) => {
                    let mut buf = String::new();
                    for line in lines.iter().chain(std::iter::once(&summary_line)) {
                        buf.push_str(line);
                        buf.push('\n');
                    }
                    fs::write(path, buf).map_err(io_err)?;
                    writeln!(out, "{summary_line}").map_err(io_err)
                }
                None => {
                    for line in lines.iter().chain(std::iter::once(&summary_line)) {
                        writeln!(out, "{line}").map_err(io_err)?;
                    }
                    Ok(())
                }
            }
        }
    }
}

fn classify_row(row: &TableRow) -> Result<Verdict, String> {
    let input = row.to_input().map_err(|e| e.to_string())?;
    let verdict = classify::classify(&input).map_err(|e| e.to_string())?;
    match &verdict.outcome {
        Outcome::NotApplicable { reason } => Err(reason.clone()),
        _ => Ok(verdict),
    }
}

/// Classifies every row (in parallel) and returns one JSON line per row in
/// input order, plus the summary. Row failures become `{name, error}` lines.
pub fn batch(rows: &[TableRow]) -> (Vec<String>, BatchSummary) {
    let results: Vec<Result<Verdict, String>> = rows.par_iter().map(classify_row).collect();
    let mut summary = BatchSummary { total: rows.len(), ..Default::default() };
    let lines = rows
        .iter()
        .zip(&results)
        .map(|(row, res)| match res {
            Ok(v) => {
                match v.outcome {
                    Outcome::RationalOrRuled => summary.rational_or_ruled += 1,
                    Outcome::Dolgachev { .. } => summary.dolgachev += 1,
                    Outcome::MinimalNonComplex => summary.minimal_non_complex += 1,
                    Outcome::NotApplicable { .. } => unreachable!("filtered in classify_row"),
                }
                v.to_json_string()
            }
            Err(e) => {
                summary.errors += 1;
                json!({ "name": row.name, "error": e }).to_string()
            }
        })
        .collect();
    (lines, summary)
}
