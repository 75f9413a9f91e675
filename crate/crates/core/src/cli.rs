//! The `bacp` command: `solve`, `check`, `oracle` and `gen`.
//!
//! Exit codes: 0 solved (optimal / satisfiable / feasible plan), 1 proven
//! infeasible or violations found, 2 stopped by a search limit, 3 bad input.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::instance::CurriculumInstance;
use crate::model::MatrixOrder;
use crate::oracle::{self, GenParams, OracleResult};
use crate::report::{self, RunRecord, RunStatus};
use crate::search::{self, BoundMode, Decision, SearchConfig, ValueOrder};

pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bacp",
    version,
    about = "Balanced Academic Curriculum Problem solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimize the maximum period load, or answer a decision query.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Check(CheckArgs),
    /// Solve a small instance by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Print a random instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Minimize,
    Decision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VarOrderArg {
    ByCourse,
    ByPeriod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ValueOrderArg {
    ZeroFirst,
    OneFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundModeArg {
    Restart,
    Continue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "minimize")]
    mode: Mode,
    /// Load bound for `--mode decision`.
    #[arg(long)]
    max_load: Option<u32>,
    #[arg(long, value_enum, default_value = "by-period")]
    var_order: VarOrderArg,
    #[arg(long, value_enum, default_value = "one-first")]
    value_order: ValueOrderArg,
    #[arg(long, value_enum, default_value = "restart")]
    bound_mode: BoundModeArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    node_limit: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Write the anytime log (objective,seconds,nodes) here.
    #[arg(long)]
    anytime_log: Option<PathBuf>,
    /// Write the best plan here in solution-file format.
    #[arg(long)]
    solution_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Run all four variable/value order combinations.
    #[arg(long)]
    matrix: bool,
    /// With `--matrix`, run the four configurations on separate threads.
    #[arg(long, requires = "matrix")]
    parallel: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    courses: usize,
    #[arg(long)]
    periods: usize,
    #[arg(long, default_value_t = 1)]
    credit_min: u32,
    #[arg(long, default_value_t = 5)]
    credit_max: u32,
    #[arg(long, default_value_t = 0.2)]
    density: f64,
    #[arg(long, default_value_t = 0.5)]
    slack: f64,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out),
        Command::Check(a) => cmd_check(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
        Command::Gen(a) => cmd_gen(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<i32, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<CurriculumInstance, InputError> {
    CurriculumInstance::parse(&read(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn instance_name(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn config_of(a: &SolveArgs) -> Result<SearchConfig, InputError> {
    let time_limit = match a.time_limit {
        Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(InputError(format!(
                "--time-limit must be positive, got {s}"
            )))
        }
        None => None,
    };
    Ok(SearchConfig {
        var_order: match a.var_order {
            VarOrderArg::ByCourse => MatrixOrder::ByCourse,
            VarOrderArg::ByPeriod => MatrixOrder::ByPeriod,
        },
        value_order: match a.value_order {
            ValueOrderArg::ZeroFirst => ValueOrder::ZeroFirst,
            ValueOrderArg::OneFirst => ValueOrder::OneFirst,
        },
        bound_mode: match a.bound_mode {
            BoundModeArg::Restart => BoundMode::RestartPerBound,
            BoundModeArg::Continue => BoundMode::ContinueInTree,
        },
        node_limit: a.node_limit,
        time_limit,
    })
}

fn emit(records: &[RunRecord], format: Format, out: &mut dyn Write) -> Result<(), InputError> {
    match format {
        Format::Table if records.len() > 1 => {
            write!(out, "{}", report::matrix_table(records))?;
        }
        Format::Table => {
            for r in records {
                write!(out, "{}", report::table(r))?;
            }
        }
        Format::Csv => write!(out, "{}", report::records_to_csv(records)?)?,
        Format::Json => {
            for r in records {
                writeln!(out, "{}", r.to_json()?)?;
            }
        }
    }
    Ok(())
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let name = instance_name(&a.instance);
    let config = config_of(a)?;

    if a.matrix {
        if a.mode == Mode::Decision || a.anytime_log.is_some() || a.solution_out.is_some() {
            return Err(InputError(
                "--matrix only supports minimization without --anytime-log/--solution-out".into(),
            ));
        }
        let configs = SearchConfig::heuristic_matrix(config);
        let results: Vec<_> = if a.parallel {
            std::thread::scope(|s| {
                let handles: Vec<_> = configs
                    .iter()
                    .map(|c| s.spawn(|| search::optimize(&inst, c)))
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("solver thread panicked"))
                    .collect()
            })
        } else {
            configs.iter().map(|c| search::optimize(&inst, c)).collect()
        };
        let records: Vec<RunRecord> = configs
            .iter()
            .zip(&results)
            .map(|(c, r)| RunRecord::from_opt(&name, c, r))
            .collect();
        emit(&records, a.format, out)?;
        return Ok(records
            .iter()
            .map(|r| r.status.exit_code())
            .max()
            .unwrap_or(0));
    }

    let (record, plan) = match a.mode {
        Mode::Minimize => {
            let result = search::optimize(&inst, &config);
            let record = RunRecord::from_opt(&name, &config, &result);
            (record, result.best.map(|s| s.period_of))
        }
        Mode::Decision => {
            let k = a
                .max_load
                .ok_or_else(|| InputError("--mode decision requires --max-load".into()))?;
            let (decision, stats) = search::decide(&inst, k, &config)?;
            let record = RunRecord::from_decision(&name, &config, &decision, &stats);
            let plan = match decision {
                Decision::Sat(sol) => Some(sol.period_of),
                _ => None,
            };
            (record, plan)
        }
    };
    if let Some(path) = &a.anytime_log {
        write_file(path, &report::anytime_csv(&record.anytime))?;
    }
    if let (Some(path), Some(plan)) = (&a.solution_out, &plan) {
        write_file(path, &inst.serialize_solution(plan))?;
    }
    emit(std::slice::from_ref(&record), a.format, out)?;
    Ok(record.status.exit_code())
}

fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let plan = inst
        .parse_solution(&read(&a.solution)?)
        .map_err(|e| InputError(format!("{}: {e}", a.solution.display())))?;
    let violations = inst.check_solution(&plan)?;
    if violations.is_empty() {
        writeln!(out, "feasible")?;
        writeln!(out, "objective {}", inst.objective(&plan)?)?;
        Ok(0)
    } else {
        writeln!(out, "{} violation(s)", violations.len())?;
        for v in &violations {
            writeln!(out, "  {v}")?;
        }
        Ok(1)
    }
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> CmdResult {
    let inst = load_instance(&a.instance)?;
    let result = oracle::brute_force(&inst).map_err(|e| {
        InputError(format!(
            "{e}; enumeration is only for small instances, use `bacp solve` instead"
        ))
    })?;
    match result {
        OracleResult::Optimal {
            objective,
            witness,
            feasible_count,
        } => {
            writeln!(out, "status Optimal")?;
            writeln!(out, "objective {objective}")?;
            writeln!(out, "feasible_count {feasible_count}")?;
            writeln!(out, "witness")?;
            write!(out, "{}", inst.serialize_solution(&witness.period_of))?;
            Ok(RunStatus::Optimal.exit_code())
        }
        OracleResult::Infeasible => {
            writeln!(out, "status Infeasible")?;
            Ok(RunStatus::Infeasible.exit_code())
        }
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> CmdResult {
    let p = GenParams {
        seed: a.seed,
        courses: a.courses,
        periods: a.periods,
        credit_min: a.credit_min,
        credit_max: a.credit_max,
        density: a.density,
        slack: a.slack,
    };
    let inst = oracle::gen_instance(&p)?;
    writeln!(
        out,
        "# generated: seed={} courses={} periods={} credits={}..{} density={} slack={}",
        p.seed, p.courses, p.periods, p.credit_min, p.credit_max, p.density, p.slack
    )?;
    write!(out, "{}", inst.serialize())?;
    Ok(0)
}
