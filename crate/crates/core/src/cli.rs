//! Commands behind the `status-logic` binary.
//!
//! Exit codes: `eval` exits 0, 1 or 2 for `T`, `F` or `U`; `run` exits 0
//! when the goal is reached and 1 otherwise; usage, parse and binding
//! errors exit 64.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dsl::{parse_str, BinaryOp, SourceError};
use crate::engine::{Bindings, TraceEvent, TraceFormat, TraceSink};
use crate::sim::{
    coffee_scenario, coffee_world_init, run_with_sink, scenario, CoffeeConfig, CoffeeProfile,
    CoffeeTree, Outcome, SimError,
};
use crate::status::{apply_unary, conj, deferred, disj, disregard, lenient, strict, Status, Unary};

pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "status-logic",
    version,
    about = "Three-valued behavior tree toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the truth tables of every operator.
    Tables,
    /// Evaluate a status expression.
    Eval(EvalArgs),
    /// Run a scenario and stream its trace.
    Run(RunArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Inline expression, e.g. "a && !b".
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub expr: Option<String>,
    /// Read the expression from a file instead.
    #[arg(short, long)]
    pub file: Option<PathBuf>,
    /// Bind an identifier: name=F|U|T|true|false. Repeatable.
    #[arg(short, long = "bind", value_parser = parse_binding)]
    pub bindings: Vec<(String, Status)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormatArg {
    Text,
    Jsonl,
}

impl From<TraceFormatArg> for TraceFormat {
    fn from(f: TraceFormatArg) -> Self {
        match f {
            TraceFormatArg::Text => TraceFormat::Text,
            TraceFormatArg::Jsonl => TraceFormat::Jsonl,
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    pub scenario: String,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_ticks: u64,
    #[arg(long, value_enum, default_value_t = TraceFormatArg::Text)]
    pub trace_format: TraceFormatArg,
    /// Apply a world edit at a tick: TICK:MUTATION. Repeatable.
    #[arg(long = "interfere", value_parser = parse_interference)]
    pub interferences: Vec<(u64, String)>,
    /// Start a coffee scenario from the n-th enumerated state.
    #[arg(long)]
    pub state: Option<usize>,
    /// Print the final world after the summary line.
    #[arg(long)]
    pub print_world: bool,
}

fn parse_binding(s: &str) -> Result<(String, Status), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let status = match value {
        "true" => Status::from_bool(true),
        "false" => Status::from_bool(false),
        other => other.parse().map_err(|e| format!("{e}"))?,
    };
    Ok((name.to_string(), status))
}

fn parse_interference(s: &str) -> Result<(u64, String), String> {
    let (tick, name) = s
        .split_once(':')
        .ok_or_else(|| format!("expected TICK:MUTATION, got {s:?}"))?;
    let tick = tick.parse().map_err(|_| format!("bad tick {tick:?}"))?;
    Ok((tick, name.to_string()))
}

/// Exit code for an evaluated status.
pub fn status_exit_code(s: Status) -> i32 {
    match s.rank() {
        1 => 0,
        -1 => 1,
        _ => 2,
    }
}

fn binary_table(op: BinaryOp) -> [[Status; 3]; 3] {
    let mut table = [[Status::RUNNING; 3]; 3];
    for (i, x) in Status::ALL.into_iter().enumerate() {
        for (j, y) in Status::ALL.into_iter().enumerate() {
            table[i][j] = match op {
                BinaryOp::Conj => conj(x, &mut deferred(y)),
                BinaryOp::Disj => disj(x, &mut deferred(y)),
                BinaryOp::Lenient => lenient(x, y),
                BinaryOp::Strict => strict(x, y),
                BinaryOp::Disregard => disregard(x, y),
            };
        }
    }
    table
}

/// All five binary tables (rows = x, columns = y, both in F, U, T order),
/// then the unary table.
pub fn cmd_tables() -> String {
    let ops = [
        (BinaryOp::Conj, "conjunction (sequence)"),
        (BinaryOp::Disj, "disjunction (selector)"),
        (BinaryOp::Lenient, "lenient (parallel, any)"),
        (BinaryOp::Strict, "strict (parallel, all)"),
        (BinaryOp::Disregard, "disregard"),
    ];
    let mut out = String::new();
    for (op, title) in ops {
        let _ = writeln!(out, "x {} y  {title}", op.symbol());
        let _ = writeln!(out, "    F U T");
        for (x, row) in Status::ALL.iter().zip(binary_table(op)) {
            let cells: Vec<String> = row.iter().map(Status::to_string).collect();
            let _ = writeln!(out, "{x}   {}", cells.join(" "));
        }
        out.push('\n');
    }
    let _ = writeln!(out, "unary");
    let header: Vec<String> = Unary::ALL
        .iter()
        .map(|op| format!("{}x", op.symbol()))
        .collect();
    let _ = writeln!(out, "x   {}", header.join(" "));
    for x in Status::ALL {
        let cells: Vec<String> = Unary::ALL
            .iter()
            .map(|&op| format!("{} ", apply_unary(op, x)))
            .collect();
        let _ = writeln!(out, "{x}   {}", cells.join(" ").trim_end());
    }
    out
}

/// Parses and evaluates `source` with literal bindings.
pub fn cmd_eval(source: &str, bindings: &[(String, Status)]) -> Result<Status, SourceError> {
    let expr = parse_str(source)?;
    let mut env = Bindings::<()>::new();
    for (name, status) in bindings {
        env = env.value(name.clone(), *status);
    }
    crate::dsl::evaluate(&expr, &mut env, &mut ())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Writes each trace event as soon as it is recorded.
struct WriterSink<'a, W: Write> {
    out: &'a mut W,
    format: TraceFormat,
    error: Option<io::Error>,
}

impl<W: Write> TraceSink for WriterSink<'_, W> {
    fn record(&mut self, event: TraceEvent) {
        if self.error.is_none() {
            if let Err(e) = self.format.write_event(self.out, &event) {
                self.error = Some(e);
            }
        }
    }
}

/// Runs a scenario, streaming its trace and a final summary line to `out`.
pub fn cmd_run(args: &RunArgs, out: &mut impl Write) -> Result<Outcome, CliError> {
    let sc = match args.state {
        None => scenario(&args.scenario)?,
        Some(index) => {
            let tree = match args.scenario.as_str() {
                "coffee-stateless" => CoffeeTree::Stateless,
                "coffee-stateful" => CoffeeTree::Stateful,
                "coffee-naive" => CoffeeTree::Naive,
                other => {
                    // unknown names report the scenario list first
                    scenario(other)?;
                    return Err(CliError::Usage(format!(
                        "--state only applies to coffee scenarios, not `{other}`"
                    )));
                }
            };
            let config = CoffeeConfig::default();
            let world = coffee_world_init(CoffeeProfile::Enumerated(index), &config)?;
            coffee_scenario(tree, world, config)
        }
    };
    let interferences = args
        .interferences
        .iter()
        .map(|(tick, name)| sc.interference(*tick, name))
        .collect::<Result<Vec<_>, _>>()?;

    let mut sink = WriterSink {
        out,
        format: args.trace_format.into(),
        error: None,
    };
    let (outcome, world) = run_with_sink(sc, args.max_ticks, &interferences, &mut sink);
    if let Some(e) = sink.error {
        return Err(e.into());
    }
    writeln!(out, "{outcome}")?;
    if args.print_world {
        write!(out, "{}", world.snapshot())?;
    }
    Ok(outcome)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render().ansi());
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Tables => write!(out, "{}", cmd_tables())
            .map(|_| 0)
            .map_err(CliError::from),
        Command::Eval(args) => run_eval(args, out),
        Command::Run(args) => {
            cmd_run(args, out).map(|outcome| if outcome.is_goal() { 0 } else { 1 })
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run_eval(args: &EvalArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let source = match (&args.expr, &args.file) {
        (Some(expr), _) => expr.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => return Err(CliError::Usage("no expression given".into())),
    };
    let status = cmd_eval(&source, &args.bindings)?;
    writeln!(out, "{status}")?;
    Ok(status_exit_code(status))
}
