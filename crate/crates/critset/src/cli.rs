//! The `critset` command line.
//!
//! Exit codes: 0 on success, 1 on parse or validation failure, 2 when no
//! candidate satisfies the gates.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use critset_core::constraints::ConstraintRegistry;
use critset_core::cost::{CoefficientFn, CostSpec};
use critset_core::ingest::{build_from_log, generate_log};
use critset_core::optimize::{
    anneal_with, evolve_with, exhaustive_search_with, AnnealingSchedule, Evaluator, GaParams,
    SearchResult, DEFAULT_ENUMERATION_CAP,
};
use critset_core::MeasureMode;

use crate::cost_config::parse_cost_config;
use crate::error::{Error, Result};
use crate::graph_file::{parse_graph, write_graph};
use crate::log_csv::{read_log, write_log};
use crate::parallel::Threaded;
use crate::report::{to_json, to_tsv};
use crate::tables::{render_tables, reproduce_tables};

#[derive(Debug, Parser)]
#[command(name = "critset", version, about = "Find critical node subsets of a weighted digraph")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score seed subsets of a graph and print the best candidates.
    Analyze(AnalyzeArgs),
    /// Recompute the worked-example tables on the built-in reference graph.
    Tables,
    /// Build a graph file from a transaction log CSV.
    Ingest {
        #[arg(long)]
        log: PathBuf,
        /// Output graph file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a synthetic transaction log CSV.
    GenLog {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        transactions: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Measure {
    Node,
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Optimizer {
    Exhaustive,
    Sa,
    Ga,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, clap::Args)]
struct AnalyzeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Cost specification file; takes precedence over the inline cost flags.
    #[arg(long)]
    cost: Option<PathBuf>,
    /// Constant beta.
    #[arg(long, conflicts_with = "beta_over_n", allow_hyphen_values = true)]
    beta_const: Option<f64>,
    /// Beta as X/n.
    #[arg(long, allow_hyphen_values = true)]
    beta_over_n: Option<f64>,
    #[arg(long, value_enum)]
    measure: Option<Measure>,
    /// Defaults to exhaustive when the graph is within the enumeration cap, else sa.
    #[arg(long, value_enum)]
    optimizer: Option<Optimizer>,
    /// Gate constraint id (threshold 1); repeatable.
    #[arg(long = "gate")]
    gates: Vec<String>,
    /// Penalty as ID:EPS; repeatable.
    #[arg(long = "penalty", allow_hyphen_values = true)]
    penalties: Vec<String>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long = "top", default_value_t = 10)]
    top: usize,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    enumeration_cap: usize,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_out(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::io(path, e)),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn parse_penalty(arg: &str) -> Result<(String, f64)> {
    let bad = || Error::Core(critset_core::Error::InvalidParameter {
        name: "penalty",
        reason: format!("`{arg}`, expected ID:EPS"),
    });
    let (id, eps) = arg.rsplit_once(':').ok_or_else(bad)?;
    let eps = eps.parse::<f64>().map_err(|_| bad())?;
    if id.is_empty() {
        return Err(bad());
    }
    Ok((id.to_string(), eps))
}

fn cost_spec(args: &AnalyzeArgs, stderr: &mut dyn Write) -> Result<CostSpec> {
    if let Some(path) = &args.cost {
        let inline = args.beta_const.is_some()
            || args.beta_over_n.is_some()
            || args.measure.is_some()
            || !args.gates.is_empty()
            || !args.penalties.is_empty();
        if inline {
            let _ = writeln!(
                stderr,
                "warning: --cost {} given; inline cost flags are ignored",
                path.display()
            );
        }
        return parse_cost_config(&read(path)?);
    }
    let beta = match (args.beta_const, args.beta_over_n) {
        (_, Some(c)) => CoefficientFn::OverN(c),
        (Some(c), None) => CoefficientFn::Constant(c),
        (None, None) => CoefficientFn::Constant(1.0),
    };
    let measure = match args.measure {
        Some(Measure::Edge) => MeasureMode::Edge,
        _ => MeasureMode::Node,
    };
    let mut spec = CostSpec::basic(beta).with_measure(measure);
    for g in &args.gates {
        spec = spec.with_gate(g.clone(), 1.0);
    }
    for p in &args.penalties {
        let (id, eps) = parse_penalty(p)?;
        spec = spec.with_penalty(id, eps);
    }
    spec.validate()?;
    Ok(spec)
}

fn analyze(args: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let graph = parse_graph(&read(&args.graph)?)?;
    let spec = cost_spec(args, stderr)?;
    let registry = ConstraintRegistry::with_builtins();
    let eval = Evaluator::new(&graph, spec, &registry)?;
    let exec = Threaded::new(args.workers);
    let optimizer = args.optimizer.unwrap_or(if graph.node_count() <= args.enumeration_cap {
        Optimizer::Exhaustive
    } else {
        Optimizer::Sa
    });
    let result: SearchResult = match optimizer {
        Optimizer::Exhaustive => {
            exhaustive_search_with(&eval, args.top, args.enumeration_cap, &exec)?
        }
        Optimizer::Sa => anneal_with(
            &eval,
            &AnnealingSchedule::default(),
            args.rng_seed,
            args.top,
            &exec,
        )?,
        Optimizer::Ga => evolve_with(&eval, &GaParams::default(), args.rng_seed, args.top, &exec)?,
    };
    let text = match args.format {
        Format::Tsv => to_tsv(&graph, &result),
        Format::Json => to_json(&graph, &result),
    };
    write_out(None, &text, stdout)
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Analyze(args) => analyze(&args, stdout, stderr),
        Command::Tables => write_out(None, &render_tables(&reproduce_tables()?), stdout),
        Command::Ingest { log, out } => {
            let file = fs::File::open(&log).map_err(|e| Error::io(&log, e))?;
            let records = read_log(file)?;
            let graph = build_from_log(&records)?;
            write_out(out.as_deref(), &write_graph(&graph), stdout)
        }
        Command::GenLog {
            nodes,
            transactions,
            rng_seed,
            out,
        } => {
            let records = generate_log(nodes, transactions, rng_seed)?;
            let mut buf = Vec::new();
            write_log(&records, &mut buf)?;
            write_out(out.as_deref(), &String::from_utf8(buf).expect("csv is utf-8"), stdout)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_infeasible() {
                2
            } else {
                1
            }
        }
    }
}
