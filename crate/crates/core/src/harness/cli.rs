use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{emit_run, replicate_paper, write_files, ExperimentSpec, GraphSource, HarnessError, OutputFormat};
use crate::objectives::{CostVariant, RandPolicy};
use crate::optimizers::{run, Algorithm, SwarmConfig, DEFAULT_MAX_ITERATIONS, PAPER_SWARM_SIZES, STANDARD_SEEDS};
use crate::path::enumerate_all_sequences;

const EXIT_OK: i32 = 0;
const EXIT_CONFIG: i32 = 1;
const EXIT_NON_CONVERGENCE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "seqswarm",
    version,
    about = "Swarm-guided test sequence generation from state-transition diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one optimizer configuration and print or write its result.
    Run(RunArgs),
    /// Sweep algorithms x swarm sizes x seeds and emit the comparison tables.
    Replicate(ReplicateArgs),
    /// List every start-to-exit simple path of the graph.
    Oracle(GraphArg),
    /// Check a graph document and print its summary.
    Validate(GraphArg),
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Graph JSON file, or `atm` for the bundled fixture.
    #[arg(long, default_value = "atm")]
    graph: String,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    iterations: u64,
    #[arg(long, value_enum, default_value_t = RandArg::Paper)]
    rand_policy: RandArg,
    #[arg(long, value_enum, default_value_t = CostArg::Max)]
    cost_variant: CostArg,
    /// Output directory; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    agents: u64,
    #[arg(long, default_value_t = STANDARD_SEEDS[0])]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ReplicateArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Algorithms to include (repeatable); all four by default.
    #[arg(long, value_enum)]
    algo: Vec<AlgoArg>,
    /// Comma-separated swarm sizes.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    sizes: Vec<u64>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Md)]
    format: FormatArg,
    #[command(flatten)]
    common: Common,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlgoArg {
    Pso,
    Mopso,
    Fa,
    Mofa,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Pso => Algorithm::Pso,
            AlgoArg::Mopso => Algorithm::Mopso,
            AlgoArg::Fa => Algorithm::Fa,
            AlgoArg::Mofa => Algorithm::Mofa,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RandArg {
    Paper,
    Uniform,
}

impl From<RandArg> for RandPolicy {
    fn from(r: RandArg) -> Self {
        match r {
            RandArg::Paper => RandPolicy::PaperFormula,
            RandArg::Uniform => RandPolicy::SeededUniform,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CostArg {
    Max,
    Perpath,
}

impl From<CostArg> for CostVariant {
    fn from(c: CostArg) -> Self {
        match c {
            CostArg::Max => CostVariant::MaxPriority,
            CostArg::Perpath => CostVariant::PerPathPriority,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Md,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Md => OutputFormat::Md,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn init_logging() {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or("SEQSWARM_LOG", "error"))
        .format_timestamp(None)
        .try_init();
}

/// Entry point of the `seqswarm` binary. Returns the process exit code:
/// 0 on success, 1 on configuration errors, 2 when a run ends without full
/// coverage (reports are still written).
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn dispatch(command: Command) -> Result<i32, HarnessError> {
    match command {
        Command::Oracle(args) => {
            let g = GraphSource::parse(&args.graph).load()?;
            let all = enumerate_all_sequences(&g).map_err(|e| HarnessError::InvalidSpec(e.to_string()))?;
            let mut out = std::io::stdout().lock();
            for seq in &all {
                let _ = writeln!(out, "{seq}");
            }
            Ok(EXIT_OK)
        }
        Command::Validate(args) => {
            let g = GraphSource::parse(&args.graph).load()?;
            println!(
                "valid: {} nodes, {} edges, {} predicate nodes, start {}, exits {:?}",
                g.node_count(),
                g.edge_count(),
                g.predicate_nodes().len(),
                g.start(),
                g.exits()
            );
            Ok(EXIT_OK)
        }
        Command::Run(args) => {
            let source = GraphSource::parse(&args.graph.graph);
            let g = source.load()?;
            let algorithm = Algorithm::from(args.algo);
            let cfg = SwarmConfig::new(algorithm, args.agents as usize, args.seed)
                .with_max_iterations(args.common.iterations as usize)
                .with_rand_policy(args.common.rand_policy.into())
                .with_cost_variant(args.common.cost_variant.into());
            if !cfg.is_standard_size() {
                log::info!(
                    "{} agents is outside the replication sizes {:?}",
                    cfg.agents,
                    PAPER_SWARM_SIZES
                );
            }
            let result = run(&g, &cfg)?;
            let format = OutputFormat::from(args.format);
            let body = emit_run(&result, format);
            match &args.common.out {
                Some(dir) => {
                    let name = format!("run_{}_{}_{}.{}", algorithm, cfg.agents, cfg.seed, format.extension());
                    write_files(dir, &[(name, body)])?;
                }
                None => print!("{body}"),
            }
            if result.converged {
                Ok(EXIT_OK)
            } else {
                eprintln!("warning: coverage incomplete after {} iterations", result.iterations);
                Ok(EXIT_NON_CONVERGENCE)
            }
        }
        Command::Replicate(args) => {
            let defaults = ExperimentSpec::default();
            let spec = ExperimentSpec {
                graph: GraphSource::parse(&args.graph.graph),
                algorithms: if args.algo.is_empty() {
                    defaults.algorithms
                } else {
                    args.algo.iter().map(|&a| a.into()).collect()
                },
                sizes: if args.sizes.is_empty() {
                    defaults.sizes
                } else {
                    args.sizes.iter().map(|&n| n as usize).collect()
                },
                seeds: if args.seeds.is_empty() {
                    defaults.seeds
                } else {
                    args.seeds
                },
                max_iterations: args.common.iterations as usize,
                rand_policy: args.common.rand_policy.into(),
                cost_variant: args.common.cost_variant.into(),
                format: args.format.into(),
                out_dir: args.common.out,
            };
            let replication = replicate_paper(&spec)?;
            let files = replication.report.render(spec.format);
            let timing = serde_json::to_string_pretty(&replication.timing).expect("timing serializes") + "\n";
            match &spec.out_dir {
                Some(dir) => write_files(dir, &[files, vec![("timing.json".to_string(), timing)]].concat())?,
                None => {
                    let mut out = std::io::stdout().lock();
                    for (name, body) in &files {
                        if files.len() > 1 {
                            let _ = writeln!(out, "# {name}");
                        }
                        let _ = write!(out, "{body}");
                        if files.len() > 1 {
                            let _ = writeln!(out);
                        }
                    }
                    eprint!("{timing}");
                }
            }
            if replication.all_converged() {
                Ok(EXIT_OK)
            } else {
                eprintln!("warning: some runs ended without full coverage");
                Ok(EXIT_NON_CONVERGENCE)
            }
        }
    }
}
