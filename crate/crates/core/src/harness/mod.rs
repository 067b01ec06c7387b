//! Experiment runner: graph loading, seeded sweeps, report emission and the
//! `seqswarm` command line.

mod cli;
mod report;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

pub use cli::cli_main;
pub use report::{
    build_report, build_table, emit_run, parse_run, timing_summary, AlgorithmTiming, Cell, Column, ComparisonReport,
    ConvergenceRow, OutputFormat, SizeVerdict, Table, TableKind, TimingSummary, WinnerSummary,
};

use crate::graph::{atm_fixture, GraphError, StateGraph};
use crate::objectives::{CostVariant, RandPolicy};
use crate::optimizers::{
    run, Algorithm, OptimizerError, RunResult, SwarmConfig, DEFAULT_MAX_ITERATIONS, PAPER_SWARM_SIZES, STANDARD_SEEDS,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unsupported output format {0:?} (expected csv, md or json)")]
    UnsupportedFormat(String),
    #[error("invalid experiment: {0}")]
    InvalidSpec(String),
    #[error("cannot load graph {path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
}

/// Where the state graph comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Atm,
    File(PathBuf),
}

impl GraphSource {
    /// `atm` selects the bundled fixture; anything else is a file path.
    pub fn parse(arg: &str) -> Self {
        if arg.eq_ignore_ascii_case("atm") {
            GraphSource::Atm
        } else {
            GraphSource::File(PathBuf::from(arg))
        }
    }

    pub fn load(&self) -> Result<StateGraph, HarnessError> {
        match self {
            GraphSource::Atm => Ok(atm_fixture()),
            GraphSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| HarnessError::Io(format!("cannot read {}: {e}", path.display())))?;
                StateGraph::parse(&text).map_err(|source| HarnessError::Graph {
                    path: path.display().to_string(),
                    source,
                })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            GraphSource::Atm => "atm".into(),
            GraphSource::File(p) => p.display().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub graph: GraphSource,
    pub algorithms: Vec<Algorithm>,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub max_iterations: usize,
    pub rand_policy: RandPolicy,
    pub cost_variant: CostVariant,
    pub format: OutputFormat,
    pub out_dir: Option<PathBuf>,
}

impl Default for ExperimentSpec {
    /// All four algorithms, every standard swarm size, the five standard seeds.
    fn default() -> Self {
        Self {
            graph: GraphSource::Atm,
            algorithms: Algorithm::ALL.to_vec(),
            sizes: PAPER_SWARM_SIZES.to_vec(),
            seeds: STANDARD_SEEDS.to_vec(),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            rand_policy: RandPolicy::default(),
            cost_variant: CostVariant::default(),
            format: OutputFormat::Md,
            out_dir: None,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.algorithms.is_empty() {
            return Err(HarnessError::InvalidSpec("no algorithms selected".into()));
        }
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return Err(HarnessError::InvalidSpec(
                "swarm sizes must be a nonempty list of positive integers".into(),
            ));
        }
        if self.seeds.is_empty() {
            return Err(HarnessError::InvalidSpec("no seeds given".into()));
        }
        if self.max_iterations == 0 {
            return Err(HarnessError::InvalidSpec("iterations must be positive".into()));
        }
        Ok(())
    }

    fn configs(&self) -> Vec<SwarmConfig> {
        let mut out = Vec::new();
        for &alg in &self.algorithms {
            for &n in &self.sizes {
                for &seed in &self.seeds {
                    out.push(
                        SwarmConfig::new(alg, n, seed)
                            .with_max_iterations(self.max_iterations)
                            .with_rand_policy(self.rand_policy)
                            .with_cost_variant(self.cost_variant),
                    );
                }
            }
        }
        out
    }
}

/// Every (algorithm, size, seed) run of the spec, in that nesting order.
/// Runs execute in parallel; the returned order does not depend on
/// scheduling.
pub fn run_sweep(g: &StateGraph, spec: &ExperimentSpec) -> Result<Vec<RunResult>, HarnessError> {
    spec.validate()?;
    let configs = spec.configs();
    log::info!("running {} configurations on {}", configs.len(), spec.graph.name());
    let results: Result<Vec<_>, _> = configs.par_iter().map(|cfg| run(g, cfg)).collect();
    Ok(results?)
}

/// Output of [`replicate_paper`].
#[derive(Debug, Clone)]
pub struct Replication {
    pub report: ComparisonReport,
    pub timing: TimingSummary,
    pub runs: Vec<RunResult>,
}

impl Replication {
    pub fn all_converged(&self) -> bool {
        self.runs.iter().all(|r| r.converged)
    }
}

/// Runs the full sweep and assembles the comparison tables.
pub fn replicate_paper(spec: &ExperimentSpec) -> Result<Replication, HarnessError> {
    let g = spec.graph.load()?;
    let runs = run_sweep(&g, spec)?;
    let report = build_report(&spec.graph.name(), &spec.seeds, &spec.sizes, &runs);
    let timing = timing_summary(&runs);
    Ok(Replication { report, timing, runs })
}

/// Writes rendered files into `dir`, creating it if needed.
pub fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::Io(format!("cannot create {}: {e}", dir.display())))?;
    for (name, body) in files {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(|e| HarnessError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(ExperimentSpec::default().validate().is_ok());
        let spec = ExperimentSpec {
            sizes: vec![],
            ..ExperimentSpec::default()
        };
        assert!(spec.validate().is_err());
        let spec = ExperimentSpec {
            algorithms: vec![],
            ..ExperimentSpec::default()
        };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn format_parsing() {
        assert_eq!("md".parse::<OutputFormat>().unwrap(), OutputFormat::Md);
        assert!(matches!(
            "xml".parse::<OutputFormat>(),
            Err(HarnessError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn sweep_order_is_nested() {
        let spec = ExperimentSpec {
            algorithms: vec![Algorithm::Pso, Algorithm::Fa],
            sizes: vec![3, 5],
            seeds: vec![1, 2],
            ..ExperimentSpec::default()
        };
        let runs = run_sweep(&atm_fixture(), &spec).unwrap();
        let keys: Vec<_> = runs.iter().map(|r| (r.algorithm, r.agents, r.seed)).collect();
        assert_eq!(keys[0], (Algorithm::Pso, 3, 1));
        assert_eq!(keys[1], (Algorithm::Pso, 3, 2));
        assert_eq!(keys[2], (Algorithm::Pso, 5, 1));
        assert_eq!(keys[7], (Algorithm::Fa, 5, 2));
    }
}
