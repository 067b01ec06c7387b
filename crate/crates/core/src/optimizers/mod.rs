//! Search drivers over the discrete sequence space.
//!
//! All four algorithms share one loop. Each iteration every agent walks the
//! graph with guidance scaled by its own edge bias, candidates go through
//! suite admission, the suite and agents are scored, and then the
//! algorithm-specific rule moves the edge biases:
//!
//! * PSO / MOPSO: velocity update toward the personal best and a global best
//!   (MOPSO draws the global best from the Pareto archive).
//! * FA / MOFA: attraction toward every brighter agent, plus a decaying
//!   random step (MOFA ranks brightness by a randomly weighted scalarization).
//!
//! A run stops once the suite covers every transition and nothing has
//! improved for `stagnation_limit` iterations, or at `max_iterations`.

mod config;
mod firefly;
mod swarm;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{
    Algorithm, FaParams, PsoParams, SwarmConfig, DEFAULT_MAX_ITERATIONS, DEFAULT_STAGNATION_LIMIT, PAPER_SWARM_SIZES,
    STANDARD_SEEDS,
};
pub use firefly::{attractiveness, hamming_distance, scalarize};

use crate::graph::{GuidanceMatrix, StateGraph};
use crate::objectives::{
    path_priority, suite_vectors, CostVariant, ObjectiveError, ObjectiveVector, PriorityContext, RandPolicy,
};
use crate::pareto::{dominates, ParetoArchive};
use crate::path::{decay_guidance, walk_with_retry, PathError, PathSuite, TestSequence};

/// Bounds on every edge-bias weight.
pub const BIAS_MIN: f64 = 0.01;
pub const BIAS_MAX: f64 = 100.0;

/// Iterations without suite growth, while coverage is still incomplete,
/// after which every agent's bias and velocity are reinitialized.
pub const RESTART_AFTER: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizerError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("configured algorithm is {actual}, expected {expected}")]
    WrongAlgorithm { expected: Algorithm, actual: Algorithm },
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Objective(#[from] ObjectiveError),
}

/// One agent's state between iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub current: TestSequence,
    pub personal_best: (TestSequence, ObjectiveVector),
    /// Per-edge weights, indexed like [`StateGraph::edges`].
    pub edge_bias: Vec<f64>,
    pub velocity: Vec<f64>,
}

/// Everything one run produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub agents: usize,
    pub seed: u64,
    pub rand_policy: RandPolicy,
    pub cost_variant: CostVariant,
    pub suite: PathSuite,
    /// Objectives of the suite members, index-aligned with `suite`.
    pub objectives: Vec<ObjectiveVector>,
    /// Non-dominated suite members; empty for single-objective runs.
    pub archive: ParetoArchive,
    /// Best priority seen so far, one value per iteration.
    pub trace: Vec<f64>,
    /// Distinct sequences walked during the run, ascending.
    pub evaluated: Vec<TestSequence>,
    pub iterations: usize,
    pub iterations_to_coverage: Option<usize>,
    pub converged: bool,
    pub wall_time: f64,
}

impl RunResult {
    /// The result with `wall_time` zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> RunResult {
        RunResult {
            wall_time: 0.0,
            ..self.clone()
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TestSequence, &ObjectiveVector)> {
        self.suite.iter().zip(&self.objectives)
    }
}

pub fn run_pso(g: &StateGraph, cfg: &SwarmConfig) -> Result<RunResult, OptimizerError> {
    expect_algorithm(cfg, Algorithm::Pso)?;
    Search::new(g, cfg)?.run()
}

pub fn run_mopso(g: &StateGraph, cfg: &SwarmConfig) -> Result<RunResult, OptimizerError> {
    expect_algorithm(cfg, Algorithm::Mopso)?;
    Search::new(g, cfg)?.run()
}

pub fn run_fa(g: &StateGraph, cfg: &SwarmConfig) -> Result<RunResult, OptimizerError> {
    expect_algorithm(cfg, Algorithm::Fa)?;
    Search::new(g, cfg)?.run()
}

pub fn run_mofa(g: &StateGraph, cfg: &SwarmConfig) -> Result<RunResult, OptimizerError> {
    expect_algorithm(cfg, Algorithm::Mofa)?;
    Search::new(g, cfg)?.run()
}

/// Dispatches on `cfg.algorithm`.
pub fn run(g: &StateGraph, cfg: &SwarmConfig) -> Result<RunResult, OptimizerError> {
    Search::new(g, cfg)?.run()
}

fn expect_algorithm(cfg: &SwarmConfig, expected: Algorithm) -> Result<(), OptimizerError> {
    if cfg.algorithm == expected {
        Ok(())
    } else {
        Err(OptimizerError::WrongAlgorithm {
            expected,
            actual: cfg.algorithm,
        })
    }
}

/// Edge-indicator vector of a sequence over `g.edges()`.
pub fn indicator(g: &StateGraph, seq: &TestSequence) -> Vec<f64> {
    let mut out = vec![0.0; g.edge_count()];
    for (a, b) in seq.edges() {
        if let Some(i) = g.edge_index(a, b) {
            out[i] = 1.0;
        }
    }
    out
}

pub(crate) fn clamp_bias(b: f64) -> f64 {
    if b.is_nan() {
        BIAS_MIN
    } else {
        b.clamp(BIAS_MIN, BIAS_MAX)
    }
}

/// Priorities are drawn once per distinct sequence and then reused, so a
/// sequence keeps one priority for the whole run under either rand policy.
struct PriorityCache {
    policy: RandPolicy,
    values: BTreeMap<TestSequence, f64>,
}

impl PriorityCache {
    fn priority<R: Rng + ?Sized>(&mut self, g: &StateGraph, seq: &TestSequence, rng: &mut R) -> f64 {
        if let Some(&p) = self.values.get(seq) {
            return p;
        }
        let p = path_priority(seq, g, self.policy, rng);
        self.values.insert(seq.clone(), p);
        p
    }
}

struct Search<'g> {
    g: &'g StateGraph,
    cfg: SwarmConfig,
    rng: ChaCha8Rng,
    guidance: GuidanceMatrix,
    suite: PathSuite,
    archive: ParetoArchive,
    priorities: PriorityCache,
    evaluated: BTreeSet<TestSequence>,
    agents: Vec<AgentState>,
    trace: Vec<f64>,
}

impl<'g> Search<'g> {
    fn new(g: &'g StateGraph, cfg: &SwarmConfig) -> Result<Self, OptimizerError> {
        cfg.validate()?;
        Ok(Self {
            g,
            cfg: cfg.clone(),
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            guidance: g.init_guidance(),
            suite: PathSuite::new(),
            archive: ParetoArchive::new(cfg.archive_capacity),
            priorities: PriorityCache {
                policy: cfg.rand_policy,
                values: BTreeMap::new(),
            },
            evaluated: BTreeSet::new(),
            agents: Vec::with_capacity(cfg.agents),
            trace: Vec::new(),
        })
    }

    fn run(self) -> Result<RunResult, OptimizerError> {
        self.run_observed(|_, _| {})
    }

    /// `observe` sees the agents after every iteration's update.
    fn run_observed(mut self, mut observe: impl FnMut(usize, &[AgentState])) -> Result<RunResult, OptimizerError> {
        let started = Instant::now();
        let mut iterations_to_coverage = None;
        let mut stagnant = 0;
        let mut without_growth = 0;
        let mut iterations = 0;

        for iteration in 1..=self.cfg.max_iterations {
            iterations = iteration;
            let suite_before = self.suite.len();
            let best_before = self.trace.last().copied();

            let walks = self.move_agents()?;
            let ctx = self.suite_context()?;
            let vectors = walks
                .iter()
                .map(|s| self.vector(s, &ctx))
                .collect::<Result<Vec<_>, _>>()?;
            if self.agents.is_empty() {
                self.spawn_agents(walks, &vectors);
            } else {
                self.update_personal_bests(walks, &vectors);
            }
            if self.cfg.algorithm.is_multi_objective() {
                self.refresh_archive()?;
            }

            match self.cfg.algorithm {
                Algorithm::Pso => swarm::update(&mut self, None),
                Algorithm::Mopso => {
                    let leader = self
                        .archive
                        .select_leader(&mut self.rng)
                        .expect("archive holds the suite's non-dominated members")
                        .sequence
                        .clone();
                    swarm::update(&mut self, Some(leader));
                }
                Algorithm::Fa => {
                    let brightness: Vec<f64> = vectors.iter().map(|v| v.priority).collect();
                    firefly::update(&mut self, &brightness, iteration);
                }
                Algorithm::Mofa => {
                    let weight = self.rng.gen::<f64>();
                    let brightness = scalarize(&vectors, weight);
                    firefly::update(&mut self, &brightness, iteration);
                }
            }

            observe(iteration, &self.agents);

            let best = self
                .evaluated
                .iter()
                .map(|s| self.priorities.values[s])
                .fold(f64::NEG_INFINITY, f64::max);
            self.trace.push(best);

            let complete = self.suite.coverage_complete(self.g);
            if complete && iterations_to_coverage.is_none() {
                iterations_to_coverage = Some(iteration);
            }
            if self.suite.len() == suite_before && best_before == Some(best) {
                stagnant += 1;
            } else {
                stagnant = 0;
            }
            if self.suite.len() == suite_before {
                without_growth += 1;
            } else {
                without_growth = 0;
            }
            if !complete && without_growth >= RESTART_AFTER {
                log::debug!("iteration {iteration}: coverage stalled, reinitializing agent biases");
                for agent in &mut self.agents {
                    agent.edge_bias.fill(1.0);
                    agent.velocity.fill(0.0);
                }
                without_growth = 0;
            }
            if complete && stagnant >= self.cfg.stagnation_limit {
                break;
            }
        }

        self.suite.prune_redundant();
        let objectives = self.suite_objectives()?;
        if self.cfg.algorithm.is_multi_objective() {
            self.refresh_archive()?;
        }
        let converged = self.suite.coverage_complete(self.g);
        if !converged {
            log::warn!(
                "{} with {} agents (seed {}) did not reach full coverage in {} iterations",
                self.cfg.algorithm,
                self.cfg.agents,
                self.cfg.seed,
                iterations
            );
        }
        Ok(RunResult {
            algorithm: self.cfg.algorithm,
            agents: self.cfg.agents,
            seed: self.cfg.seed,
            rand_policy: self.cfg.rand_policy,
            cost_variant: self.cfg.cost_variant,
            suite: self.suite,
            objectives,
            archive: self.archive,
            trace: self.trace,
            evaluated: self.evaluated.into_iter().collect(),
            iterations,
            iterations_to_coverage,
            converged,
            wall_time: started.elapsed().as_secs_f64(),
        })
    }

    /// Each agent walks in turn; accepted walks decay the shared guidance
    /// before the next agent moves.
    fn move_agents(&mut self) -> Result<Vec<TestSequence>, OptimizerError> {
        let mut walks = Vec::with_capacity(self.cfg.agents);
        for k in 0..self.cfg.agents {
            let steering = match self.agents.get(k) {
                Some(agent) => {
                    let bias = &agent.edge_bias;
                    let g = self.g;
                    self.guidance
                        .scaled_by(|a, b| g.edge_index(a, b).map_or(0.0, |i| bias[i]))
                }
                None => self.guidance.clone(),
            };
            let seq = walk_with_retry(self.g, &steering, self.suite.covered_edges(), &mut self.rng)?;
            self.priorities.priority(self.g, &seq, &mut self.rng);
            self.evaluated.insert(seq.clone());
            if self.suite.accept(seq.clone()) {
                decay_guidance(&mut self.guidance, &seq);
            }
            walks.push(seq);
        }
        Ok(walks)
    }

    fn suite_priorities(&mut self) -> Vec<f64> {
        let members: Vec<TestSequence> = self.suite.sequences().to_vec();
        members
            .iter()
            .map(|s| self.priorities.priority(self.g, s, &mut self.rng))
            .collect()
    }

    fn suite_context(&mut self) -> Result<PriorityContext, OptimizerError> {
        let priorities = self.suite_priorities();
        Ok(PriorityContext::for_suite(&priorities, self.g, self.cfg.cost_variant))
    }

    fn suite_objectives(&mut self) -> Result<Vec<ObjectiveVector>, OptimizerError> {
        let priorities = self.suite_priorities();
        Ok(suite_vectors(&priorities, self.g, self.cfg.cost_variant)?)
    }

    fn vector(&self, seq: &TestSequence, ctx: &PriorityContext) -> Result<ObjectiveVector, OptimizerError> {
        let priority = self.priorities.values[seq];
        let cost = crate::objectives::oracle_cost(priority, ctx)?;
        Ok(ObjectiveVector::new(priority, cost))
    }

    /// Rebuilds the archive from the current suite: suite growth changes
    /// `tc`, so stored costs go stale after every admission.
    fn refresh_archive(&mut self) -> Result<(), OptimizerError> {
        let objectives = self.suite_objectives()?;
        self.archive.clear();
        for (seq, v) in self.suite.iter().zip(objectives) {
            self.archive.insert(seq.clone(), v);
        }
        Ok(())
    }

    fn spawn_agents(&mut self, walks: Vec<TestSequence>, vectors: &[ObjectiveVector]) {
        let m = self.g.edge_count();
        self.agents = walks
            .into_iter()
            .zip(vectors)
            .map(|(seq, &v)| AgentState {
                personal_best: (seq.clone(), v),
                current: seq,
                edge_bias: vec![1.0; m],
                velocity: vec![0.0; m],
            })
            .collect();
    }

    fn update_personal_bests(&mut self, walks: Vec<TestSequence>, vectors: &[ObjectiveVector]) {
        let multi = self.cfg.algorithm.is_multi_objective();
        for ((agent, seq), &v) in self.agents.iter_mut().zip(walks).zip(vectors) {
            let best = agent.personal_best.1;
            let replace = if multi {
                if dominates(&v, &best) {
                    true
                } else if dominates(&best, &v) {
                    false
                } else {
                    self.rng.gen::<bool>()
                }
            } else {
                v.priority > best.priority
            };
            if replace {
                agent.personal_best = (seq.clone(), v);
            }
            agent.current = seq;
        }
    }
}
