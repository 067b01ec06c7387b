//! Path Priority (maximized) and Oracle Cost (minimized).
//!
//! Priority is the mean per-node brightness `100 / (CC * rand)` over a
//! sequence, where `CC` is the number of decision nodes on the sequence plus
//! one. Oracle cost is `tc / (Bp * MaxPriority)` for a suite of `tc`
//! sequences over a graph with `Bp` transitions.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::StateGraph;
use crate::path::TestSequence;

/// Lower clamp for the random term.
pub const RAND_FLOOR: f64 = 0.01;
pub const RAND_CEIL: f64 = 1.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ObjectiveError {
    #[error("maximum suite priority {0} is not positive")]
    ZeroPriority(f64),
    #[error("oracle cost needs a nonempty suite and at least one transition (tc={tc}, bp={bp})")]
    EmptyContext { tc: usize, bp: usize },
}

/// How the random term of the priority is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandPolicy {
    /// `1 / (N - i + 1) - 0.1` for node `i`, clamped to `[0.01, 1]`.
    #[default]
    PaperFormula,
    /// A fresh uniform draw in `(0, 1]`, clamped the same way.
    SeededUniform,
}

/// Which priority the oracle cost divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostVariant {
    /// Suite maximum; every member of a suite shares one cost.
    #[default]
    MaxPriority,
    /// The sequence's own priority.
    PerPathPriority,
}

/// `(priority, cost)`: priority is maximized, cost minimized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub priority: f64,
    pub cost: f64,
}

impl ObjectiveVector {
    pub fn new(priority: f64, cost: f64) -> Self {
        Self { priority, cost }
    }
}

/// Decision nodes on the sequence, plus one.
pub fn cyclomatic_term(seq: &TestSequence, g: &StateGraph) -> usize {
    seq.nodes().iter().filter(|&&v| g.is_predicate(v)).count() + 1
}

pub fn rand_term<R: Rng + ?Sized>(policy: RandPolicy, node_position: usize, n: usize, rng: &mut R) -> f64 {
    let raw = match policy {
        RandPolicy::PaperFormula => {
            debug_assert!((1..=n).contains(&node_position));
            1.0 / (n as f64 - node_position as f64 + 1.0) - 0.1
        }
        RandPolicy::SeededUniform => 1.0 - rng.gen::<f64>(),
    };
    raw.clamp(RAND_FLOOR, RAND_CEIL)
}

/// Mean brightness over the nodes of `seq`.
pub fn path_priority<R: Rng + ?Sized>(seq: &TestSequence, g: &StateGraph, policy: RandPolicy, rng: &mut R) -> f64 {
    let cc = cyclomatic_term(seq, g) as f64;
    let n = g.node_count();
    let total: f64 = seq
        .nodes()
        .iter()
        .map(|&v| 100.0 / (cc * rand_term(policy, v, n, rng)))
        .sum();
    total / seq.len() as f64
}

/// Suite-level inputs to the oracle cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorityContext {
    /// Number of sequences in the suite.
    pub tc: usize,
    /// Number of transitions in the graph.
    pub bp: usize,
    /// Highest priority within the suite.
    pub max_priority: f64,
    pub variant: CostVariant,
}

impl PriorityContext {
    pub fn new(tc: usize, bp: usize, max_priority: f64, variant: CostVariant) -> Self {
        Self {
            tc,
            bp,
            max_priority,
            variant,
        }
    }

    /// Context for a suite whose member priorities are `priorities`.
    pub fn for_suite(priorities: &[f64], g: &StateGraph, variant: CostVariant) -> Self {
        let max_priority = priorities.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::new(priorities.len(), g.edge_count(), max_priority, variant)
    }
}

pub fn oracle_cost(seq_priority: f64, ctx: &PriorityContext) -> Result<f64, ObjectiveError> {
    if ctx.tc == 0 || ctx.bp == 0 {
        return Err(ObjectiveError::EmptyContext { tc: ctx.tc, bp: ctx.bp });
    }
    let divisor = match ctx.variant {
        CostVariant::MaxPriority => ctx.max_priority,
        CostVariant::PerPathPriority => seq_priority,
    };
    if !divisor.is_finite() || divisor <= 0.0 {
        return Err(ObjectiveError::ZeroPriority(divisor));
    }
    Ok(ctx.tc as f64 / (ctx.bp as f64 * divisor))
}

pub fn objective_vector<R: Rng + ?Sized>(
    seq: &TestSequence,
    g: &StateGraph,
    ctx: &PriorityContext,
    policy: RandPolicy,
    rng: &mut R,
) -> Result<ObjectiveVector, ObjectiveError> {
    let priority = path_priority(seq, g, policy, rng);
    let cost = oracle_cost(priority, ctx)?;
    Ok(ObjectiveVector { priority, cost })
}

/// Objective vectors for every member of a suite given member priorities,
/// index-aligned with `priorities`.
pub fn suite_vectors(
    priorities: &[f64],
    g: &StateGraph,
    variant: CostVariant,
) -> Result<Vec<ObjectiveVector>, ObjectiveError> {
    let ctx = PriorityContext::for_suite(priorities, g, variant);
    priorities
        .iter()
        .map(|&p| Ok(ObjectiveVector::new(p, oracle_cost(p, &ctx)?)))
        .collect()
}
