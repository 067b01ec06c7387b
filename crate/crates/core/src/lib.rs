//! Swarm-guided generation of non-redundant test sequences from
//! state-transition diagrams.
//!
//! A [`graph::StateGraph`] is walked by swarms of agents; each walk is a
//! candidate [`path::TestSequence`] from the start state to an exit. Walks
//! that cover a new transition join the [`path::PathSuite`]. Sequences are
//! scored on two competing objectives, Path Priority (maximized) and Oracle
//! Cost (minimized), and the multi-objective drivers keep a
//! [`pareto::ParetoArchive`] of the non-dominated ones.
//!
//! ```
//! use seqswarm::graph::atm_fixture;
//! use seqswarm::optimizers::{run_mopso, Algorithm, SwarmConfig};
//!
//! let g = atm_fixture();
//! let result = run_mopso(&g, &SwarmConfig::new(Algorithm::Mopso, 10, 11)).unwrap();
//! assert!(result.converged);
//! assert!(result.suite.coverage_complete(&g));
//! ```

pub mod graph;
pub mod harness;
pub mod objectives;
pub mod optimizers;
pub mod pareto;
pub mod path;

pub use graph::{atm_fixture, GraphError, StateGraph};
pub use objectives::{CostVariant, ObjectiveVector, RandPolicy};
pub use optimizers::{Algorithm, RunResult, SwarmConfig};
pub use pareto::ParetoArchive;
pub use path::{PathSuite, TestSequence};
