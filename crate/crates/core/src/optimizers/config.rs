use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::objectives::{CostVariant, RandPolicy};
use crate::pareto::DEFAULT_ARCHIVE_CAPACITY;

use super::OptimizerError;

/// Swarm sizes used for the replication sweep.
pub const PAPER_SWARM_SIZES: [usize; 6] = [3, 5, 7, 10, 15, 20];

/// Seeds for the five runs per swarm size.
pub const STANDARD_SEEDS: [u64; 5] = [11, 23, 37, 53, 71];

pub const DEFAULT_MAX_ITERATIONS: usize = 200;

/// Iterations without improvement, after full coverage, before a run stops.
pub const DEFAULT_STAGNATION_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Pso,
    Mopso,
    Fa,
    Mofa,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [Algorithm::Pso, Algorithm::Mopso, Algorithm::Fa, Algorithm::Mofa];

    pub fn is_multi_objective(self) -> bool {
        matches!(self, Algorithm::Mopso | Algorithm::Mofa)
    }

    pub fn is_firefly(self) -> bool {
        matches!(self, Algorithm::Fa | Algorithm::Mofa)
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pso => "pso",
            Algorithm::Mopso => "mopso",
            Algorithm::Fa => "fa",
            Algorithm::Mofa => "mofa",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Algorithm::Pso => "PSO",
            Algorithm::Mopso => "MOPSO",
            Algorithm::Fa => "FA",
            Algorithm::Mofa => "MOFA",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algorithm {s:?} (expected pso, mopso, fa or mofa)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.7,
            cognitive: 1.5,
            social: 1.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaParams {
    /// Attractiveness at distance zero.
    pub base_attraction: f64,
    /// Light absorption coefficient.
    pub absorption: f64,
    /// Random step scale.
    pub randomization: f64,
    /// Per-iteration multiplier on the random step.
    pub decay: f64,
}

impl Default for FaParams {
    fn default() -> Self {
        Self {
            base_attraction: 1.0,
            absorption: 1.0,
            randomization: 0.2,
            decay: 0.97,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmConfig {
    pub algorithm: Algorithm,
    pub agents: usize,
    pub max_iterations: usize,
    pub stagnation_limit: usize,
    pub seed: u64,
    pub rand_policy: RandPolicy,
    pub cost_variant: CostVariant,
    pub archive_capacity: usize,
    pub pso: PsoParams,
    pub fa: FaParams,
}

impl SwarmConfig {
    pub fn new(algorithm: Algorithm, agents: usize, seed: u64) -> Self {
        Self {
            algorithm,
            agents,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            stagnation_limit: DEFAULT_STAGNATION_LIMIT,
            seed,
            rand_policy: RandPolicy::default(),
            cost_variant: CostVariant::default(),
            archive_capacity: DEFAULT_ARCHIVE_CAPACITY,
            pso: PsoParams::default(),
            fa: FaParams::default(),
        }
    }

    pub fn with_max_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_rand_policy(mut self, policy: RandPolicy) -> Self {
        self.rand_policy = policy;
        self
    }

    pub fn with_cost_variant(mut self, variant: CostVariant) -> Self {
        self.cost_variant = variant;
        self
    }

    /// True when the swarm size is one of [`PAPER_SWARM_SIZES`].
    pub fn is_standard_size(&self) -> bool {
        PAPER_SWARM_SIZES.contains(&self.agents)
    }

    pub fn validate(&self) -> Result<(), OptimizerError> {
        let bad = |msg: String| Err(OptimizerError::InvalidConfig(msg));
        if self.agents == 0 {
            return bad("agents must be positive".into());
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be positive".into());
        }
        if self.archive_capacity == 0 {
            return bad("archive_capacity must be positive".into());
        }
        let coefficients = [
            ("inertia", self.pso.inertia),
            ("cognitive", self.pso.cognitive),
            ("social", self.pso.social),
            ("base_attraction", self.fa.base_attraction),
            ("absorption", self.fa.absorption),
            ("randomization", self.fa.randomization),
            ("decay", self.fa.decay),
        ];
        for (name, value) in coefficients {
            if !value.is_finite() || value < 0.0 {
                return bad(format!("{name} must be finite and non-negative, got {value}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cfg = SwarmConfig::new(Algorithm::Mopso, 10, 11);
        assert_eq!(cfg.max_iterations, 200);
        assert_eq!(cfg.pso.inertia, 0.7);
        assert_eq!(cfg.fa.decay, 0.97);
        assert!(cfg.is_standard_size());
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(SwarmConfig::new(Algorithm::Pso, 0, 1).validate().is_err());
        let mut cfg = SwarmConfig::new(Algorithm::Fa, 3, 1);
        cfg.fa.absorption = -1.0;
        assert!(cfg.validate().is_err());
        cfg.fa.absorption = f64::NAN;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("aco".parse::<Algorithm>().is_err());
    }
}
