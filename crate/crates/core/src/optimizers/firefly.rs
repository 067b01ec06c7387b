//! Discrete firefly moves over edge-indicator vectors.

use rand::Rng;

use super::{clamp_bias, indicator, Search};
use crate::objectives::ObjectiveVector;

/// Number of edges on which two indicator vectors differ.
pub fn hamming_distance(a: &[f64], b: &[f64]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// `base * exp(-absorption * r^2)`.
pub fn attractiveness(base: f64, absorption: f64, r: usize) -> f64 {
    let r = r as f64;
    base * (-absorption * r * r).exp()
}

/// Randomly weighted brightness for the bi-objective firefly:
/// `weight * norm(priority) - (1 - weight) * norm(cost)`, each objective
/// min-max normalized over the population (0.5 when its range is empty).
pub fn scalarize(vectors: &[ObjectiveVector], weight: f64) -> Vec<f64> {
    let normalize = |values: Vec<f64>| -> Vec<f64> {
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let range = hi - lo;
        values
            .into_iter()
            .map(|x| if range > 0.0 { (x - lo) / range } else { 0.5 })
            .collect()
    };
    let priority = normalize(vectors.iter().map(|v| v.priority).collect());
    let cost = normalize(vectors.iter().map(|v| v.cost).collect());
    priority
        .iter()
        .zip(&cost)
        .map(|(p, c)| weight * p - (1.0 - weight) * c)
        .collect()
}

/// Moves every agent toward each strictly brighter agent, then adds a
/// random step whose scale decays geometrically with the iteration.
pub(super) fn update(search: &mut Search<'_>, brightness: &[f64], iteration: usize) {
    let g = search.g;
    let params = search.cfg.fa;
    let step = params.randomization * params.decay.powi(iteration as i32 - 1);
    let positions: Vec<Vec<f64>> = search.agents.iter().map(|a| indicator(g, &a.current)).collect();

    for (i, agent) in search.agents.iter_mut().enumerate() {
        for (j, other) in positions.iter().enumerate() {
            if brightness[j] <= brightness[i] {
                continue;
            }
            let beta = attractiveness(
                params.base_attraction,
                params.absorption,
                hamming_distance(&positions[i], other),
            );
            for e in 0..other.len() {
                agent.edge_bias[e] += beta * (other[e] - positions[i][e]);
            }
        }
        for bias in agent.edge_bias.iter_mut() {
            let u = search.rng.gen::<f64>();
            *bias = clamp_bias(*bias + step * (u - 0.5));
        }
    }
}
