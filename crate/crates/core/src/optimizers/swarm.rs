//! Discrete PSO: an agent's position is its latest sequence, its
//! continuous state is a per-edge bias, and the velocity pulls that bias
//! toward the edges of its personal best and of the global best.

use rand::Rng;

use super::{clamp_bias, indicator, Search};
use crate::path::TestSequence;

/// `leader` is the global best; `None` picks the agent with the highest
/// personal-best priority (lowest index on ties).
pub(super) fn update(search: &mut Search<'_>, leader: Option<TestSequence>) {
    let g = search.g;
    let params = search.cfg.pso;
    let global = leader.unwrap_or_else(|| {
        search
            .agents
            .iter()
            .fold(
                None::<&(TestSequence, crate::objectives::ObjectiveVector)>,
                |best, a| match best {
                    Some(b) if b.1.priority >= a.personal_best.1.priority => Some(b),
                    _ => Some(&a.personal_best),
                },
            )
            .expect("swarm has at least one agent")
            .0
            .clone()
    });
    let toward_global = indicator(g, &global);

    for agent in &mut search.agents {
        let here = indicator(g, &agent.current);
        let toward_personal = indicator(g, &agent.personal_best.0);
        for e in 0..here.len() {
            let r1 = search.rng.gen::<f64>();
            let r2 = search.rng.gen::<f64>();
            let v = params.inertia * agent.velocity[e]
                + params.cognitive * r1 * (toward_personal[e] - here[e])
                + params.social * r2 * (toward_global[e] - here[e]);
            agent.velocity[e] = v;
            agent.edge_bias[e] = clamp_bias(agent.edge_bias[e] + v);
        }
    }
}
