//! Path priority and oracle cost for a hand-picked covering suite, under
//! both rand policies and both cost variants.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqswarm::objectives::{cyclomatic_term, path_priority, suite_vectors};
use seqswarm::{atm_fixture, CostVariant, RandPolicy, TestSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = atm_fixture();
    let suite: Vec<TestSequence> = [
        "1,2,7,8",
        "1,2,3,7,8",
        "1,2,3,5,7",
        "1,2,3,4,7",
        "1,2,3,5,6,7",
        "1,2,4,8",
    ]
    .iter()
    .map(|s| s.parse())
    .collect::<Result<_, _>>()?;

    for policy in [RandPolicy::PaperFormula, RandPolicy::SeededUniform] {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let priorities: Vec<f64> = suite.iter().map(|s| path_priority(s, &g, policy, &mut rng)).collect();
        for variant in [CostVariant::MaxPriority, CostVariant::PerPathPriority] {
            println!("{policy:?} / {variant:?}");
            for (s, v) in suite.iter().zip(suite_vectors(&priorities, &g, variant)?) {
                println!(
                    "  {:<14} CC={} priority {:>9.4} cost {:.4}",
                    s.to_string(),
                    cyclomatic_term(s, &g),
                    v.priority,
                    v.cost
                );
            }
        }
    }
    Ok(())
}
