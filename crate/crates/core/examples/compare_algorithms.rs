use seqswarm::optimizers::{run, STANDARD_SEEDS};
use seqswarm::{atm_fixture, Algorithm, SwarmConfig};

// Same swarm size and seeds for all four optimizers.
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = atm_fixture();
    let agents = 7;
    println!(
        "{:<6} {:>6} {:>10} {:>8} {:>12}",
        "algo", "seed", "coverage@", "suite", "best F1"
    );
    for alg in Algorithm::ALL {
        for seed in STANDARD_SEEDS {
            let r = run(&g, &SwarmConfig::new(alg, agents, seed))?;
            let best = r.objectives.iter().map(|o| o.priority).fold(f64::NAN, f64::max);
            println!(
                "{:<6} {seed:>6} {:>10} {:>8} {best:>12.4}",
                alg.display_name(),
                r.iterations_to_coverage.map_or("-".into(), |i| i.to_string()),
                r.suite.len()
            );
        }
    }
    Ok(())
}
