//! Builds a covering suite by hand: guided walks, suite admission and
//! guidance decay, with no swarm on top.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqswarm::path::{decay_guidance, walk_with_retry};
use seqswarm::{atm_fixture, PathSuite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = atm_fixture();
    let mut guidance = g.init_guidance();
    let mut suite = PathSuite::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut walks = 0;
    while !suite.coverage_complete(&g) {
        let s = walk_with_retry(&g, &guidance, suite.covered_edges(), &mut rng)?;
        walks += 1;
        if suite.accept(s.clone()) {
            decay_guidance(&mut guidance, &s);
            println!("walk {walks:>2}: accepted {s}");
        }
    }
    let dropped = suite.prune_redundant();
    println!("{} sequences after {walks} walks; pruned {dropped:?}", suite.len());
    println!("guidance on 1->2 is now {:.3}", guidance.weight(1, 2));
    Ok(())
}
