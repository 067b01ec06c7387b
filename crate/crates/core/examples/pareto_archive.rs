//! Feeds objective vectors into a bounded archive and samples leaders.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use seqswarm::pareto::non_dominated_filter;
use seqswarm::{ObjectiveVector, ParetoArchive, TestSequence};

fn main() {
    let points = [
        ("1,2,7,8", 0.3625, 1.0697),
        ("1,2,3,7,8", 0.3901, 0.2520),
        ("1,2,3,5,7", 0.4313, 1.2820),
        ("1,2,3,4,7", 0.4250, 0.2247),
        ("1,2,3,5,6,7", 0.4143, 1.2977),
        ("1,2,4,8", 0.3625, 0.3518),
    ];
    let mut archive = ParetoArchive::new(4);
    for (s, p, c) in points {
        let kept = archive.insert(s.parse::<TestSequence>().unwrap(), ObjectiveVector::new(p, c));
        println!(
            "insert {s:<12} ({p:.4}, {c:.4}) -> {}",
            if kept { "kept" } else { "dominated" }
        );
    }
    let vs: Vec<_> = points.iter().map(|&(_, p, c)| ObjectiveVector::new(p, c)).collect();
    println!("front: {:?}", non_dominated_filter(&vs));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut picks: BTreeMap<String, usize> = BTreeMap::new();
    for _ in 0..1000 {
        let leader = archive.select_leader(&mut rng).unwrap();
        *picks.entry(leader.sequence.to_string()).or_default() += 1;
    }
    println!("leader picks over 1000 draws: {picks:?}");
}
