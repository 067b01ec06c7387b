//! The full sweep (4 algorithms, 6 swarm sizes, 5 seeds) rendered as
//! markdown, followed by the timing summary.

use seqswarm::harness::{replicate_paper, ExperimentSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rep = replicate_paper(&ExperimentSpec::default())?;
    print!("{}", rep.report.to_markdown());
    for t in &rep.timing.per_algorithm {
        println!("{}: {} runs, {:.4}s mean", t.algorithm, t.runs, t.mean_seconds);
    }
    Ok(())
}
