//! One MOPSO run on the ATM fixture, printed as a markdown table.
//!
//! ```text
//! cargo run --example run_mopso -- 10 53
//! ```

use seqswarm::harness::{emit_run, OutputFormat};
use seqswarm::optimizers::run_mopso;
use seqswarm::{atm_fixture, Algorithm, SwarmConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let agents = args.next().map_or(Ok(10), |a| a.parse())?;
    let seed = args.next().map_or(Ok(11), |a| a.parse())?;

    let result = run_mopso(&atm_fixture(), &SwarmConfig::new(Algorithm::Mopso, agents, seed))?;
    print!("{}", emit_run(&result, OutputFormat::Md));
    println!(
        "\ncoverage after {:?} iterations, stopped at {}, {} distinct sequences walked",
        result.iterations_to_coverage,
        result.iterations,
        result.evaluated.len()
    );
    Ok(())
}
