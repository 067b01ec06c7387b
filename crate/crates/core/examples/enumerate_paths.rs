//! Every simple start-to-exit path of the ATM fixture, with the transitions
//! each one contributes.

use std::collections::BTreeSet;

use seqswarm::atm_fixture;
use seqswarm::path::enumerate_all_sequences;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = atm_fixture();
    let all = enumerate_all_sequences(&g)?;
    let mut seen = BTreeSet::new();
    for s in &all {
        let fresh: Vec<_> = s.edges().filter(|e| seen.insert(*e)).collect();
        println!("{:<16} new transitions: {fresh:?}", s.to_string());
    }
    println!(
        "{} paths, {} of {} transitions reached",
        all.len(),
        seen.len(),
        g.edge_count()
    );
    Ok(())
}
