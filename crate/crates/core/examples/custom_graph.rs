//! Loads a state graph from JSON (a path argument, or a small built-in
//! login flow) and runs MOFA on it.

use seqswarm::harness::{emit_run, OutputFormat};
use seqswarm::optimizers::run;
use seqswarm::path::enumerate_all_sequences;
use seqswarm::{Algorithm, StateGraph, SwarmConfig};

const LOGIN: &str = r#"{
  "nodes": [
    {"id": 10, "label": "login form"},
    {"id": 20, "label": "check credentials"},
    {"id": 30, "label": "two-factor prompt"},
    {"id": 40, "label": "locked out"},
    {"id": 50, "label": "home"}
  ],
  "edges": [[10, 20], [20, 10], [20, 30], [20, 40], [30, 50], [30, 40], [20, 50]],
  "start": 10,
  "exits": [40, 50]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => LOGIN.to_string(),
    };
    let g = StateGraph::parse(&text)?;
    // sequences use dense ids, numbered in document order
    for node in g.nodes() {
        println!("{} = {}", node.id, node.label);
    }
    println!("{} paths in total", enumerate_all_sequences(&g)?.len());
    let r = run(&g, &SwarmConfig::new(Algorithm::Mofa, 5, 3))?;
    print!("{}", emit_run(&r, OutputFormat::Md));
    Ok(())
}
