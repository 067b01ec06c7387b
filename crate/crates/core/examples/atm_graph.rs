//! Prints the ATM fixture: transitions, decision nodes, adjacency and the
//! initial guidance matrix.

use seqswarm::atm_fixture;

fn main() {
    let g = atm_fixture();
    println!(
        "{} states, {} transitions, start {}, exits {:?}",
        g.node_count(),
        g.edge_count(),
        g.start(),
        g.exits()
    );
    for node in g.nodes() {
        let mark = if g.is_predicate(node.id) { " (decision)" } else { "" };
        println!("  {:>2} {}{mark} -> {:?}", node.id, node.label, g.successors(node.id));
    }

    let adj = g.adjacency_matrix();
    println!("\nadjacency");
    for from in 1..=adj.size() {
        let row: Vec<&str> = (1..=adj.size())
            .map(|to| if adj.get(from, to) { "1" } else { "." })
            .collect();
        println!("  {from} {}", row.join(" "));
    }

    let guidance = g.init_guidance();
    println!("\nguidance support: {:?}", guidance.support());
}
