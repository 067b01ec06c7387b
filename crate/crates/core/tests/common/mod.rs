#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::RngCore;
use seqswarm::graph::Edge;
use seqswarm::StateGraph;

/// Replays a fixed list of uniform draws. `gen::<f64>()` on this source
/// returns each listed value exactly (for values representable in 53 bits).
pub struct ScriptedRng {
    draws: Vec<f64>,
    next: usize,
}

impl ScriptedRng {
    pub fn new(draws: &[f64]) -> Self {
        Self {
            draws: draws.to_vec(),
            next: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.next
    }
}

impl RngCore for ScriptedRng {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        let u = *self
            .draws
            .get(self.next)
            .unwrap_or_else(|| panic!("script ran out after {} draws", self.draws.len()));
        self.next += 1;
        ((u * (1u64 << 53) as f64) as u64) << 11
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

/// Simple start-to-exit paths by brute force: every ordering of every node
/// subset that begins at the start node, kept when consecutive pairs are
/// edges and the last node is an exit. Exponential; small graphs only.
pub fn brute_force_paths(g: &StateGraph) -> BTreeSet<Vec<usize>> {
    let n = g.node_count();
    let mut out = BTreeSet::new();
    let mut prefix = vec![g.start()];
    extend(g, n, &mut prefix, &mut out);
    out
}

fn extend(g: &StateGraph, n: usize, prefix: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    let last = *prefix.last().unwrap();
    let simple = prefix.windows(2).all(|w| g.edges().contains(&(w[0], w[1])));
    if simple && g.exits().contains(&last) {
        out.insert(prefix.clone());
    }
    for v in 1..=n {
        if !prefix.contains(&v) {
            prefix.push(v);
            extend(g, n, prefix, out);
            prefix.pop();
        }
    }
}

/// The fourteen start-to-exit paths of the ATM fixture, worked out by hand
/// from its transition list.
pub const ATM_PATHS: [&str; 14] = [
    "1,2,3,4,7",
    "1,2,3,4,7,8",
    "1,2,3,4,8",
    "1,2,3,5,6,7",
    "1,2,3,5,6,7,8",
    "1,2,3,5,7",
    "1,2,3,5,7,8",
    "1,2,3,7",
    "1,2,3,7,8",
    "1,2,4,7",
    "1,2,4,7,8",
    "1,2,4,8",
    "1,2,7",
    "1,2,7,8",
];

/// Random acyclic graph: a spanning tree rooted at node 1 (parents have lower
/// ids) plus extra forward edges. Tree leaves are the exits, so every edge
/// lies on some simple start-to-exit path.
pub fn dag_strategy() -> impl Strategy<Value = StateGraph> {
    (2usize..=12)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (2..=n).map(|v| 1..v).collect();
            let extra = proptest::collection::vec((1..=n, 1..=n), 0..2 * n);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: BTreeSet<Edge> = (2..=n).zip(parents).map(|(v, p)| (p, v)).collect();
            let exits: Vec<usize> = (1..=n).filter(|v| !edges.iter().any(|e| e.0 == *v)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a < b));
            StateGraph::new((1..=n).map(|i| format!("s{i}")), edges, 1, exits).expect("valid dag")
        })
}

/// Random graph that may contain cycles and interior exits.
pub fn cyclic_strategy() -> impl Strategy<Value = StateGraph> {
    (2usize..=10)
        .prop_flat_map(|n| {
            let parents: Vec<_> = (2..=n).map(|v| 1..v).collect();
            let extra = proptest::collection::vec((1..=n, 1..=n), 0..3 * n);
            let extra_exits = proptest::collection::vec(1..=n, 0..3);
            (Just(n), parents, extra, extra_exits)
        })
        .prop_map(|(n, parents, extra, extra_exits)| {
            let mut edges: BTreeSet<Edge> = (2..=n).zip(parents).map(|(v, p)| (p, v)).collect();
            let mut exits: BTreeSet<usize> = (1..=n).filter(|v| !edges.iter().any(|e| e.0 == *v)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            exits.extend(extra_exits);
            StateGraph::new((1..=n).map(|i| format!("s{i}")), edges, 1, exits).expect("valid graph")
        })
}
