//! State-transition diagrams and the matrices derived from them.
//!
//! Node ids are dense, 1-based integers. Whatever ids a graph document uses,
//! they are renumbered to `1..=N` in document order; the original id is
//! kept only through the node label.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A directed transition `(from, to)` between two dense node ids.
pub type Edge = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    MalformedDocument(String),
    #[error("edge {from}->{to} references an unknown node")]
    DanglingEdge { from: u64, to: u64 },
    #[error("{role} node {id} is not declared")]
    UnknownNode { role: &'static str, id: u64 },
    #[error("node {0} is not reachable from the start node")]
    UnreachableNode(u64),
    #[error("no exit node is reachable from node {0}")]
    NoExitReachable(u64),
    #[error("graph has no nodes or no edges")]
    EmptyGraph,
    #[error("graph declares no exit nodes")]
    MissingExits,
    #[error("self-loop on node {0}")]
    SelfLoop(u64),
    #[error("duplicate edge {from}->{to}")]
    DuplicateEdge { from: u64, to: u64 },
}

/// A node of the diagram. The label carries no semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    #[serde(default)]
    pub label: String,
}

/// A validated state-transition diagram.
///
/// Every node is reachable from `start`, every node can reach an exit, and
/// there are no self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateGraph {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    start: usize,
    exits: BTreeSet<usize>,
    successors: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphDocument {
    nodes: Vec<DocumentNode>,
    edges: Vec<(u64, u64)>,
    start: u64,
    exits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct DocumentNode {
    id: u64,
    #[serde(default)]
    label: String,
}

impl StateGraph {
    /// Builds a graph over dense ids `1..=labels.len()`.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = Edge>,
        start: usize,
        exits: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let nodes: Vec<Node> = labels
            .into_iter()
            .enumerate()
            .map(|(i, label)| Node {
                id: i + 1,
                label: label.into(),
            })
            .collect();
        let n = nodes.len();
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let in_range = |id: usize| (1..=n).contains(&id);

        let mut edge_set = BTreeSet::new();
        for (from, to) in edges {
            if !in_range(from) || !in_range(to) {
                return Err(GraphError::DanglingEdge {
                    from: from as u64,
                    to: to as u64,
                });
            }
            if from == to {
                return Err(GraphError::SelfLoop(from as u64));
            }
            if !edge_set.insert((from, to)) {
                return Err(GraphError::DuplicateEdge {
                    from: from as u64,
                    to: to as u64,
                });
            }
        }
        if edge_set.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        if !in_range(start) {
            return Err(GraphError::UnknownNode {
                role: "start",
                id: start as u64,
            });
        }
        let exits: BTreeSet<usize> = exits.into_iter().collect();
        if exits.is_empty() {
            return Err(GraphError::MissingExits);
        }
        if let Some(&bad) = exits.iter().find(|&&e| !in_range(e)) {
            return Err(GraphError::UnknownNode {
                role: "exit",
                id: bad as u64,
            });
        }

        let edges: Vec<Edge> = edge_set.into_iter().collect();
        let mut successors = vec![Vec::new(); n + 1];
        let mut predecessors = vec![Vec::new(); n + 1];
        for &(from, to) in &edges {
            successors[from].push(to);
            predecessors[to].push(from);
        }

        let forward = reach(start..=start, &successors);
        if let Some(v) = (1..=n).find(|&v| !forward[v]) {
            return Err(GraphError::UnreachableNode(v as u64));
        }
        let backward = reach(exits.iter().copied(), &predecessors);
        if let Some(v) = (1..=n).find(|&v| !backward[v]) {
            return Err(GraphError::NoExitReachable(v as u64));
        }

        Ok(Self {
            nodes,
            edges,
            start,
            exits,
            successors,
        })
    }

    /// Parses the JSON graph format. Key order is irrelevant; node ids may be
    /// any distinct integers and are renumbered in the order they are listed.
    pub fn parse(document: &str) -> Result<Self, GraphError> {
        let doc: GraphDocument =
            serde_json::from_str(document).map_err(|e| GraphError::MalformedDocument(e.to_string()))?;
        if doc.nodes.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut dense = HashMap::with_capacity(doc.nodes.len());
        for (i, node) in doc.nodes.iter().enumerate() {
            if dense.insert(node.id, i + 1).is_some() {
                return Err(GraphError::MalformedDocument(format!("duplicate node id {}", node.id)));
            }
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for &(from, to) in &doc.edges {
            match (dense.get(&from), dense.get(&to)) {
                (Some(&a), Some(&b)) => edges.push((a, b)),
                _ => return Err(GraphError::DanglingEdge { from, to }),
            }
        }
        let start = *dense.get(&doc.start).ok_or(GraphError::UnknownNode {
            role: "start",
            id: doc.start,
        })?;
        let exits = doc
            .exits
            .iter()
            .map(|id| {
                dense
                    .get(id)
                    .copied()
                    .ok_or(GraphError::UnknownNode { role: "exit", id: *id })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let original: Vec<u64> = doc.nodes.iter().map(|n| n.id).collect();
        Self::new(doc.nodes.into_iter().map(|n| n.label), edges, start, exits).map_err(|e| e.renumbered(&original))
    }

    /// Serializes to the JSON graph format, keys in `nodes, edges, start, exits` order.
    pub fn to_json(&self) -> String {
        let doc = GraphDocument {
            nodes: self
                .nodes
                .iter()
                .map(|n| DocumentNode {
                    id: n.id as u64,
                    label: n.label.clone(),
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| (a as u64, b as u64)).collect(),
            start: self.start as u64,
            exits: self.exits.iter().map(|&e| e as u64).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph document serializes")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of transitions (the branch count used by the oracle cost).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Edges in ascending `(from, to)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn exits(&self) -> &BTreeSet<usize> {
        &self.exits
    }

    pub fn is_exit(&self, node: usize) -> bool {
        self.exits.contains(&node)
    }

    /// Successors of `node` in ascending order.
    pub fn successors(&self, node: usize) -> &[usize] {
        self.successors.get(node).map_or(&[], Vec::as_slice)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.successors(from).contains(&to)
    }

    /// Position of an edge in [`StateGraph::edges`].
    pub fn edge_index(&self, from: usize, to: usize) -> Option<usize> {
        self.edges.binary_search(&(from, to)).ok()
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.successors(node).len()
    }

    pub fn is_predicate(&self, node: usize) -> bool {
        self.out_degree(node) > 1
    }

    /// Decision nodes: every node with more than one outgoing transition.
    pub fn predicate_nodes(&self) -> BTreeSet<usize> {
        (1..=self.node_count()).filter(|&v| self.is_predicate(v)).collect()
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.node_count();
        let mut cells = vec![false; n * n];
        for &(from, to) in &self.edges {
            cells[(from - 1) * n + (to - 1)] = true;
        }
        AdjacencyMatrix { n, cells }
    }

    /// Guidance weights start at 1.0 on every transition.
    pub fn init_guidance(&self) -> GuidanceMatrix {
        let n = self.node_count();
        let mut weights = vec![0.0; n * n];
        for &(from, to) in &self.edges {
            weights[(from - 1) * n + (to - 1)] = 1.0;
        }
        GuidanceMatrix { n, weights }
    }
}

impl GraphError {
    fn renumbered(self, original: &[u64]) -> Self {
        let map = |id: u64| original.get((id as usize).wrapping_sub(1)).copied().unwrap_or(id);
        match self {
            GraphError::UnreachableNode(v) => GraphError::UnreachableNode(map(v)),
            GraphError::NoExitReachable(v) => GraphError::NoExitReachable(map(v)),
            GraphError::SelfLoop(v) => GraphError::SelfLoop(map(v)),
            GraphError::DuplicateEdge { from, to } => GraphError::DuplicateEdge {
                from: map(from),
                to: map(to),
            },
            other => other,
        }
    }
}

fn reach(seeds: impl IntoIterator<Item = usize>, links: &[Vec<usize>]) -> Vec<bool> {
    let mut seen = vec![false; links.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &links[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// `N x N` transition indicator, indexed with 1-based node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    cells: Vec<bool>,
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, from: usize, to: usize) -> bool {
        from >= 1 && to >= 1 && from <= self.n && to <= self.n && self.cells[(from - 1) * self.n + (to - 1)]
    }

    pub fn true_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn row_count(&self, from: usize) -> usize {
        (1..=self.n).filter(|&to| self.get(from, to)).count()
    }

    pub fn column_count(&self, to: usize) -> usize {
        (1..=self.n).filter(|&from| self.get(from, to)).count()
    }

    /// Edge set recovered from the matrix, ascending.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for from in 1..=self.n {
            for to in 1..=self.n {
                if self.get(from, to) {
                    out.push((from, to));
                }
            }
        }
        out
    }
}

/// Non-negative steering weights, nonzero only on existing transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct GuidanceMatrix {
    n: usize,
    weights: Vec<f64>,
}

impl GuidanceMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn weight(&self, from: usize, to: usize) -> f64 {
        if from == 0 || to == 0 || from > self.n || to > self.n {
            return 0.0;
        }
        self.weights[(from - 1) * self.n + (to - 1)]
    }

    /// Multiplies the weight of an existing transition. Weights on
    /// non-transitions stay zero.
    pub fn scale(&mut self, from: usize, to: usize, factor: f64, floor: f64) {
        let idx = (from - 1) * self.n + (to - 1);
        if self.weights[idx] > 0.0 {
            self.weights[idx] = (self.weights[idx] * factor).max(floor);
        }
    }

    /// Elementwise product with a per-transition factor.
    pub fn scaled_by(&self, factor: impl Fn(usize, usize) -> f64) -> GuidanceMatrix {
        let mut out = self.clone();
        for from in 1..=self.n {
            for to in 1..=self.n {
                let idx = (from - 1) * self.n + (to - 1);
                if out.weights[idx] > 0.0 {
                    out.weights[idx] *= factor(from, to).max(0.0);
                }
            }
        }
        out
    }

    /// Transitions with positive weight, ascending.
    pub fn support(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for from in 1..=self.n {
            for to in 1..=self.n {
                if self.weight(from, to) > 0.0 {
                    out.push((from, to));
                }
            }
        }
        out
    }
}

/// The ATM single-transaction state-transition diagram (8 states, 13
/// transitions). States 7 and 8 both terminate a transaction; 7 may still
/// move on to 8.
pub fn atm_fixture() -> StateGraph {
    let labels = [
        "Idle / card inserted",
        "PIN validation",
        "Account selection",
        "Transaction selection",
        "Amount entry",
        "Dispense cash",
        "Eject card",
        "Session end",
    ];
    let edges = [
        (1, 2),
        (2, 3),
        (2, 4),
        (2, 7),
        (3, 4),
        (3, 5),
        (3, 7),
        (4, 7),
        (4, 8),
        (5, 6),
        (5, 7),
        (6, 7),
        (7, 8),
    ];
    StateGraph::new(labels, edges, 1, [7, 8]).expect("ATM fixture is valid")
}
