//! Test sequences, suites, guided walks and the exhaustive path oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Edge, GuidanceMatrix, StateGraph};

/// Attempts allowed per requested walk before giving up on dead ends.
pub const WALK_RETRY_BUDGET: usize = 50;

/// Largest graph the exhaustive enumerator accepts.
pub const ENUMERATION_NODE_LIMIT: usize = 20;

/// Multiplier applied to guidance on an accepted sequence's edges.
pub const GUIDANCE_DECAY: f64 = 0.8;
pub const GUIDANCE_FLOOR: f64 = 0.05;

/// Sampling bonus for transitions the suite has not covered yet.
const UNCOVERED_BONUS: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("walk reached node {0} with every successor already visited")]
    DeadEndAbort(usize),
    #[error("no walk reached an exit within {0} attempts")]
    RetryBudgetExhausted(usize),
    #[error("graph has {0} nodes; exhaustive enumeration is limited to {ENUMERATION_NODE_LIMIT}")]
    GraphTooLarge(usize),
    #[error("invalid sequence {sequence}: {reason}")]
    InvalidSequence { sequence: String, reason: String },
    #[error("cannot parse sequence {0:?}")]
    Parse(String),
}

/// An ordered list of node ids, written `1,2,3,5,7`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TestSequence(Vec<usize>);

impl TestSequence {
    pub fn new(nodes: Vec<usize>) -> Self {
        Self(nodes)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn contains_edge(&self, edge: Edge) -> bool {
        self.edges().any(|e| e == edge)
    }

    /// Checks start, exit, transition membership and simplicity against `g`.
    pub fn validate(&self, g: &StateGraph) -> Result<(), PathError> {
        let fail = |reason: String| {
            Err(PathError::InvalidSequence {
                sequence: self.to_string(),
                reason,
            })
        };
        let (Some(&first), Some(&last)) = (self.0.first(), self.0.last()) else {
            return fail("empty".into());
        };
        if first != g.start() {
            return fail(format!("starts at {first}, not {}", g.start()));
        }
        if !g.is_exit(last) {
            return fail(format!("ends at non-exit {last}"));
        }
        let mut seen = BTreeSet::new();
        for &v in &self.0 {
            if !seen.insert(v) {
                return fail(format!("revisits node {v}"));
            }
        }
        if let Some((a, b)) = self.edges().find(|&(a, b)| !g.has_edge(a, b)) {
            return fail(format!("{a}->{b} is not a transition"));
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &StateGraph) -> bool {
        self.validate(g).is_ok()
    }
}

impl fmt::Display for TestSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for TestSequence {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map(TestSequence)
            .map_err(|_| PathError::Parse(s.to_string()))
    }
}

impl Serialize for TestSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TestSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An ordered, duplicate-free set of sequences where each member was
/// admitted for covering at least one new transition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathSuite {
    sequences: Vec<TestSequence>,
    covered: BTreeSet<Edge>,
}

impl PathSuite {
    pub fn new() -> Self {
        Self::default()
    }

    /// Admits `cand` iff it is not already present and covers at least one
    /// uncovered transition. Returns whether it was admitted.
    pub fn accept(&mut self, cand: TestSequence) -> bool {
        if self.sequences.contains(&cand) || cand.edges().all(|e| self.covered.contains(&e)) {
            return false;
        }
        self.covered.extend(cand.edges());
        self.sequences.push(cand);
        true
    }

    /// Suite size (`tc`).
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn sequences(&self) -> &[TestSequence] {
        &self.sequences
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TestSequence> {
        self.sequences.iter()
    }

    pub fn contains(&self, seq: &TestSequence) -> bool {
        self.sequences.contains(seq)
    }

    pub fn covered_edges(&self) -> &BTreeSet<Edge> {
        &self.covered
    }

    /// Transition coverage: every edge of `g` lies on some member.
    pub fn coverage_complete(&self, g: &StateGraph) -> bool {
        g.edges().iter().all(|e| self.covered.contains(e))
    }

    /// Drops members whose transitions are all covered by the remaining
    /// members, scanning in admission order. Coverage is unchanged; the
    /// removed sequences are returned.
    pub fn prune_redundant(&mut self) -> Vec<TestSequence> {
        let mut removed = Vec::new();
        let mut i = 0;
        while i < self.sequences.len() {
            let redundant = self.sequences[i].edges().all(|e| {
                self.sequences
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && other.contains_edge(e))
            });
            if redundant && self.sequences.len() > 1 {
                removed.push(self.sequences.remove(i));
            } else {
                i += 1;
            }
        }
        removed
    }
}

impl<'a> IntoIterator for &'a PathSuite {
    type Item = &'a TestSequence;
    type IntoIter = std::slice::Iter<'a, TestSequence>;

    fn into_iter(self) -> Self::IntoIter {
        self.sequences.iter()
    }
}

impl Serialize for PathSuite {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.sequences.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PathSuite {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let sequences = Vec::<TestSequence>::deserialize(deserializer)?;
        let covered = sequences.iter().flat_map(|s| s.edges()).collect();
        Ok(Self { sequences, covered })
    }
}

/// Nodes visited by one agent during the walk in progress.
#[derive(Debug)]
struct VisitedList {
    order: Vec<usize>,
    seen: Vec<bool>,
}

impl VisitedList {
    fn new(n: usize, start: usize) -> Self {
        let mut seen = vec![false; n + 1];
        seen[start] = true;
        Self {
            order: vec![start],
            seen,
        }
    }

    fn visit(&mut self, v: usize) {
        self.seen[v] = true;
        self.order.push(v);
    }

    fn contains(&self, v: usize) -> bool {
        self.seen[v]
    }
}

/// One agent walk from the start node to an exit.
///
/// At a node with several unvisited successors the next transition is drawn
/// with probability proportional to its guidance weight, doubled when the
/// transition is not in `covered`. An exit node that still has unvisited
/// successors stops when all of those transitions are covered and otherwise
/// stops on a fair coin.
pub fn walk<R: Rng + ?Sized>(
    g: &StateGraph,
    guidance: &GuidanceMatrix,
    covered: &BTreeSet<Edge>,
    rng: &mut R,
) -> Result<TestSequence, PathError> {
    let mut visited = VisitedList::new(g.node_count(), g.start());
    let mut at = g.start();
    loop {
        let open: Vec<usize> = g
            .successors(at)
            .iter()
            .copied()
            .filter(|&w| !visited.contains(w))
            .collect();
        if g.is_exit(at) {
            if open.is_empty() || open.iter().all(|&w| covered.contains(&(at, w))) {
                break;
            }
            if rng.gen::<f64>() < 0.5 {
                break;
            }
        }
        let next = match open.as_slice() {
            [] => return Err(PathError::DeadEndAbort(at)),
            [only] => *only,
            _ => {
                let weights: Vec<f64> = open
                    .iter()
                    .map(|&w| {
                        let bonus = if covered.contains(&(at, w)) {
                            1.0
                        } else {
                            UNCOVERED_BONUS
                        };
                        guidance.weight(at, w).max(0.0) * bonus
                    })
                    .collect();
                open[roulette(&weights, rng)]
            }
        };
        visited.visit(next);
        at = next;
    }
    Ok(TestSequence(visited.order))
}

/// [`walk`], retried on dead ends up to [`WALK_RETRY_BUDGET`] times.
pub fn walk_with_retry<R: Rng + ?Sized>(
    g: &StateGraph,
    guidance: &GuidanceMatrix,
    covered: &BTreeSet<Edge>,
    rng: &mut R,
) -> Result<TestSequence, PathError> {
    for _ in 0..WALK_RETRY_BUDGET {
        match walk(g, guidance, covered, rng) {
            Err(PathError::DeadEndAbort(_)) => continue,
            other => return other,
        }
    }
    Err(PathError::RetryBudgetExhausted(WALK_RETRY_BUDGET))
}

/// Index drawn with probability proportional to `weights`; uniform when
/// every weight is zero.
pub(crate) fn roulette<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let u = rng.gen::<f64>();
    if !total.is_finite() || total <= 0.0 {
        return ((u * weights.len() as f64) as usize).min(weights.len() - 1);
    }
    let mut target = u * total;
    for (i, &w) in weights.iter().enumerate() {
        if target < w {
            return i;
        }
        target -= w;
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(weights.len() - 1)
}

/// Decays guidance along an accepted sequence so later agents favour
/// branches that are still unexplored.
pub fn decay_guidance(guidance: &mut GuidanceMatrix, seq: &TestSequence) {
    for (a, b) in seq.edges() {
        guidance.scale(a, b, GUIDANCE_DECAY, GUIDANCE_FLOOR);
    }
}

/// Every simple path from the start node that ends on an exit, including
/// paths that stop at an exit which has further successors. Lexicographic
/// order.
pub fn enumerate_all_sequences(g: &StateGraph) -> Result<Vec<TestSequence>, PathError> {
    if g.node_count() > ENUMERATION_NODE_LIMIT {
        return Err(PathError::GraphTooLarge(g.node_count()));
    }
    let mut out = Vec::new();
    let mut visited = VisitedList::new(g.node_count(), g.start());
    dfs(g, &mut visited, &mut out);
    out.sort();
    Ok(out)
}

fn dfs(g: &StateGraph, visited: &mut VisitedList, out: &mut Vec<TestSequence>) {
    let at = *visited.order.last().expect("walk has a start node");
    if g.is_exit(at) {
        out.push(TestSequence(visited.order.clone()));
    }
    for &w in g.successors(at) {
        if !visited.contains(w) {
            visited.visit(w);
            dfs(g, visited, out);
            visited.order.pop();
            visited.seen[w] = false;
        }
    }
}
