//! Pareto dominance over `(priority, cost)` and a bounded non-dominated archive.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::objectives::ObjectiveVector;
use crate::path::{roulette, TestSequence};

/// Components closer than this compare equal.
pub const EQ_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_ARCHIVE_CAPACITY: usize = 100;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParetoError {
    #[error("archive is empty")]
    EmptyArchive,
}

/// `a` is no worse than `b` on both objectives and strictly better on one.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    let no_worse = a.priority >= b.priority - EQ_TOLERANCE && a.cost <= b.cost + EQ_TOLERANCE;
    let better = a.priority > b.priority + EQ_TOLERANCE || a.cost < b.cost - EQ_TOLERANCE;
    no_worse && better
}

/// Indices of the vectors no other vector dominates, in input order.
pub fn non_dominated_indices(vs: &[ObjectiveVector]) -> Vec<usize> {
    (0..vs.len())
        .filter(|&i| !vs.iter().any(|other| dominates(other, &vs[i])))
        .collect()
}

pub fn non_dominated_filter(vs: &[ObjectiveVector]) -> Vec<ObjectiveVector> {
    non_dominated_indices(vs).into_iter().map(|i| vs[i]).collect()
}

/// Crowding distance of each vector within `vs`. Extremes are infinite.
pub fn crowding_distances(vs: &[ObjectiveVector]) -> Vec<f64> {
    let n = vs.len();
    let mut distance = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let objectives: [fn(&ObjectiveVector) -> f64; 2] = [|v| v.priority, |v| v.cost];
    for key in objectives {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| key(&vs[a]).total_cmp(&key(&vs[b])).then(a.cmp(&b)));
        let lo = key(&vs[order[0]]);
        let hi = key(&vs[order[n - 1]]);
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in order.windows(3) {
            distance[w[1]] += (key(&vs[w[2]]) - key(&vs[w[0]])) / range;
        }
    }
    distance
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchiveEntry {
    pub sequence: TestSequence,
    pub objectives: ObjectiveVector,
    /// Insertion stamp; smaller is older.
    pub stamp: u64,
}

/// Mutually non-dominated `(sequence, objectives)` pairs, at most `capacity`
/// of them, with no repeated sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoArchive {
    entries: Vec<ArchiveEntry>,
    capacity: usize,
    next_stamp: u64,
}

impl Default for ParetoArchive {
    fn default() -> Self {
        Self::new(DEFAULT_ARCHIVE_CAPACITY)
    }
}

impl ParetoArchive {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "archive capacity must be positive");
        Self {
            entries: Vec::new(),
            capacity,
            next_stamp: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ArchiveEntry] {
        &self.entries
    }

    pub fn vectors(&self) -> Vec<ObjectiveVector> {
        self.entries.iter().map(|e| e.objectives).collect()
    }

    pub fn contains(&self, seq: &TestSequence) -> bool {
        self.entries.iter().any(|e| &e.sequence == seq)
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    /// Inserts unless the candidate is dominated or its sequence is already
    /// archived. Entries the candidate dominates are dropped; on overflow the
    /// most crowded entry (oldest on ties) is evicted. Returns whether the
    /// candidate was inserted.
    pub fn insert(&mut self, sequence: TestSequence, objectives: ObjectiveVector) -> bool {
        if self.contains(&sequence) || self.entries.iter().any(|e| dominates(&e.objectives, &objectives)) {
            return false;
        }
        self.entries.retain(|e| !dominates(&objectives, &e.objectives));
        self.entries.push(ArchiveEntry {
            sequence,
            objectives,
            stamp: self.next_stamp,
        });
        self.next_stamp += 1;
        while self.entries.len() > self.capacity {
            let crowding = crowding_distances(&self.vectors());
            let victim = (0..self.entries.len())
                .min_by(|&a, &b| {
                    crowding[a]
                        .total_cmp(&crowding[b])
                        .then(self.entries[a].stamp.cmp(&self.entries[b].stamp))
                })
                .expect("archive over capacity is nonempty");
            self.entries.remove(victim);
        }
        true
    }

    /// Leader for the social pull. Sparse regions are preferred: each entry
    /// is weighted by its crowding distance, extremes by twice the largest
    /// finite distance.
    pub fn select_leader<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<&ArchiveEntry, ParetoError> {
        if self.entries.is_empty() {
            return Err(ParetoError::EmptyArchive);
        }
        let crowding = crowding_distances(&self.vectors());
        let finite_max = crowding
            .iter()
            .copied()
            .filter(|d| d.is_finite())
            .fold(0.0_f64, f64::max);
        let boundary = if finite_max > 0.0 { 2.0 * finite_max } else { 1.0 };
        let weights: Vec<f64> = crowding
            .iter()
            .map(|&d| if d.is_finite() { d } else { boundary })
            .collect();
        Ok(&self.entries[roulette(&weights, rng)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(p: f64, c: f64) -> ObjectiveVector {
        ObjectiveVector::new(p, c)
    }

    fn seq(i: usize) -> TestSequence {
        TestSequence::new(vec![1, i + 1])
    }

    #[test]
    fn dominance_on_printed_values() {
        assert!(dominates(&v(0.4250, 0.2247), &v(0.3901, 0.2520)));
        assert!(!dominates(&v(0.3, 0.3), &v(0.3, 0.3)));
        assert!(!dominates(&v(0.4313, 1.2820), &v(0.4250, 0.2247)));
        assert!(!dominates(&v(0.4250, 0.2247), &v(0.4313, 1.2820)));
    }

    #[test]
    fn filter_small_cases() {
        assert_eq!(non_dominated_filter(&[v(1.0, 1.0)]), vec![v(1.0, 1.0)]);
        let vs = [v(1.0, 2.0), v(3.0, 0.5), v(2.0, 1.0)];
        assert_eq!(non_dominated_filter(&vs), vec![v(3.0, 0.5)]);
    }

    #[test]
    fn insert_dominated_is_noop() {
        let mut ar = ParetoArchive::default();
        assert!(ar.insert(seq(1), v(2.0, 1.0)));
        let before = ar.clone();
        assert!(!ar.insert(seq(2), v(1.0, 2.0)));
        assert_eq!(ar, before);
    }

    #[test]
    fn insert_duplicate_sequence_is_noop() {
        let mut ar = ParetoArchive::default();
        ar.insert(seq(1), v(2.0, 1.0));
        assert!(!ar.insert(seq(1), v(5.0, 0.1)));
        assert_eq!(ar.len(), 1);
    }

    #[test]
    fn insert_dominating_two_of_three() {
        let mut ar = ParetoArchive::default();
        ar.insert(seq(1), v(1.0, 1.0));
        ar.insert(seq(2), v(2.0, 2.0));
        ar.insert(seq(3), v(3.0, 3.0));
        assert_eq!(ar.len(), 3);
        assert!(ar.insert(seq(4), v(2.5, 0.9)));
        assert_eq!(ar.len(), 2);
        let seqs: Vec<_> = ar.entries().iter().map(|e| e.sequence.clone()).collect();
        assert_eq!(seqs, vec![seq(3), seq(4)]);
    }

    #[test]
    fn eviction_prefers_crowded_then_old() {
        let mut ar = ParetoArchive::new(3);
        ar.insert(seq(1), v(1.0, 1.0));
        ar.insert(seq(2), v(3.0, 3.0));
        ar.insert(seq(3), v(2.0, 2.0));
        // 2.5 is closer to its neighbours than 2.0 is
        ar.insert(seq(4), v(2.5, 2.5));
        assert_eq!(ar.len(), 3);
        assert!(!ar.contains(&seq(4)));

        // equal interior crowding: the older one goes
        let mut ar = ParetoArchive::new(3);
        ar.insert(seq(1), v(1.0, 1.0));
        ar.insert(seq(2), v(4.0, 4.0));
        ar.insert(seq(3), v(2.0, 2.0));
        ar.insert(seq(4), v(3.0, 3.0));
        assert!(!ar.contains(&seq(3)));
        assert!(ar.contains(&seq(4)));
    }

    #[test]
    fn crowding_extremes_infinite() {
        let d = crowding_distances(&[v(1.0, 1.0), v(2.0, 2.0), v(4.0, 4.0)]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - (3.0 / 3.0 + 3.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn leader_errors_and_singleton() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut ar = ParetoArchive::default();
        assert_eq!(ar.select_leader(&mut rng), Err(ParetoError::EmptyArchive));
        ar.insert(seq(1), v(1.0, 1.0));
        for _ in 0..50 {
            assert_eq!(ar.select_leader(&mut rng).unwrap().sequence, seq(1));
        }
    }

    #[test]
    fn leader_split_between_two_equal_entries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut ar = ParetoArchive::default();
        ar.insert(seq(1), v(1.0, 1.0));
        ar.insert(seq(2), v(2.0, 2.0));
        let draws = 10_000;
        let first = (0..draws)
            .filter(|_| ar.select_leader(&mut rng).unwrap().sequence == seq(1))
            .count();
        let freq = first as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.05, "{freq}");
    }

    #[test]
    fn leader_prefers_sparse_region() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut ar = ParetoArchive::default();
        for (i, p) in [1.0, 1.1, 1.2, 5.0, 10.0].into_iter().enumerate() {
            ar.insert(seq(i), v(p, p));
        }
        let mut counts = [0usize; 5];
        for _ in 0..10_000 {
            let leader = ar.select_leader(&mut rng).unwrap();
            let i = ar.entries().iter().position(|e| e.sequence == leader.sequence).unwrap();
            counts[i] += 1;
        }
        // 5.0 is far from its neighbours, 1.1 is wedged between 1.0 and 1.2
        assert!(counts[3] > counts[1]);
    }
}
