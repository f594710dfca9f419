//! Few-shot task sampling.
//!
//! The held-out test pool is carved first (90% of items for node tasks,
//! 80% for graph tasks, rounded down), then supports are drawn from the
//! remainder, exactly `k` per class. The query set is the whole test pool.

use super::{Dataset, TaskLevel};
use crate::error::Error;
use crate::seed::rng_from_seed;
use crate::Result;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

/// A k-shot episode over dataset items (node ids or graph indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KShotTask {
    pub k: usize,
    pub support: Vec<(usize, usize)>,
    pub query: Vec<(usize, usize)>,
    pub seed: u64,
}

impl KShotTask {
    pub fn support_ids(&self) -> Vec<usize> {
        self.support.iter().map(|&(id, _)| id).collect()
    }

    pub fn support_labels(&self) -> Vec<usize> {
        self.support.iter().map(|&(_, y)| y).collect()
    }

    pub fn query_ids(&self) -> Vec<usize> {
        self.query.iter().map(|&(id, _)| id).collect()
    }

    pub fn query_labels(&self) -> Vec<usize> {
        self.query.iter().map(|&(_, y)| y).collect()
    }
}

/// Fraction of items held out as the test pool for a task level.
pub fn test_fraction(level: TaskLevel) -> f64 {
    match level {
        TaskLevel::Node => 0.9,
        TaskLevel::Graph => 0.8,
    }
}

/// Samples a k-shot task: deterministic under `seed`, exactly `k`
/// support items per class, query disjoint from support.
pub fn sample_kshot(ds: &Dataset, k: usize, seed: u64) -> Result<KShotTask> {
    if k == 0 {
        return Err(Error::Degenerate("k must be at least 1".into()));
    }
    let n = ds.num_items();
    let mut ids: Vec<usize> = (0..n).collect();
    let mut rng = rng_from_seed(seed);
    ids.shuffle(&mut rng);

    let test_size = (test_fraction(ds.level) * n as f64).floor() as usize;
    let (test_pool, residual) = ids.split_at(test_size);

    let mut support = Vec::with_capacity(k * ds.num_classes);
    for class in 0..ds.num_classes {
        let eligible: Vec<usize> = residual
            .iter()
            .copied()
            .filter(|&id| ds.item_label(id) == class)
            .collect();
        if eligible.len() < k {
            return Err(Error::KShotInfeasible {
                class,
                available: eligible.len(),
                needed: k,
            });
        }
        // residual order is already a seeded shuffle; take the first k
        support.extend(eligible[..k].iter().map(|&id| (id, class)));
    }
    support.sort_unstable();

    let mut query: Vec<(usize, usize)> = test_pool
        .iter()
        .map(|&id| (id, ds.item_label(id)))
        .collect();
    query.sort_unstable();

    Ok(KShotTask {
        k,
        support,
        query,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::synth::{two_blobs_node, TwoBlobsParams};
    use std::collections::HashSet;

    fn blob_dataset(n: usize) -> Dataset {
        two_blobs_node(&TwoBlobsParams {
            nodes: n,
            feature_dim: 4,
            separation: 3.0,
            ..TwoBlobsParams::default()
        })
        .unwrap()
    }

    #[test]
    fn support_size_is_k_times_classes() {
        let ds = blob_dataset(40);
        let task = sample_kshot(&ds, 2, 7).unwrap();
        assert_eq!(task.support.len(), 4); // 2 classes * k=2
        for class in 0..2 {
            assert_eq!(task.support.iter().filter(|&&(_, y)| y == class).count(), 2);
        }
    }

    #[test]
    fn node_split_is_ninety_percent() {
        let ds = blob_dataset(40);
        let task = sample_kshot(&ds, 1, 0).unwrap();
        assert_eq!(task.query.len(), 36); // floor(0.9 * 40)
        assert_eq!(task.support.len(), 2);
    }

    #[test]
    fn support_and_query_are_disjoint() {
        let ds = blob_dataset(200);
        let task = sample_kshot(&ds, 2, 3).unwrap();
        let s: HashSet<usize> = task.support_ids().into_iter().collect();
        let q: HashSet<usize> = task.query_ids().into_iter().collect();
        assert!(s.is_disjoint(&q));
    }

    #[test]
    fn seeds_reshuffle_but_sizes_stay() {
        let ds = blob_dataset(60);
        let a = sample_kshot(&ds, 2, 1).unwrap();
        let b = sample_kshot(&ds, 2, 2).unwrap();
        assert_ne!(a.support, b.support, "different seeds, different supports");
        assert_eq!(a.support.len(), b.support.len());
        let a2 = sample_kshot(&ds, 2, 1).unwrap();
        assert_eq!(a, a2, "same seed twice must be identical");
    }

    #[test]
    fn infeasible_k_names_the_class() {
        let ds = blob_dataset(40);
        // residual pool has 4 nodes; k=5 per class cannot fit
        let err = sample_kshot(&ds, 5, 0).unwrap_err();
        match err {
            Error::KShotInfeasible { class, needed, .. } => {
                assert!(class < 2);
                assert_eq!(needed, 5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
