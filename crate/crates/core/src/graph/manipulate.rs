//! Seeded graph manipulations: dropping nodes, dropping edges, masking
//! features. These are the transformations the flexibility probe asks
//! prompts to imitate.

use super::Graph;
use crate::autodiff::{Dense, SparseAdj};
use crate::error::Error;
use crate::seed::rng_from_seed;
use crate::Result;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManipulationKind {
    DropNodes,
    DropEdges,
    MaskFeatures,
}

impl std::fmt::Display for ManipulationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ManipulationKind::DropNodes => write!(f, "drop_nodes"),
            ManipulationKind::DropEdges => write!(f, "drop_edges"),
            ManipulationKind::MaskFeatures => write!(f, "mask_features"),
        }
    }
}

/// A manipulation selects `ceil(fraction * count)` targets under `seed`.
/// `fraction` of exactly 0 is the identity manipulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Manipulation {
    pub kind: ManipulationKind,
    pub fraction: f64,
    pub seed: u64,
}

impl Manipulation {
    pub fn new(kind: ManipulationKind, fraction: f64, seed: u64) -> Result<Self> {
        if !(0.0..1.0).contains(&fraction) {
            return Err(Error::Degenerate(format!(
                "manipulation fraction must lie in [0, 1), got {fraction}"
            )));
        }
        Ok(Self {
            kind,
            fraction,
            seed,
        })
    }
}

fn pick<T: Copy>(items: &[T], count: usize, seed: u64) -> Vec<T> {
    let mut shuffled = items.to_vec();
    let mut rng = rng_from_seed(seed);
    shuffled.shuffle(&mut rng);
    shuffled.truncate(count);
    shuffled
}

/// Applies a manipulation, returning a fresh graph. Labels follow the
/// surviving nodes.
pub fn apply_manipulation(g: &Graph, m: &Manipulation) -> Result<Graph> {
    match m.kind {
        ManipulationKind::DropNodes => {
            let n = g.num_nodes();
            let count = (m.fraction * n as f64).ceil() as usize;
            if count >= n {
                return Err(Error::Degenerate(format!(
                    "dropping {count} of {n} nodes leaves nothing"
                )));
            }
            let all: Vec<usize> = (0..n).collect();
            let dropped: std::collections::HashSet<usize> =
                pick(&all, count, m.seed).into_iter().collect();
            let keep: Vec<usize> = (0..n).filter(|v| !dropped.contains(v)).collect();
            let mut remap = vec![usize::MAX; n];
            for (new, &old) in keep.iter().enumerate() {
                remap[old] = new;
            }
            let features = Dense::from_rows(
                &keep
                    .iter()
                    .map(|&v| g.features().row(v).to_vec())
                    .collect::<Vec<_>>(),
            );
            let entries: Vec<(usize, usize, f64)> = g
                .adj()
                .entries()
                .iter()
                .filter(|&&(r, c, _)| remap[r] != usize::MAX && remap[c] != usize::MAX)
                .map(|&(r, c, w)| (remap[r], remap[c], w))
                .collect();
            let adj = SparseAdj::from_entries(keep.len(), entries)?;
            let node_labels = g
                .node_labels()
                .map(|ls| keep.iter().map(|&v| ls[v]).collect());
            Graph::new(features, adj, node_labels, g.graph_label(), g.directed())
        }
        ManipulationKind::DropEdges => {
            let canonical: Vec<(usize, usize)> = g
                .adj()
                .entries()
                .iter()
                .filter(|&&(r, c, _)| g.directed() || r <= c)
                .map(|&(r, c, _)| (r, c))
                .collect();
            let count = (m.fraction * canonical.len() as f64).ceil() as usize;
            let dropped: std::collections::HashSet<(usize, usize)> =
                pick(&canonical, count, m.seed).into_iter().collect();
            let survives = |r: usize, c: usize| {
                if g.directed() {
                    !dropped.contains(&(r, c))
                } else {
                    let key = if r <= c { (r, c) } else { (c, r) };
                    !dropped.contains(&key)
                }
            };
            let entries: Vec<(usize, usize, f64)> = g
                .adj()
                .entries()
                .iter()
                .filter(|&&(r, c, _)| survives(r, c))
                .copied()
                .collect();
            let adj = SparseAdj::from_entries(g.num_nodes(), entries)?;
            Graph::new(
                g.features().clone(),
                adj,
                g.node_labels().map(<[usize]>::to_vec),
                g.graph_label(),
                g.directed(),
            )
        }
        ManipulationKind::MaskFeatures => {
            let n = g.num_nodes();
            let count = (m.fraction * n as f64).ceil() as usize;
            let all: Vec<usize> = (0..n).collect();
            let masked = pick(&all, count, m.seed);
            let mut features = g.features().clone();
            let d = features.cols();
            for &v in &masked {
                for j in 0..d {
                    features[(v, j)] = 0.0;
                }
            }
            Graph::new(
                features,
                g.adj().clone(),
                g.node_labels().map(<[usize]>::to_vec),
                g.graph_label(),
                g.directed(),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_support::path_graph;
    use crate::graph::undirected_adj;
    use crate::seed::rng_from_seed;
    use proptest::prelude::*;
    use rand::Rng;

    fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = rng_from_seed(seed);
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_range(0.0..1.0) < p {
                    pairs.push((u, v));
                }
            }
        }
        let adj = undirected_adj(n, &pairs).unwrap();
        Graph::new(Dense::identity(n), adj, None, None, false).unwrap()
    }

    #[test]
    fn zero_fraction_is_identity() {
        let g = path_graph(6);
        for kind in [
            ManipulationKind::DropNodes,
            ManipulationKind::DropEdges,
            ManipulationKind::MaskFeatures,
        ] {
            let m = Manipulation::new(kind, 0.0, 1).unwrap();
            assert_eq!(apply_manipulation(&g, &m).unwrap(), g);
        }
    }

    #[test]
    fn out_of_range_fraction_rejected() {
        assert!(Manipulation::new(ManipulationKind::DropEdges, 1.0, 0).is_err());
        assert!(Manipulation::new(ManipulationKind::DropEdges, -0.1, 0).is_err());
    }

    #[test]
    fn drop_edges_half_of_ten() {
        // path with 10 edges
        let g = path_graph(11);
        assert_eq!(g.num_edges(), 10);
        let m = Manipulation::new(ManipulationKind::DropEdges, 0.5, 4).unwrap();
        let out = apply_manipulation(&g, &m).unwrap();
        assert_eq!(out.num_edges(), 5);
        assert_eq!(out.num_nodes(), 11);
    }

    #[test]
    fn drop_nodes_matches_restriction_oracle() {
        let g = random_graph(16, 0.3, 9);
        let m = Manipulation::new(ManipulationKind::DropNodes, 0.25, 11).unwrap();
        let out = apply_manipulation(&g, &m).unwrap();
        assert_eq!(out.num_nodes(), 12); // 16 - ceil(0.25*16)

        // oracle: recompute which original nodes survive by matching
        // feature rows (identity features make rows unique)
        let survivors: Vec<usize> = (0..out.num_nodes())
            .map(|i| {
                out.features().row(i).iter().position(|&v| v == 1.0).unwrap()
            })
            .collect();
        let mut expect = Vec::new();
        for (a, &u) in survivors.iter().enumerate() {
            for (b, &v) in survivors.iter().enumerate() {
                if g.adj().has_entry(u, v) {
                    expect.push((a, b));
                }
            }
        }
        let got: Vec<(usize, usize)> = out.adj().entries().iter().map(|&(r, c, _)| (r, c)).collect();
        let mut expect_sorted = expect;
        expect_sorted.sort_unstable();
        assert_eq!(got, expect_sorted);
    }

    #[test]
    fn mask_features_zeroes_selected_rows() {
        let g = path_graph(8);
        let m = Manipulation::new(ManipulationKind::MaskFeatures, 0.25, 2).unwrap();
        let out = apply_manipulation(&g, &m).unwrap();
        let zero_rows = (0..8)
            .filter(|&i| out.features().row(i).iter().all(|&v| v == 0.0))
            .count();
        assert_eq!(zero_rows, 2); // ceil(0.25*8)
        assert_eq!(out.adj(), g.adj());
    }

    #[test]
    fn dropping_all_nodes_is_degenerate() {
        let g = path_graph(3);
        let m = Manipulation::new(ManipulationKind::DropNodes, 0.99, 0).unwrap();
        assert!(matches!(
            apply_manipulation(&g, &m),
            Err(Error::Degenerate(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn no_dangling_edges_after_any_manipulation(
            n in 4usize..20,
            p in 0.1f64..0.6,
            fraction in 0.0f64..0.8,
            seed in 0u64..500,
        ) {
            let g = random_graph(n, p, seed);
            for kind in [ManipulationKind::DropNodes, ManipulationKind::DropEdges, ManipulationKind::MaskFeatures] {
                let m = Manipulation::new(kind, fraction, seed ^ 0x55).unwrap();
                if let Ok(out) = apply_manipulation(&g, &m) {
                    let n_out = out.num_nodes();
                    for &(r, c, _) in out.adj().entries() {
                        prop_assert!(r < n_out && c < n_out);
                    }
                    prop_assert!(out.adj().is_symmetric());
                    prop_assert_eq!(out.features().rows(), n_out);
                }
            }
        }
    }
}
