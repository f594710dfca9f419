//! Hop-limited induced subgraphs and node permutation.

use super::Graph;
use crate::autodiff::{Dense, SparseAdj};
use crate::error::Error;
use crate::Result;
use std::collections::VecDeque;

/// An induced subgraph together with the position of its center node.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Index of the center inside the subgraph's node ordering.
    pub center: usize,
    /// Original node ids, sorted ascending; `nodes[i]` is subgraph node `i`.
    pub nodes: Vec<usize>,
}

/// Induces the BFS ball of radius `hops` around `center`. An isolated
/// center yields a singleton graph. The subgraph's label becomes the
/// center's node label when one exists, which turns a node task into a
/// graph task.
pub fn induce_subgraph(g: &Graph, center: usize, hops: usize) -> Result<InducedSubgraph> {
    if center >= g.num_nodes() {
        return Err(Error::BadStructure(format!(
            "center {center} out of range for {} nodes",
            g.num_nodes()
        )));
    }
    if hops == 0 {
        return Err(Error::Degenerate("induce_subgraph needs hops >= 1".into()));
    }
    let nbrs = g.neighbor_lists();
    let mut dist = vec![usize::MAX; g.num_nodes()];
    dist[center] = 0;
    let mut queue = VecDeque::from([center]);
    while let Some(v) = queue.pop_front() {
        if dist[v] == hops {
            continue;
        }
        for &u in &nbrs[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    let nodes: Vec<usize> = (0..g.num_nodes()).filter(|&v| dist[v] != usize::MAX).collect();
    let mut remap = vec![usize::MAX; g.num_nodes()];
    for (new, &old) in nodes.iter().enumerate() {
        remap[old] = new;
    }

    let features = Dense::from_rows(
        &nodes
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
    let adj = SparseAdj::from_entries(nodes.len(), entries)?;
    let node_labels = g
        .node_labels()
        .map(|ls| nodes.iter().map(|&v| ls[v]).collect::<Vec<_>>());
    let graph_label = g.node_labels().map(|ls| ls[center]);
    let graph = Graph::new(features, adj, node_labels, graph_label, g.directed())?;
    Ok(InducedSubgraph {
        graph,
        center: remap[center],
        nodes,
    })
}

/// Relabels nodes by a permutation: node `i` of the input becomes node
/// `perm[i]` of the output.
pub fn permute_nodes(g: &Graph, perm: &[usize]) -> Result<Graph> {
    let n = g.num_nodes();
    if perm.len() != n {
        return Err(Error::BadStructure(format!(
            "permutation of length {} for {} nodes",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::BadStructure("permutation is not a bijection".into()));
        }
        seen[p] = true;
    }
    let mut rows = vec![Vec::new(); n];
    for v in 0..n {
        rows[perm[v]] = g.features().row(v).to_vec();
    }
    let features = Dense::from_rows(&rows);
    let entries: Vec<(usize, usize, f64)> = g
        .adj()
        .entries()
        .iter()
        .map(|&(r, c, w)| (perm[r], perm[c], w))
        .collect();
    let adj = SparseAdj::from_entries(n, entries)?;
    let node_labels = g.node_labels().map(|ls| {
        let mut out = vec![0usize; n];
        for v in 0..n {
            out[perm[v]] = ls[v];
        }
        out
    });
    Graph::new(features, adj, node_labels, g.graph_label(), g.directed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_support::path_graph;
    use crate::graph::undirected_adj;
    use crate::seed::rng_from_seed;
    use rand::seq::SliceRandom;
    use rand::Rng;
    use std::collections::HashSet;

    #[test]
    fn path_center_one_hop() {
        // path a-b-c-d, center b, 1 hop -> {a, b, c} with 2 edges
        let g = path_graph(4);
        let sub = induce_subgraph(&g, 1, 1).unwrap();
        assert_eq!(sub.nodes, vec![0, 1, 2]);
        assert_eq!(sub.graph.num_edges(), 2);
        assert_eq!(sub.center, 1);
    }

    #[test]
    fn complete_graph_one_hop_is_whole_graph() {
        let n = 5;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let adj = undirected_adj(n, &pairs).unwrap();
        let g = Graph::new(Dense::identity(n), adj, None, None, false).unwrap();
        let sub = induce_subgraph(&g, 2, 1).unwrap();
        assert_eq!(sub.nodes.len(), n);
        assert_eq!(sub.graph.num_edges(), g.num_edges());
    }

    #[test]
    fn isolated_center_yields_singleton() {
        let adj = undirected_adj(3, &[(0, 1)]).unwrap();
        let g = Graph::new(Dense::identity(3), adj, Some(vec![0, 1, 0]), None, false).unwrap();
        let sub = induce_subgraph(&g, 2, 2).unwrap();
        assert_eq!(sub.nodes, vec![2]);
        assert_eq!(sub.graph.num_nodes(), 1);
        assert_eq!(sub.graph.graph_label(), Some(0));
    }

    #[test]
    fn random_graph_matches_bfs_oracle() {
        let mut rng = rng_from_seed(31);
        let n = 12;
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_range(0.0..1.0) < 0.3 {
                    pairs.push((u, v));
                }
            }
        }
        let adj = undirected_adj(n, &pairs).unwrap();
        let g = Graph::new(Dense::identity(n), adj, None, None, false).unwrap();
        for center in 0..n {
            let sub = induce_subgraph(&g, center, 2).unwrap();
            // plain BFS over adjacency lists as the oracle
            let nbrs = g.neighbor_lists();
            let mut expect: HashSet<usize> = HashSet::from([center]);
            let mut frontier = vec![center];
            for _ in 0..2 {
                let mut next = Vec::new();
                for &v in &frontier {
                    for &u in &nbrs[v] {
                        if expect.insert(u) {
                            next.push(u);
                        }
                    }
                }
                frontier = next;
            }
            let got: HashSet<usize> = sub.nodes.iter().copied().collect();
            assert_eq!(got, expect, "center {center}");
            assert!(sub.nodes.contains(&center));
        }
    }

    #[test]
    fn identity_permutation_is_identity() {
        let g = path_graph(5);
        let p: Vec<usize> = (0..5).collect();
        assert_eq!(permute_nodes(&g, &p).unwrap(), g);
    }

    #[test]
    fn permutation_roundtrip_and_degrees() {
        let mut rng = rng_from_seed(5);
        let g = path_graph(7);
        let mut perm: Vec<usize> = (0..7).collect();
        perm.shuffle(&mut rng);
        let mut inverse = vec![0usize; 7];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        let there = permute_nodes(&g, &perm).unwrap();
        let back = permute_nodes(&there, &inverse).unwrap();
        assert_eq!(back, g);

        let mut deg_a: Vec<usize> = (0..7).map(|v| g.degree(v)).collect();
        let mut deg_b: Vec<usize> = (0..7).map(|v| there.degree(v)).collect();
        deg_a.sort_unstable();
        deg_b.sort_unstable();
        assert_eq!(deg_a, deg_b, "degree multiset must be preserved");
    }

    #[test]
    fn non_bijection_rejected() {
        let g = path_graph(3);
        assert!(permute_nodes(&g, &[0, 0, 1]).is_err());
        assert!(permute_nodes(&g, &[0, 1]).is_err());
    }
}
