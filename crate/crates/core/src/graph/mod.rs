//! Graph data model, dataset bundles, synthetic generators, induced
//! subgraphs, manipulations, and the k-shot task sampler.

pub mod bundle;
pub mod kshot;
pub mod manipulate;
pub mod subgraph;
pub mod synth;

pub use kshot::{sample_kshot, KShotTask};
pub use manipulate::{apply_manipulation, Manipulation, ManipulationKind};
pub use subgraph::{induce_subgraph, permute_nodes};

use crate::autodiff::{Dense, SparseAdj};
use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Degree cap for synthesized one-hot features on featureless graphs.
pub const DEGREE_FEATURE_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskLevel {
    Node,
    Graph,
}

impl std::fmt::Display for TaskLevel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TaskLevel::Node => write!(f, "node"),
            TaskLevel::Graph => write!(f, "graph"),
        }
    }
}

/// A single attributed graph. Undirected graphs store both edge
/// directions; self-loops are added by the backbone, never here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    features: Dense,
    adj: SparseAdj,
    node_labels: Option<Vec<usize>>,
    graph_label: Option<usize>,
    directed: bool,
}

impl Graph {
    pub fn new(
        features: Dense,
        adj: SparseAdj,
        node_labels: Option<Vec<usize>>,
        graph_label: Option<usize>,
        directed: bool,
    ) -> Result<Self> {
        if features.rows() != adj.n() {
            return Err(Error::BadStructure(format!(
                "{} feature rows but {} nodes",
                features.rows(),
                adj.n()
            )));
        }
        if !features.all_finite() {
            return Err(Error::BadStructure("non-finite feature values".into()));
        }
        if let Some(labels) = &node_labels {
            if labels.len() != adj.n() {
                return Err(Error::BadStructure(format!(
                    "{} node labels but {} nodes",
                    labels.len(),
                    adj.n()
                )));
            }
        }
        if !directed && !adj.is_symmetric() {
            return Err(Error::BadStructure(
                "undirected graph with asymmetric adjacency".into(),
            ));
        }
        Ok(Self {
            features,
            adj,
            node_labels,
            graph_label,
            directed,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.n()
    }

    /// Edge count: canonical pairs for undirected graphs, stored entries
    /// for directed ones.
    pub fn num_edges(&self) -> usize {
        if self.directed {
            self.adj.nnz()
        } else {
            self.adj
                .entries()
                .iter()
                .filter(|&&(r, c, _)| r <= c)
                .count()
        }
    }

    pub fn features(&self) -> &Dense {
        &self.features
    }

    pub fn feature_dim(&self) -> usize {
        self.features.cols()
    }

    pub fn adj(&self) -> &SparseAdj {
        &self.adj
    }

    pub fn node_labels(&self) -> Option<&[usize]> {
        self.node_labels.as_deref()
    }

    pub fn graph_label(&self) -> Option<usize> {
        self.graph_label
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn with_graph_label(mut self, label: usize) -> Self {
        self.graph_label = Some(label);
        self
    }

    /// Neighbor lists derived from the adjacency entries (self-loops
    /// excluded).
    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut nbrs = vec![Vec::new(); self.num_nodes()];
        for &(r, c, _) in self.adj.entries() {
            if r != c {
                nbrs[r].push(c);
            }
        }
        nbrs
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj
            .entries()
            .iter()
            .filter(|&&(r, c, _)| r == v && c != v)
            .count()
    }
}

/// Builds the undirected adjacency from canonical (u, v) pairs,
/// materializing both directions.
pub fn undirected_adj(n: usize, pairs: &[(usize, usize)]) -> Result<SparseAdj> {
    let mut entries = Vec::with_capacity(pairs.len() * 2);
    for &(u, v) in pairs {
        if u == v {
            entries.push((u, v, 1.0));
        } else {
            entries.push((u, v, 1.0));
            entries.push((v, u, 1.0));
        }
    }
    SparseAdj::from_entries(n, entries)
}

/// One-hot degree features with the degree capped at
/// [`DEGREE_FEATURE_CAP`]; the standard fallback for featureless graphs.
pub fn degree_onehot_features(adj: &SparseAdj) -> Dense {
    let n = adj.n();
    let mut deg = vec![0usize; n];
    for &(r, c, _) in adj.entries() {
        if r != c {
            deg[r] += 1;
        }
    }
    let dim = DEGREE_FEATURE_CAP + 1;
    let mut x = Dense::zeros(n, dim);
    for (i, &d) in deg.iter().enumerate() {
        x[(i, d.min(DEGREE_FEATURE_CAP))] = 1.0;
    }
    x
}

/// A named collection of graphs with a task level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub level: TaskLevel,
    pub num_classes: usize,
    graphs: Vec<Graph>,
}

impl Dataset {
    pub fn new(name: String, level: TaskLevel, num_classes: usize, graphs: Vec<Graph>) -> Result<Self> {
        if graphs.is_empty() {
            return Err(Error::BadDataset("dataset has no graphs".into()));
        }
        if num_classes < 2 {
            return Err(Error::BadDataset("need at least two classes".into()));
        }
        let d = graphs[0].feature_dim();
        if graphs.iter().any(|g| g.feature_dim() != d) {
            return Err(Error::BadDataset("feature dimension differs across graphs".into()));
        }
        match level {
            TaskLevel::Node => {
                if graphs.len() != 1 {
                    return Err(Error::BadDataset(
                        "node-level dataset must hold exactly one graph".into(),
                    ));
                }
                let labels = graphs[0]
                    .node_labels()
                    .ok_or_else(|| Error::BadDataset("node-level dataset without node labels".into()))?;
                if let Some(&bad) = labels.iter().find(|&&l| l >= num_classes) {
                    return Err(Error::LabelOutOfRange {
                        label: bad as i64,
                        num_classes,
                        context: "node labels".into(),
                    });
                }
            }
            TaskLevel::Graph => {
                for (i, g) in graphs.iter().enumerate() {
                    match g.graph_label() {
                        None => {
                            return Err(Error::BadDataset(format!(
                                "graph {i} in graph-level dataset has no label"
                            )))
                        }
                        Some(l) if l >= num_classes => {
                            return Err(Error::LabelOutOfRange {
                                label: l as i64,
                                num_classes,
                                context: format!("graph {i} label"),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(Self {
            name,
            level,
            num_classes,
            graphs,
        })
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn graph(&self, i: usize) -> &Graph {
        &self.graphs[i]
    }

    pub fn feature_dim(&self) -> usize {
        self.graphs[0].feature_dim()
    }

    /// Number of classifiable items: nodes for node-level, graphs for
    /// graph-level.
    pub fn num_items(&self) -> usize {
        match self.level {
            TaskLevel::Node => self.graphs[0].num_nodes(),
            TaskLevel::Graph => self.graphs.len(),
        }
    }

    /// Label of item `i` under the dataset's level.
    pub fn item_label(&self, i: usize) -> usize {
        match self.level {
            TaskLevel::Node => self.graphs[0].node_labels().expect("validated")[i],
            TaskLevel::Graph => self.graphs[i].graph_label().expect("validated"),
        }
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn path_graph(n: usize) -> Graph {
        let pairs: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let adj = undirected_adj(n, &pairs).unwrap();
        let features = Dense::identity(n);
        Graph::new(features, adj, None, None, false).unwrap()
    }
}
