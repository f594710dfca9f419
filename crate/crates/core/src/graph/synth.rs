//! Seeded synthetic dataset generators: desk-scale stand-ins for
//! homophilic, heterophilic, and graph-level benchmark data.

use super::{undirected_adj, Dataset, Graph, TaskLevel};
use crate::autodiff::{gaussian, Dense};
use crate::error::Error;
use crate::seed::rng_from_seed;
use crate::Result;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Two feature-separable Gaussian blobs over a homophilic random graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoBlobsParams {
    pub nodes: usize,
    pub feature_dim: usize,
    /// Euclidean distance between the class means.
    pub separation: f64,
    pub noise: f64,
    pub p_in: f64,
    pub p_out: f64,
    pub seed: u64,
}

impl Default for TwoBlobsParams {
    fn default() -> Self {
        Self {
            nodes: 40,
            feature_dim: 8,
            separation: 5.0,
            noise: 1.0,
            p_in: 0.15,
            p_out: 0.02,
            seed: 0,
        }
    }
}

pub fn two_blobs_node(params: &TwoBlobsParams) -> Result<Dataset> {
    if params.nodes < 8 {
        return Err(Error::Degenerate(
            "two_blobs_node needs at least 4 nodes per class".into(),
        ));
    }
    if params.feature_dim == 0 {
        return Err(Error::Degenerate("feature_dim must be positive".into()));
    }
    let n = params.nodes;
    let d = params.feature_dim;
    let labels: Vec<usize> = (0..n).map(|i| usize::from(i >= n / 2)).collect();
    let mut rng = rng_from_seed(params.seed);

    let unit = 1.0 / (d as f64).sqrt();
    let mut rows = Vec::with_capacity(n);
    for &y in &labels {
        let sign = if y == 0 { -1.0 } else { 1.0 };
        let mean = sign * params.separation / 2.0 * unit;
        rows.push(
            (0..d)
                .map(|_| mean + params.noise * gaussian(&mut rng))
                .collect::<Vec<f64>>(),
        );
    }
    let features = Dense::from_rows(&rows);

    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if labels[u] == labels[v] {
                params.p_in
            } else {
                params.p_out
            };
            if rng.gen_range(0.0..1.0) < p {
                pairs.push((u, v));
            }
        }
    }
    let adj = undirected_adj(n, &pairs)?;
    let graph = Graph::new(features, adj, Some(labels), None, false)?;
    Dataset::new("two_blobs_node".into(), TaskLevel::Node, 2, vec![graph])
}

/// Stochastic block model over `classes` equal-sized blocks, with weak
/// class-mean feature signal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SbmParams {
    pub classes: usize,
    pub nodes_per_class: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub feature_dim: usize,
    pub feature_signal: f64,
    pub seed: u64,
}

impl Default for SbmParams {
    fn default() -> Self {
        Self {
            classes: 3,
            nodes_per_class: 16,
            p_in: 0.5,
            p_out: 0.05,
            feature_dim: 8,
            feature_signal: 0.5,
            seed: 0,
        }
    }
}

fn sbm(name: &str, params: &SbmParams) -> Result<Dataset> {
    if params.classes < 2 {
        return Err(Error::Degenerate("need at least 2 classes".into()));
    }
    if params.nodes_per_class < 4 {
        return Err(Error::Degenerate("need at least 4 nodes per class".into()));
    }
    let n = params.classes * params.nodes_per_class;
    let d = params.feature_dim;
    let labels: Vec<usize> = (0..n).map(|i| i / params.nodes_per_class).collect();
    let mut rng = rng_from_seed(params.seed);

    let mut rows = Vec::with_capacity(n);
    for &y in &labels {
        let mut row: Vec<f64> = (0..d).map(|_| gaussian(&mut rng)).collect();
        row[y % d] += params.feature_signal;
        rows.push(row);
    }
    let features = Dense::from_rows(&rows);

    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if labels[u] == labels[v] {
                params.p_in
            } else {
                params.p_out
            };
            if rng.gen_range(0.0..1.0) < p {
                pairs.push((u, v));
            }
        }
    }
    let adj = undirected_adj(n, &pairs)?;
    let graph = Graph::new(features, adj, Some(labels), None, false)?;
    Dataset::new(name.into(), TaskLevel::Node, params.classes, vec![graph])
}

pub fn homophilic_sbm(params: &SbmParams) -> Result<Dataset> {
    sbm("homophilic_sbm", params)
}

/// Same block model with cross-class edges dominating.
pub fn heterophilic_sbm(params: &SbmParams) -> Result<Dataset> {
    sbm("heterophilic_sbm", params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MotifKind {
    Cycle,
    Star,
    Path,
    Complete,
}

impl MotifKind {
    fn pairs(self, size: usize) -> Vec<(usize, usize)> {
        match self {
            MotifKind::Cycle => (0..size).map(|i| (i, (i + 1) % size)).collect(),
            MotifKind::Star => (1..size).map(|i| (0, i)).collect(),
            MotifKind::Path => (0..size - 1).map(|i| (i, i + 1)).collect(),
            MotifKind::Complete => (0..size)
                .flat_map(|u| ((u + 1)..size).map(move |v| (u, v)))
                .collect(),
        }
    }
}

/// Graph-level dataset whose classes are structural motifs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MotifParams {
    pub motifs: Vec<MotifKind>,
    pub num_graphs: usize,
    pub size_min: usize,
    pub size_max: usize,
    pub feature_dim: usize,
    pub noise: f64,
    pub seed: u64,
}

impl Default for MotifParams {
    fn default() -> Self {
        Self {
            motifs: vec![MotifKind::Cycle, MotifKind::Star],
            num_graphs: 30,
            size_min: 5,
            size_max: 10,
            feature_dim: 4,
            noise: 0.1,
            seed: 0,
        }
    }
}

pub fn motif_graphs(params: &MotifParams) -> Result<Dataset> {
    if params.motifs.len() < 2 {
        return Err(Error::Degenerate("need at least 2 motif classes".into()));
    }
    if params.num_graphs < 4 * params.motifs.len() {
        return Err(Error::Degenerate("need at least 4 graphs per class".into()));
    }
    if params.size_min < 3 || params.size_max < params.size_min {
        return Err(Error::Degenerate("motif sizes must be >= 3 and ordered".into()));
    }
    let mut rng = rng_from_seed(params.seed);
    let mut graphs = Vec::with_capacity(params.num_graphs);
    for i in 0..params.num_graphs {
        let class = i % params.motifs.len();
        let size = rng.gen_range(params.size_min..=params.size_max);
        let pairs = params.motifs[class].pairs(size);
        let adj = undirected_adj(size, &pairs)?;
        let mut features = Dense::filled(size, params.feature_dim, 1.0);
        for v in features.data_mut() {
            *v += params.noise * gaussian(&mut rng);
        }
        graphs.push(Graph::new(features, adj, None, Some(class), false)?);
    }
    Dataset::new(
        "motif_graphs".into(),
        TaskLevel::Graph,
        params.motifs.len(),
        graphs,
    )
}
