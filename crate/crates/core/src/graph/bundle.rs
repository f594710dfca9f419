//! On-disk graph bundle format.
//!
//! A bundle directory holds `manifest.json`, `nodes.csv`, `edges.csv`,
//! and, for graph-level datasets, `graphs.csv`. CSVs are UTF-8 and
//! comma-separated with a required header row; node ids are 0-based and
//! contiguous per graph; undirected edges are stored once and
//! materialized in both directions on load. Feature values are decimal
//! text written in shortest round-trip form, so a save/load cycle is
//! bit-exact.

use super::{degree_onehot_features, Dataset, Graph, TaskLevel};
use crate::autodiff::{Dense, SparseAdj};
use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    name: String,
    level: TaskLevel,
    num_classes: usize,
    feature_dim: usize,
    directed: bool,
}

fn read_to_string(path: &Path) -> Result<String> {
    if !path.exists() {
        return Err(Error::MissingFile(path.display().to_string()));
    }
    std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn parse_usize(field: &str, context: &str) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::BadStructure(format!("bad integer `{field}` in {context}")))
}

fn parse_f64(field: &str, context: &str) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::BadStructure(format!("bad number `{field}` in {context}")))?;
    if !v.is_finite() {
        return Err(Error::BadStructure(format!("non-finite value in {context}")));
    }
    Ok(v)
}

/// Loads and validates a bundle directory into a [`Dataset`].
/// Featureless bundles (`feature_dim = 0`) get one-hot degree features.
pub fn load_bundle(dir: &Path) -> Result<Dataset> {
    let manifest: Manifest = serde_json::from_str(&read_to_string(&dir.join("manifest.json"))?)
        .map_err(|e| Error::BadManifest(e.to_string()))?;

    // nodes.csv: graph_id, node_id, label_or_-1, f1..fd
    let nodes_path = dir.join("nodes.csv");
    if !nodes_path.exists() {
        return Err(Error::MissingFile(nodes_path.display().to_string()));
    }
    let mut nodes_reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_path(&nodes_path)
        .map_err(|e| Error::BadStructure(format!("nodes.csv: {e}")))?;
    let d = manifest.feature_dim;
    // per graph: (node_id, label, features)
    let mut node_rows: Vec<Vec<(usize, i64, Vec<f64>)>> = Vec::new();
    for (line, record) in nodes_reader.records().enumerate() {
        let record = record.map_err(|e| Error::BadStructure(format!("nodes.csv row {line}: {e}")))?;
        let ctx = format!("nodes.csv row {line}");
        if record.len() != 3 + d {
            let graph = record
                .get(0)
                .and_then(|f| f.trim().parse().ok())
                .unwrap_or(usize::MAX);
            let node = record
                .get(1)
                .and_then(|f| f.trim().parse().ok())
                .unwrap_or(usize::MAX);
            return Err(Error::RaggedFeatureRow {
                graph,
                node,
                expected: d,
                got: record.len().saturating_sub(3),
            });
        }
        let graph_id = parse_usize(&record[0], &ctx)?;
        let node_id = parse_usize(&record[1], &ctx)?;
        let label: i64 = record[2]
            .trim()
            .parse()
            .map_err(|_| Error::BadStructure(format!("bad label `{}` in {ctx}", &record[2])))?;
        let mut features = Vec::with_capacity(d);
        for j in 0..d {
            features.push(parse_f64(&record[3 + j], &ctx)?);
        }
        if node_rows.len() <= graph_id {
            node_rows.resize_with(graph_id + 1, Vec::new);
        }
        node_rows[graph_id].push((node_id, label, features));
    }
    if node_rows.is_empty() {
        return Err(Error::BadDataset("nodes.csv holds no rows".into()));
    }
    for (gid, rows) in node_rows.iter_mut().enumerate() {
        rows.sort_by_key(|&(id, _, _)| id);
        for (expect, &(got, _, _)) in rows.iter().enumerate() {
            if got != expect {
                return Err(Error::BadStructure(format!(
                    "graph {gid}: node ids not contiguous (expected {expect}, found {got})"
                )));
            }
        }
    }

    // edges.csv: graph_id, src, dst
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); node_rows.len()];
    let edges_path = dir.join("edges.csv");
    if !edges_path.exists() {
        return Err(Error::MissingFile(edges_path.display().to_string()));
    }
    let mut edges_reader =
        csv::Reader::from_path(&edges_path).map_err(|e| Error::BadStructure(format!("edges.csv: {e}")))?;
    for (line, record) in edges_reader.records().enumerate() {
        let record = record.map_err(|e| Error::BadStructure(format!("edges.csv row {line}: {e}")))?;
        let ctx = format!("edges.csv row {line}");
        if record.len() != 3 {
            return Err(Error::BadStructure(format!("{ctx}: expected 3 columns")));
        }
        let graph_id = parse_usize(&record[0], &ctx)?;
        let src = parse_usize(&record[1], &ctx)?;
        let dst = parse_usize(&record[2], &ctx)?;
        if graph_id >= node_rows.len() {
            return Err(Error::BadStructure(format!(
                "{ctx}: unknown graph id {graph_id}"
            )));
        }
        let n = node_rows[graph_id].len();
        for endpoint in [src, dst] {
            if endpoint >= n {
                return Err(Error::DanglingEdge {
                    graph: graph_id,
                    node: endpoint,
                    nodes: n,
                });
            }
        }
        edges[graph_id].push((src, dst));
    }

    // graphs.csv: graph_id, label (graph-level only)
    let mut graph_labels: Vec<Option<usize>> = vec![None; node_rows.len()];
    let graphs_path = dir.join("graphs.csv");
    if manifest.level == TaskLevel::Graph {
        if !graphs_path.exists() {
            return Err(Error::MissingFile(graphs_path.display().to_string()));
        }
        let mut reader = csv::Reader::from_path(&graphs_path)
            .map_err(|e| Error::BadStructure(format!("graphs.csv: {e}")))?;
        for (line, record) in reader.records().enumerate() {
            let record =
                record.map_err(|e| Error::BadStructure(format!("graphs.csv row {line}: {e}")))?;
            let ctx = format!("graphs.csv row {line}");
            let graph_id = parse_usize(&record[0], &ctx)?;
            let label = parse_usize(&record[1], &ctx)?;
            if graph_id >= node_rows.len() {
                return Err(Error::BadStructure(format!(
                    "{ctx}: unknown graph id {graph_id}"
                )));
            }
            if label >= manifest.num_classes {
                return Err(Error::LabelOutOfRange {
                    label: label as i64,
                    num_classes: manifest.num_classes,
                    context: ctx,
                });
            }
            graph_labels[graph_id] = Some(label);
        }
    }

    let mut graphs = Vec::with_capacity(node_rows.len());
    for (gid, rows) in node_rows.iter().enumerate() {
        let n = rows.len();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut pairs = Vec::new();
        for &(src, dst) in &edges[gid] {
            let key = if manifest.directed || src <= dst {
                (src, dst)
            } else {
                (dst, src)
            };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge {
                    graph: gid,
                    src,
                    dst,
                });
            }
            pairs.push(key);
        }
        let adj = if manifest.directed {
            SparseAdj::from_entries(n, pairs.iter().map(|&(u, v)| (u, v, 1.0)).collect())?
        } else {
            super::undirected_adj(n, &pairs)?
        };

        let mut node_labels = Vec::with_capacity(n);
        let mut any_label = false;
        for &(_, label, _) in rows {
            if label < -1 || label >= manifest.num_classes as i64 {
                return Err(Error::LabelOutOfRange {
                    label,
                    num_classes: manifest.num_classes,
                    context: format!("graph {gid} node labels"),
                });
            }
            if label >= 0 {
                any_label = true;
            }
            node_labels.push(label);
        }
        let node_labels = if manifest.level == TaskLevel::Node {
            if node_labels.iter().any(|&l| l < 0) {
                return Err(Error::BadDataset(format!(
                    "graph {gid}: node-level dataset with unlabeled nodes"
                )));
            }
            Some(node_labels.iter().map(|&l| l as usize).collect())
        } else if any_label {
            Some(
                node_labels
                    .iter()
                    .map(|&l| if l >= 0 { l as usize } else { 0 })
                    .collect(),
            )
        } else {
            None
        };

        let features = if d == 0 {
            degree_onehot_features(&adj)
        } else {
            Dense::from_rows(&rows.iter().map(|(_, _, f)| f.clone()).collect::<Vec<_>>())
        };
        graphs.push(Graph::new(
            features,
            adj,
            node_labels,
            graph_labels[gid],
            manifest.directed,
        )?);
    }

    Dataset::new(manifest.name, manifest.level, manifest.num_classes, graphs)
}

/// Writes a dataset as a bundle directory (creating it if needed).
pub fn save_bundle(ds: &Dataset, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
    let directed = ds.graphs().iter().any(Graph::directed);
    let manifest = Manifest {
        name: ds.name.clone(),
        level: ds.level,
        num_classes: ds.num_classes,
        feature_dim: ds.feature_dim(),
        directed,
    };
    let manifest_json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::BadManifest(e.to_string()))?;
    std::fs::write(dir.join("manifest.json"), manifest_json)
        .map_err(|e| Error::io("manifest.json", e))?;

    let d = ds.feature_dim();
    let mut nodes = String::from("graph_id,node_id,label");
    for j in 1..=d {
        let _ = write!(nodes, ",f{j}");
    }
    nodes.push('\n');
    let mut edges = String::from("graph_id,src,dst\n");
    for (gid, g) in ds.graphs().iter().enumerate() {
        for v in 0..g.num_nodes() {
            let label = g.node_labels().map_or(-1, |ls| ls[v] as i64);
            let _ = write!(nodes, "{gid},{v},{label}");
            for &x in g.features().row(v) {
                let _ = write!(nodes, ",{x}");
            }
            nodes.push('\n');
        }
        for &(r, c, _) in g.adj().entries() {
            if g.directed() || r <= c {
                let _ = writeln!(edges, "{gid},{r},{c}");
            }
        }
    }
    std::fs::write(dir.join("nodes.csv"), nodes).map_err(|e| Error::io("nodes.csv", e))?;
    std::fs::write(dir.join("edges.csv"), edges).map_err(|e| Error::io("edges.csv", e))?;

    if ds.level == TaskLevel::Graph {
        let mut graphs = String::from("graph_id,label\n");
        for (gid, g) in ds.graphs().iter().enumerate() {
            let _ = writeln!(graphs, "{gid},{}", g.graph_label().expect("validated"));
        }
        std::fs::write(dir.join("graphs.csv"), graphs).map_err(|e| Error::io("graphs.csv", e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::synth::{motif_graphs, two_blobs_node, MotifParams, TwoBlobsParams};

    fn write_minimal_bundle(dir: &Path, edges_body: &str) {
        std::fs::write(
            dir.join("manifest.json"),
            r#"{"name":"tiny","level":"node","num_classes":2,"feature_dim":2,"directed":false}"#,
        )
        .unwrap();
        std::fs::write(
            dir.join("nodes.csv"),
            "graph_id,node_id,label,f1,f2\n0,0,0,1.5,2.5\n0,1,1,0.25,-1\n0,2,0,3,4\n",
        )
        .unwrap();
        std::fs::write(dir.join("edges.csv"), edges_body).unwrap();
    }

    #[test]
    fn minimal_bundle_round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        write_minimal_bundle(tmp.path(), "graph_id,src,dst\n0,0,1\n0,1,2\n");
        let ds = load_bundle(tmp.path()).unwrap();
        assert_eq!(ds.num_items(), 3);
        assert_eq!(ds.graph(0).num_edges(), 2);
        assert_eq!(ds.graph(0).features()[(0, 1)], 2.5);
        assert_eq!(ds.graph(0).node_labels().unwrap(), &[0, 1, 0]);
    }

    #[test]
    fn dangling_edge_is_a_structural_error() {
        let tmp = tempfile::tempdir().unwrap();
        write_minimal_bundle(tmp.path(), "graph_id,src,dst\n0,0,99\n");
        match load_bundle(tmp.path()) {
            Err(Error::DanglingEdge { node: 99, nodes: 3, .. }) => {}
            other => panic!("expected dangling edge, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_distinct() {
        let tmp = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_bundle(tmp.path()),
            Err(Error::MissingFile(_))
        ));
    }

    #[test]
    fn ragged_row_is_distinct() {
        let tmp = tempfile::tempdir().unwrap();
        write_minimal_bundle(tmp.path(), "graph_id,src,dst\n");
        std::fs::write(
            tmp.path().join("nodes.csv"),
            "graph_id,node_id,label,f1,f2\n0,0,0,1.5\n",
        )
        .unwrap();
        assert!(matches!(
            load_bundle(tmp.path()),
            Err(Error::RaggedFeatureRow { expected: 2, got: 1, .. })
        ));
    }

    #[test]
    fn label_out_of_range_is_distinct() {
        let tmp = tempfile::tempdir().unwrap();
        write_minimal_bundle(tmp.path(), "graph_id,src,dst\n");
        std::fs::write(
            tmp.path().join("nodes.csv"),
            "graph_id,node_id,label,f1,f2\n0,0,7,1,2\n0,1,0,1,2\n",
        )
        .unwrap();
        assert!(matches!(
            load_bundle(tmp.path()),
            Err(Error::LabelOutOfRange { label: 7, .. })
        ));
    }

    #[test]
    fn duplicate_edge_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        write_minimal_bundle(tmp.path(), "graph_id,src,dst\n0,0,1\n0,1,0\n");
        assert!(matches!(
            load_bundle(tmp.path()),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn node_dataset_round_trip_is_bit_exact() {
        let ds = two_blobs_node(&TwoBlobsParams::default()).unwrap();
        let tmp = tempfile::tempdir().unwrap();
        save_bundle(&ds, tmp.path()).unwrap();
        let back = load_bundle(tmp.path()).unwrap();
        assert_eq!(back.num_classes, ds.num_classes);
        assert_eq!(back.level, ds.level);
        let (a, b) = (ds.graph(0), back.graph(0));
        assert_eq!(a.adj(), b.adj());
        assert_eq!(a.node_labels(), b.node_labels());
        for (x, y) in a.features().data().iter().zip(b.features().data()) {
            assert_eq!(x.to_bits(), y.to_bits(), "features must round-trip bit-exactly");
        }
    }

    #[test]
    fn graph_dataset_round_trip() {
        let ds = motif_graphs(&MotifParams::default()).unwrap();
        let tmp = tempfile::tempdir().unwrap();
        save_bundle(&ds, tmp.path()).unwrap();
        let back = load_bundle(tmp.path()).unwrap();
        assert_eq!(back.graphs().len(), ds.graphs().len());
        for (a, b) in ds.graphs().iter().zip(back.graphs()) {
            assert_eq!(a.graph_label(), b.graph_label());
            assert_eq!(a.adj(), b.adj());
            for (x, y) in a.features().data().iter().zip(b.features().data()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
    }
}
