//! Crate-wide error type for data-dependent failures.
//!
//! Shape mismatches inside the autodiff layer are programming errors and
//! panic instead; everything that depends on user data, files, or task
//! feasibility surfaces here.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("missing file: {0}")]
    MissingFile(String),

    #[error("malformed manifest: {0}")]
    BadManifest(String),

    #[error("ragged feature row: graph {graph}, node {node}: expected {expected} features, got {got}")]
    RaggedFeatureRow {
        graph: usize,
        node: usize,
        expected: usize,
        got: usize,
    },

    #[error("dangling edge endpoint: graph {graph} references node {node} but has {nodes} nodes")]
    DanglingEdge {
        graph: usize,
        node: usize,
        nodes: usize,
    },

    #[error("label {label} out of range for {num_classes} classes ({context})")]
    LabelOutOfRange {
        label: i64,
        num_classes: usize,
        context: String,
    },

    #[error("duplicate edge ({src}, {dst}) in graph {graph}")]
    DuplicateEdge { graph: usize, src: usize, dst: usize },

    #[error("invalid graph structure: {0}")]
    BadStructure(String),

    #[error("invalid dataset: {0}")]
    BadDataset(String),

    #[error("degenerate parameter: {0}")]
    Degenerate(String),

    #[error("k-shot sampling infeasible: class {class} has {available} eligible items, need {needed}")]
    KShotInfeasible {
        class: usize,
        available: usize,
        needed: usize,
    },

    #[error("{0} is infeasible: {1}")]
    Infeasible(&'static str, String),

    #[error("non-finite loss at epoch {epoch} ({context})")]
    NonFiniteLoss { epoch: usize, context: String },

    #[error("checkpoint integrity error: {0}")]
    CheckpointIntegrity(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("all {0} search trials failed")]
    AllTrialsFailed(usize),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
