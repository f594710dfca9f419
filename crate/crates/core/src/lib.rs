//! Graph prompt learning toolkit.
//!
//! The crate trains small graph neural networks with self-supervised
//! pretexts, freezes them, and adapts them to few-shot node/graph
//! classification through learnable graph prompts. Everything runs on the
//! CPU over 64-bit floats and is deterministic under a root seed.
//!
//! Layering, bottom up:
//!
//! - [`autodiff`]: define-by-run reverse-mode differentiation over dense
//!   matrices and sparse adjacency products, plus SGD/Adam.
//! - [`graph`]: graph/dataset model, bundle IO, synthetic generators,
//!   induced subgraphs, manipulations, and the k-shot sampler.
//! - [`backbone`]: the shared GCN encoder and parameter accounting.
//! - [`pretrain`]: six self-supervised objectives producing frozen encoders.
//! - [`prompt`]: five prompt methods tuned against a frozen encoder.
//! - [`eval`]: metrics, baselines, transfer tables, random search.
//! - [`flexibility`]: the prompt-vs-manipulation error-bound probe.
//! - [`cli`] and friends: the benchmark driver, checkpoints, and reports.

pub mod autodiff;
pub mod backbone;
pub mod checkpoint;
pub mod cli;
pub mod config;
pub mod error;
pub mod eval;
pub mod flexibility;
pub mod graph;
pub mod pretrain;
pub mod profile;
pub mod prompt;
pub mod report;
pub mod seed;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
