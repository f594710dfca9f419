//! Sparse adjacency matrices and the sparse-dense product.

use super::dense::Dense;
use super::tensor::Tensor;
use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Sparse square matrix in coordinate form, used for graph adjacency.
///
/// Entries are kept sorted by `(row, col)` with no duplicates, so two
/// structurally equal matrices compare equal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseAdj {
    n: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl SparseAdj {
    /// Builds a validated adjacency: indices in range, finite weights, no
    /// duplicate `(row, col)` pairs.
    pub fn from_entries(n: usize, mut entries: Vec<(usize, usize, f64)>) -> Result<Self, Error> {
        for &(r, c, w) in &entries {
            if r >= n || c >= n {
                return Err(Error::BadStructure(format!(
                    "entry ({r}, {c}) out of range for {n} nodes"
                )));
            }
            if !w.is_finite() {
                return Err(Error::BadStructure(format!(
                    "non-finite weight at ({r}, {c})"
                )));
            }
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::BadStructure(format!(
                "duplicate entry at ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self { n, entries })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            entries: Vec::new(),
        }
    }

    /// Identity pattern: self-loop of weight 1 on every node.
    pub fn eye(n: usize) -> Self {
        Self {
            n,
            entries: (0..n).map(|i| (i, i, 1.0)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn densify(&self) -> Dense {
        let mut m = Dense::zeros(self.n, self.n);
        for &(r, c, w) in &self.entries {
            m[(r, c)] = w;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        let set: HashSet<(usize, usize)> = self.entries.iter().map(|&(r, c, _)| (r, c)).collect();
        self.entries.iter().all(|&(r, c, _)| set.contains(&(c, r)))
    }

    pub fn has_entry(&self, r: usize, c: usize) -> bool {
        self.entries
            .binary_search_by_key(&(r, c), |&(er, ec, _)| (er, ec))
            .is_ok()
    }

    /// Weighted out-degree per node.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for &(r, _, w) in &self.entries {
            d[r] += w;
        }
        d
    }

    /// Sparse-dense product `self * h` as a differentiable op.
    ///
    /// The adjacency is a constant of the computation; the backward pass
    /// scatters gradients along the entries into `h`.
    pub fn matmul(&self, h: &Tensor) -> Tensor {
        assert_eq!(
            self.n,
            h.rows(),
            "spmm: adjacency has {} nodes but h has {} rows",
            self.n,
            h.rows()
        );
        let cols = h.cols();
        let mut out = Dense::zeros(self.n, cols);
        {
            let hv = h.value();
            for &(r, c, w) in &self.entries {
                let src = hv.row(c);
                let dst = &mut out.data_mut()[r * cols..(r + 1) * cols];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d += w * s;
                }
            }
        }
        let entries = self.entries.clone();
        let h2 = h.clone();
        Tensor::from_unary_op("spmm", out, h, move |g, store| {
            let mut dh = Dense::zeros(h2.rows(), h2.cols());
            let cols = h2.cols();
            for &(r, c, w) in &entries {
                let gr = g.row(r);
                let dst = &mut dh.data_mut()[c * cols..(c + 1) * cols];
                for (d, &s) in dst.iter_mut().zip(gr) {
                    *d += w * s;
                }
            }
            store.accumulate(&h2, dh);
        })
    }
}
