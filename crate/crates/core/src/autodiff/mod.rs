//! Minimal reverse-mode automatic differentiation over dense matrices
//! and sparse adjacency products, with SGD/Adam optimizers.

pub mod dense;
pub mod gradcheck;
pub mod losses;
pub mod optim;
pub mod sparse;
pub mod tensor;

pub use dense::Dense;
pub use gradcheck::{grad_check, grad_check_params};
pub use optim::{Optimizer, OptimizerKind};
pub use sparse::SparseAdj;
pub use tensor::{gaussian, randn_dense, xavier_dense, GradStore, Tensor};

#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use proptest::prelude::*;
    use rand::Rng;

    fn random_tensor(rows: usize, cols: usize, seed: u64) -> Tensor {
        let mut rng = rng_from_seed(seed);
        Tensor::param(randn_dense(rows, cols, 1.0, &mut rng))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn elementwise_ops_pass_grad_check(rows in 1usize..16, cols in 1usize..16, seed in 0u64..1000) {
            let x = random_tensor(rows, cols, seed);
            for f in [
                (|x: &Tensor| x.relu().sum_all()) as fn(&Tensor) -> Tensor,
                |x| x.sigmoid().mean_all(),
                |x| x.tanh().sum_all(),
                |x| x.mul(x).mean_all(),
            ] {
                let err = grad_check(f, &x, 1e-5);
                prop_assert!(err < 1e-4, "err {}", err);
            }
        }

        #[test]
        fn matmul_passes_grad_check(n in 1usize..8, k in 1usize..8, m in 1usize..8, seed in 0u64..1000) {
            let a = random_tensor(n, k, seed);
            let b = Tensor::constant(randn_dense(k, m, 1.0, &mut rng_from_seed(seed ^ 0xff)));
            let err = grad_check(|a| a.matmul(&b).tanh().sum_all(), &a, 1e-5);
            prop_assert!(err < 1e-4, "err {}", err);
        }

        #[test]
        fn spmm_matches_densified_product(n in 1usize..32, cols in 1usize..6, density in 0.0f64..0.5, seed in 0u64..1000) {
            let mut rng = rng_from_seed(seed);
            let mut entries = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    if rng.gen_range(0.0..1.0) < density {
                        entries.push((r, c, rng.gen_range(-2.0..2.0)));
                    }
                }
            }
            let adj = SparseAdj::from_entries(n, entries).unwrap();
            let h = Tensor::constant(randn_dense(n, cols, 1.0, &mut rng));
            let sparse = adj.matmul(&h).to_dense();
            let dense = adj.densify().matmul(&h.value());
            prop_assert!(sparse.max_abs_diff(&dense) < 1e-12);
        }

        #[test]
        fn spmm_passes_grad_check(n in 2usize..8, cols in 1usize..4, seed in 0u64..1000) {
            let mut rng = rng_from_seed(seed);
            let mut entries = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    if rng.gen_range(0.0..1.0) < 0.4 {
                        entries.push((r, c, rng.gen_range(-2.0..2.0)));
                    }
                }
            }
            let adj = SparseAdj::from_entries(n, entries).unwrap();
            let h = random_tensor(n, cols, seed ^ 0xabc);
            let err = grad_check(|h| adj.matmul(h).tanh().sum_all(), &h, 1e-5);
            prop_assert!(err < 1e-4, "err {}", err);
        }

        #[test]
        fn forward_is_deterministic(rows in 1usize..10, cols in 1usize..10, seed in 0u64..1000) {
            let run = || {
                let x = random_tensor(rows, cols, seed);
                x.sigmoid().matmul(&x.t()).mean_all().item()
            };
            prop_assert_eq!(run().to_bits(), run().to_bits());
        }
    }
}
