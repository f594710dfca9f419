//! SGD and Adam over a fixed set of parameter tensors.

use super::dense::Dense;
use super::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OptimizerKind {
    Sgd,
    Adam { beta1: f64, beta2: f64, eps: f64 },
}

impl OptimizerKind {
    /// Adam with the community-default moments.
    pub fn adam() -> Self {
        OptimizerKind::Adam {
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// Gradient-descent driver. Weight decay is decoupled (applied as
/// `lr * wd * p`), so a zero learning rate leaves parameters bit-identical
/// regardless of decay.
pub struct Optimizer {
    kind: OptimizerKind,
    learning_rate: f64,
    weight_decay: f64,
    step_count: u64,
    params: Vec<Tensor>,
    moments: Vec<(Dense, Dense)>,
}

impl Optimizer {
    pub fn new(kind: OptimizerKind, learning_rate: f64, weight_decay: f64, params: Vec<Tensor>) -> Self {
        assert!(learning_rate >= 0.0, "learning rate must be nonnegative");
        assert!(weight_decay >= 0.0, "weight decay must be nonnegative");
        let moments = params
            .iter()
            .map(|p| {
                let (r, c) = p.shape();
                (Dense::zeros(r, c), Dense::zeros(r, c))
            })
            .collect();
        Self {
            kind,
            learning_rate,
            weight_decay,
            step_count: 0,
            params,
            moments,
        }
    }

    pub fn adam(learning_rate: f64, weight_decay: f64, params: Vec<Tensor>) -> Self {
        Self::new(OptimizerKind::adam(), learning_rate, weight_decay, params)
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    /// Applies one update from the accumulated gradients, then clears them.
    /// Parameters without a gradient are left untouched.
    pub fn step(&mut self) {
        self.step_count += 1;
        let t = self.step_count;
        for (p, (m, v)) in self.params.iter().zip(self.moments.iter_mut()) {
            let Some(grad) = p.grad() else {
                continue;
            };
            let mut value = p.to_dense();
            match self.kind {
                OptimizerKind::Sgd => {
                    for ((x, &g), _) in value.data_mut().iter_mut().zip(grad.data()).zip(0..) {
                        *x -= self.learning_rate * (g + self.weight_decay * *x);
                    }
                }
                OptimizerKind::Adam { beta1, beta2, eps } => {
                    let bc1 = 1.0 - beta1.powi(t as i32);
                    let bc2 = 1.0 - beta2.powi(t as i32);
                    for i in 0..grad.len() {
                        let g = grad.data()[i];
                        m.data_mut()[i] = beta1 * m.data()[i] + (1.0 - beta1) * g;
                        v.data_mut()[i] = beta2 * v.data()[i] + (1.0 - beta2) * g * g;
                        let m_hat = m.data()[i] / bc1;
                        let v_hat = v.data()[i] / bc2;
                        let x = &mut value.data_mut()[i];
                        *x -= self.learning_rate
                            * (m_hat / (v_hat.sqrt() + eps) + self.weight_decay * *x);
                    }
                }
            }
            p.set_value(value);
            p.zero_grad();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autodiff::losses::mse;

    fn param() -> Tensor {
        Tensor::param(Dense::from_rows(&[vec![1.0, -2.0], vec![0.5, 3.0]]))
    }

    fn run_steps(opt_kind: OptimizerKind, lr: f64, wd: f64, steps: usize) -> Dense {
        let p = param();
        let target = Tensor::constant(Dense::zeros(2, 2));
        let mut opt = Optimizer::new(opt_kind, lr, wd, vec![p.clone()]);
        for _ in 0..steps {
            let loss = mse(&p, &target);
            loss.backward();
            opt.step();
        }
        p.to_dense()
    }

    #[test]
    fn zero_learning_rate_is_identity() {
        for kind in [OptimizerKind::Sgd, OptimizerKind::adam()] {
            let end = run_steps(kind, 0.0, 0.1, 5);
            let expected = param().to_dense();
            for (a, b) in end.data().iter().zip(expected.data()) {
                assert_eq!(a.to_bits(), b.to_bits(), "parameters must be bit-identical");
            }
        }
    }

    #[test]
    fn descends_toward_target() {
        let before: f64 = param().to_dense().data().iter().map(|v| v * v).sum();
        for kind in [OptimizerKind::Sgd, OptimizerKind::adam()] {
            let end = run_steps(kind, 0.05, 0.0, 50);
            let after: f64 = end.data().iter().map(|v| v * v).sum();
            assert!(after < 0.5 * before, "{kind:?} failed to descend");
        }
    }

    #[test]
    fn step_count_increases() {
        let p = param();
        let mut opt = Optimizer::adam(0.1, 0.0, vec![p]);
        assert_eq!(opt.step_count(), 0);
        opt.step();
        opt.step();
        assert_eq!(opt.step_count(), 2);
    }
}
