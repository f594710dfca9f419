//! Central finite-difference gradient checking.

use super::dense::Dense;
use super::tensor::Tensor;

/// Compares the backward pass of the scalar function `f` against central
/// finite differences at `x`, returning the maximum relative error
/// `|analytic - cd| / (|analytic| + |cd| + 1e-12)` over entries.
///
/// `f` is re-evaluated with perturbed copies of `x`, so it must rebuild
/// its computation from the tensor's current values (define-by-run makes
/// every closure over ops do that naturally).
pub fn grad_check<F: Fn(&Tensor) -> Tensor>(f: F, x: &Tensor, eps: f64) -> f64 {
    assert!(eps > 0.0, "grad_check: eps must be positive");
    assert!(x.requires_grad(), "grad_check: x must require gradients");
    x.zero_grad();
    let loss = f(x);
    assert_eq!(loss.shape(), (1, 1), "grad_check: f must be scalar-valued");
    loss.backward();
    let analytic = x
        .grad()
        .unwrap_or_else(|| Dense::zeros(x.rows(), x.cols()));

    let base = x.to_dense();
    let mut max_rel = 0.0_f64;
    for i in 0..base.len() {
        let mut plus = base.clone();
        plus.data_mut()[i] += eps;
        x.set_value(plus);
        let up = f(x).item();

        let mut minus = base.clone();
        minus.data_mut()[i] -= eps;
        x.set_value(minus);
        let down = f(x).item();

        let cd = (up - down) / (2.0 * eps);
        let a = analytic.data()[i];
        let rel = (a - cd).abs() / (a.abs() + cd.abs() + 1e-12);
        max_rel = max_rel.max(rel);
    }
    x.set_value(base);
    x.zero_grad();
    max_rel
}

/// Runs [`grad_check`] for each parameter of a multi-parameter scalar
/// function and returns the worst relative error.
pub fn grad_check_params<F: Fn() -> Tensor>(f: F, params: &[Tensor], eps: f64) -> f64 {
    let mut worst = 0.0_f64;
    for p in params {
        let err = grad_check(|_| f(), p, eps);
        worst = worst.max(err);
    }
    worst
}
