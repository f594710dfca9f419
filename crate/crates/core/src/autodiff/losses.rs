//! Scalar loss functions over tensors.

use super::dense::Dense;
use super::tensor::{stable_sigmoid, Tensor};

/// Mean softmax cross-entropy of `logits` (NxC) against class indices.
pub fn softmax_cross_entropy(logits: &Tensor, labels: &[usize]) -> Tensor {
    let (n, c) = logits.shape();
    assert!(n > 0, "softmax_cross_entropy: empty batch");
    assert_eq!(labels.len(), n, "one label per logits row");
    for &y in labels {
        assert!(y < c, "label {y} out of range for {c} classes");
    }
    let mut probs = Dense::zeros(n, c);
    let mut total = 0.0;
    {
        let v = logits.value();
        for i in 0..n {
            let row = v.row(i);
            let m = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mut z = 0.0;
            for (j, &x) in row.iter().enumerate() {
                let e = (x - m).exp();
                probs[(i, j)] = e;
                z += e;
            }
            for j in 0..c {
                probs[(i, j)] /= z;
            }
            total += m + z.ln() - row[labels[i]];
        }
    }
    let loss = total / n as f64;
    let a = logits.clone();
    let labels = labels.to_vec();
    Tensor::from_unary_op(
        "softmax_cross_entropy",
        Dense::scalar(loss),
        logits,
        move |g, store| {
            let s = g.data()[0] / n as f64;
            let mut da = probs.clone();
            for (i, &y) in labels.iter().enumerate() {
                da[(i, y)] -= 1.0;
            }
            for v in da.data_mut() {
                *v *= s;
            }
            store.accumulate(&a, da);
        },
    )
}

/// Mean binary cross-entropy over all entries, computed from logits with
/// the numerically stable form.
pub fn bce_with_logits(logits: &Tensor, targets: &Dense) -> Tensor {
    let (n, c) = logits.shape();
    assert!(n * c > 0, "bce_with_logits: empty batch");
    assert_eq!(logits.shape(), targets.shape(), "bce_with_logits shape mismatch");
    assert!(
        targets.data().iter().all(|&t| (0.0..=1.0).contains(&t)),
        "bce_with_logits: targets must lie in [0, 1]"
    );
    let count = (n * c) as f64;
    let mut total = 0.0;
    {
        let v = logits.value();
        for (&x, &t) in v.data().iter().zip(targets.data()) {
            total += x.max(0.0) - x * t + (-x.abs()).exp().ln_1p();
        }
    }
    let a = logits.clone();
    let xv = logits.to_dense();
    let targets = targets.clone();
    Tensor::from_unary_op(
        "bce_with_logits",
        Dense::scalar(total / count),
        logits,
        move |g, store| {
            let s = g.data()[0] / count;
            let mut da = xv.clone();
            for (d, &t) in da.data_mut().iter_mut().zip(targets.data()) {
                *d = s * (stable_sigmoid(*d) - t);
            }
            store.accumulate(&a, da);
        },
    )
}

/// Mean squared error over all entries; gradients flow to both sides.
pub fn mse(pred: &Tensor, target: &Tensor) -> Tensor {
    let (n, c) = pred.shape();
    assert!(n * c > 0, "mse: empty batch");
    assert_eq!(pred.shape(), target.shape(), "mse shape mismatch");
    let count = (n * c) as f64;
    let mut total = 0.0;
    {
        let (pv, tv) = (pred.value(), target.value());
        for (&p, &t) in pv.data().iter().zip(tv.data()) {
            total += (p - t) * (p - t);
        }
    }
    let (a, b) = (pred.clone(), target.clone());
    let diff: Vec<f64> = {
        let (pv, tv) = (pred.value(), target.value());
        pv.data().iter().zip(tv.data()).map(|(&p, &t)| p - t).collect()
    };
    Tensor::from_binary_op(
        "mse",
        Dense::scalar(total / count),
        pred,
        target,
        move |g, store| {
            let s = 2.0 * g.data()[0] / count;
            let da = Dense::from_vec(n, c, diff.iter().map(|&d| s * d).collect());
            store.accumulate(&b, da.map(|v| -v));
            store.accumulate(&a, da);
        },
    )
}

/// Mean of `(1 - cos(pred_i, target_i))^gamma` over rows; the scaled
/// cosine error used for feature reconstruction. Built from primitive ops
/// so its gradient is covered by their rules.
pub fn cosine_error(pred: &Tensor, target: &Tensor, gamma: f64) -> Tensor {
    assert_eq!(pred.shape(), target.shape(), "cosine_error shape mismatch");
    assert!(gamma >= 1.0, "cosine_error: gamma must be >= 1");
    let pn = pred.l2_normalize_rows();
    let tn = target.l2_normalize_rows();
    let cos = pn.mul(&tn).row_sums();
    let err = cos.scale(-1.0).add_scalar(1.0);
    if gamma == 1.0 {
        err.mean_all()
    } else {
        err.powf_const(gamma).mean_all()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_logits_cost_ln_c() {
        for c in [2, 3, 7] {
            let logits = Tensor::param(Dense::zeros(4, c));
            let loss = softmax_cross_entropy(&logits, &[0, 1 % c, 0, c - 1]);
            assert!((loss.item() - (c as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn bce_zero_logit_is_ln_2() {
        let logits = Tensor::param(Dense::scalar(0.0));
        let loss = bce_with_logits(&logits, &Dense::scalar(1.0));
        assert!((loss.item() - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn cosine_error_perfect_and_antipodal() {
        let x = Tensor::constant(Dense::from_rows(&[vec![1.0, 2.0], vec![-3.0, 0.5]]));
        let same = cosine_error(&x, &x, 2.0);
        assert!(same.item().abs() < 1e-9);
        let neg = x.scale(-1.0);
        let anti = cosine_error(&neg, &x, 2.0);
        assert!((anti.item() - 4.0).abs() < 1e-9, "(1 - (-1))^2 = 4");
        let anti3 = cosine_error(&neg, &x, 3.0);
        assert!((anti3.item() - 8.0).abs() < 1e-9);
    }

    #[test]
    #[should_panic(expected = "label 3 out of range")]
    fn invalid_class_index_panics() {
        let logits = Tensor::param(Dense::zeros(1, 3));
        softmax_cross_entropy(&logits, &[3]);
    }

    #[test]
    #[should_panic(expected = "empty batch")]
    fn empty_batch_panics() {
        let logits = Tensor::param(Dense::zeros(0, 3));
        softmax_cross_entropy(&logits, &[]);
    }
}
