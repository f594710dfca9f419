//! Define-by-run reverse-mode automatic differentiation.
//!
//! Every operation records its inputs and a backward closure on the output
//! node; the graph is rebuilt each forward pass, which keeps methods that
//! change topology per step (augmentations, prompt insertion) trivially
//! correct. A graph and its tensors are confined to one thread.
//!
//! Shape mismatches are programming errors and panic. Non-finite values
//! are detected after every op in debug builds and at every leaf creation.

use super::dense::Dense;
use rand::Rng;
use std::cell::{Ref, RefCell};
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

type BackwardFn = Rc<dyn Fn(&Dense, &mut GradStore)>;

struct Node {
    value: Dense,
    grad: Option<Dense>,
    requires_grad: bool,
    parents: Vec<Tensor>,
    backward: Option<BackwardFn>,
}

/// Handle to a node of the computation graph. Cloning is cheap and
/// aliases the same node.
#[derive(Clone)]
pub struct Tensor {
    node: Rc<RefCell<Node>>,
}

/// Pass-local gradient accumulator used during [`Tensor::backward`].
pub struct GradStore {
    grads: HashMap<usize, Dense>,
}

impl GradStore {
    fn new() -> Self {
        Self {
            grads: HashMap::new(),
        }
    }

    /// Adds `g` to the pending gradient of `t`, skipping subgraphs that
    /// do not require gradients.
    pub fn accumulate(&mut self, t: &Tensor, g: Dense) {
        if !t.requires_grad() {
            return;
        }
        debug_assert_eq!(t.shape(), g.shape(), "gradient shape mismatch");
        match self.grads.entry(t.key()) {
            std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign(&g),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(g);
            }
        }
    }

    fn take(&mut self, key: usize) -> Option<Dense> {
        self.grads.remove(&key)
    }
}

impl Tensor {
    pub fn leaf(value: Dense, requires_grad: bool) -> Self {
        assert!(
            value.all_finite(),
            "tensor created with non-finite values ({}x{})",
            value.rows(),
            value.cols()
        );
        Self {
            node: Rc::new(RefCell::new(Node {
                value,
                grad: None,
                requires_grad,
                parents: Vec::new(),
                backward: None,
            })),
        }
    }

    pub fn param(value: Dense) -> Self {
        Self::leaf(value, true)
    }

    pub fn constant(value: Dense) -> Self {
        Self::leaf(value, false)
    }

    pub fn scalar(v: f64) -> Self {
        Self::constant(Dense::scalar(v))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::constant(Dense::zeros(rows, cols))
    }

    fn key(&self) -> usize {
        Rc::as_ptr(&self.node) as usize
    }

    pub fn value(&self) -> Ref<'_, Dense> {
        Ref::map(self.node.borrow(), |n| &n.value)
    }

    pub fn to_dense(&self) -> Dense {
        self.node.borrow().value.clone()
    }

    pub fn rows(&self) -> usize {
        self.node.borrow().value.rows()
    }

    pub fn cols(&self) -> usize {
        self.node.borrow().value.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.node.borrow().value.shape()
    }

    pub fn requires_grad(&self) -> bool {
        self.node.borrow().requires_grad
    }

    pub fn grad(&self) -> Option<Dense> {
        self.node.borrow().grad.clone()
    }

    pub fn zero_grad(&self) {
        self.node.borrow_mut().grad = None;
    }

    /// Scalar value of a 1x1 tensor.
    pub fn item(&self) -> f64 {
        let n = self.node.borrow();
        assert_eq!(n.value.shape(), (1, 1), "item() on non-scalar tensor");
        n.value.data()[0]
    }

    /// Replaces the values of a leaf tensor (optimizer updates, finite
    /// differencing). Panics on non-leaf tensors or shape changes.
    pub fn set_value(&self, value: Dense) {
        let mut n = self.node.borrow_mut();
        assert!(n.parents.is_empty(), "set_value on non-leaf tensor");
        assert_eq!(n.value.shape(), value.shape(), "set_value shape mismatch");
        assert!(value.all_finite(), "set_value with non-finite values");
        n.value = value;
    }

    /// A new constant leaf holding a copy of the current values.
    pub fn detach(&self) -> Tensor {
        Tensor::constant(self.to_dense())
    }

    fn finish_op(name: &'static str, value: Dense, parents: Vec<Tensor>, back: BackwardFn) -> Tensor {
        if cfg!(debug_assertions) && !value.all_finite() {
            panic!("op `{name}` produced non-finite values");
        }
        let requires_grad = parents.iter().any(Tensor::requires_grad);
        if !requires_grad {
            return Tensor::constant(value);
        }
        Tensor {
            node: Rc::new(RefCell::new(Node {
                value,
                grad: None,
                requires_grad: true,
                parents,
                backward: Some(back),
            })),
        }
    }

    pub(crate) fn from_unary_op(
        name: &'static str,
        value: Dense,
        parent: &Tensor,
        back: impl Fn(&Dense, &mut GradStore) + 'static,
    ) -> Tensor {
        Self::finish_op(name, value, vec![parent.clone()], Rc::new(back))
    }

    pub(crate) fn from_binary_op(
        name: &'static str,
        value: Dense,
        a: &Tensor,
        b: &Tensor,
        back: impl Fn(&Dense, &mut GradStore) + 'static,
    ) -> Tensor {
        Self::finish_op(name, value, vec![a.clone(), b.clone()], Rc::new(back))
    }

    pub(crate) fn from_multi_op(
        name: &'static str,
        value: Dense,
        parents: Vec<Tensor>,
        back: impl Fn(&Dense, &mut GradStore) + 'static,
    ) -> Tensor {
        Self::finish_op(name, value, parents, Rc::new(back))
    }

    /// Backpropagates from a scalar loss. Every reachable node with
    /// `requires_grad` accumulates `d loss / d node` into its `grad`
    /// buffer; repeated calls without `zero_grad` keep accumulating.
    pub fn backward(&self) {
        assert_eq!(self.shape(), (1, 1), "backward() requires a scalar loss");
        if !self.requires_grad() {
            return;
        }
        let order = self.reverse_topo();
        let mut store = GradStore::new();
        store.grads.insert(self.key(), Dense::scalar(1.0));
        for t in order {
            let Some(g) = store.take(t.key()) else {
                continue;
            };
            let back = {
                let mut n = t.node.borrow_mut();
                if n.requires_grad {
                    match &mut n.grad {
                        Some(acc) => acc.add_assign(&g),
                        slot => *slot = Some(g.clone()),
                    }
                }
                n.backward.clone()
            };
            if let Some(back) = back {
                back(&g, &mut store);
            }
        }
    }

    /// Nodes reachable from `self`, ordered so every consumer precedes
    /// its inputs (reverse postorder of an iterative DFS).
    fn reverse_topo(&self) -> Vec<Tensor> {
        let mut post: Vec<Tensor> = Vec::new();
        let mut visited: HashSet<usize> = HashSet::new();
        let mut stack: Vec<(Tensor, usize)> = vec![(self.clone(), 0)];
        visited.insert(self.key());
        while let Some((t, idx)) = stack.pop() {
            let next = {
                let n = t.node.borrow();
                n.parents.get(idx).cloned()
            };
            match next {
                Some(p) => {
                    stack.push((t, idx + 1));
                    if visited.insert(p.key()) {
                        stack.push((p, 0));
                    }
                }
                None => post.push(t),
            }
        }
        post.reverse();
        post
    }

    // ---- arithmetic ops ----

    pub fn matmul(&self, other: &Tensor) -> Tensor {
        let value = self.value().matmul(&other.value());
        let (a, b) = (self.clone(), other.clone());
        let (av, bv) = (self.to_dense(), other.to_dense());
        Tensor::from_binary_op("matmul", value, self, other, move |g, store| {
            store.accumulate(&a, g.matmul(&bv.transpose()));
            store.accumulate(&b, av.transpose().matmul(g));
        })
    }

    pub fn t(&self) -> Tensor {
        let value = self.value().transpose();
        let a = self.clone();
        Tensor::from_unary_op("transpose", value, self, move |g, store| {
            store.accumulate(&a, g.transpose());
        })
    }

    fn zip_same_shape(&self, other: &Tensor, name: &'static str, f: impl Fn(f64, f64) -> f64) -> Dense {
        let (av, bv) = (self.value(), other.value());
        assert_eq!(av.shape(), bv.shape(), "{name}: operand shapes differ");
        let data = av
            .data()
            .iter()
            .zip(bv.data())
            .map(|(&x, &y)| f(x, y))
            .collect();
        Dense::from_vec(av.rows(), av.cols(), data)
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let value = self.zip_same_shape(other, "add", |x, y| x + y);
        let (a, b) = (self.clone(), other.clone());
        Tensor::from_binary_op("add", value, self, other, move |g, store| {
            store.accumulate(&a, g.clone());
            store.accumulate(&b, g.clone());
        })
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let value = self.zip_same_shape(other, "sub", |x, y| x - y);
        let (a, b) = (self.clone(), other.clone());
        Tensor::from_binary_op("sub", value, self, other, move |g, store| {
            store.accumulate(&a, g.clone());
            store.accumulate(&b, g.map(|v| -v));
        })
    }

    /// Elementwise (Hadamard) product.
    pub fn mul(&self, other: &Tensor) -> Tensor {
        let value = self.zip_same_shape(other, "mul", |x, y| x * y);
        let (a, b) = (self.clone(), other.clone());
        let (av, bv) = (self.to_dense(), other.to_dense());
        Tensor::from_binary_op("mul", value, self, other, move |g, store| {
            let mut da = g.clone();
            for (d, &s) in da.data_mut().iter_mut().zip(bv.data()) {
                *d *= s;
            }
            let mut db = g.clone();
            for (d, &s) in db.data_mut().iter_mut().zip(av.data()) {
                *d *= s;
            }
            store.accumulate(&a, da);
            store.accumulate(&b, db);
        })
    }

    /// Adds a 1xC row vector to every row.
    pub fn add_row(&self, row: &Tensor) -> Tensor {
        let (n, c) = self.shape();
        assert_eq!(row.shape(), (1, c), "add_row: row must be 1x{c}");
        let mut value = self.to_dense();
        {
            let rv = row.value();
            for i in 0..n {
                for j in 0..c {
                    value[(i, j)] += rv.data()[j];
                }
            }
        }
        let (a, r) = (self.clone(), row.clone());
        Tensor::from_binary_op("add_row", value, self, row, move |g, store| {
            store.accumulate(&a, g.clone());
            let mut dr = Dense::zeros(1, g.cols());
            for i in 0..g.rows() {
                for (j, &v) in g.row(i).iter().enumerate() {
                    dr[(0, j)] += v;
                }
            }
            store.accumulate(&r, dr);
        })
    }

    /// Multiplies every row elementwise by a 1xC row vector.
    pub fn mul_row(&self, row: &Tensor) -> Tensor {
        let (n, c) = self.shape();
        assert_eq!(row.shape(), (1, c), "mul_row: row must be 1x{c}");
        let mut value = self.to_dense();
        {
            let rv = row.value();
            for i in 0..n {
                for j in 0..c {
                    value[(i, j)] *= rv.data()[j];
                }
            }
        }
        let (a, r) = (self.clone(), row.clone());
        let (av, rv) = (self.to_dense(), row.to_dense());
        Tensor::from_binary_op("mul_row", value, self, row, move |g, store| {
            let mut da = g.clone();
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    da[(i, j)] *= rv.data()[j];
                }
            }
            store.accumulate(&a, da);
            let mut dr = Dense::zeros(1, g.cols());
            for i in 0..g.rows() {
                for j in 0..g.cols() {
                    dr[(0, j)] += g[(i, j)] * av[(i, j)];
                }
            }
            store.accumulate(&r, dr);
        })
    }

    /// Adds a same-shape constant matrix (no gradient to the constant).
    pub fn add_const(&self, c: &Dense) -> Tensor {
        assert_eq!(self.shape(), c.shape(), "add_const shape mismatch");
        let mut value = self.to_dense();
        value.add_assign(c);
        let a = self.clone();
        Tensor::from_unary_op("add_const", value, self, move |g, store| {
            store.accumulate(&a, g.clone());
        })
    }

    pub fn scale(&self, c: f64) -> Tensor {
        let value = self.value().map(|v| c * v);
        let a = self.clone();
        Tensor::from_unary_op("scale", value, self, move |g, store| {
            store.accumulate(&a, g.map(|v| c * v));
        })
    }

    pub fn add_scalar(&self, c: f64) -> Tensor {
        let value = self.value().map(|v| v + c);
        let a = self.clone();
        Tensor::from_unary_op("add_scalar", value, self, move |g, store| {
            store.accumulate(&a, g.clone());
        })
    }

    /// Elementwise power with a constant exponent. For non-integer
    /// exponents the inputs must be nonnegative.
    pub fn powf_const(&self, p: f64) -> Tensor {
        if p.fract() != 0.0 {
            assert!(
                self.value().data().iter().all(|&v| v >= 0.0),
                "powf_const: fractional exponent on negative input"
            );
        }
        let value = self.value().map(|v| v.powf(p));
        let a = self.clone();
        let av = self.to_dense();
        Tensor::from_unary_op("powf_const", value, self, move |g, store| {
            let mut da = g.clone();
            for (d, &x) in da.data_mut().iter_mut().zip(av.data()) {
                let slope = p * x.powf(p - 1.0);
                *d *= if slope.is_finite() { slope } else { 0.0 };
            }
            store.accumulate(&a, da);
        })
    }

    pub fn relu(&self) -> Tensor {
        let value = self.value().map(|v| v.max(0.0));
        let a = self.clone();
        let av = self.to_dense();
        Tensor::from_unary_op("relu", value, self, move |g, store| {
            let mut da = g.clone();
            for (d, &x) in da.data_mut().iter_mut().zip(av.data()) {
                if x <= 0.0 {
                    *d = 0.0;
                }
            }
            store.accumulate(&a, da);
        })
    }

    pub fn sigmoid(&self) -> Tensor {
        let value = self.value().map(stable_sigmoid);
        let a = self.clone();
        let yv = value.clone();
        Tensor::from_unary_op("sigmoid", value, self, move |g, store| {
            let mut da = g.clone();
            for (d, &y) in da.data_mut().iter_mut().zip(yv.data()) {
                *d *= y * (1.0 - y);
            }
            store.accumulate(&a, da);
        })
    }

    pub fn tanh(&self) -> Tensor {
        let value = self.value().map(f64::tanh);
        let a = self.clone();
        let yv = value.clone();
        Tensor::from_unary_op("tanh", value, self, move |g, store| {
            let mut da = g.clone();
            for (d, &y) in da.data_mut().iter_mut().zip(yv.data()) {
                *d *= 1.0 - y * y;
            }
            store.accumulate(&a, da);
        })
    }

    pub fn exp(&self) -> Tensor {
        let value = self.value().map(f64::exp);
        let a = self.clone();
        let yv = value.clone();
        Tensor::from_unary_op("exp", value, self, move |g, store| {
            let mut da = g.clone();
            for (d, &y) in da.data_mut().iter_mut().zip(yv.data()) {
                *d *= y;
            }
            store.accumulate(&a, da);
        })
    }

    /// Natural logarithm; inputs must be strictly positive.
    pub fn ln(&self) -> Tensor {
        assert!(
            self.value().data().iter().all(|&v| v > 0.0),
            "ln: inputs must be strictly positive"
        );
        let value = self.value().map(f64::ln);
        let a = self.clone();
        let av = self.to_dense();
        Tensor::from_unary_op("ln", value, self, move |g, store| {
            let mut da = g.clone();
            for (d, &x) in da.data_mut().iter_mut().zip(av.data()) {
                *d /= x;
            }
            store.accumulate(&a, da);
        })
    }

    // ---- reductions ----

    pub fn sum_all(&self) -> Tensor {
        let s = self.value().data().iter().sum();
        let a = self.clone();
        let (r, c) = self.shape();
        Tensor::from_unary_op("sum_all", Dense::scalar(s), self, move |g, store| {
            store.accumulate(&a, Dense::filled(r, c, g.data()[0]));
        })
    }

    pub fn mean_all(&self) -> Tensor {
        let n = self.value().len() as f64;
        assert!(n > 0.0, "mean_all on empty tensor");
        let s = self.value().data().iter().sum::<f64>() / n;
        let a = self.clone();
        let (r, c) = self.shape();
        Tensor::from_unary_op("mean_all", Dense::scalar(s), self, move |g, store| {
            store.accumulate(&a, Dense::filled(r, c, g.data()[0] / n));
        })
    }

    /// Column means: NxC -> 1xC.
    pub fn col_mean(&self) -> Tensor {
        let (n, c) = self.shape();
        assert!(n > 0, "col_mean on empty tensor");
        let mut out = Dense::zeros(1, c);
        {
            let v = self.value();
            for i in 0..n {
                for (j, &x) in v.row(i).iter().enumerate() {
                    out[(0, j)] += x / n as f64;
                }
            }
        }
        let a = self.clone();
        Tensor::from_unary_op("col_mean", out, self, move |g, store| {
            let mut da = Dense::zeros(n, c);
            for i in 0..n {
                for j in 0..c {
                    da[(i, j)] = g.data()[j] / n as f64;
                }
            }
            store.accumulate(&a, da);
        })
    }

    /// Row sums: NxC -> Nx1.
    pub fn row_sums(&self) -> Tensor {
        let (n, c) = self.shape();
        let mut out = Dense::zeros(n, 1);
        {
            let v = self.value();
            for i in 0..n {
                out[(i, 0)] = v.row(i).iter().sum();
            }
        }
        let a = self.clone();
        Tensor::from_unary_op("row_sums", out, self, move |g, store| {
            let mut da = Dense::zeros(n, c);
            for i in 0..n {
                for j in 0..c {
                    da[(i, j)] = g[(i, 0)];
                }
            }
            store.accumulate(&a, da);
        })
    }

    /// Row-wise softmax.
    pub fn softmax_rows(&self) -> Tensor {
        let (n, c) = self.shape();
        let mut out = Dense::zeros(n, c);
        {
            let v = self.value();
            for i in 0..n {
                let row = v.row(i);
                let m = row.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let mut z = 0.0;
                for (j, &x) in row.iter().enumerate() {
                    let e = (x - m).exp();
                    out[(i, j)] = e;
                    z += e;
                }
                for j in 0..c {
                    out[(i, j)] /= z;
                }
            }
        }
        let a = self.clone();
        let yv = out.clone();
        Tensor::from_unary_op("softmax_rows", out, self, move |g, store| {
            let mut da = Dense::zeros(n, c);
            for i in 0..n {
                let dot: f64 = (0..c).map(|j| g[(i, j)] * yv[(i, j)]).sum();
                for j in 0..c {
                    da[(i, j)] = yv[(i, j)] * (g[(i, j)] - dot);
                }
            }
            store.accumulate(&a, da);
        })
    }

    /// Rows scaled to unit L2 norm, with a 1e-12 guard in denominators.
    pub fn l2_normalize_rows(&self) -> Tensor {
        const EPS: f64 = 1e-12;
        let (n, c) = self.shape();
        let mut out = Dense::zeros(n, c);
        let mut norms = vec![0.0; n];
        {
            let v = self.value();
            for i in 0..n {
                let norm = v.row(i).iter().map(|x| x * x).sum::<f64>().sqrt();
                norms[i] = norm;
                for (j, &x) in v.row(i).iter().enumerate() {
                    out[(i, j)] = x / (norm + EPS);
                }
            }
        }
        let a = self.clone();
        let av = self.to_dense();
        Tensor::from_unary_op("l2_normalize_rows", out, self, move |g, store| {
            let mut da = Dense::zeros(n, c);
            for i in 0..n {
                let norm = norms[i];
                let denom = norm + EPS;
                if norm == 0.0 {
                    for j in 0..c {
                        da[(i, j)] = g[(i, j)] / denom;
                    }
                    continue;
                }
                // d(x/(|x|+eps)) = (g - (g.y) * x/|x|) / (|x|+eps)
                let dot: f64 = (0..c).map(|j| g[(i, j)] * av[(i, j)] / denom).sum();
                for j in 0..c {
                    da[(i, j)] = (g[(i, j)] - dot * av[(i, j)] / norm) / denom;
                }
            }
            store.accumulate(&a, da);
        })
    }

    /// Selects rows by index (duplicates allowed); gradients scatter-add
    /// back to the source rows.
    pub fn gather_rows(&self, idx: &[usize]) -> Tensor {
        let (n, c) = self.shape();
        for &i in idx {
            assert!(i < n, "gather_rows: index {i} out of range for {n} rows");
        }
        let mut out = Dense::zeros(idx.len(), c);
        {
            let v = self.value();
            for (r, &i) in idx.iter().enumerate() {
                out.data_mut()[r * c..(r + 1) * c].copy_from_slice(v.row(i));
            }
        }
        let a = self.clone();
        let idx = idx.to_vec();
        Tensor::from_unary_op("gather_rows", out, self, move |g, store| {
            let mut da = Dense::zeros(n, c);
            for (r, &i) in idx.iter().enumerate() {
                for j in 0..c {
                    da[(i, j)] += g[(r, j)];
                }
            }
            store.accumulate(&a, da);
        })
    }

    /// Column-group maximum: `groups[j]` assigns column `j` to a group;
    /// output is Nx`num_groups`, each entry the max over its group's
    /// columns. Gradients flow to the argmax column.
    pub fn group_max_cols(&self, groups: &[usize], num_groups: usize) -> Tensor {
        let (n, c) = self.shape();
        assert_eq!(groups.len(), c, "group_max_cols: one group per column");
        assert!(
            (0..num_groups).all(|gid| groups.contains(&gid)),
            "group_max_cols: every group needs at least one column"
        );
        let mut out = Dense::filled(n, num_groups, f64::NEG_INFINITY);
        let mut arg = vec![0usize; n * num_groups];
        {
            let v = self.value();
            for i in 0..n {
                for (j, &gid) in groups.iter().enumerate() {
                    let x = v[(i, j)];
                    if x > out[(i, gid)] {
                        out[(i, gid)] = x;
                        arg[i * num_groups + gid] = j;
                    }
                }
            }
        }
        let a = self.clone();
        Tensor::from_unary_op("group_max_cols", out, self, move |g, store| {
            let mut da = Dense::zeros(n, c);
            for i in 0..n {
                for gid in 0..num_groups {
                    da[(i, arg[i * num_groups + gid])] += g[(i, gid)];
                }
            }
            store.accumulate(&a, da);
        })
    }

    /// Stacks tensors with equal column counts on top of each other.
    pub fn concat_rows(parts: &[Tensor]) -> Tensor {
        assert!(!parts.is_empty(), "concat_rows of nothing");
        let c = parts[0].cols();
        let total: usize = parts.iter().map(Tensor::rows).sum();
        let mut out = Dense::zeros(total, c);
        let mut offset = 0;
        for p in parts {
            assert_eq!(p.cols(), c, "concat_rows: column counts differ");
            let v = p.value();
            let rows = v.rows();
            out.data_mut()[offset * c..(offset + rows) * c].copy_from_slice(v.data());
            offset += rows;
        }
        let owned: Vec<Tensor> = parts.to_vec();
        let shapes: Vec<usize> = parts.iter().map(Tensor::rows).collect();
        Tensor::from_multi_op("concat_rows", out, owned.clone(), move |g, store| {
            let mut offset = 0;
            for (p, &rows) in owned.iter().zip(&shapes) {
                let mut dp = Dense::zeros(rows, c);
                dp.data_mut()
                    .copy_from_slice(&g.data()[offset * c..(offset + rows) * c]);
                store.accumulate(p, dp);
                offset += rows;
            }
        })
    }
}

pub(crate) fn stable_sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Gaussian-initialized matrix with the given standard deviation.
pub fn randn_dense<R: Rng>(rows: usize, cols: usize, std: f64, rng: &mut R) -> Dense {
    let mut d = Dense::zeros(rows, cols);
    for v in d.data_mut() {
        *v = std * gaussian(rng);
    }
    d
}

/// Glorot-uniform initialized matrix.
pub fn xavier_dense<R: Rng>(fan_in: usize, fan_out: usize, rng: &mut R) -> Dense {
    let a = (6.0 / (fan_in + fan_out) as f64).sqrt();
    let mut d = Dense::zeros(fan_in, fan_out);
    for v in d.data_mut() {
        *v = rng.gen_range(-a..a);
    }
    d
}

/// Standard normal sample by Box-Muller.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
