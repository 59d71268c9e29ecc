//! Reverse-mode automatic differentiation over a flat operation tape.
//!
//! Nodes are appended in execution order, so ids are already a topological
//! order and the backward pass is a single reverse scan that visits every
//! node exactly once. Gradients accumulate into each node's tensor, so after
//! `backward` every `requires_grad` leaf holds dLoss/dLeaf.

use crate::error::{Error, Result};
use crate::tensor::{self, Tensor};

/// Handle to a tensor recorded on a [`Graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeId(usize);

enum Op {
    Leaf,
    /// C = A · B
    MatMul { a: NodeId, b: NodeId },
    /// C = A · Bᵀ (B stored row-major [n, k])
    MatMulNt { a: NodeId, b: NodeId },
    Add { a: NodeId, b: NodeId },
    Scale { a: NodeId, c: f32 },
    Relu { a: NodeId },
    RmsNorm { x: NodeId, gain: NodeId },
    SoftmaxRows { x: NodeId },
    /// Row gather from an embedding table.
    Embed { table: NodeId, ids: Vec<u32> },
    SliceCols { x: NodeId, start: usize, len: usize },
    ConcatCols { parts: Vec<NodeId> },
    /// Mean masked cross-entropy over the rows of a logit matrix.
    CrossEntropyMean {
        logits: NodeId,
        targets: Vec<u32>,
        mask: Vec<bool>,
    },
}

struct Node {
    value: Tensor,
    op: Op,
}

/// Flat autodiff tape. One graph per training step; single-owner,
/// single-threaded.
#[derive(Default)]
pub struct Graph {
    nodes: Vec<Node>,
}

impl Graph {
    pub fn new() -> Self {
        Graph { nodes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value(&self, id: NodeId) -> &Tensor {
        &self.nodes[id.0].value
    }

    pub fn grad(&self, id: NodeId) -> Option<&[f32]> {
        self.nodes[id.0].value.grad.as_deref()
    }

    /// Record an input tensor; its `requires_grad` flag decides whether the
    /// backward pass fills its gradient.
    pub fn leaf(&mut self, value: Tensor) -> NodeId {
        self.push(value, Op::Leaf)
    }

    /// Record a non-trainable input (masks, positional encodings).
    pub fn constant(&mut self, mut value: Tensor) -> NodeId {
        value.requires_grad = false;
        self.push(value, Op::Leaf)
    }

    fn push(&mut self, value: Tensor, op: Op) -> NodeId {
        self.nodes.push(Node { value, op });
        NodeId(self.nodes.len() - 1)
    }

    fn push_dep(&mut self, mut value: Tensor, requires: bool, op: Op) -> NodeId {
        value.requires_grad = requires;
        self.push(value, op)
    }

    fn requires(&self, id: NodeId) -> bool {
        self.nodes[id.0].value.requires_grad
    }

    // ── forward ops ──────────────────────────────────────────────────────────

    pub fn matmul(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let out = tensor::matmul(self.value(a), self.value(b))?;
        let req = self.requires(a) || self.requires(b);
        Ok(self.push_dep(out, req, Op::MatMul { a, b }))
    }

    /// `a · bᵀ`, with `b` stored row-major.
    pub fn matmul_nt(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let out = tensor::matmul_nt(self.value(a), self.value(b))?;
        let req = self.requires(a) || self.requires(b);
        Ok(self.push_dep(out, req, Op::MatMulNt { a, b }))
    }

    pub fn add(&mut self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let out = tensor::add(self.value(a), self.value(b))?;
        let req = self.requires(a) || self.requires(b);
        Ok(self.push_dep(out, req, Op::Add { a, b }))
    }

    pub fn scale(&mut self, a: NodeId, c: f32) -> NodeId {
        let out = tensor::scale(self.value(a), c);
        let req = self.requires(a);
        self.push_dep(out, req, Op::Scale { a, c })
    }

    pub fn relu(&mut self, a: NodeId) -> NodeId {
        let out = tensor::relu(self.value(a));
        let req = self.requires(a);
        self.push_dep(out, req, Op::Relu { a })
    }

    pub fn rms_norm(&mut self, x: NodeId, gain: NodeId) -> Result<NodeId> {
        let out = tensor::rms_norm(self.value(x), self.value(gain))?;
        let req = self.requires(x) || self.requires(gain);
        Ok(self.push_dep(out, req, Op::RmsNorm { x, gain }))
    }

    pub fn softmax_rows(&mut self, x: NodeId) -> NodeId {
        let out = tensor::softmax_rows(self.value(x));
        let req = self.requires(x);
        self.push_dep(out, req, Op::SoftmaxRows { x })
    }

    pub fn embed(&mut self, table: NodeId, ids: &[u32]) -> Result<NodeId> {
        let t = self.value(table);
        let (v, d) = (t.rows(), t.cols());
        let mut data = Vec::with_capacity(ids.len() * d);
        for &id in ids {
            if id as usize >= v {
                return Err(Error::Index(format!(
                    "embed: token id {id} out of range for vocab {v}"
                )));
            }
            data.extend_from_slice(t.row(id as usize));
        }
        let out = Tensor::new(vec![ids.len(), d], data)?;
        let req = self.requires(table);
        Ok(self.push_dep(
            out,
            req,
            Op::Embed {
                table,
                ids: ids.to_vec(),
            },
        ))
    }

    pub fn slice_cols(&mut self, x: NodeId, start: usize, len: usize) -> Result<NodeId> {
        let t = self.value(x);
        let (r, c) = (t.rows(), t.cols());
        if start + len > c {
            return Err(Error::Shape(format!(
                "slice_cols: {start}..{} out of {c} columns",
                start + len
            )));
        }
        let mut data = Vec::with_capacity(r * len);
        for i in 0..r {
            data.extend_from_slice(&t.row(i)[start..start + len]);
        }
        let out = Tensor::new(vec![r, len], data)?;
        let req = self.requires(x);
        Ok(self.push_dep(out, req, Op::SliceCols { x, start, len }))
    }

    pub fn concat_cols(&mut self, parts: &[NodeId]) -> Result<NodeId> {
        if parts.is_empty() {
            return Err(Error::Shape("concat_cols: no parts".into()));
        }
        let r = self.value(parts[0]).rows();
        let total: usize = parts.iter().map(|&p| self.value(p).cols()).sum();
        let mut data = Vec::with_capacity(r * total);
        for i in 0..r {
            for &p in parts {
                let t = self.value(p);
                if t.rows() != r {
                    return Err(Error::Shape("concat_cols: row counts differ".into()));
                }
                data.extend_from_slice(t.row(i));
            }
        }
        let out = Tensor::new(vec![r, total], data)?;
        let req = parts.iter().any(|&p| self.requires(p));
        Ok(self.push_dep(
            out,
            req,
            Op::ConcatCols {
                parts: parts.to_vec(),
            },
        ))
    }

    /// Mean cross-entropy over rows where `mask` is true. Rows with a false
    /// mask (padding) contribute nothing, to the value or the gradient.
    pub fn cross_entropy_mean(
        &mut self,
        logits: NodeId,
        targets: &[u32],
        mask: &[bool],
    ) -> Result<NodeId> {
        let t = self.value(logits);
        let (rows, classes) = (t.rows(), t.cols());
        if targets.len() != rows || mask.len() != rows {
            return Err(Error::Shape(format!(
                "cross_entropy_mean: {rows} logit rows, {} targets, {} mask entries",
                targets.len(),
                mask.len()
            )));
        }
        let active = mask.iter().filter(|&&m| m).count();
        if active == 0 {
            return Err(Error::Validation(
                "cross_entropy_mean: all target positions masked".into(),
            ));
        }
        let mut total = 0.0f32;
        for i in 0..rows {
            if !mask[i] {
                continue;
            }
            let tgt = targets[i] as usize;
            if tgt >= classes {
                return Err(Error::Index(format!(
                    "cross_entropy_mean: target {tgt} out of range for {classes} classes"
                )));
            }
            total += tensor::neg_log_softmax_at(t.row(i), tgt);
        }
        let out = Tensor::vector(vec![total / active as f32]);
        let req = self.requires(logits);
        Ok(self.push_dep(
            out,
            req,
            Op::CrossEntropyMean {
                logits,
                targets: targets.to_vec(),
                mask: mask.to_vec(),
            },
        ))
    }

    /// Arithmetic mean of scalar nodes.
    pub fn mean_scalars(&mut self, ids: &[NodeId]) -> Result<NodeId> {
        if ids.is_empty() {
            return Err(Error::Shape("mean_scalars: no inputs".into()));
        }
        let mut acc = ids[0];
        for &id in &ids[1..] {
            acc = self.add(acc, id)?;
        }
        Ok(self.scale(acc, 1.0 / ids.len() as f32))
    }

    // ── backward ─────────────────────────────────────────────────────────────

    /// Populate gradients of every `requires_grad` ancestor of `loss`.
    pub fn backward(&mut self, loss: NodeId) -> Result<()> {
        {
            let node = &self.nodes[loss.0];
            if node.value.numel() != 1 {
                return Err(Error::Graph(format!(
                    "backward requires a scalar loss, got shape {:?}",
                    node.value.shape
                )));
            }
            if !node.value.requires_grad {
                return Err(Error::Graph(
                    "backward on a detached tensor: no path to any requires_grad leaf".into(),
                ));
            }
        }
        self.nodes[loss.0].value.grad = Some(vec![1.0]);
        for i in (0..=loss.0).rev() {
            if self.nodes[i].value.grad.is_none() {
                continue;
            }
            let deltas = self.node_backward(i);
            for (target, delta) in deltas {
                self.accum_grad(target, &delta);
            }
        }
        Ok(())
    }

    fn accum_grad(&mut self, id: NodeId, delta: &[f32]) {
        let t = &mut self.nodes[id.0].value;
        let g = t.grad.get_or_insert_with(|| vec![0.0; t.data.len()]);
        for (a, b) in g.iter_mut().zip(delta) {
            *a += b;
        }
    }

    /// Gradient contributions of node `i` to its inputs.
    fn node_backward(&self, i: usize) -> Vec<(NodeId, Vec<f32>)> {
        let node = &self.nodes[i];
        let up = node.value.grad.as_deref().expect("upstream grad present");
        let mut out: Vec<(NodeId, Vec<f32>)> = Vec::new();

        match &node.op {
            Op::Leaf => {}

            Op::MatMul { a, b } => {
                let g = grad_matrix(up, &node.value.shape);
                if self.requires(*a) {
                    // dA = G · Bᵀ
                    let da = tensor::matmul_nt(&g, self.value(*b)).expect("shape ok");
                    out.push((*a, da.data));
                }
                if self.requires(*b) {
                    // dB = Aᵀ · G
                    let db = tensor::matmul_tn(self.value(*a), &g).expect("shape ok");
                    out.push((*b, db.data));
                }
            }

            Op::MatMulNt { a, b } => {
                let g = grad_matrix(up, &node.value.shape);
                if self.requires(*a) {
                    // dA = G · B
                    let da = tensor::matmul(&g, self.value(*b)).expect("shape ok");
                    out.push((*a, da.data));
                }
                if self.requires(*b) {
                    // dB = Gᵀ · A
                    let db = tensor::matmul_tn(&g, self.value(*a)).expect("shape ok");
                    out.push((*b, db.data));
                }
            }

            Op::Add { a, b } => {
                if self.requires(*a) {
                    out.push((*a, up.to_vec()));
                }
                if self.requires(*b) {
                    out.push((*b, up.to_vec()));
                }
            }

            Op::Scale { a, c } => {
                if self.requires(*a) {
                    out.push((*a, up.iter().map(|g| g * c).collect()));
                }
            }

            Op::Relu { a } => {
                if self.requires(*a) {
                    let x = &self.value(*a).data;
                    let d = up
                        .iter()
                        .zip(x)
                        .map(|(g, &v)| if v > 0.0 { *g } else { 0.0 })
                        .collect();
                    out.push((*a, d));
                }
            }

            Op::RmsNorm { x, gain } => {
                let xt = self.value(*x);
                let gt = self.value(*gain);
                let d = xt.cols();
                let rows = xt.rows();
                let mut dx = vec![0.0f32; xt.numel()];
                let mut dg = vec![0.0f32; d];
                for r in 0..rows {
                    let xr = xt.row(r);
                    let ur = &up[r * d..(r + 1) * d];
                    let mut sq = 0.0f32;
                    for &v in xr {
                        sq += v * v;
                    }
                    let m = sq / d as f32 + tensor::RMS_EPS;
                    let inv = 1.0 / m.sqrt();
                    let mut dot = 0.0f32; // Σ u_i g_i x_i
                    for j in 0..d {
                        dot += ur[j] * gt.data[j] * xr[j];
                    }
                    let coeff = dot * inv / (m * d as f32);
                    for j in 0..d {
                        dx[r * d + j] = gt.data[j] * ur[j] * inv - xr[j] * coeff;
                        dg[j] += ur[j] * xr[j] * inv;
                    }
                }
                if self.requires(*x) {
                    out.push((*x, dx));
                }
                if self.requires(*gain) {
                    out.push((*gain, dg));
                }
            }

            Op::SoftmaxRows { x } => {
                if self.requires(*x) {
                    let s = &node.value;
                    let c = s.cols();
                    let mut dx = vec![0.0f32; s.numel()];
                    for r in 0..s.rows() {
                        let sr = s.row(r);
                        let ur = &up[r * c..(r + 1) * c];
                        let mut dot = 0.0f32;
                        for j in 0..c {
                            dot += ur[j] * sr[j];
                        }
                        for j in 0..c {
                            dx[r * c + j] = sr[j] * (ur[j] - dot);
                        }
                    }
                    out.push((*x, dx));
                }
            }

            Op::Embed { table, ids } => {
                if self.requires(*table) {
                    let t = self.value(*table);
                    let d = t.cols();
                    let mut dt = vec![0.0f32; t.numel()];
                    for (r, &id) in ids.iter().enumerate() {
                        let dst = &mut dt[id as usize * d..(id as usize + 1) * d];
                        let src = &up[r * d..(r + 1) * d];
                        for j in 0..d {
                            dst[j] += src[j];
                        }
                    }
                    out.push((*table, dt));
                }
            }

            Op::SliceCols { x, start, len } => {
                if self.requires(*x) {
                    let t = self.value(*x);
                    let c = t.cols();
                    let mut dx = vec![0.0f32; t.numel()];
                    for r in 0..t.rows() {
                        for j in 0..*len {
                            dx[r * c + start + j] += up[r * len + j];
                        }
                    }
                    out.push((*x, dx));
                }
            }

            Op::ConcatCols { parts } => {
                let total = node.value.cols();
                let rows = node.value.rows();
                let mut offset = 0;
                for &p in parts {
                    let c = self.value(p).cols();
                    if self.requires(p) {
                        let mut dp = vec![0.0f32; rows * c];
                        for r in 0..rows {
                            for j in 0..c {
                                dp[r * c + j] = up[r * total + offset + j];
                            }
                        }
                        out.push((p, dp));
                    }
                    offset += c;
                }
            }

            Op::CrossEntropyMean {
                logits,
                targets,
                mask,
            } => {
                if self.requires(*logits) {
                    let t = self.value(*logits);
                    let classes = t.cols();
                    let active = mask.iter().filter(|&&m| m).count() as f32;
                    let g0 = up[0] / active;
                    let mut dl = vec![0.0f32; t.numel()];
                    for r in 0..t.rows() {
                        if !mask[r] {
                            continue;
                        }
                        let row = t.row(r);
                        let mut max = f32::NEG_INFINITY;
                        for &v in row {
                            if v > max {
                                max = v;
                            }
                        }
                        let mut sum = 0.0f32;
                        for &v in row {
                            sum += (v - max).exp();
                        }
                        let inv = 1.0 / sum;
                        let dst = &mut dl[r * classes..(r + 1) * classes];
                        for j in 0..classes {
                            dst[j] = g0 * (row[j] - max).exp() * inv;
                        }
                        dst[targets[r] as usize] -= g0;
                    }
                    out.push((*logits, dl));
                }
            }
        }
        out
    }
}

fn grad_matrix(up: &[f32], shape: &[usize]) -> Tensor {
    Tensor {
        shape: shape.to_vec(),
        data: up.to_vec(),
        requires_grad: false,
        grad: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Central finite differences of a scalar-valued builder over one leaf.
    fn fd_grad<F>(build: F, data: &[f32], h: f32) -> Vec<f32>
    where
        F: Fn(&mut Graph, Vec<f32>) -> NodeId,
    {
        let mut out = vec![0.0f32; data.len()];
        for i in 0..data.len() {
            let mut plus = data.to_vec();
            plus[i] += h;
            let mut g = Graph::new();
            let lp = build(&mut g, plus);
            let lp = g.value(lp).data[0];

            let mut minus = data.to_vec();
            minus[i] -= h;
            let mut g = Graph::new();
            let lm = build(&mut g, minus);
            let lm = g.value(lm).data[0];

            out[i] = (lp - lm) / (2.0 * h);
        }
        out
    }

    fn assert_grads_close(analytic: &[f32], fd: &[f32], tol: f32) {
        for (i, (a, f)) in analytic.iter().zip(fd).enumerate() {
            let denom = a.abs().max(f.abs()).max(1e-2);
            assert!(
                (a - f).abs() / denom <= tol,
                "grad {i}: analytic {a} vs fd {f}"
            );
        }
    }

    #[test]
    fn sum_gradient_is_ones() {
        let mut g = Graph::new();
        let x = g.leaf(Tensor::matrix(1, 3, vec![1.0, -2.0, 0.5]).unwrap().with_grad());
        let ones = g.constant(Tensor::matrix(3, 1, vec![1.0; 3]).unwrap());
        let loss = g.matmul(x, ones).unwrap();
        g.backward(loss).unwrap();
        assert_eq!(g.grad(x).unwrap(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn square_gradient_accumulates_both_uses() {
        // loss = x * x with x used as both operands: grad = 2x = 6.
        let mut g = Graph::new();
        let x = g.leaf(Tensor::matrix(1, 1, vec![3.0]).unwrap().with_grad());
        let loss = g.matmul(x, x).unwrap();
        g.backward(loss).unwrap();
        assert_eq!(g.grad(x).unwrap(), &[6.0]);
    }

    #[test]
    fn backward_on_detached_tensor_fails() {
        let mut g = Graph::new();
        let x = g.constant(Tensor::matrix(1, 1, vec![3.0]).unwrap());
        let loss = g.matmul(x, x).unwrap();
        assert!(matches!(g.backward(loss), Err(Error::Graph(_))));
    }

    #[test]
    fn backward_requires_scalar() {
        let mut g = Graph::new();
        let x = g.leaf(Tensor::matrix(1, 2, vec![1.0, 2.0]).unwrap().with_grad());
        assert!(matches!(g.backward(x), Err(Error::Graph(_))));
    }

    #[test]
    fn two_layer_network_matches_finite_differences() {
        // relu(x·W1)·W2 → cross-entropy; checks matmul, relu, CE backward.
        let x = vec![0.5, -0.3, 0.8];
        let w1 = vec![0.2, -0.4, 0.1, 0.7, -0.2, 0.3, 0.5, 0.1, -0.6, 0.2, 0.4, -0.1];
        let w2 = vec![0.3, -0.2, 0.5, 0.1, -0.4, 0.6, 0.2, -0.3];

        let build_for = |which: usize| {
            let x = x.clone();
            let w1 = w1.clone();
            let w2 = w2.clone();
            move |g: &mut Graph, vary: Vec<f32>| -> NodeId {
                let params = [x.clone(), w1.clone(), w2.clone()];
                let mk = |g: &mut Graph, idx: usize, shape: Vec<usize>, vary: &[f32]| {
                    let data = if idx == which {
                        vary.to_vec()
                    } else {
                        params[idx].clone()
                    };
                    g.leaf(Tensor::new(shape, data).unwrap().with_grad())
                };
                let xi = mk(g, 0, vec![1, 3], &vary);
                let w1i = mk(g, 1, vec![3, 4], &vary);
                let w2i = mk(g, 2, vec![4, 2], &vary);
                let h = g.matmul(xi, w1i).unwrap();
                let h = g.relu(h);
                let o = g.matmul(h, w2i).unwrap();
                g.cross_entropy_mean(o, &[1], &[true]).unwrap()
            }
        };

        let all = [x.clone(), w1.clone(), w2.clone()];
        let mut g = Graph::new();
        let xi = g.leaf(Tensor::new(vec![1, 3], x.clone()).unwrap().with_grad());
        let w1i = g.leaf(Tensor::new(vec![3, 4], w1.clone()).unwrap().with_grad());
        let w2i = g.leaf(Tensor::new(vec![4, 2], w2.clone()).unwrap().with_grad());
        let h = g.matmul(xi, w1i).unwrap();
        let h = g.relu(h);
        let o = g.matmul(h, w2i).unwrap();
        let loss = g.cross_entropy_mean(o, &[1], &[true]).unwrap();
        g.backward(loss).unwrap();

        for (which, id) in [(0usize, xi), (1, w1i), (2, w2i)] {
            let fd = fd_grad(build_for(which), &all[which], 1e-3);
            assert_grads_close(g.grad(id).unwrap(), &fd, 1e-3);
        }
    }

    #[test]
    fn rms_norm_and_softmax_match_finite_differences() {
        let x = vec![0.4, -0.9, 1.3, 0.2, 0.1, -0.5];
        let gain = vec![1.1, 0.9, 1.0];

        let build = |vary_gain: bool| {
            let x = x.clone();
            let gain = gain.clone();
            move |g: &mut Graph, vary: Vec<f32>| -> NodeId {
                let xd = if vary_gain { x.clone() } else { vary.clone() };
                let gd = if vary_gain { vary.clone() } else { gain.clone() };
                let xi = g.leaf(Tensor::new(vec![2, 3], xd).unwrap().with_grad());
                let gi = g.leaf(Tensor::vector(gd).with_grad());
                let n = g.rms_norm(xi, gi).unwrap();
                let s = g.softmax_rows(n);
                g.cross_entropy_mean(s, &[2, 0], &[true, true]).unwrap()
            }
        };

        let mut g = Graph::new();
        let xi = g.leaf(Tensor::new(vec![2, 3], x.clone()).unwrap().with_grad());
        let gi = g.leaf(Tensor::vector(gain.clone()).with_grad());
        let n = g.rms_norm(xi, gi).unwrap();
        let s = g.softmax_rows(n);
        let loss = g.cross_entropy_mean(s, &[2, 0], &[true, true]).unwrap();
        g.backward(loss).unwrap();

        assert_grads_close(g.grad(xi).unwrap(), &fd_grad(build(false), &x, 1e-3), 1e-3);
        assert_grads_close(g.grad(gi).unwrap(), &fd_grad(build(true), &gain, 1e-3), 1e-3);
    }

    #[test]
    fn slice_concat_embed_match_finite_differences() {
        let table = vec![0.3, -0.1, 0.7, 0.2, -0.5, 0.4, 0.9, -0.2];

        let build = |g: &mut Graph, vary: Vec<f32>| -> NodeId {
            let t = g.leaf(Tensor::new(vec![4, 2], vary).unwrap().with_grad());
            let e = g.embed(t, &[2, 0, 2]).unwrap();
            let left = g.slice_cols(e, 0, 1).unwrap();
            let right = g.slice_cols(e, 1, 1).unwrap();
            let swapped = g.concat_cols(&[right, left]).unwrap();
            g.cross_entropy_mean(swapped, &[0, 1, 0], &[true, false, true])
                .unwrap()
        };

        let mut g = Graph::new();
        let loss = build(&mut g, table.clone());
        g.backward(loss).unwrap();
        let analytic = g.grad(NodeId(0)).unwrap().to_vec();
        let fd = fd_grad(build, &table, 1e-3);
        assert_grads_close(&analytic, &fd, 1e-3);
    }

    #[test]
    fn masked_rows_do_not_contribute() {
        let logits = vec![0.2, -0.1, 0.4, 0.9, 0.0, -0.3];
        let mut g = Graph::new();
        let l = g.leaf(Tensor::new(vec![2, 3], logits).unwrap().with_grad());
        let loss = g.cross_entropy_mean(l, &[1, 2], &[true, false]).unwrap();
        g.backward(loss).unwrap();
        let grads = g.grad(l).unwrap();
        assert!(grads[3..].iter().all(|&v| v == 0.0), "masked row has grad");
    }

    #[test]
    fn all_masked_is_validation_error() {
        let mut g = Graph::new();
        let l = g.leaf(Tensor::new(vec![1, 3], vec![0.0; 3]).unwrap().with_grad());
        let r = g.cross_entropy_mean(l, &[0], &[false]);
        assert!(matches!(r, Err(Error::Validation(_))));
    }
}
