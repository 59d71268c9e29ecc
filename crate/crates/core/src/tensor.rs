//! Dense row-major f32 tensors and the raw kernels the model is built from.
//!
//! All reductions run in a fixed sequential order so that identical inputs
//! produce bit-identical outputs. The kernels here are shared by the autodiff
//! graph (training) and the incremental decode path (inference).

use crate::error::{Error, Result};

/// Additive mask value for disallowed attention positions. Large enough that
/// `exp(x - max)` underflows to exactly 0.0 in f32.
pub const MASK_NEG: f32 = -1.0e9;

/// Epsilon inside the RMS normalization square root.
pub const RMS_EPS: f32 = 1.0e-6;

/// A dense tensor: row-major f32 data plus an optional gradient buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub shape: Vec<usize>,
    pub data: Vec<f32>,
    pub requires_grad: bool,
    pub grad: Option<Vec<f32>>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f32>) -> Result<Self> {
        let numel: usize = shape.iter().product();
        if numel != data.len() {
            return Err(Error::Shape(format!(
                "shape {:?} implies {} elements, data has {}",
                shape,
                numel,
                data.len()
            )));
        }
        Ok(Tensor {
            shape,
            data,
            requires_grad: false,
            grad: None,
        })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let numel = shape.iter().product();
        Tensor {
            shape,
            data: vec![0.0; numel],
            requires_grad: false,
            grad: None,
        }
    }

    pub fn vector(data: Vec<f32>) -> Self {
        Tensor {
            shape: vec![data.len()],
            data,
            requires_grad: false,
            grad: None,
        }
    }

    pub fn matrix(rows: usize, cols: usize, data: Vec<f32>) -> Result<Self> {
        Tensor::new(vec![rows, cols], data)
    }

    pub fn with_grad(mut self) -> Self {
        self.requires_grad = true;
        self
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    /// Row count of a matrix; a vector counts as a single row.
    pub fn rows(&self) -> usize {
        match self.shape.len() {
            1 => 1,
            2 => self.shape[0],
            _ => panic!("rows() on tensor of rank {}", self.shape.len()),
        }
    }

    /// Column count of a matrix, or the length of a vector.
    pub fn cols(&self) -> usize {
        match self.shape.len() {
            1 => self.shape[0],
            2 => self.shape[1],
            _ => panic!("cols() on tensor of rank {}", self.shape.len()),
        }
    }

    pub fn row(&self, i: usize) -> &[f32] {
        let c = self.cols();
        &self.data[i * c..(i + 1) * c]
    }

    /// Copy a contiguous row range into a new tensor.
    pub fn rows_slice(&self, start: usize, len: usize) -> Tensor {
        let c = self.cols();
        Tensor {
            shape: vec![len, c],
            data: self.data[start * c..(start + len) * c].to_vec(),
            requires_grad: false,
            grad: None,
        }
    }

    /// Append the rows of `other` (same column count) to this matrix.
    pub fn append_rows(&mut self, other: &Tensor) -> Result<()> {
        if self.cols() != other.cols() {
            return Err(Error::Shape(format!(
                "append_rows: {} vs {} columns",
                self.cols(),
                other.cols()
            )));
        }
        self.data.extend_from_slice(&other.data);
        self.shape = vec![self.rows() + other.rows(), self.cols()];
        Ok(())
    }
}

// ── matmul kernels ───────────────────────────────────────────────────────────

/// C[m,n] = A[m,k] · B[k,n].
pub fn matmul(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let (m, ka) = (a.rows(), a.cols());
    let (kb, n) = (b.rows(), b.cols());
    if ka != kb {
        return Err(Error::Shape(format!(
            "matmul: inner dimensions {ka} vs {kb} (shapes {:?} x {:?})",
            a.shape, b.shape
        )));
    }
    let mut c = vec![0.0f32; m * n];
    matmul_nn_into(&a.data, &b.data, m, ka, n, &mut c);
    Tensor::new(vec![m, n], c)
}

/// C[m,n] = A[m,k] · B[n,k]ᵀ (B stored row-major, used untransposed in memory).
pub fn matmul_nt(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let (m, ka) = (a.rows(), a.cols());
    let (n, kb) = (b.rows(), b.cols());
    if ka != kb {
        return Err(Error::Shape(format!(
            "matmul_nt: inner dimensions {ka} vs {kb}"
        )));
    }
    let mut c = vec![0.0f32; m * n];
    for i in 0..m {
        let a_row = &a.data[i * ka..(i + 1) * ka];
        let c_row = &mut c[i * n..(i + 1) * n];
        for (j, cj) in c_row.iter_mut().enumerate() {
            let b_row = &b.data[j * kb..(j + 1) * kb];
            let mut s = 0.0f32;
            for p in 0..ka {
                s += a_row[p] * b_row[p];
            }
            *cj = s;
        }
    }
    Tensor::new(vec![m, n], c)
}

/// C[k,n] = A[m,k]ᵀ · B[m,n].
pub fn matmul_tn(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let (ma, k) = (a.rows(), a.cols());
    let (mb, n) = (b.rows(), b.cols());
    if ma != mb {
        return Err(Error::Shape(format!(
            "matmul_tn: outer dimensions {ma} vs {mb}"
        )));
    }
    let mut c = vec![0.0f32; k * n];
    for i in 0..ma {
        let a_row = &a.data[i * k..(i + 1) * k];
        let b_row = &b.data[i * n..(i + 1) * n];
        for (p, &aip) in a_row.iter().enumerate() {
            let c_row = &mut c[p * n..(p + 1) * n];
            for j in 0..n {
                c_row[j] += aip * b_row[j];
            }
        }
    }
    Tensor::new(vec![k, n], c)
}

fn matmul_nn_into(a: &[f32], b: &[f32], m: usize, k: usize, n: usize, c: &mut [f32]) {
    for i in 0..m {
        let a_row = &a[i * k..(i + 1) * k];
        let c_row = &mut c[i * n..(i + 1) * n];
        for (p, &aip) in a_row.iter().enumerate() {
            let b_row = &b[p * n..(p + 1) * n];
            for j in 0..n {
                c_row[j] += aip * b_row[j];
            }
        }
    }
}

// ── elementwise and normalization kernels ────────────────────────────────────

pub fn add(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    if a.shape != b.shape {
        return Err(Error::Shape(format!(
            "add: shapes {:?} vs {:?}",
            a.shape, b.shape
        )));
    }
    let data = a.data.iter().zip(&b.data).map(|(x, y)| x + y).collect();
    Tensor::new(a.shape.clone(), data)
}

pub fn scale(a: &Tensor, c: f32) -> Tensor {
    Tensor {
        shape: a.shape.clone(),
        data: a.data.iter().map(|x| x * c).collect(),
        requires_grad: false,
        grad: None,
    }
}

pub fn relu(a: &Tensor) -> Tensor {
    Tensor {
        shape: a.shape.clone(),
        data: a.data.iter().map(|x| x.max(0.0)).collect(),
        requires_grad: false,
        grad: None,
    }
}

/// Scale-only RMS normalization applied to each row of `x`:
/// `y_i = scale_i * x_i / sqrt(mean(x^2) + eps)`.
pub fn rms_norm(x: &Tensor, gain: &Tensor) -> Result<Tensor> {
    let d = x.cols();
    if gain.numel() != d {
        return Err(Error::Shape(format!(
            "rms_norm: gain has {} entries, rows have {d}",
            gain.numel()
        )));
    }
    let mut out = vec![0.0f32; x.numel()];
    for r in 0..x.rows() {
        let row = &x.data[r * d..(r + 1) * d];
        let mut sq = 0.0f32;
        for &v in row {
            sq += v * v;
        }
        let inv = 1.0 / (sq / d as f32 + RMS_EPS).sqrt();
        let dst = &mut out[r * d..(r + 1) * d];
        for i in 0..d {
            dst[i] = gain.data[i] * row[i] * inv;
        }
    }
    Tensor::new(x.shape.clone(), out)
}

/// Numerically stabilized softmax of a vector.
pub fn softmax(v: &Tensor) -> Result<Tensor> {
    if v.data.iter().any(|x| x.is_nan()) {
        return Err(Error::Numeric("softmax: NaN input".into()));
    }
    let mut out = v.data.clone();
    softmax_slice(&mut out);
    Tensor::new(v.shape.clone(), out)
}

/// Row-wise softmax of a matrix (no NaN check; used on internal scores).
pub fn softmax_rows(x: &Tensor) -> Tensor {
    let c = x.cols();
    let mut out = x.data.clone();
    for r in 0..x.rows() {
        softmax_slice(&mut out[r * c..(r + 1) * c]);
    }
    Tensor {
        shape: x.shape.clone(),
        data: out,
        requires_grad: false,
        grad: None,
    }
}

fn softmax_slice(row: &mut [f32]) {
    let mut max = f32::NEG_INFINITY;
    for &v in row.iter() {
        if v > max {
            max = v;
        }
    }
    let mut sum = 0.0f32;
    for v in row.iter_mut() {
        *v = (*v - max).exp();
        sum += *v;
    }
    let inv = 1.0 / sum;
    for v in row.iter_mut() {
        *v *= inv;
    }
}

/// Negative log softmax probability of `target` under `logits`.
pub fn cross_entropy(logits: &Tensor, target: usize) -> Result<f32> {
    let v = logits.numel();
    if target >= v {
        return Err(Error::Index(format!(
            "cross_entropy: target {target} out of range for {v} classes"
        )));
    }
    Ok(neg_log_softmax_at(&logits.data, target))
}

pub(crate) fn neg_log_softmax_at(logits: &[f32], target: usize) -> f32 {
    let mut max = f32::NEG_INFINITY;
    for &v in logits {
        if v > max {
            max = v;
        }
    }
    let mut sum = 0.0f32;
    for &v in logits {
        sum += (v - max).exp();
    }
    max + sum.ln() - logits[target]
}

/// Greedy token choice: index of the maximum logit (lowest index wins ties)
/// together with its softmax probability.
pub fn argmax_confidence(logits: &[f32]) -> (usize, f32) {
    let mut best = 0;
    let mut max = f32::NEG_INFINITY;
    for (i, &v) in logits.iter().enumerate() {
        if v > max {
            max = v;
            best = i;
        }
    }
    let mut sum = 0.0f32;
    for &v in logits {
        sum += (v - max).exp();
    }
    (best, 1.0 / sum)
}
