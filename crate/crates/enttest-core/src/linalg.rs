//! Dense complex matrices, flat multi-index tensors, and the reshaping
//! primitives everything else is built on.
//!
//! Conventions used throughout the crate:
//! - matrices are stored row-major: entry `(i, j)` lives at `i * cols + j`;
//! - tensors use the row-major multi-index map
//!   `(i₁, …, i_m) ↦ Σ i_k · Π_{j>k} shape_j`;
//! - bipartite operators on ℂ^{d₁}⊗ℂ^{d₂} index rows by `(a, b) ↦ a·d₂ + b`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex;

use crate::decomp;
use crate::error::{Error, Result};

/// Double-precision complex scalar used everywhere in this crate.
pub type C64 = Complex<f64>;

/// Shorthand for a real complex scalar.
#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Shorthand for a general complex scalar.
#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense complex matrix with explicit dimensions, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting length mismatches
    /// and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimensions must be positive",
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch("entry count must equal rows × cols"));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::ZERO; rows * cols],
        }
    }

    /// Identity matrix of size `d`.
    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m.set(i, i, cr(1.0));
        }
        m
    }

    /// Builds a matrix entrywise; the closure must return finite values.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Matrix unit E_{ij} of size `rows × cols`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, cr(1.0));
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.entries[i * self.cols + j] = z;
    }

    /// Row-major entries.
    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Row-major vectorization |e⟩ = Σ_ij E(i,j) |ij⟩ of the matrix.
    pub fn vectorize(&self) -> Vec<C64> {
        self.entries.clone()
    }

    /// Matrix version of a row-major `rows·cols` vector.
    pub fn from_vector(rows: usize, cols: usize, v: &[C64]) -> Result<Self> {
        if v.len() != rows * cols {
            return Err(Error::ShapeMismatch("vector length must equal rows × cols"));
        }
        Ok(Self {
            rows,
            cols,
            entries: v.to_vec(),
        })
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "inner dimensions must agree");
        let mut out = vec![C64::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = C64::ZERO;
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, z: C64) -> Self {
        let entries = self.entries.iter().map(|a| a * z).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let entries = self.entries.iter().map(|a| a.conj()).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Hilbert–Schmidt inner product ⟨A, B⟩ = Tr(A†B), conjugate-linear in `self`.
    pub fn hs_inner(&self, other: &Self) -> C64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entrywise modulus of the difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// True when ‖A − A†‖_max ≤ tol.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_abs_diff(&self.adjoint()) <= tol
    }

    /// Singular values in decreasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        decomp::singular_values(self)
    }

    /// Eigenvalues of a Hermitian matrix in decreasing order.
    ///
    /// The Hermitian part (A + A†)/2 of the input is diagonalized; callers
    /// are expected to pass (numerically) Hermitian matrices.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        decomp::hermitian_eig(self, false).0
    }
}

/// Dense complex tensor of arbitrary order with row-major multi-index layout.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiTensor {
    shape: Vec<usize>,
    entries: Vec<C64>,
}

impl MultiTensor {
    /// Builds a tensor from a shape and flat row-major entries.
    pub fn new(shape: Vec<usize>, entries: Vec<C64>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::InvalidParameter(
                "tensor shape must be non-empty and positive",
            ));
        }
        let total: usize = shape.iter().product();
        if entries.len() != total {
            return Err(Error::ShapeMismatch(
                "entry count must equal the product of the shape",
            ));
        }
        if !entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { shape, entries })
    }

    /// All-zero tensor.
    pub fn zeros(shape: Vec<usize>) -> Self {
        let total = shape.iter().product();
        Self {
            shape,
            entries: vec![C64::ZERO; total],
        }
    }

    #[inline]
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn entries_mut(&mut self) -> &mut [C64] {
        &mut self.entries
    }

    /// Flat index of a multi-index, row-major.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut f = 0;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.shape[k]);
            f = f * self.shape[k] + i;
        }
        f
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> C64 {
        self.entries[self.flat_index(idx)]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], z: C64) {
        let f = self.flat_index(idx);
        self.entries[f] = z;
    }

    /// ℓ₂ norm of the flattened tensor.
    pub fn norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Reshape to a new shape with the same total size; identity on entries.
    pub fn reshape(self, shape: Vec<usize>) -> Result<Self> {
        let total: usize = shape.iter().product();
        if shape.is_empty() || total != self.entries.len() {
            return Err(Error::ShapeMismatch(
                "reshape must preserve the total entry count",
            ));
        }
        Ok(Self {
            shape,
            entries: self.entries,
        })
    }

    /// Views the first `row_legs` legs as row index and the rest as column
    /// index, returning the corresponding matrix.
    pub fn to_matrix(&self, row_legs: usize) -> Result<ComplexMatrix> {
        if row_legs == 0 || row_legs >= self.shape.len() {
            return Err(Error::ShapeMismatch(
                "row legs must split the tensor in two groups",
            ));
        }
        let rows: usize = self.shape[..row_legs].iter().product();
        let cols: usize = self.shape[row_legs..].iter().product();
        ComplexMatrix::new(rows, cols, self.entries.clone())
    }

    /// Order-1 tensor from a vector.
    pub fn from_vec(v: Vec<C64>) -> Result<Self> {
        let d = v.len();
        Self::new(vec![d], v)
    }
}

/// Kronecker product; result is (r_a·r_b) × (c_a·c_b).
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ra, ca) = (a.rows(), a.cols());
    let (rb, cb) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            let aij = a.get(i, j);
            if aij == C64::ZERO {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out.set(i * rb + k, j * cb + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Trace norm ‖X‖₁ = Tr√(X†X), the sum of singular values.
pub fn trace_norm(x: &ComplexMatrix) -> f64 {
    x.singular_values().iter().sum()
}

/// Flip (swap) operator F on ℂ^d ⊗ ℂ^d, acting as x ⊗ y ↦ y ⊗ x.
pub fn flip_operator(d: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            f.set(a * d + b, b * d + a, cr(1.0));
        }
    }
    f
}

/// Maximally entangled state |ψ⟩ = Σ_i |ii⟩/√d as a [d, d] tensor.
pub fn max_entangled(d: usize) -> MultiTensor {
    let mut t = MultiTensor::zeros(vec![d, d]);
    let amp = cr(1.0 / libm::sqrt(d as f64));
    for i in 0..d {
        t.set(&[i, i], amp);
    }
    t
}

/// Partial transpose of a bipartite operator on ℂ^{d₁}⊗ℂ^{d₂}.
///
/// `which` selects the transposed factor (0 or 1). Involutive.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    dims: (usize, usize),
    which: usize,
) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    if !rho.is_square() || rho.rows() != d1 * d2 {
        return Err(Error::ShapeMismatch("operator must be square over d₁·d₂"));
    }
    if which > 1 {
        return Err(Error::InvalidParameter("subsystem index must be 0 or 1"));
    }
    let mut out = ComplexMatrix::zeros(d1 * d2, d1 * d2);
    for a in 0..d1 {
        for b in 0..d2 {
            for a2 in 0..d1 {
                for b2 in 0..d2 {
                    let v = rho.get(a * d2 + b, a2 * d2 + b2);
                    let (r, c) = if which == 0 {
                        (a2 * d2 + b, a * d2 + b2)
                    } else {
                        (a * d2 + b2, a2 * d2 + b)
                    };
                    out.set(r, c, v);
                }
            }
        }
    }
    Ok(out)
}

/// Relocates the entries of an operator on ⊗_i ℂ^{d_i} by permuting its
/// 2m tensor legs (m row legs followed by m column legs).
///
/// `sigma` uses scatter semantics: leg `p` of the input becomes leg
/// `sigma[p]` of the output, so `(ρ_τ)_σ = ρ_{σ∘τ}`. The output is read
/// back as a matrix whose rows are its first m legs.
pub fn permute_indices(
    rho: &ComplexMatrix,
    dims: &[usize],
    sigma: &[usize],
) -> Result<ComplexMatrix> {
    let m = dims.len();
    let total: usize = dims.iter().product();
    if !rho.is_square() || rho.rows() != total {
        return Err(Error::ShapeMismatch(
            "operator must be square over the product of dims",
        ));
    }
    if sigma.len() != 2 * m {
        return Err(Error::InvalidPermutation);
    }
    let mut seen = vec![false; 2 * m];
    for &s in sigma {
        if s >= 2 * m || seen[s] {
            return Err(Error::InvalidPermutation);
        }
        seen[s] = true;
    }

    // Leg p of the input has dimension in_shape[p]; it lands on output
    // position sigma[p].
    let in_shape: Vec<usize> = dims.iter().chain(dims.iter()).copied().collect();
    let mut out_shape = vec![0usize; 2 * m];
    for p in 0..2 * m {
        out_shape[sigma[p]] = in_shape[p];
    }
    let out_rows: usize = out_shape[..m].iter().product();
    let out_cols: usize = out_shape[m..].iter().product();

    // Row-major strides of the output shape.
    let mut out_stride = vec![1usize; 2 * m];
    for p in (0..2 * m - 1).rev() {
        out_stride[p] = out_stride[p + 1] * out_shape[p + 1];
    }

    let mut out = ComplexMatrix::zeros(out_rows, out_cols);
    let mut coords = vec![0usize; 2 * m];
    for r in 0..total {
        // Decode the row multi-index once per row.
        let mut rem = r;
        for p in (0..m).rev() {
            coords[p] = rem % in_shape[p];
            rem /= in_shape[p];
        }
        for cidx in 0..total {
            let mut rem = cidx;
            for p in (m..2 * m).rev() {
                coords[p] = rem % in_shape[p];
                rem /= in_shape[p];
            }
            let mut flat = 0usize;
            for p in 0..2 * m {
                flat += coords[p] * out_stride[sigma[p]];
            }
            let (or, oc) = (flat / out_cols, flat % out_cols);
            out.set(or, oc, rho.get(r, cidx));
        }
    }
    Ok(out)
}

/// Frobenius inner product ⟨a, b⟩ on tensors, conjugate-linear in `a`.
pub fn frobenius_inner(a: &MultiTensor, b: &MultiTensor) -> Result<C64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch("tensors must have equal shapes"));
    }
    Ok(a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x.conj() * y)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::Prng as TestRng;

    fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| rng.complex_gaussian())
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            ComplexMatrix::new(2, 2, vec![C64::ZERO; 3]).unwrap_err(),
            Error::ShapeMismatch("entry count must equal rows × cols")
        );
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).unwrap_err(),
            Error::NonFinite
        );
        assert!(MultiTensor::new(vec![2, 0], vec![]).is_err());
    }

    #[test]
    fn kron_identity_and_matrix_units() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));

        // |0⟩⟨0| ⊗ |1⟩⟨1| has its single unit entry at row 1, col 1.
        let e00 = ComplexMatrix::unit(2, 2, 0, 0);
        let e11 = ComplexMatrix::unit(2, 2, 1, 1);
        assert_eq!(kron(&e00, &e11), ComplexMatrix::unit(4, 4, 1, 1));
    }

    #[test]
    fn kron_matches_index_loop_oracle() {
        let mut rng = TestRng::new(11);
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 2, 2);
        let k = kron(&a, &b);
        // Oracle: a_{ij} b_{kl} sits at (i·d_b + k, j·d_b + l).
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        let expect = a.get(i, j) * b.get(p, q);
                        assert!((k.get(2 * i + p, 2 * j + q) - expect).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_norm_identity_and_rank_one() {
        for d in 1..=5 {
            assert!((trace_norm(&ComplexMatrix::identity(d)) - d as f64).abs() < 1e-12);
        }
        // |x⟩⟨y| with unit x, y has trace norm 1.
        let mut rng = TestRng::new(3);
        let x = rng.unit_vector(4);
        let y = rng.unit_vector(4);
        let m = ComplexMatrix::from_fn(4, 4, |i, j| x[i] * y[j].conj());
        assert!((trace_norm(&m) - 1.0).abs() < 1e-12);
    }

    /// Independent oracle: cyclic two-sided Jacobi on the Hermitian matrix
    /// X†X, written separately from the one-sided SVD in `decomp`.
    fn gram_eig_oracle(x: &ComplexMatrix) -> Vec<f64> {
        let n = x.cols();
        let mut g = x.adjoint().mul(x);
        let fro = g.frobenius_norm();
        for _ in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(g.get(p, q).norm());
                }
            }
            if off <= 1e-15 * fro {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let gpq = g.get(p, q);
                    let gmag = gpq.norm();
                    if gmag <= 1e-18 * fro {
                        continue;
                    }
                    let phase = gpq / cr(gmag);
                    let alpha = g.get(p, p).re;
                    let beta = g.get(q, q).re;
                    let zeta = (beta - alpha) / (2.0 * gmag);
                    let t = if zeta >= 0.0 {
                        1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
                    } else {
                        -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
                    };
                    let cth = 1.0 / libm::sqrt(1.0 + t * t);
                    let sth = cth * t;
                    // G ← J† G J with J mixing columns p, q.
                    for i in 0..n {
                        let gp = g.get(i, p);
                        let gq = g.get(i, q) * phase.conj();
                        g.set(i, p, gp * cr(cth) - gq * cr(sth));
                        g.set(i, q, gp * cr(sth) + gq * cr(cth));
                    }
                    for j in 0..n {
                        let gp = g.get(p, j);
                        let gq = g.get(q, j) * phase;
                        g.set(p, j, gp * cr(cth) - gq * cr(sth));
                        g.set(q, j, gp * cr(sth) + gq * cr(cth));
                    }
                }
            }
        }
        let mut vals: Vec<f64> = (0..n)
            .map(|i| libm::sqrt(g.get(i, i).re.max(0.0)))
            .collect();
        vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        vals
    }

    #[test]
    fn trace_norm_matches_independent_svd_oracle() {
        let mut rng = TestRng::new(7);
        for _ in 0..20 {
            let x = random_matrix(&mut rng, 4, 4);
            let direct = trace_norm(&x);
            let oracle: f64 = gram_eig_oracle(&x).iter().sum();
            assert!(
                (direct - oracle).abs() < 1e-9,
                "trace norm {direct} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn trace_norm_deterministic() {
        let mut rng = TestRng::new(9);
        let x = random_matrix(&mut rng, 5, 3);
        let first = trace_norm(&x);
        for _ in 0..5 {
            assert_eq!(first, trace_norm(&x));
        }
    }

    #[test]
    fn norm_chain_trace_frobenius_operator() {
        let mut rng = TestRng::new(21);
        for _ in 0..10 {
            let x = random_matrix(&mut rng, 4, 4);
            let sv = x.singular_values();
            let tn: f64 = sv.iter().sum();
            let fro = x.frobenius_norm();
            let op = sv[0];
            assert!(tn >= fro - 1e-10);
            assert!(fro >= op - 1e-10);
        }
    }

    #[test]
    fn flip_operator_small_cases() {
        assert_eq!(flip_operator(1), ComplexMatrix::identity(1));
        let f = flip_operator(2);
        // Swaps (0,1) ↔ (1,0), fixes (0,0) and (1,1).
        let mut expect = ComplexMatrix::zeros(4, 4);
        expect.set(0, 0, cr(1.0));
        expect.set(1, 2, cr(1.0));
        expect.set(2, 1, cr(1.0));
        expect.set(3, 3, cr(1.0));
        assert_eq!(f, expect);
    }

    #[test]
    fn flip_is_hermitian_unitary_involution() {
        let f = flip_operator(3);
        assert!(f.is_hermitian(0.0));
        assert!(f.mul(&f).max_abs_diff(&ComplexMatrix::identity(9)) == 0.0);
        // F(x⊗y) = y⊗x on random vectors.
        let mut rng = TestRng::new(5);
        let x = rng.unit_vector(3);
        let y = rng.unit_vector(3);
        let mut xy = [C64::ZERO; 9];
        let mut yx = [C64::ZERO; 9];
        for a in 0..3 {
            for b in 0..3 {
                xy[a * 3 + b] = x[a] * y[b];
                yx[a * 3 + b] = y[a] * x[b];
            }
        }
        let fxy = f.mul_vec(&xy);
        for i in 0..9 {
            assert!((fxy[i] - yx[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn max_entangled_values() {
        assert_eq!(max_entangled(1).entries(), &[cr(1.0)]);
        let psi = max_entangled(2);
        let r = 1.0 / libm::sqrt(2.0);
        assert!((psi.get(&[0, 0]) - cr(r)).norm() < 1e-15);
        assert!((psi.get(&[1, 1]) - cr(r)).norm() < 1e-15);
        assert_eq!(psi.get(&[0, 1]), C64::ZERO);
        let psi5 = max_entangled(5);
        assert!((frobenius_inner(&psi5, &psi5).unwrap().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_product_case() {
        let mut rng = TestRng::new(13);
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 2, 2);
        let ab = kron(&a, &b);
        let pt = partial_transpose(&ab, (2, 2), 1).unwrap();
        let expect = kron(&a, &b.transpose());
        assert!(pt.max_abs_diff(&expect) < 1e-12);
        let pt0 = partial_transpose(&ab, (2, 2), 0).unwrap();
        assert!(pt0.max_abs_diff(&kron(&a.transpose(), &b)) < 1e-12);
    }

    #[test]
    fn partial_transpose_of_max_entangled_is_flip() {
        let d = 3;
        let psi = max_entangled(d);
        let rho = ComplexMatrix::from_fn(d * d, d * d, |i, j| {
            psi.entries()[i] * psi.entries()[j].conj()
        });
        let pt = partial_transpose(&rho.scale(cr(d as f64)), (d, d), 1).unwrap();
        assert!(pt.max_abs_diff(&flip_operator(d)) < 1e-12);
    }

    #[test]
    fn partial_transpose_involutive() {
        let mut rng = TestRng::new(17);
        let x = random_matrix(&mut rng, 9, 9);
        let twice =
            partial_transpose(&partial_transpose(&x, (3, 3), 1).unwrap(), (3, 3), 1).unwrap();
        assert!(twice.max_abs_diff(&x) == 0.0);
    }

    #[test]
    fn permute_identity_and_transpose() {
        let mut rng = TestRng::new(19);
        let x = random_matrix(&mut rng, 4, 4);
        let id = permute_indices(&x, &[2, 2], &[0, 1, 2, 3]).unwrap();
        assert!(id.max_abs_diff(&x) == 0.0);
        // Full transpose: row legs and column legs swap blockwise.
        let tr = permute_indices(&x, &[2, 2], &[2, 3, 0, 1]).unwrap();
        assert!(tr.max_abs_diff(&x.transpose()) == 0.0);
    }

    #[test]
    fn permute_matches_flip_partial_transpose_oracle() {
        // σ implementing ρ ↦ Fρ^Γ: ρ_{ij,kl}|ij⟩⟨kl| ↦ ρ_{ij,kl}|li⟩⟨kj|,
        // i.e. legs (i,j,k,l) land on output positions (1,3,2,0).
        let d = 2;
        let psi = max_entangled(d);
        let rho = ComplexMatrix::from_fn(d * d, d * d, |i, j| {
            psi.entries()[i] * psi.entries()[j].conj()
        });
        let via_sigma = permute_indices(&rho, &[d, d], &[1, 3, 2, 0]).unwrap();
        let oracle = flip_operator(d).mul(&partial_transpose(&rho, (d, d), 1).unwrap());
        assert!(via_sigma.max_abs_diff(&oracle) < 1e-15);
        // F(|ψ⟩⟨ψ|)^Γ = F·F/d = I/d.
        let expect = ComplexMatrix::identity(d * d).scale(cr(1.0 / d as f64));
        assert!(via_sigma.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn permute_composition() {
        let mut rng = TestRng::new(23);
        let x = random_matrix(&mut rng, 4, 4);
        let tau = [1, 3, 2, 0];
        let sigma = [2, 0, 3, 1];
        let lhs = {
            let xt = permute_indices(&x, &[2, 2], &tau).unwrap();
            permute_indices(&xt, &[2, 2], &sigma).unwrap()
        };
        let mut comp = [0usize; 4];
        for p in 0..4 {
            comp[p] = sigma[tau[p]];
        }
        let rhs = permute_indices(&x, &[2, 2], &comp).unwrap();
        assert!(lhs.max_abs_diff(&rhs) == 0.0);
    }

    #[test]
    fn frobenius_inner_basics() {
        let mut rng = TestRng::new(29);
        let t =
            MultiTensor::new(vec![2, 3], (0..6).map(|_| rng.complex_gaussian()).collect()).unwrap();
        let nsq = frobenius_inner(&t, &t).unwrap();
        assert!((nsq.re - t.norm() * t.norm()).abs() < 1e-12);
        assert!(nsq.im.abs() < 1e-15);

        let mut e0 = MultiTensor::zeros(vec![2, 2]);
        e0.set(&[0, 0], cr(1.0));
        let mut e1 = MultiTensor::zeros(vec![2, 2]);
        e1.set(&[1, 0], cr(1.0));
        assert_eq!(frobenius_inner(&e0, &e1).unwrap(), C64::ZERO);
    }

    #[test]
    fn reshape_round_trip() {
        let mut rng = TestRng::new(31);
        let entries: Vec<C64> = (0..24).map(|_| rng.complex_gaussian()).collect();
        let t = MultiTensor::new(vec![2, 3, 4], entries.clone()).unwrap();
        let back = t
            .reshape(vec![6, 4])
            .unwrap()
            .reshape(vec![2, 3, 4])
            .unwrap();
        assert_eq!(back.entries(), &entries[..]);
    }

    #[test]
    fn trace_norm_unitary_invariance() {
        let mut rng = TestRng::new(37);
        for _ in 0..5 {
            let x = random_matrix(&mut rng, 4, 4);
            let u = crate::states::random_unitary(4, rng.next_seed());
            let v = crate::states::random_unitary(4, rng.next_seed());
            let rotated = u.mul(&x).mul(&v);
            assert!((trace_norm(&rotated) - trace_norm(&x)).abs() < 1e-9);
        }
    }
}
