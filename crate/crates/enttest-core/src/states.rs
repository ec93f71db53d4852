//! Construction of the quantum states used by the detection engine, plus
//! the seeded randomness all fixtures are built from.
//!
//! Randomness contract: the generator is ChaCha8 seeded from a `u64`
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`), uniforms come from the top
//! 53 bits of `next_u64`, and Gaussians use the Box–Muller transform. This
//! makes every fixture reproducible bit-for-bit from its seed, in any
//! implementation that follows the same recipe.
//!
//! Index convention: kets in the literature are usually 1-based (|112⟩ and
//! friends); storage here is 0-based, so |112⟩ becomes the multi-index
//! (0, 0, 1). This mapping is fixed once here and used everywhere.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use core::f64::consts::TAU;

use crate::decomp;
use crate::error::{Error, Result};
use crate::linalg::{cr, flip_operator, kron, max_entangled, ComplexMatrix, MultiTensor, C64};

/// Seedable pseudo-random source (ChaCha8 + Box–Muller), passed explicitly.
#[derive(Debug, Clone)]
pub struct Prng {
    rng: ChaCha8Rng,
    spare_gaussian: Option<f64>,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare_gaussian: None,
        }
    }

    /// Uniform draw in [0, 1) with 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Standard normal draw via Box–Muller.
    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_gaussian.take() {
            return z;
        }
        let u1 = 1.0 - self.uniform(); // in (0, 1], keeps the log finite
        let u2 = self.uniform();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        self.spare_gaussian = Some(r * libm::sin(TAU * u2));
        r * libm::cos(TAU * u2)
    }

    /// Complex draw with independent standard normal parts.
    pub fn complex_gaussian(&mut self) -> C64 {
        C64::new(self.gaussian(), self.gaussian())
    }

    /// Haar-ish random unit vector in ℂ^d.
    pub fn unit_vector(&mut self, d: usize) -> Vec<C64> {
        let mut v: Vec<C64> = (0..d).map(|_| self.complex_gaussian()).collect();
        let n = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
        for z in &mut v {
            *z /= n;
        }
        v
    }

    /// Derives a fresh sub-seed; used to give parallel searches their own
    /// deterministic streams.
    pub fn next_seed(&mut self) -> u64 {
        self.rng.next_u64()
    }
}

/// Positive semidefinite, unit-trace operator together with the list of
/// subsystem dimensions it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-10), positivity (min eigenvalue ≥ −1e-10),
    /// unit trace (±1e-10) and the dimension product.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidParameter(
                "subsystem dimensions must be positive",
            ));
        }
        if !matrix.is_square() || matrix.rows() != total {
            return Err(Error::ShapeMismatch(
                "density matrix must be square over ∏ dims",
            ));
        }
        if !matrix.is_hermitian(1e-10) {
            return Err(Error::InvalidState("density matrix is not Hermitian"));
        }
        if (matrix.trace().re - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState("density matrix trace is not 1"));
        }
        let eigs = matrix.hermitian_eigenvalues();
        if eigs.last().copied().unwrap_or(0.0) < -1e-10 {
            return Err(Error::InvalidState(
                "density matrix has a negative eigenvalue",
            ));
        }
        Ok(Self { matrix, dims })
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    #[inline]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn total_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// |φ⟩⟨φ| of a unit vector, with subsystem structure from its shape.
    pub fn from_pure(phi: &MultiTensor) -> Result<Self> {
        if (phi.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState("pure state must be a unit vector"));
        }
        let v = phi.entries();
        let n = v.len();
        let m = ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj());
        Self::new(m, phi.shape().to_vec())
    }

    /// Purity Tr(ρ²).
    pub fn purity(&self) -> f64 {
        self.matrix.hs_inner(&self.matrix).re
    }

    /// ρ_A ⊗ ρ_B with concatenated subsystem lists.
    pub fn tensor(&self, other: &Self) -> Self {
        let dims = self.dims.iter().chain(other.dims.iter()).copied().collect();
        Self {
            matrix: kron(&self.matrix, &other.matrix),
            dims,
        }
    }
}

/// Schmidt decomposition |φ⟩ = Σ √λ_i |e_i f_i⟩ of a bipartite unit vector.
#[derive(Debug, Clone)]
pub struct SchmidtData {
    /// Coefficients λ_i, decreasing, positive, summing to 1.
    pub coefficients: Vec<f64>,
    /// Left orthonormal family as columns (d_A × r).
    pub left_basis: ComplexMatrix,
    /// Right orthonormal family as columns (d_B × r).
    pub right_basis: ComplexMatrix,
}

impl SchmidtData {
    /// Rebuilds Σ √λ_i |e_i⟩⊗|f_i⟩ as a [d_A, d_B] tensor.
    pub fn reconstruct(&self) -> MultiTensor {
        let da = self.left_basis.rows();
        let db = self.right_basis.rows();
        let mut t = MultiTensor::zeros(vec![da, db]);
        for (k, &lam) in self.coefficients.iter().enumerate() {
            let s = cr(libm::sqrt(lam));
            for i in 0..da {
                for j in 0..db {
                    let v =
                        t.get(&[i, j]) + s * self.left_basis.get(i, k) * self.right_basis.get(j, k);
                    t.set(&[i, j], v);
                }
            }
        }
        t
    }
}

/// Schmidt decomposition via SVD of the coefficient matrix.
pub fn schmidt_decompose(phi: &MultiTensor) -> Result<SchmidtData> {
    if phi.order() != 2 {
        return Err(Error::ShapeMismatch(
            "Schmidt decomposition needs a bipartite tensor",
        ));
    }
    if (phi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState("input vector must be normalized"));
    }
    let coeff = phi.to_matrix(1)?;
    let f = decomp::svd(&coeff);
    let kept: Vec<usize> = (0..f.sigma.len()).filter(|&k| f.sigma[k] > 1e-12).collect();
    let r = kept.len();
    let da = coeff.rows();
    let db = coeff.cols();
    let mut left = ComplexMatrix::zeros(da, r);
    let mut right = ComplexMatrix::zeros(db, r);
    let mut coefficients = Vec::with_capacity(r);
    for (col, &k) in kept.iter().enumerate() {
        coefficients.push(f.sigma[k] * f.sigma[k]);
        for i in 0..da {
            left.set(i, col, f.u.get(i, k));
        }
        for j in 0..db {
            // φ = Σ σ_k u_k ⊗ conj(v_k)
            right.set(j, col, f.v.get(j, k).conj());
        }
    }
    Ok(SchmidtData {
        coefficients,
        left_basis: left,
        right_basis: right,
    })
}

/// Unit vector Σ √λ_i |ii⟩ in ℂ^d ⊗ ℂ^d from a Schmidt spectrum.
pub fn pure_from_schmidt(lambdas: &[f64], d: usize) -> Result<MultiTensor> {
    if lambdas.is_empty() || lambdas.len() > d {
        return Err(Error::InvalidParameter("spectrum length must be in 1..=d"));
    }
    if lambdas.iter().any(|&l| !l.is_finite() || l < 0.0) {
        return Err(Error::InvalidParameter(
            "Schmidt coefficients must be nonnegative",
        ));
    }
    let sum: f64 = lambdas.iter().sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter(
            "Schmidt coefficients must sum to 1",
        ));
    }
    let mut t = MultiTensor::zeros(vec![d, d]);
    for (i, &l) in lambdas.iter().enumerate() {
        t.set(&[i, i], cr(libm::sqrt(l)));
    }
    Ok(t)
}

/// Isotropic state τ_μ = μ|ψ⟩⟨ψ| + (1−μ)I/d²; entangled iff μ > 1/(d+1).
pub fn isotropic(d: usize, mu: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter("μ must lie in [0, 1]"));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive"));
    }
    let psi = max_entangled(d);
    let v = psi.entries();
    let n = d * d;
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let pure = v[i] * v[j].conj() * cr(mu);
        if i == j {
            pure + cr((1.0 - mu) / (n as f64))
        } else {
            pure
        }
    });
    DensityMatrix::new(m, vec![d, d])
}

/// Werner state σ_μ = μ(I+F)/(d(d+1)) + (1−μ)(I−F)/(d(d−1)); entangled iff μ < 1/2.
pub fn werner(d: usize, mu: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter("μ must lie in [0, 1]"));
    }
    if d < 2 {
        return Err(Error::InvalidParameter("Werner states need d ≥ 2"));
    }
    let n = d * d;
    let f = flip_operator(d);
    let cs = mu / (d as f64 * (d as f64 + 1.0));
    let ca = (1.0 - mu) / (d as f64 * (d as f64 - 1.0));
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let fij = f.get(i, j);
        let iij = if i == j { cr(1.0) } else { C64::ZERO };
        (iij + fij) * cr(cs) + (iij - fij) * cr(ca)
    });
    DensityMatrix::new(m, vec![d, d])
}

/// Noisy pure state ρ_μ = μ|φ⟩⟨φ| + (1−μ)I/d² for a bipartite unit φ.
pub fn noisy_pure(phi: &MultiTensor, mu: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::InvalidParameter("μ must lie in [0, 1]"));
    }
    if phi.order() != 2 || phi.shape()[0] != phi.shape()[1] {
        return Err(Error::ShapeMismatch(
            "noisy pure states are bipartite with equal local dims",
        ));
    }
    if (phi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState("pure state must be a unit vector"));
    }
    let v = phi.entries();
    let n = v.len();
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let pure = v[i] * v[j].conj() * cr(mu);
        if i == j {
            pure + cr((1.0 - mu) / (n as f64))
        } else {
            pure
        }
    });
    DensityMatrix::new(m, phi.shape().to_vec())
}

/// Three-qubit W state (|001⟩ + |010⟩ + |100⟩)/√3 in 0-based indexing.
pub fn w_state() -> MultiTensor {
    let mut t = MultiTensor::zeros(vec![2, 2, 2]);
    let amp = cr(1.0 / libm::sqrt(3.0));
    t.set(&[0, 0, 1], amp);
    t.set(&[0, 1, 0], amp);
    t.set(&[1, 0, 0], amp);
    t
}

/// Tensor product of local vectors.
pub fn product_state(factors: &[Vec<C64>]) -> Result<MultiTensor> {
    if factors.is_empty() || factors.iter().any(|f| f.is_empty()) {
        return Err(Error::InvalidParameter("need at least one nonempty factor"));
    }
    let shape: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let mut entries = vec![C64::new(1.0, 0.0)];
    for f in factors {
        let mut next = Vec::with_capacity(entries.len() * f.len());
        for e in &entries {
            for z in f {
                next.push(e * z);
            }
        }
        entries = next;
    }
    MultiTensor::new(shape, entries)
}

/// Random unit vector on ⊗ ℂ^{d_i}, Gaussian entries normalized.
pub fn random_pure(dims: &[usize], seed: u64) -> Result<MultiTensor> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParameter("dimensions must be positive"));
    }
    let total: usize = dims.iter().product();
    let mut rng = Prng::new(seed);
    let v = rng.unit_vector(total);
    MultiTensor::new(dims.to_vec(), v)
}

/// Random density matrix GG†/Tr(GG†) with G Gaussian of the given rank.
pub fn random_density(dims: &[usize], seed: u64, rank: usize) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParameter("dimensions must be positive"));
    }
    let total: usize = dims.iter().product();
    if rank == 0 || rank > total {
        return Err(Error::InvalidParameter(
            "rank must be in 1..=total dimension",
        ));
    }
    let mut rng = Prng::new(seed);
    let g = ComplexMatrix::from_fn(total, rank, |_, _| rng.complex_gaussian());
    let gg = g.mul(&g.adjoint());
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale(cr(1.0 / tr)), dims.to_vec())
}

/// Haar-distributed random unitary via Gram–Schmidt of a Gaussian matrix.
pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = Prng::new(seed);
    let g = ComplexMatrix::from_fn(d, d, |_, _| rng.complex_gaussian());
    let mut q = ComplexMatrix::zeros(d, d);
    for j in 0..d {
        let mut col: Vec<C64> = (0..d).map(|i| g.get(i, j)).collect();
        for k in 0..j {
            let mut overlap = C64::ZERO;
            for i in 0..d {
                overlap += q.get(i, k).conj() * col[i];
            }
            for i in 0..d {
                let v = col[i] - overlap * q.get(i, k);
                col[i] = v;
            }
        }
        let n = libm::sqrt(col.iter().map(|z| z.norm_sqr()).sum());
        for i in 0..d {
            q.set(i, j, col[i] / n);
        }
    }
    q
}

/// Random separable state Σ_k p_k |x_k⟩⟨x_k| ⊗ |y_k⟩⟨y_k|.
pub fn random_separable(d1: usize, d2: usize, terms: usize, seed: u64) -> Result<DensityMatrix> {
    if d1 == 0 || d2 == 0 || terms == 0 {
        return Err(Error::InvalidParameter(
            "dimensions and term count must be positive",
        ));
    }
    let mut rng = Prng::new(seed);
    let mut weights: Vec<f64> = (0..terms).map(|_| rng.uniform() + 1e-9).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let n = d1 * d2;
    let mut m = ComplexMatrix::zeros(n, n);
    for &p in &weights {
        let x = rng.unit_vector(d1);
        let y = rng.unit_vector(d2);
        let mut xy = vec![C64::ZERO; n];
        for a in 0..d1 {
            for b in 0..d2 {
                xy[a * d2 + b] = x[a] * y[b];
            }
        }
        for i in 0..n {
            for j in 0..n {
                let v = m.get(i, j) + cr(p) * xy[i] * xy[j].conj();
                m.set(i, j, v);
            }
        }
    }
    DensityMatrix::new(m, vec![d1, d2])
}
