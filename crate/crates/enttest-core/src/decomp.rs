//! Jacobi-type decompositions for small dense complex matrices.
//!
//! All matrices in this crate are tiny (at most a few hundred rows), so the
//! one-sided Hestenes SVD and the cyclic two-sided Hermitian Jacobi sweep
//! are both accurate and fast enough, and keep the crate free of std.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{cr, ComplexMatrix, C64};

const MAX_SWEEPS: usize = 64;
const REL_EPS: f64 = 1e-15;

/// Result of a full singular value decomposition A = U Σ V†.
pub(crate) struct Svd {
    /// Left singular vectors as columns, rows × k with k = min(rows, cols).
    pub u: ComplexMatrix,
    /// Singular values in decreasing order.
    pub sigma: Vec<f64>,
    /// Right singular vectors as columns, cols × k.
    pub v: ComplexMatrix,
}

/// 2×2 Jacobi rotation parameters diagonalizing [[α, g·e^{iφ}], [g·e^{-iφ}, β]].
#[inline]
fn rotation(alpha: f64, beta: f64, g: f64) -> (f64, f64) {
    let zeta = (beta - alpha) / (2.0 * g);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + libm::sqrt(1.0 + zeta * zeta))
    } else {
        -1.0 / (-zeta + libm::sqrt(1.0 + zeta * zeta))
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    (c, c * t)
}

/// One-sided Hestenes–Jacobi SVD on the columns of `a` (rows ≥ cols assumed).
///
/// Returns the rotated column matrix B with pairwise-orthogonal columns and,
/// optionally, the accumulated right factor V with B = A·V.
fn orthogonalize_columns(
    a: &ComplexMatrix,
    want_v: bool,
) -> (ComplexMatrix, Option<ComplexMatrix>) {
    let (m, n) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut v = want_v.then(|| ComplexMatrix::identity(n));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = C64::ZERO;
                for i in 0..m {
                    let bp = b.get(i, p);
                    let bq = b.get(i, q);
                    app += bp.norm_sqr();
                    aqq += bq.norm_sqr();
                    apq += bp.conj() * bq;
                }
                let g = apq.norm();
                if g <= REL_EPS * libm::sqrt(app * aqq) || g < f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let phase = apq / cr(g);
                let (c, s) = rotation(app, aqq, g);
                let pc = phase.conj();
                for i in 0..m {
                    let bp = b.get(i, p);
                    let bq = b.get(i, q) * pc;
                    b.set(i, p, bp * cr(c) - bq * cr(s));
                    b.set(i, q, bp * cr(s) + bq * cr(c));
                }
                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vp = vm.get(i, p);
                        let vq = vm.get(i, q) * pc;
                        vm.set(i, p, vp * cr(c) - vq * cr(s));
                        vm.set(i, q, vp * cr(s) + vq * cr(c));
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    (b, v)
}

/// Singular values of an arbitrary complex matrix, in decreasing order.
pub(crate) fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let work = if a.rows() >= a.cols() {
        a.clone()
    } else {
        a.adjoint()
    };
    let (b, _) = orthogonalize_columns(&work, false);
    let n = b.cols();
    let mut sv: Vec<f64> = (0..n)
        .map(|j| {
            let s: f64 = (0..b.rows()).map(|i| b.get(i, j).norm_sqr()).sum();
            libm::sqrt(s)
        })
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Full SVD with singular vectors; works for any rectangular shape.
pub(crate) fn svd(a: &ComplexMatrix) -> Svd {
    if a.rows() < a.cols() {
        // A† = U Σ V† implies A = V Σ U†.
        let t = svd(&a.adjoint());
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let (m, n) = (a.rows(), a.cols());
    let (b, v) = orthogonalize_columns(a, true);
    let v = v.expect("V accumulated");

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n)
        .map(|j| libm::sqrt((0..m).map(|i| b.get(i, j).norm_sqr()).sum()))
        .collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap());

    let mut u = ComplexMatrix::zeros(m, n);
    let mut vv = ComplexMatrix::zeros(n, n);
    let mut sigma = vec![0.0; n];
    for (k, &j) in order.iter().enumerate() {
        sigma[k] = norms[j];
        if norms[j] > 0.0 {
            let inv = cr(1.0 / norms[j]);
            for i in 0..m {
                u.set(i, k, b.get(i, j) * inv);
            }
        }
        for i in 0..n {
            vv.set(i, k, v.get(i, j));
        }
    }
    Svd { u, sigma, v: vv }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
///
/// Returns eigenvalues in decreasing order and, when requested, the matrix
/// of eigenvectors as columns. The strictly lower triangle of the input is
/// taken as the conjugate of the upper one.
pub(crate) fn hermitian_eig(
    a: &ComplexMatrix,
    want_vectors: bool,
) -> (Vec<f64>, Option<ComplexMatrix>) {
    assert!(a.is_square(), "eigendecomposition requires a square matrix");
    let n = a.rows();
    // Hermitize to wash out representation noise in the input.
    let mut w = ComplexMatrix::from_fn(n, n, |i, j| (a.get(i, j) + a.get(j, i).conj()) * cr(0.5));
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let fro = w.frobenius_norm();
    if fro == 0.0 {
        let vals = vec![0.0; n];
        return (vals, v);
    }
    let thr = REL_EPS * fro;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let wpq = w.get(p, q);
                let g = wpq.norm();
                if g <= thr {
                    continue;
                }
                rotated = true;
                let phase = wpq / cr(g);
                let (c, s) = rotation(w.get(p, p).re, w.get(q, q).re, g);
                let pc = phase.conj();
                // W ← W·J.
                for i in 0..n {
                    let wp = w.get(i, p);
                    let wq = w.get(i, q) * pc;
                    w.set(i, p, wp * cr(c) - wq * cr(s));
                    w.set(i, q, wp * cr(s) + wq * cr(c));
                }
                // W ← J†·W.
                for j in 0..n {
                    let wp = w.get(p, j);
                    let wq = w.get(q, j) * phase;
                    w.set(p, j, wp * cr(c) - wq * cr(s));
                    w.set(q, j, wp * cr(s) + wq * cr(c));
                }
                if let Some(vm) = v.as_mut() {
                    for i in 0..n {
                        let vp = vm.get(i, p);
                        let vq = vm.get(i, q) * pc;
                        vm.set(i, p, vp * cr(c) - vq * cr(s));
                        vm.set(i, q, vp * cr(s) + vq * cr(c));
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| w.get(i, i).re).collect();
    order.sort_by(|&x, &y| diag[y].partial_cmp(&diag[x]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vecs = v.map(|vm| ComplexMatrix::from_fn(n, n, |i, k| vm.get(i, order[k])));
    (vals, vecs)
}

/// Spectral norm (largest singular value).
pub(crate) fn spectral_norm(a: &ComplexMatrix) -> f64 {
    // Eigenvalues of the smaller Gram matrix.
    let g = if a.rows() <= a.cols() {
        a.mul(&a.adjoint())
    } else {
        a.adjoint().mul(a)
    };
    let (vals, _) = hermitian_eig(&g, false);
    libm::sqrt(vals.first().copied().unwrap_or(0.0).max(0.0))
}
