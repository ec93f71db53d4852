//! Entanglement testers: norm-one contractions from the Schatten-1 matrix
//! space to Euclidean space, their test operators T_E = Σ_k E_k ⊗ E_k†,
//! Choi operators Θ_E, classification predicates, and the standard
//! constructions (matrix units, canonical operator bases, SIC POVMs,
//! deformations, and the T_δ interpolation family).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomp;
use crate::error::{Error, Result};
use crate::linalg::{
    c, cr, flip_operator, kron, partial_transpose, ComplexMatrix, MultiTensor, C64,
};
use crate::states::Prng;

/// How a tester was constructed; drives labels and the separability
/// certificate (which needs the inverse norm ‖E⁻¹‖_{ℓ₂→S₁}).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TesterKind {
    /// Matrix units |i⟩⟨j| (the realignment map).
    Realignment,
    /// Canonical orthonormal operator basis (identity + traceless).
    CanonicalBasis,
    /// σ|x_k⟩⟨x_k| over an explicit SIC POVM.
    Sic,
    /// Canonical construction with the SIC test operator (I+F)/2.
    SicEquivalent,
    /// Canonical construction for T_δ = (I+F)/2 + δ(I−F)/2.
    TDelta(f64),
    /// Canonical basis with the identity component rescaled by x.
    Deformed(f64),
    /// Anything else (e.g. rebuilt from a test operator or witness).
    Custom,
}

impl TesterKind {
    /// Short stable label used in reports.
    pub fn label(&self) -> String {
        use alloc::format;
        match self {
            TesterKind::Realignment => String::from("realignment"),
            TesterKind::CanonicalBasis => String::from("canonical"),
            TesterKind::Sic => String::from("sic"),
            TesterKind::SicEquivalent => String::from("sic-equivalent"),
            TesterKind::TDelta(d) => format!("t-delta({d})"),
            TesterKind::Deformed(x) => format!("deformed({x})"),
            TesterKind::Custom => String::from("custom"),
        }
    }

    /// ‖E⁻¹‖_{ℓ₂→S₁} when known: √d for matrix-basis maps, √(2d) for the
    /// SIC map and its equivalent.
    pub fn inverse_norm(&self, d: usize) -> Option<f64> {
        match self {
            TesterKind::Realignment | TesterKind::CanonicalBasis => Some(libm::sqrt(d as f64)),
            TesterKind::Sic | TesterKind::SicEquivalent => Some(libm::sqrt(2.0 * d as f64)),
            _ => None,
        }
    }
}

/// Test operator T_E = Σ_k E_k ⊗ E_k† on ℂ^d ⊗ ℂ^d.
#[derive(Debug, Clone, PartialEq)]
pub struct TestOperator {
    matrix: ComplexMatrix,
    d: usize,
}

impl TestOperator {
    pub fn new(matrix: ComplexMatrix, d: usize) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() != d * d {
            return Err(Error::ShapeMismatch("test operator must be d² × d²"));
        }
        Ok(Self { matrix, d })
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }
}

/// Parameters of a symmetric tester, T_E = αF + βI with γ = β/(α + dβ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Value of ‖E‖_{S₁→ℓ₂} together with how it was obtained. The alternating
/// search only certifies a lower bound, hence the flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TesterNorm {
    pub value: f64,
    pub heuristic: bool,
}

/// Options for the alternating-maximization norm search.
#[derive(Debug, Clone, Copy)]
pub struct NormOptions {
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for NormOptions {
    fn default() -> Self {
        Self {
            restarts: 50,
            max_iter: 500,
            tol: 1e-12,
            seed: 0x7e57,
        }
    }
}

/// A finite family of d×d operators (E_1, …, E_n) acting as
/// X ↦ Σ_k Tr(E_k† X)|k⟩, with its test operator cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Tester {
    d: usize,
    operators: Vec<ComplexMatrix>,
    kind: TesterKind,
    test_op: TestOperator,
}

impl Tester {
    /// Builds a tester from its operators; they must all be d×d.
    pub fn new(operators: Vec<ComplexMatrix>, kind: TesterKind) -> Result<Self> {
        let d = match operators.first() {
            Some(op) if op.is_square() => op.rows(),
            _ => return Err(Error::InvalidParameter("need at least one square operator")),
        };
        if operators.iter().any(|op| op.rows() != d || op.cols() != d) {
            return Err(Error::ShapeMismatch("all tester operators must be d × d"));
        }
        let test_op = compute_test_operator(&operators, d);
        Ok(Self {
            d,
            operators,
            kind,
            test_op,
        })
    }

    #[inline]
    pub fn d(&self) -> usize {
        self.d
    }

    /// Output dimension n.
    #[inline]
    pub fn n(&self) -> usize {
        self.operators.len()
    }

    #[inline]
    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    #[inline]
    pub fn kind(&self) -> TesterKind {
        self.kind
    }

    /// Applies the map: k-th output entry is Tr(E_k† X).
    pub fn apply(&self, x: &ComplexMatrix) -> Result<MultiTensor> {
        if !x.is_square() || x.rows() != self.d {
            return Err(Error::ShapeMismatch("input must be d × d"));
        }
        let out: Vec<C64> = self.operators.iter().map(|e| e.hs_inner(x)).collect();
        MultiTensor::from_vec(out)
    }

    /// The cached test operator Σ_k E_k ⊗ E_k†.
    #[inline]
    pub fn test_operator(&self) -> &TestOperator {
        &self.test_op
    }

    /// Choi operator Θ_E = Σ_k |e_k⟩⟨e_k| over the vectorized operators;
    /// positive semidefinite and satisfying T_E = Θ_E^Γ F.
    pub fn choi(&self) -> ComplexMatrix {
        let n = self.d * self.d;
        let mut theta = ComplexMatrix::zeros(n, n);
        for e in &self.operators {
            let v = e.vectorize();
            for i in 0..n {
                for j in 0..n {
                    let t = theta.get(i, j) + v[i] * v[j].conj();
                    theta.set(i, j, t);
                }
            }
        }
        theta
    }

    /// The n×d² matrix Ê = Σ_k |k⟩⟨e_k| of the map under the identification
    /// M_d(ℂ) ≅ ℂ^{d²}; row k is the conjugated vectorization of E_k.
    pub fn map_matrix(&self) -> ComplexMatrix {
        let d2 = self.d * self.d;
        ComplexMatrix::from_fn(self.n(), d2, |k, j| self.operators[k].entries()[j].conj())
    }

    /// ‖E‖_{S₁→ℓ₂}: closed form √(α+β) (β ≥ 0) or √α (β < 0) when the
    /// test operator is αF + βI, otherwise the best value found by
    /// alternating maximization over rank-one inputs |x⟩⟨y| (a lower
    /// bound, flagged heuristic).
    pub fn norm(&self) -> TesterNorm {
        self.norm_with(&NormOptions::default())
    }

    pub fn norm_with(&self, opts: &NormOptions) -> TesterNorm {
        if let Some((alpha, beta)) = fit_alpha_beta(self.test_op.matrix(), self.d, 1e-10) {
            if alpha >= -1e-12 {
                let a = alpha.max(0.0);
                let sq = if beta >= 0.0 { a + beta } else { a };
                return TesterNorm {
                    value: libm::sqrt(sq.max(0.0)),
                    heuristic: false,
                };
            }
        }
        TesterNorm {
            value: self.norm_heuristic(opts),
            heuristic: true,
        }
    }

    fn norm_heuristic(&self, opts: &NormOptions) -> f64 {
        let d = self.d;
        let mut seeder = Prng::new(opts.seed);
        let mut best = 0.0f64;
        for _ in 0..opts.restarts.max(1) {
            let mut rng = Prng::new(seeder.next_seed());
            let mut y = rng.unit_vector(d);
            let mut prev = -1.0f64;
            for _ in 0..opts.max_iter {
                // Fix y: value = x† M_y x with M_y = Σ (E_k y)(E_k y)†.
                let my = self.gram_given_right(&y);
                let (vx, x) = top_eigpair(&my);
                if vx <= f64::MIN_POSITIVE {
                    // All E_k annihilate y; draw a fresh start.
                    y = rng.unit_vector(d);
                    continue;
                }
                // Fix x: value = y† N_x y with N_x = Σ (E_k† x)(E_k† x)†.
                let nx = self.gram_given_left(&x);
                let (vy, topy) = top_eigpair(&nx);
                if vy <= f64::MIN_POSITIVE {
                    y = rng.unit_vector(d);
                    continue;
                }
                y = topy;
                if (vy - prev).abs() < opts.tol {
                    prev = vy;
                    break;
                }
                prev = vy;
            }
            best = best.max(prev);
        }
        libm::sqrt(best.max(0.0))
    }

    fn gram_given_right(&self, y: &[C64]) -> ComplexMatrix {
        let d = self.d;
        let mut m = ComplexMatrix::zeros(d, d);
        for e in &self.operators {
            let ey = e.mul_vec(y);
            for i in 0..d {
                for j in 0..d {
                    let v = m.get(i, j) + ey[i] * ey[j].conj();
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    fn gram_given_left(&self, x: &[C64]) -> ComplexMatrix {
        let d = self.d;
        let mut m = ComplexMatrix::zeros(d, d);
        for e in &self.operators {
            let ex = e.adjoint().mul_vec(x);
            for i in 0..d {
                for j in 0..d {
                    let v = m.get(i, j) + ex[i] * ex[j].conj();
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Rescales the operators so that the tester norm is 1.
    pub fn normalized(self) -> Result<Tester> {
        let norm = self.norm();
        if norm.value <= 1e-300 {
            return Err(Error::InvalidParameter("cannot normalize the zero map"));
        }
        let s = cr(1.0 / norm.value);
        let ops = self.operators.iter().map(|e| e.scale(s)).collect();
        Tester::new(ops, self.kind)
    }

    /// ℂ-perfect ⇔ the map is an isometry S₂ → ℓ₂ ⇔ Θ_E = I.
    pub fn is_c_perfect(&self, tol: f64) -> bool {
        let d2 = self.d * self.d;
        self.choi().max_abs_diff(&ComplexMatrix::identity(d2)) <= tol
    }

    /// Necessary ℝ-perfectness condition on the test operator:
    /// Π_S T_E Π_S = Π_S with Π_S = (I+F)/2.
    pub fn is_r_perfect(&self, tol: f64) -> bool {
        let d2 = self.d * self.d;
        let proj = ComplexMatrix::identity(d2)
            .add(&flip_operator(self.d))
            .scale(cr(0.5));
        let sandwich = proj.mul(self.test_op.matrix()).mul(&proj);
        sandwich.max_abs_diff(&proj) <= tol
    }

    /// Detects T_E = αF + βI for an operator basis (n = d²) via the trace
    /// formulas, verifying the identity entrywise within `tol`.
    pub fn symmetric_params(&self, tol: f64) -> Option<SymmetricParams> {
        let d = self.d;
        if self.n() != d * d || d < 2 {
            return None;
        }
        let df = d as f64;
        let denom = df * df * df - df;
        let mut hs = 0.0f64;
        let mut tr = 0.0f64;
        for e in &self.operators {
            hs += e.hs_inner(e).re;
            tr += e.trace().norm_sqr();
        }
        let alpha = (df * hs - tr) / denom;
        let beta = (-hs + df * tr) / denom;
        let model = flip_operator(d)
            .scale(cr(alpha))
            .add(&ComplexMatrix::identity(d * d).scale(cr(beta)));
        if self.test_op.matrix().max_abs_diff(&model) > tol {
            return None;
        }
        if alpha < -tol {
            return None;
        }
        let scale = alpha + df * beta;
        if scale.abs() < 1e-12 {
            return None;
        }
        Some(SymmetricParams {
            alpha: alpha.max(0.0),
            beta,
            gamma: beta / scale,
        })
    }

    /// E^♯: the tester whose operators are the adjoints of those of E.
    pub fn adjoint(&self) -> Tester {
        let ops = self.operators.iter().map(|e| e.adjoint()).collect();
        Tester::new(ops, self.kind).expect("same shapes")
    }

    /// E^♭: the tester whose operators are the transposes of those of E,
    /// so that E^♭(X) = E(Xᵀ).
    pub fn transpose_ops(&self) -> Tester {
        let ops = self.operators.iter().map(|e| e.transpose()).collect();
        Tester::new(ops, self.kind).expect("same shapes")
    }

    /// Testers are equivalent (equal up to an output unitary) iff they
    /// share the same test operator.
    pub fn equivalent(&self, other: &Tester, tol: f64) -> Result<bool> {
        if self.d != other.d {
            return Err(Error::ShapeMismatch("testers act on different dimensions"));
        }
        Ok(self.test_op.matrix().max_abs_diff(other.test_op.matrix()) <= tol)
    }

    /// Realignment tester R = {|i⟩⟨j|} in lexicographic (i, j) order.
    pub fn realignment(d: usize) -> Result<Tester> {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be positive"));
        }
        let mut ops = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                ops.push(ComplexMatrix::unit(d, d, i, j));
            }
        }
        Tester::new(ops, TesterKind::Realignment)
    }

    /// Canonical orthonormal operator basis: I/√d, symmetric off-diagonal
    /// pairs, antisymmetric off-diagonal pairs, then the diagonal ladder
    /// (generalized Gell-Mann construction, fixed ordering).
    pub fn canonical_basis(d: usize) -> Result<Tester> {
        Ok(Tester::new(canonical_basis_ops(d)?, TesterKind::CanonicalBasis).expect("valid ops"))
    }

    /// SIC POVM tester S = {σ|x_k⟩⟨x_k|} with σ = √((d+1)/(2d)), from the
    /// explicit fiducials available for d ∈ {2, 3}.
    pub fn sic(d: usize) -> Result<Tester> {
        let vecs = sic_vectors(d)?;
        let sigma = cr(libm::sqrt((d as f64 + 1.0) / (2.0 * d as f64)));
        let ops = vecs
            .iter()
            .map(|x| ComplexMatrix::from_fn(d, d, |i, j| x[i] * x[j].conj()).scale(sigma))
            .collect();
        Tester::new(ops, TesterKind::Sic)
    }

    /// Tester with the SIC test operator (I+F)/2 for any d, built from the
    /// canonical basis as E₁ = √(α+βd)·G₁, E_k = √α·G_k with α = β = 1/2.
    pub fn sic_equivalent(d: usize) -> Result<Tester> {
        let ops = scaled_canonical_ops(d, 0.5, 0.5)?;
        Tester::new(ops, TesterKind::SicEquivalent)
    }

    /// Tester for T_δ = (I+F)/2 + δ(I−F)/2 = αF + βI with α = (1−δ)/2 and
    /// β = (1+δ)/2; T_δ is a test operator exactly for −1 ≤ δ ≤ 1.
    pub fn t_delta(d: usize, delta: f64) -> Result<Tester> {
        if !(-1.0..=1.0).contains(&delta) {
            return Err(Error::InvalidParameter("δ must lie in [−1, 1]"));
        }
        let alpha = (1.0 - delta) / 2.0;
        let beta = (1.0 + delta) / 2.0;
        let ops = scaled_canonical_ops(d, alpha, beta)?;
        Tester::new(ops, TesterKind::TDelta(delta))
    }

    /// Deformed canonical-basis tester: identity component scaled by x ≥ 0,
    /// then globally renormalized to tester norm 1.
    pub fn deformed(d: usize, x: f64) -> Result<Tester> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidParameter("deformation must satisfy x ≥ 0"));
        }
        let mut ops = canonical_basis_ops(d)?;
        ops[0] = ops[0].scale(cr(x));
        // T̃ = F + ((x²−1)/d)·I, so the norm is 1 for x ≤ 1 and
        // √((d−1+x²)/d) for x ≥ 1. At d = 1 the map collapses to x·id.
        let df = d as f64;
        let norm = if d == 1 {
            if x <= 0.0 {
                return Err(Error::InvalidParameter(
                    "the d = 1 deformation vanishes at x = 0",
                ));
            }
            x
        } else if x >= 1.0 {
            libm::sqrt((df - 1.0 + x * x) / df)
        } else {
            1.0
        };
        let s = cr(1.0 / norm);
        let ops = ops.into_iter().map(|e| e.scale(s)).collect();
        Tester::new(ops, TesterKind::Deformed(x))
    }

    /// Canonical construction of a tester from a test operator: diagonalize
    /// Θ = (TF)^Γ ≥ 0 and take the matrix versions of √λ_k x_k.
    pub fn from_test_operator(top: &TestOperator) -> Result<Tester> {
        let d = top.d();
        let f = flip_operator(d);
        let theta = partial_transpose(&top.matrix().mul(&f), (d, d), 1)?;
        if !theta.is_hermitian(1e-8) {
            return Err(Error::NotHermitian);
        }
        let (vals, vecs) = decomp::hermitian_eig(&theta, true);
        let vecs = vecs.expect("vectors requested");
        if vals.last().copied().unwrap_or(0.0) < -1e-8 {
            return Err(Error::NotPositiveSemidefinite);
        }
        let mut ops = Vec::new();
        for (k, &lam) in vals.iter().enumerate() {
            let lam = lam.max(0.0);
            if lam <= 1e-10 {
                continue;
            }
            let s = cr(libm::sqrt(lam));
            let col: Vec<C64> = (0..d * d).map(|i| vecs.get(i, k) * s).collect();
            ops.push(ComplexMatrix::from_vector(d, d, &col)?);
        }
        if ops.is_empty() {
            return Err(Error::InvalidParameter(
                "test operator has numerically zero rank",
            ));
        }
        Tester::new(ops, TesterKind::Custom)
    }
}

fn compute_test_operator(operators: &[ComplexMatrix], d: usize) -> TestOperator {
    let mut t = ComplexMatrix::zeros(d * d, d * d);
    for e in operators {
        t = t.add(&kron(e, &e.adjoint()));
    }
    TestOperator { matrix: t, d }
}

/// Least-squares fit of T onto span{F, I} with an entrywise residual check;
/// the Gram system is (⟨F,F⟩, ⟨F,I⟩; ⟨I,F⟩, ⟨I,I⟩) = (d², d; d, d²).
fn fit_alpha_beta(t: &ComplexMatrix, d: usize, tol: f64) -> Option<(f64, f64)> {
    let d2 = (d * d) as f64;
    let df = d as f64;
    if d < 2 {
        // F = I at d = 1; report it as pure β.
        let beta = t.get(0, 0).re;
        let model = ComplexMatrix::identity(1).scale(cr(beta));
        return (t.max_abs_diff(&model) <= tol).then_some((0.0, beta));
    }
    let f = flip_operator(d);
    let fi = f.hs_inner(t);
    let ii = ComplexMatrix::identity(d * d).hs_inner(t);
    let det = d2 * d2 - df * df;
    let alpha = (d2 * fi.re - df * ii.re) / det;
    let beta = (d2 * ii.re - df * fi.re) / det;
    let model = f
        .scale(cr(alpha))
        .add(&ComplexMatrix::identity(d * d).scale(cr(beta)));
    (t.max_abs_diff(&model) <= tol).then_some((alpha, beta))
}

/// Largest eigenvalue and corresponding unit eigenvector of a Hermitian matrix.
fn top_eigpair(m: &ComplexMatrix) -> (f64, Vec<C64>) {
    let (vals, vecs) = decomp::hermitian_eig(m, true);
    let vecs = vecs.expect("vectors requested");
    let v: Vec<C64> = (0..m.rows()).map(|i| vecs.get(i, 0)).collect();
    (vals[0], v)
}

fn canonical_basis_ops(d: usize) -> Result<Vec<ComplexMatrix>> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive"));
    }
    let mut ops = Vec::with_capacity(d * d);
    ops.push(ComplexMatrix::identity(d).scale(cr(1.0 / libm::sqrt(d as f64))));
    let inv_sqrt2 = 1.0 / libm::sqrt(2.0);
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m.set(i, j, cr(inv_sqrt2));
            m.set(j, i, cr(inv_sqrt2));
            ops.push(m);
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m.set(i, j, c(0.0, inv_sqrt2));
            m.set(j, i, c(0.0, -inv_sqrt2));
            ops.push(m);
        }
    }
    for k in 1..d {
        let norm = 1.0 / libm::sqrt((k * (k + 1)) as f64);
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..k {
            m.set(j, j, cr(norm));
        }
        m.set(k, k, cr(-(k as f64) * norm));
        ops.push(m);
    }
    Ok(ops)
}

/// E₁ = √(α+βd)·G₁ and E_k = √α·G_k over the canonical basis, realizing
/// the test operator αF + βI.
fn scaled_canonical_ops(d: usize, alpha: f64, beta: f64) -> Result<Vec<ComplexMatrix>> {
    let mut ops = canonical_basis_ops(d)?;
    let head = alpha + beta * d as f64;
    if head < -1e-12 || alpha < -1e-12 {
        return Err(Error::InvalidParameter("α and α + βd must be nonnegative"));
    }
    ops[0] = ops[0].scale(cr(libm::sqrt(head.max(0.0))));
    let tail = cr(libm::sqrt(alpha.max(0.0)));
    for op in ops.iter_mut().skip(1) {
        *op = op.scale(tail);
    }
    Ok(ops)
}

/// Unit vectors of the explicit SIC POVMs: the Bloch tetrahedron for d = 2
/// and the Weyl–Heisenberg orbit of the fiducial (0, 1, −1)/√2 for d = 3.
pub fn sic_vectors(d: usize) -> Result<Vec<Vec<C64>>> {
    match d {
        2 => {
            let a = 1.0 / libm::sqrt(3.0);
            let b = libm::sqrt(2.0 / 3.0);
            let omega = c(-0.5, libm::sqrt(3.0) / 2.0);
            let omega2 = omega * omega;
            Ok(vec![
                vec![cr(1.0), cr(0.0)],
                vec![cr(a), cr(b)],
                vec![cr(a), cr(b) * omega],
                vec![cr(a), cr(b) * omega2],
            ])
        }
        3 => {
            let s = 1.0 / libm::sqrt(2.0);
            let fid = [cr(0.0), cr(s), cr(-s)];
            let omega = c(-0.5, libm::sqrt(3.0) / 2.0);
            let mut out = Vec::with_capacity(9);
            for a in 0..3usize {
                for b in 0..3usize {
                    let mut v = vec![C64::ZERO; 3];
                    for (i, slot) in v.iter_mut().enumerate() {
                        let src = (i + 3 - a) % 3;
                        let mut phase = cr(1.0);
                        for _ in 0..(b * src) % 3 {
                            phase *= omega;
                        }
                        *slot = phase * fid[src];
                    }
                    out.push(v);
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

/// Inverse SIC frame M_k = √(2/d)(√(d+1)|x_k⟩⟨x_k| − I/√(d+1)), satisfying
/// Σ_k M_k ⊗ M_k† = 2(F − I/(d+1)) and Σ_k Tr(S_k†X) M_k = X.
pub fn sic_inverse_frame(d: usize) -> Result<Vec<ComplexMatrix>> {
    let vecs = sic_vectors(d)?;
    let lead = libm::sqrt(2.0 / d as f64);
    let proj_scale = cr(lead * libm::sqrt(d as f64 + 1.0));
    let id_scale = cr(lead / libm::sqrt(d as f64 + 1.0));
    let id = ComplexMatrix::identity(d);
    Ok(vecs
        .iter()
        .map(|x| {
            let proj = ComplexMatrix::from_fn(d, d, |i, j| x[i] * x[j].conj());
            proj.scale(proj_scale).sub(&id.scale(id_scale))
        })
        .collect())
}
