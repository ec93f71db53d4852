//! The detection engine: tester tensor products applied to states, exact
//! bipartite values, the permuted/witness machinery, and the multipartite
//! bounds built from injective-norm estimates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomp;
use crate::error::{Error, Result};
use crate::linalg::{cr, permute_indices, trace_norm, ComplexMatrix, MultiTensor, C64};
use crate::states::{DensityMatrix, Prng};
use crate::testers::{TestOperator, Tester};

/// Verdict tolerance for exact bipartite values.
pub const EXACT_VERDICT_TOL: f64 = 1e-9;
/// Verdict tolerance for optimization-derived bounds.
pub const OPT_VERDICT_TOL: f64 = 1e-6;

/// Nature of a reported number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Computed exactly (up to floating point), e.g. a trace norm.
    Exact,
    /// A certified lower bound on the projective norm.
    CertifiedLower,
    /// A best-effort value from a local search; never used for verdicts.
    Heuristic,
}

impl BoundKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::CertifiedLower => "certified_lower",
            BoundKind::Heuristic => "heuristic",
        }
    }
}

/// Outcome of a criterion evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
    SeparableCertified,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Entangled => "entangled",
            Verdict::Inconclusive => "inconclusive",
            Verdict::SeparableCertified => "separable_certified",
        }
    }
}

/// Full record of a criterion evaluation. Entangled verdicts are only ever
/// issued from exact values or certified lower bounds.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub value: f64,
    pub bound_kind: BoundKind,
    pub verdict: Verdict,
    pub method: String,
    pub tester_ids: Vec<String>,
    /// Best-effort companion value from local search, when one exists.
    pub heuristic_value: Option<f64>,
    /// Injective-norm sandwich, when the ε route was used.
    pub epsilon_lower: Option<f64>,
    pub epsilon_upper: Option<f64>,
    /// Separability-certificate threshold 1/(‖E⁻¹‖·‖F⁻¹‖), when known.
    pub certificate_threshold: Option<f64>,
}

/// Realignment of a bipartite operator: R(ρ)[(i,i'),(j,j')] = ρ[(i,j),(i',j')].
fn realign_bipartite(rho: &ComplexMatrix, d1: usize, d2: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d1 * d1, d2 * d2);
    for i in 0..d1 {
        for ip in 0..d1 {
            for j in 0..d2 {
                for jp in 0..d2 {
                    out.set(i * d1 + ip, j * d2 + jp, rho.get(i * d2 + j, ip * d2 + jp));
                }
            }
        }
    }
    out
}

/// ‖(E⊗F)(X)‖ viewed as the S₁ norm of the n_A×n_B output matrix, for a raw
/// (not necessarily positive) bipartite operator X.
fn bipartite_value_raw(ta: &Tester, tb: &Tester, x: &ComplexMatrix) -> Result<f64> {
    let (d1, d2) = (ta.d(), tb.d());
    if !x.is_square() || x.rows() != d1 * d2 {
        return Err(Error::ShapeMismatch("operator must be square over d_A·d_B"));
    }
    let realigned = realign_bipartite(x, d1, d2);
    let out = ta
        .map_matrix()
        .mul(&realigned)
        .mul(&tb.map_matrix().transpose());
    Ok(trace_norm(&out))
}

/// Exact value ‖(E_A ⊗ E_B)(ρ)‖₁ of the bipartite criterion: reshape the
/// output of the tester pair to an n_A×n_B matrix and take its trace norm.
pub fn bipartite_value(ta: &Tester, tb: &Tester, rho: &DensityMatrix) -> Result<f64> {
    if rho.dims().len() != 2 {
        return Err(Error::ShapeMismatch("state must be bipartite"));
    }
    if rho.dims()[0] != ta.d() || rho.dims()[1] != tb.d() {
        return Err(Error::ShapeMismatch(
            "tester dimensions must match the state",
        ));
    }
    bipartite_value_raw(ta, tb, rho.matrix())
}

/// Evaluates the bipartite criterion and issues a verdict, including the
/// separability certificate when the testers' inverse norms are known.
pub fn verdict(
    ta: &Tester,
    tb: &Tester,
    rho: &DensityMatrix,
    verdict_tol: f64,
) -> Result<CriterionReport> {
    for t in [ta, tb] {
        if (t.norm().value - 1.0).abs() > 1e-9 {
            return Err(Error::UnnormalizedTester);
        }
    }
    let value = bipartite_value(ta, tb, rho)?;
    let certificate_threshold = match (
        ta.kind().inverse_norm(ta.d()),
        tb.kind().inverse_norm(tb.d()),
    ) {
        (Some(a), Some(b)) => Some(1.0 / (a * b)),
        _ => None,
    };
    let verdict = if certificate_threshold.is_some_and(|thr| value <= thr + 1e-12) {
        Verdict::SeparableCertified
    } else if value > 1.0 + verdict_tol {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(CriterionReport {
        value,
        bound_kind: BoundKind::Exact,
        verdict,
        method: String::from("trace norm of reshaped tester output"),
        tester_ids: vec![ta.kind().label(), tb.kind().label()],
        heuristic_value: None,
        epsilon_lower: None,
        epsilon_upper: None,
        certificate_threshold,
    })
}

/// Both sides of the R/S inequality s ≥ (r+1)/2 for one state.
#[derive(Debug, Clone, Copy)]
pub struct RsCheck {
    pub r_value: f64,
    pub s_value: f64,
    /// s − (r+1)/2; zero exactly on the equality classes.
    pub slack: f64,
    pub holds: bool,
}

/// Computes ‖R⊗²(ρ)‖₁ and ‖S⊗²(ρ)‖₁ exactly and checks s ≥ (r+1)/2.
/// The SIC side uses the equivalent canonical construction, which has the
/// same test operator and therefore the same value in every dimension.
pub fn rs_inequality_check(rho: &DensityMatrix) -> Result<RsCheck> {
    if rho.dims().len() != 2 || rho.dims()[0] != rho.dims()[1] {
        return Err(Error::ShapeMismatch(
            "need a bipartite state with equal local dims",
        ));
    }
    let d = rho.dims()[0];
    let r = Tester::realignment(d)?;
    let s = Tester::sic_equivalent(d)?;
    let r_value = bipartite_value(&r, &r, rho)?;
    let s_value = bipartite_value(&s, &s, rho)?;
    let slack = s_value - (r_value + 1.0) / 2.0;
    Ok(RsCheck {
        r_value,
        s_value,
        slack,
        holds: slack >= -1e-8,
    })
}

/// Index permutation ρ ↦ Fρ^Γ of the completeness theorem:
/// ρ_{ij,kl}|ij⟩⟨kl| ↦ ρ_{ij,kl}|li⟩⟨kj|.
pub fn flip_gamma(rho: &ComplexMatrix, d: usize) -> Result<ComplexMatrix> {
    permute_indices(rho, &[d, d], &[1, 3, 2, 0])
}

/// Permuted criterion value ‖E^♯ ⊗ E(Fρ^Γ)‖₁.
pub fn permuted_value(t: &Tester, rho: &DensityMatrix) -> Result<f64> {
    let d = t.d();
    if rho.dims() != [d, d] {
        return Err(Error::ShapeMismatch(
            "state must be bipartite d×d matching the tester",
        ));
    }
    let permuted = flip_gamma(rho.matrix(), d)?;
    bipartite_value_raw(&t.adjoint(), t, &permuted)
}

/// Converts an entanglement witness Θ (Hermitian, PSD, with ε-norm at most
/// one — the caller's responsibility) into the tester of the completeness
/// theorem, via the test operator T = Θ^Γ F. If Tr(Θρ) > 1 then the
/// permuted criterion value of the result on ρ exceeds 1.
pub fn witness_to_tester(theta: &ComplexMatrix, d: usize) -> Result<Tester> {
    if !theta.is_square() || theta.rows() != d * d {
        return Err(Error::ShapeMismatch("witness must be d² × d²"));
    }
    if !theta.is_hermitian(1e-8) {
        return Err(Error::NotHermitian);
    }
    let eigs = theta.hermitian_eigenvalues();
    if eigs.last().copied().unwrap_or(0.0) < -1e-8 {
        return Err(Error::NotPositiveSemidefinite);
    }
    let f = crate::linalg::flip_operator(d);
    let t = crate::linalg::partial_transpose(theta, (d, d), 1)?.mul(&f);
    Tester::from_test_operator(&TestOperator::new(t, d)?)
}

/// Heuristic lower bound on ‖Θ‖_{S∞⊗εS∞} = max |Tr(Θ X⊗Y)| over unit-S₁
/// X, Y. Can reject a claimed witness normalization (value > 1) but never
/// certify it.
pub fn witness_epsilon_lower(
    theta: &ComplexMatrix,
    d: usize,
    opts: &InjectiveOptions,
) -> Result<f64> {
    if !theta.is_square() || theta.rows() != d * d {
        return Err(Error::ShapeMismatch("witness must be d² × d²"));
    }
    let t = MultiTensor::new(vec![d, d, d, d], theta.entries().to_vec())?;
    Ok(injective_norm(&t, opts)?.lower)
}

/// Options for the alternating rank-one maximization.
#[derive(Debug, Clone, Copy)]
pub struct InjectiveOptions {
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for InjectiveOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iter: 200,
            tol: 1e-12,
            seed: 0x1057,
        }
    }
}

/// Certified sandwich around the injective norm.
#[derive(Debug, Clone, Copy)]
pub struct InjectiveBounds {
    /// Best value from alternating maximization; a lower bound.
    pub lower: f64,
    /// Smallest single-leg matricization spectral norm; an upper bound.
    pub upper: f64,
}

/// Contraction of all legs but `skip` against the (conjugated) leg vectors.
fn contract_leg(t: &MultiTensor, vecs: &[Vec<C64>], skip: usize) -> Vec<C64> {
    let shape = t.shape();
    let m = shape.len();
    let mut out = vec![C64::ZERO; shape[skip]];
    let mut idx = vec![0usize; m];
    for (flat, &z) in t.entries().iter().enumerate() {
        let mut rem = flat;
        for p in (0..m).rev() {
            idx[p] = rem % shape[p];
            rem /= shape[p];
        }
        let mut coeff = z;
        for p in 0..m {
            if p != skip {
                coeff *= vecs[p][idx[p]].conj();
            }
        }
        out[idx[skip]] += coeff;
    }
    out
}

/// Matricization of leg `leg` against all remaining legs in order.
fn matricize(t: &MultiTensor, leg: usize) -> ComplexMatrix {
    let shape = t.shape();
    let m = shape.len();
    let rows = shape[leg];
    let cols = t.len() / rows;
    let mut out = ComplexMatrix::zeros(rows, cols);
    let mut idx = vec![0usize; m];
    for (flat, &z) in t.entries().iter().enumerate() {
        let mut rem = flat;
        for p in (0..m).rev() {
            idx[p] = rem % shape[p];
            rem /= shape[p];
        }
        let mut col = 0usize;
        for p in 0..m {
            if p != leg {
                col = col * shape[p] + idx[p];
            }
        }
        out.set(idx[leg], col, z);
    }
    out
}

/// Injective tensor norm sandwich: alternating rank-one maximization from
/// seeded random starts for the lower bound, and the minimum spectral norm
/// over single-leg matricizations for the certified upper bound.
pub fn injective_norm(t: &MultiTensor, opts: &InjectiveOptions) -> Result<InjectiveBounds> {
    let m = t.order();
    let shape = t.shape().to_vec();

    let mut upper = f64::INFINITY;
    if m == 1 {
        upper = t.norm();
    } else {
        for leg in 0..m {
            upper = upper.min(decomp::spectral_norm(&matricize(t, leg)));
        }
    }

    let mut seeder = Prng::new(opts.seed);
    let mut lower = 0.0f64;
    for _ in 0..opts.restarts.max(1) {
        let mut rng = Prng::new(seeder.next_seed());
        let mut vecs: Vec<Vec<C64>> = shape.iter().map(|&d| rng.unit_vector(d)).collect();
        let mut prev = -1.0f64;
        for _ in 0..opts.max_iter {
            let mut val = 0.0;
            for leg in 0..m {
                let v = contract_leg(t, &vecs, leg);
                let nv = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum());
                if nv < f64::MIN_POSITIVE {
                    // Degenerate contraction: restart this leg.
                    vecs[leg] = rng.unit_vector(shape[leg]);
                    continue;
                }
                for (slot, z) in vecs[leg].iter_mut().zip(&v) {
                    *slot = z / cr(nv);
                }
                val = nv;
            }
            if (val - prev).abs() < opts.tol {
                prev = val;
                break;
            }
            prev = val;
        }
        lower = lower.max(prev);
    }
    Ok(InjectiveBounds {
        lower: lower.min(upper),
        upper,
    })
}

/// Multipartite realignment of a pure state: the tensor
/// φ̂ = R^⊗m(|φ⟩⟨φ|) with entries φ̂_{(i₁j₁)…(i_mj_m)} = φ_{j…}·conj(φ_{i…}),
/// living on ⊗_q ℂ^{d_q²}. Has Frobenius norm 1 for unit φ.
pub fn multipartite_realign(phi: &MultiTensor) -> Result<MultiTensor> {
    if (phi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState("input must be a unit vector"));
    }
    let shape = phi.shape();
    let m = shape.len();
    let out_shape: Vec<usize> = shape.iter().map(|&d| d * d).collect();
    let mut out = MultiTensor::zeros(out_shape);
    let total = phi.len();
    let entries = phi.entries();

    let mut iv = vec![0usize; m];
    let mut jv = vec![0usize; m];
    // Row-major strides of the output shape.
    let mut stride = vec![1usize; m];
    for p in (0..m.saturating_sub(1)).rev() {
        stride[p] = stride[p + 1] * shape[p + 1] * shape[p + 1];
    }
    for a in 0..total {
        let mut rem = a;
        for p in (0..m).rev() {
            iv[p] = rem % shape[p];
            rem /= shape[p];
        }
        let ca = entries[a].conj();
        for b in 0..total {
            let mut rem = b;
            for p in (0..m).rev() {
                jv[p] = rem % shape[p];
                rem /= shape[p];
            }
            let mut flat = 0usize;
            for p in 0..m {
                flat += (iv[p] * shape[p] + jv[p]) * stride[p];
            }
            out.entries_mut()[flat] = entries[b] * ca;
        }
    }
    Ok(out)
}

/// Lower-bounds the projective norm of φ̂ = R^⊗m(|φ⟩⟨φ|) through the
/// injective norm of φ: π(φ̂) ≥ 1/ε(φ), and ≥ 1/ε(φ)² when φ is
/// entrywise nonnegative. Certified values use the ε upper bound; the
/// heuristic companions use the ε lower bound and never drive verdicts.
pub fn multipartite_pi_lower(
    phi: &MultiTensor,
    nonneg_hint: bool,
    opts: &InjectiveOptions,
) -> Result<CriterionReport> {
    if (phi.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidState("input must be a unit vector"));
    }
    let eps = injective_norm(phi, opts)?;
    let nonneg = nonneg_hint
        && phi
            .entries()
            .iter()
            .all(|z| z.im.abs() <= 1e-12 && z.re >= -1e-12);
    let (value, heuristic) = if nonneg {
        (
            (1.0 / eps.upper).max(1.0 / (eps.upper * eps.upper)),
            (1.0 / eps.lower).max(1.0 / (eps.lower * eps.lower)),
        )
    } else {
        (1.0 / eps.upper, 1.0 / eps.lower)
    };
    let verdict = if value > 1.0 + OPT_VERDICT_TOL {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    let m = phi.order();
    Ok(CriterionReport {
        value,
        bound_kind: BoundKind::CertifiedLower,
        verdict,
        method: if nonneg {
            String::from("pi(phi_hat) >= 1/eps(phi)^2 via flattening bound (nonnegative state)")
        } else {
            String::from("pi(phi_hat) >= 1/eps(phi) via flattening bound")
        },
        tester_ids: vec![format!("realignment^{m}")],
        heuristic_value: Some(heuristic),
        epsilon_lower: Some(eps.lower),
        epsilon_upper: Some(eps.upper),
        certificate_threshold: None,
    })
}

/// (Σ√λ)², the projective norm of φ̂ for states with a generalized Schmidt
/// decomposition.
pub fn gen_schmidt_value(lambdas: &[f64]) -> f64 {
    let s: f64 = lambdas.iter().map(|&l| libm::sqrt(l)).sum();
    s * s
}

/// Mode product with U†: contracts leg `leg` with the columns of `u`.
fn mode_contract(t: &MultiTensor, leg: usize, u: &ComplexMatrix) -> MultiTensor {
    let shape = t.shape();
    let m = shape.len();
    let mut out_shape = shape.to_vec();
    out_shape[leg] = u.cols();
    let mut out = MultiTensor::zeros(out_shape);
    let mut idx = vec![0usize; m];
    for (flat, &z) in t.entries().iter().enumerate() {
        let mut rem = flat;
        for p in (0..m).rev() {
            idx[p] = rem % shape[p];
            rem /= shape[p];
        }
        let i = idx[leg];
        for k in 0..u.cols() {
            let w = u.get(i, k).conj() * z;
            if w == C64::ZERO {
                continue;
            }
            idx[leg] = k;
            let f = out.flat_index(&idx);
            out.entries_mut()[f] += w;
        }
        idx[leg] = i;
    }
    out
}

/// Attempts to recognize a generalized Schmidt structure: each leg is
/// rotated into the left singular basis of its matricization, and the
/// rotated tensor must be supported on the all-equal multi-indices within
/// `tol`. Returns the spectrum λ_k on success. Degenerate spectra may
/// evade detection; callers fall back to the ℓ₁ bound.
pub fn detect_generalized_schmidt(t: &MultiTensor, tol: f64) -> Option<Vec<f64>> {
    let m = t.order();
    if m < 2 {
        return None;
    }
    let mut rotated = t.clone();
    for leg in 0..m {
        let f = decomp::svd(&matricize(t, leg));
        rotated = mode_contract(&rotated, leg, &f.u);
    }
    let shape = rotated.shape().to_vec();
    let min_d = *shape.iter().min().unwrap();
    let mut lambdas = vec![0.0f64; min_d];
    let mut off_mass = 0.0f64;
    let mut idx = vec![0usize; m];
    for (flat, &z) in rotated.entries().iter().enumerate() {
        let mut rem = flat;
        for p in (0..m).rev() {
            idx[p] = rem % shape[p];
            rem /= shape[p];
        }
        let diagonal = idx.iter().all(|&i| i == idx[0]);
        if diagonal {
            lambdas[idx[0]] = z.norm_sqr();
        } else {
            if z.norm() > tol {
                return None;
            }
            off_mass += z.norm_sqr();
        }
    }
    let total = t.norm();
    if off_mass > 1e-10 * total.max(1.0) {
        return None;
    }
    let mut lambdas: Vec<f64> = lambdas.into_iter().filter(|&l| l > 1e-14).collect();
    if lambdas.is_empty() {
        return None;
    }
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Some(lambdas)
}

/// Upper bound on the projective norm: the ℓ₁ norm of the entries (every
/// tensor is a combination of unit product basis tensors), sharpened to
/// the exact value Σ_j √μ_j when a generalized Schmidt structure with
/// spectrum μ is recognized. For t = φ̂ with φ-spectrum λ the detected
/// spectrum is {λ_k λ_l}, so the sharpened value is (Σ√λ)².
pub fn pi_upper_bound(t: &MultiTensor) -> f64 {
    let l1: f64 = t.entries().iter().map(|z| z.norm()).sum();
    match detect_generalized_schmidt(t, 1e-8) {
        Some(mus) => {
            let exact: f64 = mus.iter().map(|&m| libm::sqrt(m)).sum();
            l1.min(exact)
        }
        None => l1,
    }
}
