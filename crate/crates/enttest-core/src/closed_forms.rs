//! Analytic values for the symmetric-state families: exact norms of the
//! realignment and SIC testers on pure, isotropic, Werner and noisy-pure
//! states, the detection thresholds, and the R↔S relation. These are the
//! oracles the numerical engine is validated against.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// The two symmetric maps with closed-form values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymTester {
    /// Realignment / matrix-unit map, (α, β) = (1, 0).
    Realignment,
    /// SIC POVM map, (α, β) = (1/2, 1/2).
    Sic,
}

impl SymTester {
    pub fn alpha_beta(&self) -> (f64, f64) {
        match self {
            SymTester::Realignment => (1.0, 0.0),
            SymTester::Sic => (0.5, 0.5),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SymTester::Realignment => "R",
            SymTester::Sic => "S",
        }
    }
}

/// The μ-parametrized state families with closed-form curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFamily {
    Isotropic,
    Werner,
    NoisyPure,
}

impl StateFamily {
    pub fn label(&self) -> &'static str {
        match self {
            StateFamily::Isotropic => "isotropic",
            StateFamily::Werner => "werner",
            StateFamily::NoisyPure => "noisy_pure",
        }
    }
}

/// f(φ) = Σ_{i<j} √(λ_i λ_j); satisfies 0 ≤ 2f ≤ d − 1.
pub fn f_phi(lambdas: &[f64]) -> f64 {
    let mut acc = 0.0;
    for i in 0..lambdas.len() {
        for j in (i + 1)..lambdas.len() {
            acc += libm::sqrt(lambdas[i] * lambdas[j]);
        }
    }
    acc
}

/// ‖E⊗²(|φ⟩⟨φ|)‖₁ = α + β + 2α Σ_{i<j} √(λ_i λ_j) for a symmetric tester.
pub fn pure_value(lambdas: &[f64], alpha: f64, beta: f64) -> f64 {
    alpha + beta + 2.0 * alpha * f_phi(lambdas)
}

/// ‖R⊗²(τ_μ)‖₁ = ((d²−1)μ + 1)/d and ‖S⊗²(τ_μ)‖₁ = (d+1)((d−1)μ + 1)/(2d);
/// both cross 1 exactly at μ = 1/(d+1).
pub fn isotropic_value(d: usize, mu: f64, tester: SymTester) -> f64 {
    let df = d as f64;
    match tester {
        SymTester::Realignment => ((df * df - 1.0) * mu + 1.0) / df,
        SymTester::Sic => (df + 1.0) / (2.0 * df) * ((df - 1.0) * mu + 1.0),
    }
}

/// Detection threshold of the isotropic family (also its entanglement
/// threshold): μ = 1/(d+1).
pub fn isotropic_threshold(d: usize) -> f64 {
    1.0 / (d as f64 + 1.0)
}

/// Piecewise Werner values: for μ ≥ (d+1)/2d, R gives 2μ−1 and S gives μ;
/// for μ ≤ (d+1)/2d, R gives (d+2)/d − 2μ and S gives (d+1)/d − μ.
/// Detection happens iff μ < 1/d.
pub fn werner_value(d: usize, mu: f64, tester: SymTester) -> f64 {
    let df = d as f64;
    let breakpoint = (df + 1.0) / (2.0 * df);
    match tester {
        SymTester::Realignment => {
            if mu >= breakpoint {
                2.0 * mu - 1.0
            } else {
                (df + 2.0) / df - 2.0 * mu
            }
        }
        SymTester::Sic => {
            if mu >= breakpoint {
                mu
            } else {
                (df + 1.0) / df - mu
            }
        }
    }
}

/// Detection threshold of the Werner family: μ = 1/d (the state itself is
/// entangled iff μ < 1/2).
pub fn werner_threshold(d: usize) -> f64 {
    1.0 / d as f64
}

/// Noisy pure state values: R gives μ(1+2f) + (1−μ)/d, S gives
/// μ(1+f) + (1−μ)(d+1)/2d.
pub fn noisy_value(d: usize, lambdas: &[f64], mu: f64, tester: SymTester) -> f64 {
    let df = d as f64;
    let f = f_phi(lambdas);
    match tester {
        SymTester::Realignment => mu * (1.0 + 2.0 * f) + (1.0 - mu) / df,
        SymTester::Sic => mu * (1.0 + f) + (1.0 - mu) * (df + 1.0) / (2.0 * df),
    }
}

/// Shared detection threshold μ = (d−1)/((1+2f)d − 1) of the noisy family.
pub fn noisy_threshold(d: usize, lambdas: &[f64]) -> f64 {
    let df = d as f64;
    (df - 1.0) / ((1.0 + 2.0 * f_phi(lambdas)) * df - 1.0)
}

/// The S-value predicted from the R-value on the equality classes:
/// s = (r + 1)/2.
pub fn rs_relation(r_value: f64) -> f64 {
    (r_value + 1.0) / 2.0
}

/// Families with a known exact projective norm ‖·‖_{S₁⊗π…⊗πS₁}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectiveFamily<'a> {
    /// Pure bipartite state with the given Schmidt spectrum: (Σ√λ)².
    PureBipartite { lambdas: &'a [f64] },
    /// Isotropic state: 1 below the threshold, ((d²−1)μ+1)/d above.
    Isotropic { d: usize, mu: f64 },
    /// Werner state: 1 for μ ≥ 1/2, 2(1−μ) below.
    Werner { d: usize, mu: f64 },
    /// Multipartite state with a generalized Schmidt decomposition: (Σ√λ)².
    GenSchmidtMulti { lambdas: &'a [f64] },
}

/// The true projective norm for the special families where it is known.
pub fn projective_reference(kind: ProjectiveFamily<'_>) -> f64 {
    match kind {
        ProjectiveFamily::PureBipartite { lambdas }
        | ProjectiveFamily::GenSchmidtMulti { lambdas } => {
            let s: f64 = lambdas.iter().map(|&l| libm::sqrt(l)).sum();
            s * s
        }
        ProjectiveFamily::Isotropic { d, mu } => {
            if mu <= isotropic_threshold(d) {
                1.0
            } else {
                isotropic_value(d, mu, SymTester::Realignment)
            }
        }
        ProjectiveFamily::Werner { mu, .. } => {
            if mu >= 0.5 {
                1.0
            } else {
                2.0 * (1.0 - mu)
            }
        }
    }
}

/// A sampled closed-form curve μ ↦ ‖E⊗²(ρ_μ)‖₁ for one family and tester.
#[derive(Debug, Clone)]
pub struct FamilyCurve {
    pub family: StateFamily,
    pub d: usize,
    pub tester: SymTester,
    pub samples: Vec<(f64, f64)>,
    pub threshold: f64,
    /// Schmidt spectrum, present for the noisy family only.
    pub lambdas: Option<Vec<f64>>,
}

impl FamilyCurve {
    /// Samples the closed-form value on the given μ grid.
    pub fn generate(
        family: StateFamily,
        d: usize,
        tester: SymTester,
        mus: &[f64],
        lambdas: Option<&[f64]>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be positive"));
        }
        if mus.iter().any(|&m| !(0.0..=1.0).contains(&m)) {
            return Err(Error::InvalidParameter("μ grid must lie in [0, 1]"));
        }
        match family {
            StateFamily::Isotropic => {
                let samples = mus
                    .iter()
                    .map(|&mu| (mu, isotropic_value(d, mu, tester)))
                    .collect();
                Ok(Self {
                    family,
                    d,
                    tester,
                    samples,
                    threshold: isotropic_threshold(d),
                    lambdas: None,
                })
            }
            StateFamily::Werner => {
                if d < 2 {
                    return Err(Error::InvalidParameter("Werner states need d ≥ 2"));
                }
                let samples = mus
                    .iter()
                    .map(|&mu| (mu, werner_value(d, mu, tester)))
                    .collect();
                Ok(Self {
                    family,
                    d,
                    tester,
                    samples,
                    threshold: werner_threshold(d),
                    lambdas: None,
                })
            }
            StateFamily::NoisyPure => {
                let l = lambdas.ok_or(Error::InvalidParameter(
                    "noisy family needs a Schmidt spectrum",
                ))?;
                if (l.iter().sum::<f64>() - 1.0).abs() > 1e-10 || l.iter().any(|&x| x < 0.0) {
                    return Err(Error::InvalidParameter("invalid Schmidt spectrum"));
                }
                let samples = mus
                    .iter()
                    .map(|&mu| (mu, noisy_value(d, l, mu, tester)))
                    .collect();
                Ok(Self {
                    family,
                    d,
                    tester,
                    samples,
                    threshold: noisy_threshold(d, l),
                    lambdas: Some(l.to_vec()),
                })
            }
        }
    }
}

/// Evenly spaced μ grid over [0, 1] with the given step.
pub fn mu_grid(step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let n = libm::round(1.0 / step) as usize;
    for k in 0..=n {
        out.push((k as f64 * step).min(1.0));
    }
    out
}
