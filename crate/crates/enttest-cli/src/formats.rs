//! On-disk formats: JSON state and report files, JSON tester dumps, and the
//! fixed-column CSV emitted by the sweep/compare/bench commands.
//!
//! States use separate flat `re`/`im` arrays in the crate-wide row-major
//! order, so any language can parse them without a complex-number type.
//! Floats in CSV are printed with 17 significant digits.

use std::collections::BTreeMap;

use enttest_core::linalg::C64;
use enttest_core::states::DensityMatrix;
use enttest_core::{ComplexMatrix, MultiTensor, Tester};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// JSON state file: a density matrix or pure state with subsystem dims.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    /// "density" or "pure".
    pub kind: String,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyTag>,
}

/// Declared provenance of a state, used to attach closed-form references.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyTag {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl FamilyTag {
    pub fn param_f64(&self, key: &str) -> Option<f64> {
        self.params.get(key).and_then(|v| v.as_f64())
    }

    pub fn param_vec(&self, key: &str) -> Option<Vec<f64>> {
        self.params
            .get(key)
            .and_then(|v| v.as_array())
            .map(|a| a.iter().filter_map(|x| x.as_f64()).collect())
    }
}

/// Either kind of loaded state.
pub enum LoadedState {
    Density(DensityMatrix),
    Pure(MultiTensor),
}

impl StateFile {
    pub fn for_density(rho: &DensityMatrix, family: Option<FamilyTag>) -> Self {
        let entries = rho.matrix().entries();
        Self {
            dims: rho.dims().to_vec(),
            kind: "density".into(),
            re: entries.iter().map(|z| z.re).collect(),
            im: entries.iter().map(|z| z.im).collect(),
            family,
        }
    }

    pub fn for_pure(phi: &MultiTensor, family: Option<FamilyTag>) -> Self {
        Self {
            dims: phi.shape().to_vec(),
            kind: "pure".into(),
            re: phi.entries().iter().map(|z| z.re).collect(),
            im: phi.entries().iter().map(|z| z.im).collect(),
            family,
        }
    }

    /// Validates lengths and the state invariants, reconstructing the state.
    pub fn load(&self) -> Result<LoadedState, CliError> {
        let total: usize = self.dims.iter().product();
        if self.re.len() != self.im.len() {
            return Err(CliError::invalid_state("re and im arrays differ in length"));
        }
        let entries: Vec<C64> = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| C64::new(r, i))
            .collect();
        match self.kind.as_str() {
            "density" => {
                if entries.len() != total * total {
                    return Err(CliError::invalid_state(
                        "density entry count must be (∏ dims)²",
                    ));
                }
                let m = ComplexMatrix::new(total, total, entries)
                    .map_err(|e| CliError::InvalidState(e.to_string()))?;
                let rho = DensityMatrix::new(m, self.dims.clone())
                    .map_err(|e| CliError::InvalidState(e.to_string()))?;
                Ok(LoadedState::Density(rho))
            }
            "pure" => {
                if entries.len() != total {
                    return Err(CliError::invalid_state("pure entry count must be ∏ dims"));
                }
                let phi = MultiTensor::new(self.dims.clone(), entries)
                    .map_err(|e| CliError::InvalidState(e.to_string()))?;
                if (phi.norm() - 1.0).abs() > 1e-10 {
                    return Err(CliError::invalid_state("pure state is not normalized"));
                }
                Ok(LoadedState::Pure(phi))
            }
            other => Err(CliError::invalid_state(&format!(
                "unknown state kind '{other}'"
            ))),
        }
    }
}

/// JSON report envelope shared by eval/multi/tester-info.
#[derive(Debug, Clone, Serialize)]
pub struct ReportFile {
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tester: Option<serde_json::Value>,
    pub value: f64,
    pub bound_kind: String,
    pub verdict: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

/// JSON dump of a tester: operators flattened row-major, operator-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TesterFile {
    pub kind: String,
    pub d: usize,
    pub n: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl TesterFile {
    pub fn from_tester(t: &Tester) -> Self {
        let mut re = Vec::with_capacity(t.n() * t.d() * t.d());
        let mut im = Vec::with_capacity(re.capacity());
        for op in t.operators() {
            for z in op.entries() {
                re.push(z.re);
                im.push(z.im);
            }
        }
        Self {
            kind: t.kind().label(),
            d: t.d(),
            n: t.n(),
            re,
            im,
        }
    }
}

/// Floats with 17 significant digits, the CSV contract.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV row from string-able cells.
pub fn csv_row(cells: &[String]) -> String {
    cells.join(",")
}

pub fn write_text(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_state(path: &std::path::Path) -> Result<StateFile, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| CliError::InvalidState(format!("malformed state file: {e}")))
}
