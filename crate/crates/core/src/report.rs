//! Machine-readable outcome of a certification run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::quaternion::Quaternion;
use crate::series::QPowerSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    ToeplitzContractivity,
    Hindmarsh,
    DualHindmarsh,
}

/// Which check produced a counterexample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// `I - T_n T_n*` has a negative eigenvalue.
    Toeplitz,
    /// A 1x1 Pick matrix is negative, i.e. `|f(z)| > 1`.
    OnePoint,
    /// A Pick matrix on `(alpha, conj alpha, gamma)` is not PSD.
    StructuredTriple,
    /// A Pick matrix on three independent ball points is not PSD.
    RandomTriple,
    /// The complex part of a slice Pick matrix is not PSD.
    SliceTriple,
    /// A classical Pick matrix of one recovered slice component is not PSD.
    SliceComponent,
    /// The recovered series disagrees with `f` on the slice.
    SliceAgreement,
    /// The recovered series disagrees with `f` off the slice.
    OffsliceAgreement,
    /// `f(gamma)` differs from its two-point extension off the slice.
    VvectorAgreement,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub points: Vec<Quaternion>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_eigenvalue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trial: Option<usize>,
}

impl Witness {
    pub fn new(kind: WitnessKind, points: Vec<Quaternion>) -> Self {
        Witness { kind, points, min_eigenvalue: None, order: None, residual: None, trial: None }
    }
}

/// Parameters a run was executed with. Absent fields did not apply.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunParameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dft_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub recon_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agreement_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agreement_radius: Option<f64>,
}

/// Certification outcome.
///
/// Every residual has a threshold under the same key; a `pass` verdict
/// means each residual is at most its threshold. A `fail` verdict always
/// carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub check: CheckKind,
    pub verdict: Verdict,
    pub statement: String,
    pub witness: Option<Witness>,
    pub reconstructed: Option<QPowerSeries>,
    pub residuals: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
    pub tail_bounds: BTreeMap<String, f64>,
    pub parameters: RunParameters,
    /// Residual name -> identity it measures.
    pub paper_checks: BTreeMap<String, String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CertReport {
    pub fn new(check: CheckKind, parameters: RunParameters) -> Self {
        CertReport {
            check,
            verdict: Verdict::Inconclusive,
            statement: String::new(),
            witness: None,
            reconstructed: None,
            residuals: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            tail_bounds: BTreeMap::new(),
            parameters,
            paper_checks: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Records a residual with its threshold and the identity it measures.
    pub fn record(&mut self, name: &str, value: f64, threshold: f64, identity: &str) {
        self.residuals.insert(name.to_string(), value);
        self.thresholds.insert(name.to_string(), threshold);
        self.paper_checks.insert(name.to_string(), identity.to_string());
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Residual names whose value exceeds the threshold (or is NaN).
    pub fn exceeded(&self) -> Vec<&str> {
        self.residuals
            .iter()
            .filter(|(k, v)| self.thresholds.get(*k).is_some_and(|t| !(**v <= *t)))
            .map(|(k, _)| k.as_str())
            .collect()
    }
}
