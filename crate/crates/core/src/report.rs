//! Serialized certificates and bound reports.
//!
//! All JSON is emitted through `serde_json::Value`, whose maps keep keys
//! sorted, so identical inputs give byte-identical output.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jaccert::{CertStatus, NonvanishingCertificate};
use crate::permgroup::GroupSpec;

/// Self-contained certificate: enough to rebuild the group, coset system,
/// family and Jacobian, and to recheck the witness determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub group: GroupSpec,
    pub n: usize,
    pub r: usize,
    pub k: usize,
    pub t: u32,
    /// Coset representatives `g_1, ..., g_n` in cycle notation.
    pub ordering: Vec<String>,
    pub chosen_indices: Vec<usize>,
    pub witness: Vec<String>,
    pub det_value: String,
    pub seed: u64,
    pub trials_used: u32,
    pub coordinate_bound: String,
    pub status: CertStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_probability_bound: Option<String>,
}

impl CertificateRecord {
    pub fn new(
        group: GroupSpec,
        (n, r, k, t): (usize, usize, usize, u32),
        ordering: Vec<String>,
        cert: &NonvanishingCertificate,
    ) -> Self {
        CertificateRecord {
            group,
            n,
            r,
            k,
            t,
            ordering,
            chosen_indices: cert.chosen_indices.clone(),
            witness: cert.witness.iter().map(BigInt::to_string).collect(),
            det_value: cert.det_value.to_string(),
            seed: cert.seed,
            trials_used: cert.trials_used,
            coordinate_bound: cert.coordinate_bound.to_string(),
            status: cert.status,
            failure_probability_bound: cert.failure_probability_bound.clone(),
        }
    }

    /// Back to the in-memory certificate. `degree_bound` is not serialized
    /// and comes back as 0.
    pub fn to_certificate(&self) -> Result<NonvanishingCertificate> {
        let bad = |what: &str, v: &str| Error::Certificate(format!("bad {what}: {v:?}"));
        let witness = self
            .witness
            .iter()
            .map(|w| w.parse::<BigInt>().map_err(|_| bad("witness coordinate", w)))
            .collect::<Result<Vec<_>>>()?;
        Ok(NonvanishingCertificate {
            status: self.status,
            witness,
            det_value: self
                .det_value
                .parse()
                .map_err(|_| bad("det_value", &self.det_value))?,
            chosen_indices: self.chosen_indices.clone(),
            seed: self.seed,
            trials_used: self.trials_used,
            coordinate_bound: self
                .coordinate_bound
                .parse::<BigUint>()
                .map_err(|_| bad("coordinate_bound", &self.coordinate_bound))?,
            degree_bound: 0,
            failure_probability_bound: self.failure_probability_bound.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        canonical_json(self)
    }

    /// Accepts a bare certificate or a report embedding one under
    /// `"certificate"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))?;
        let inner = match v.get("certificate") {
            Some(c) if !c.is_null() => c.clone(),
            Some(_) => return Err(Error::Certificate("report carries no certificate".into())),
            None => v,
        };
        serde_json::from_value(inner).map_err(|e| Error::Certificate(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReportStatus {
    Certified,
    NotCertified,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    /// `"theorem"` when a certified exponent beats Schmidt's, else `"schmidt"`.
    pub smallest_upper_bound: String,
    pub theorem_below_schmidt: Option<bool>,
    /// `exponent_theorem − a(G)`.
    pub theorem_minus_malle: Option<String>,
}

/// Outcome of a certification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub group: String,
    pub n: usize,
    pub r: usize,
    pub group_order: usize,
    pub feasible_pairs: Vec<(usize, String)>,
    pub k: Option<usize>,
    pub t: Option<u32>,
    pub l: Option<String>,
    pub strategy: Option<String>,
    pub attempts: Option<u32>,
    pub status: ReportStatus,
    pub certificate: Option<CertificateRecord>,
    pub exponent_theorem: Option<String>,
    pub exponent_general: Option<String>,
    pub fiber_bound_z: Option<String>,
    pub schmidt_exponent: String,
    pub malle_a: Option<String>,
    pub comparison: Comparison,
    /// Free-text explanation for non-certified outcomes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    pub fn to_json(&self) -> String {
        canonical_json(self)
    }
}

pub(crate) fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
