//! Seeded trials for the rapid-decay inequalities.
//!
//! Every verifier compares a certified lower bound (`lhs`) with the right
//! side of an inequality (`rhs`), so a `VIOLATION` is a counterexample and
//! never a truncation artifact. Probes run the same way for statements that
//! are open or known to fail; their violations are findings, not errors.

mod output;
mod probe;
mod sample;
mod verify;

pub use output::{summarize, write_csv, write_jsonl, Summary, SummaryRow, CSV_HEADER};
pub use probe::{probe_desired, probe_mixed};
pub use sample::{stream, CoeffSampler, SupportSampler, TrialSpec};
pub use verify::{
    multiplier_continuity, operator_rd_constants, verify_cor62_free, verify_cor65_free, verify_hagprop,
    verify_multiplier, verify_polygrowth, verify_prop61, verify_thm64, verify_zprop,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::repnorm::{NormEstimate, NormOptions};

/// Relative tolerance of verdicts.
pub const VERDICT_TOL: f64 = 1e-6;

/// `(π²/3 − 1)^{1/2}`, the constant for `Z`.
pub fn zprop_constant() -> f64 {
    (std::f64::consts::PI.powi(2) / 3.0 - 1.0).sqrt()
}

/// `N (π/√6) √2`, the constant for groups with solution bound `N`.
pub fn jgroup_constant(n: f64) -> f64 {
    n * std::f64::consts::PI / 6f64.sqrt() * 2f64.sqrt()
}

/// `π √(2C) / √6` for growth `|C_k| <= C (1+k)^s`.
pub fn polygrowth_constant(c: f64) -> f64 {
    std::f64::consts::PI * (2.0 * c).sqrt() / 6f64.sqrt()
}

/// Constant for free groups in the weighted `(1+|g|)^4` inequality.
pub const FREE_GROUP_M: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    Prop61,
    Cor62Free,
    Cor63HagpropA,
    Cor63HagpropB,
    Thm64,
    Cor65Free,
    Thm5PolygrowthOp,
    Thm5PolygrowthRow,
    ZpropSection4,
    Prop7Multiplier,
    ProbeDesired,
    ProbeMixed,
}

impl InequalityId {
    pub const ALL: [InequalityId; 12] = [
        InequalityId::Prop61,
        InequalityId::Cor62Free,
        InequalityId::Cor63HagpropA,
        InequalityId::Cor63HagpropB,
        InequalityId::Thm64,
        InequalityId::Cor65Free,
        InequalityId::Thm5PolygrowthOp,
        InequalityId::Thm5PolygrowthRow,
        InequalityId::ZpropSection4,
        InequalityId::Prop7Multiplier,
        InequalityId::ProbeDesired,
        InequalityId::ProbeMixed,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            InequalityId::Prop61 => "prop61",
            InequalityId::Cor62Free => "cor62_free",
            InequalityId::Cor63HagpropA => "cor63_hagprop_a",
            InequalityId::Cor63HagpropB => "cor63_hagprop_b",
            InequalityId::Thm64 => "thm64",
            InequalityId::Cor65Free => "cor65_free",
            InequalityId::Thm5PolygrowthOp => "thm5_polygrowth_op",
            InequalityId::Thm5PolygrowthRow => "thm5_polygrowth_row",
            InequalityId::ZpropSection4 => "zprop_section4",
            InequalityId::Prop7Multiplier => "prop7_multiplier",
            InequalityId::ProbeDesired => "probe_desired",
            InequalityId::ProbeMixed => "probe_mixed",
        }
    }

    pub fn is_probe(&self) -> bool {
        matches!(self, InequalityId::ProbeDesired | InequalityId::ProbeMixed)
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('-', "_");
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .or(match s.as_str() {
                "cor63_hagprop" | "hagprop" => Some(InequalityId::Cor63HagpropA),
                "thm5_polygrowth" | "polygrowth" => Some(InequalityId::Thm5PolygrowthOp),
                "zprop" => Some(InequalityId::ZpropSection4),
                "prop7" | "multiplier" => Some(InequalityId::Prop7Multiplier),
                _ => None,
            })
            .ok_or_else(|| Error::parse("inequality id", 0, format!("unknown inequality `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "consistent")]
    Consistent,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Violation => "VIOLATION",
        })
    }
}

/// `VIOLATION` iff `lhs > rhs + 1e-6 · max(1, |lhs|, |rhs|)`.
pub fn verdict(lhs: f64, rhs: f64) -> Verdict {
    let scale = 1f64.max(lhs.abs()).max(rhs.abs());
    if lhs > rhs + VERDICT_TOL * scale || lhs.is_nan() || rhs.is_nan() {
        Verdict::Violation
    } else {
        Verdict::Consistent
    }
}

/// How `lhs` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LhsSource {
    /// max of the compression bound and the π-candidate bound
    OperatorLower,
    /// `‖Σ Z_g* Z_g‖^{1/2}`
    PiColumn,
    /// `‖Σ α_g(Z_g Z_g*)‖^{1/2}`
    PiRow,
    Zero,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub n_bound: Option<f64>,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none", default)]
    pub big_m: Option<f64>,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<f64>,
    #[serde(rename = "m", skip_serializing_if = "Option::is_none", default)]
    pub small_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub inequality_id: InequalityId,
    pub probe: bool,
    pub group: String,
    pub action: String,
    pub n: usize,
    pub seed: u64,
    pub trial: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    pub support_size: usize,
    pub lhs: f64,
    pub lhs_source: LhsSource,
    pub rhs: f64,
    pub constants: Constants,
    pub verdict: Verdict,
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub estimate: Option<NormEstimate>,
    /// Compression lower bound of the operator norm when `lhs` is a π-norm.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub operator_lower: Option<f64>,
    /// Uncertified side quantity, e.g. `‖M_φ X‖ / ‖X‖` estimates.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl InequalityReport {
    pub fn is_violation(&self) -> bool {
        self.verdict == Verdict::Violation
    }

    pub fn radius(&self) -> Option<usize> {
        self.estimate.as_ref().map(|e| e.radius)
    }

    pub fn residual(&self) -> Option<f64> {
        self.estimate.as_ref().map(|e| e.residual)
    }
}

/// Knobs shared by all verifiers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarnessOptions {
    /// Fixed compression radius; defaults to support length plus `radius_slack`.
    pub radius: Option<usize>,
    pub radius_slack: usize,
    pub norm: NormOptions,
    /// Random π-candidates per trial, on top of `1` and `X*`.
    pub pi_candidates: usize,
    /// Also bound the operator norm where `lhs` is a π-norm.
    pub operator_diagnostic: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            radius: None,
            radius_slack: crate::repnorm::DEFAULT_RADIUS_SLACK,
            norm: NormOptions::default(),
            pi_candidates: 2,
            operator_diagnostic: false,
        }
    }
}

impl HarnessOptions {
    pub fn radius_for(&self, support_len: usize) -> usize {
        self.radius.unwrap_or(support_len + self.radius_slack)
    }
}

pub fn any_violation(reports: &[InequalityReport]) -> bool {
    reports.iter().any(|r| !r.probe && r.is_violation())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in InequalityId::ALL {
            assert_eq!(id.as_str().parse::<InequalityId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert_eq!("polygrowth".parse::<InequalityId>().unwrap(), InequalityId::Thm5PolygrowthOp);
        assert!("nope".parse::<InequalityId>().is_err());
    }

    #[test]
    fn verdict_tolerance() {
        assert_eq!(verdict(1.0, 1.0), Verdict::Consistent);
        assert_eq!(verdict(1.0 + 5e-7, 1.0), Verdict::Consistent);
        assert_eq!(verdict(1.0 + 2e-6, 1.0), Verdict::Violation);
        assert_eq!(verdict(1e6 + 0.5, 1e6), Verdict::Consistent);
        assert_eq!(verdict(0.0, 0.0), Verdict::Consistent);
        assert_eq!(verdict(f64::NAN, 1.0), Verdict::Violation);
        assert_eq!(serde_json::to_string(&Verdict::Violation).unwrap(), "\"VIOLATION\"");
    }

    #[test]
    fn constants() {
        assert!((zprop_constant() - 1.5132).abs() < 1e-4);
        assert!((polygrowth_constant(4.0) - 3.6276).abs() < 1e-4);
        assert!((jgroup_constant(1.0) - 1.8138).abs() < 1e-4);
    }
}
