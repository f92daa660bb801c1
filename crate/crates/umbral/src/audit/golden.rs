//! Golden expected statuses for the default grid.
//!
//! The embedded data is produced by an oracle run (`verify --regen-golden`)
//! and committed; it is never hand-written. `verify` compares fresh runs
//! against it and exits nonzero on any deviation, so the expected outcome
//! of every audit is version-controlled and regeneration is an explicit,
//! reviewable act.

use serde::{Deserialize, Serialize};

use super::{CaseParams, GridSpec, IdentityReport, IdentityStatus};

/// Expected outcome for one identity: the status on the golden grid and,
/// for failing statements, the parameters of the smallest counterexample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub identity: String,
    pub status: IdentityStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<CaseParams>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenSet {
    pub grid: GridSpec,
    pub expected: Vec<GoldenEntry>,
}

/// The committed golden set.
pub fn embedded_golden() -> GoldenSet {
    serde_json::from_str(include_str!("golden.json")).expect("embedded golden data parses")
}

/// Distills a report set into golden form.
pub fn golden_from_reports(grid: &GridSpec, reports: &[IdentityReport]) -> GoldenSet {
    GoldenSet {
        grid: grid.clone(),
        expected: reports
            .iter()
            .map(|report| GoldenEntry {
                identity: report.identity.clone(),
                status: report.status,
                counterexample: report
                    .minimal_counterexample()
                    .map(|case| case.params.clone()),
            })
            .collect(),
    }
}

/// Compares fresh reports against a golden set; returns one human-readable
/// line per deviation. Only the identities present in `reports` are
/// checked, so single-identity verification works against the full set.
pub fn golden_deviations(golden: &GoldenSet, reports: &[IdentityReport]) -> Vec<String> {
    let mut deviations = Vec::new();
    for report in reports {
        let Some(entry) = golden
            .expected
            .iter()
            .find(|e| e.identity == report.identity)
        else {
            deviations.push(format!("{}: missing from golden set", report.identity));
            continue;
        };
        if entry.status != report.status {
            deviations.push(format!(
                "{}: status {} differs from golden {}",
                report.identity, report.status, entry.status
            ));
            continue;
        }
        let observed = report.minimal_counterexample().map(|c| c.params.clone());
        if observed != entry.counterexample {
            deviations.push(format!(
                "{}: minimal counterexample {} differs from golden {}",
                report.identity,
                serde_json::to_string(&observed).unwrap_or_default(),
                serde_json::to_string(&entry.counterexample).unwrap_or_default(),
            ));
        }
    }
    deviations
}
