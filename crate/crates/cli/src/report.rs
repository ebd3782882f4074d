//! The JSON verification report. Every number is written as a decimal
//! string.

use std::collections::BTreeMap;

use serde::Serialize;
use sextic_core::bundle::SmoothnessReport;
use sextic_core::singular::{SingularCensusReport, StrataReport};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: &str = "1";

fn num(n: impl ToString) -> String {
    n.to_string()
}

fn point(y: &[u64; 4]) -> Vec<String> {
    y.iter().map(num).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub prime: String,
    pub seed: String,
    pub instance_file: Option<String>,
    pub checks: Vec<String>,
    pub n_samples: String,
    pub retries: String,
    pub budget: String,
    pub lines_per_fiber: String,
    pub sigma_points: Vec<Vec<String>>,
}

impl ConfigEcho {
    pub fn new(cfg: &RunConfig) -> Self {
        ConfigEcho {
            prime: num(cfg.prime),
            seed: num(cfg.seed),
            instance_file: cfg.instance_file.as_ref().map(|p| p.display().to_string()),
            checks: cfg.normalized_checks().iter().map(|c| c.name().to_string()).collect(),
            n_samples: num(cfg.n_samples),
            retries: num(cfg.retries),
            budget: num(cfg.budget),
            lines_per_fiber: num(cfg.lines_per_fiber),
            sigma_points: cfg.sigma_points.iter().map(point).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttemptReport {
    pub instance_seed: Option<String>,
    pub fingerprint: String,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub source: String,
    pub prime: String,
    pub seed: Option<String>,
    pub fingerprint: String,
    pub attempts: Vec<AttemptReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSection {
    pub zero_dimensional: bool,
    pub degree: Option<String>,
    pub reduced: String,
    pub points_at_infinity: bool,
    pub verdict: String,
    pub chart_change_seed: String,
}

impl From<&SingularCensusReport> for CensusSection {
    fn from(r: &SingularCensusReport) -> Self {
        CensusSection {
            zero_dimensional: r.zero_dimensional,
            degree: r.degree.map(num),
            reduced: r.reduced.as_str().to_string(),
            points_at_infinity: r.points_at_infinity,
            verdict: r.verdict.as_str().to_string(),
            chart_change_seed: num(r.chart_change_seed),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrataSection {
    pub rank2_equals_sigma: bool,
    pub rank1_empty: bool,
    pub delta_in_rank2_ideal: bool,
    pub rank2_points_at_infinity: bool,
    pub minors_in_sigma_radical: Vec<bool>,
    pub jacobian_in_rank2_radical: Vec<bool>,
}

impl From<&StrataReport> for StrataSection {
    fn from(r: &StrataReport) -> Self {
        StrataSection {
            rank2_equals_sigma: r.rank2_equals_sigma,
            rank1_empty: r.rank1_empty,
            delta_in_rank2_ideal: r.delta_in_rank2_ideal,
            rank2_points_at_infinity: r.rank2_points_at_infinity,
            minors_in_sigma_radical: r.minors_in_sigma.clone(),
            jacobian_in_rank2_radical: r.jacobian_in_rank2.clone(),
        }
    }
}

/// Rank tallies for the samples of one stratum.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StratumTally {
    pub samples: String,
    pub expected_rank: String,
    pub ranks: BTreeMap<String, String>,
    pub violations: String,
}

impl StratumTally {
    pub fn new(expected: usize, ranks: &[usize]) -> Self {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &r in ranks {
            *counts.entry(r).or_default() += 1;
        }
        StratumTally {
            samples: num(ranks.len()),
            expected_rank: num(expected),
            ranks: counts.into_iter().map(|(r, c)| (num(r), num(c))).collect(),
            violations: num(ranks.iter().filter(|&&r| r != expected).count()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibersSection {
    pub off_delta: StratumTally,
    pub on_delta_smooth: StratumTally,
    pub on_sigma: Option<StratumTally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingsSection {
    pub certificates: String,
    pub lines_per_fiber: String,
    pub patterns: BTreeMap<String, String>,
    pub all_even: String,
    pub constant_across_lines: String,
    pub skipped_degenerate_conics: String,
    pub pairing_qpi_source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessSection {
    pub points_tested: String,
    pub failures: String,
    pub lines_tried: String,
}

impl From<&SmoothnessReport> for SmoothnessSection {
    fn from(r: &SmoothnessReport) -> Self {
        SmoothnessSection {
            points_tested: num(r.points_tested),
            failures: num(r.failures),
            lines_tried: num(r.lines_tried),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub config: ConfigEcho,
    pub instance: InstanceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strata: Option<StrataSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub double_solid: Option<CensusSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibers: Option<FibersSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairings: Option<PairingsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smoothness: Option<SmoothnessSection>,
    pub checks: Vec<CheckOutcome>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, String>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
