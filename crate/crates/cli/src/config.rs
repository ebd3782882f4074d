use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use sextic_core::exactalg::{is_prime, DEFAULT_PRIME};
use sextic_core::fibers::LINES_PER_FIBER;
use sextic_core::groebner::DEFAULT_BUDGET;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Census,
    Strata,
    DoubleSolid,
    Fibers,
    Pairings,
    Smoothness,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Census,
        Check::Strata,
        Check::DoubleSolid,
        Check::Fibers,
        Check::Pairings,
        Check::Smoothness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Census => "census",
            Check::Strata => "strata",
            Check::DoubleSolid => "double_solid",
            Check::Fibers => "fibers",
            Check::Pairings => "pairings",
            Check::Smoothness => "smoothness",
        }
    }

    /// Everything except the smoothness spot-check runs on top of a generic
    /// node census.
    pub fn needs_census(self) -> bool {
        self != Check::Smoothness
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let key = s.replace('-', "_");
        Check::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| CliError::UnknownCheck(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub prime: u64,
    pub seed: u64,
    pub instance_file: Option<PathBuf>,
    pub checks: Vec<Check>,
    pub n_samples: usize,
    pub retries: usize,
    pub budget: u64,
    pub lines_per_fiber: usize,
    pub sigma_points: Vec<[u64; 4]>,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            prime: DEFAULT_PRIME,
            seed: 0,
            instance_file: None,
            checks: Check::ALL.to_vec(),
            n_samples: 100,
            retries: 5,
            budget: DEFAULT_BUDGET,
            lines_per_fiber: LINES_PER_FIBER,
            sigma_points: Vec::new(),
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn with_checks(mut self, checks: &[Check]) -> Self {
        self.checks = checks.to_vec();
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.prime <= 6 || !is_prime(self.prime) {
            return Err(CliError::Config(format!("prime {} must be a prime > 6", self.prime)));
        }
        if self.n_samples == 0 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        if self.lines_per_fiber == 0 {
            return Err(CliError::Config("lines must be at least 1".into()));
        }
        if self.budget == 0 {
            return Err(CliError::Config("budget must be positive".into()));
        }
        if self.checks.is_empty() {
            return Err(CliError::Config("no checks selected".into()));
        }
        Ok(())
    }

    /// Checks sorted in pipeline order without duplicates.
    pub fn normalized_checks(&self) -> Vec<Check> {
        let mut c = self.checks.clone();
        c.sort();
        c.dedup();
        c
    }

    pub fn needs_census(&self) -> bool {
        self.checks.iter().any(|c| c.needs_census())
    }
}

/// Parses `a,b,c,d` into a point of `P^3`.
pub fn parse_point(text: &str) -> Result<[u64; 4], CliError> {
    let coords: Vec<u64> = text
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("point `{text}`: {e}")))?;
    coords
        .try_into()
        .map_err(|_| CliError::Config(format!("point `{text}` needs four coordinates")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert_eq!("double-solid".parse::<Check>().unwrap(), Check::DoubleSolid);
        assert!(matches!("nodes".parse::<Check>(), Err(CliError::UnknownCheck(_))));
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        for bad in [
            RunConfig { prime: 5, ..Default::default() },
            RunConfig { prime: 32001, ..Default::default() },
            RunConfig { n_samples: 0, ..Default::default() },
            RunConfig { checks: vec![], ..Default::default() },
        ] {
            assert!(matches!(bad.validate(), Err(CliError::Config(_))));
        }
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1, 2,3,4").unwrap(), [1, 2, 3, 4]);
        assert!(parse_point("1,2,3").is_err());
        assert!(parse_point("1,x,3,4").is_err());
    }
}
