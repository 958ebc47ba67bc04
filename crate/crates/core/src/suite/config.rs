//! Suite configuration and the parsers behind the command-line flags.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::is_prime;
use crate::roots::{GroupSpec, PrimeTable};
use crate::whittaker::MAX_DEGREE;

/// Largest characteristic accepted; prime-field arithmetic works in `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;
/// Default characteristics: `Q`, the usual bad primes, and two large ones.
pub const DEFAULT_PRIMES: [u64; 7] = [0, 2, 3, 5, 7, 11, 31];

/// A family of audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Springer,
    Conditions,
    Slice,
    Quotient,
    Centralizer,
    Groth,
    Waction,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::Springer,
        SuiteName::Conditions,
        SuiteName::Slice,
        SuiteName::Quotient,
        SuiteName::Centralizer,
        SuiteName::Groth,
        SuiteName::Waction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Springer => "springer",
            SuiteName::Conditions => "conditions",
            SuiteName::Slice => "slice",
            SuiteName::Quotient => "quotient",
            SuiteName::Centralizer => "centralizer",
            SuiteName::Groth => "groth",
            SuiteName::Waction => "waction",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// Parses a comma-separated suite list; `all` expands to every suite.
/// Duplicates collapse and the result is in canonical order.
pub fn parse_suite_list(input: &str) -> Result<Vec<SuiteName>> {
    let mut out = Vec::new();
    for part in input.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Config(format!("empty suite name in {input:?}")));
        }
        if part == "all" {
            out.extend(SuiteName::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Parses a comma-separated list of characteristics: `0` for `Q`, or a
/// prime below 2^32. Duplicates collapse; the result is ascending.
pub fn parse_prime_list(input: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in input.split(',') {
        let part = part.trim();
        let p: u64 = part
            .parse()
            .map_err(|_| Error::Config(format!("{part:?} is not a non-negative integer")))?;
        if p != 0 && (p > MAX_PRIME || !is_prime(p)) {
            return Err(Error::Config(format!("{p} is neither 0 nor a prime below 2^32")));
        }
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Parses a comma-separated list of group specs, e.g. `SC(A2),GL(3)`.
pub fn parse_group_list(input: &str) -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    for part in input.split(',') {
        out.push(GroupSpec::parse(part.trim())?);
    }
    Ok(out)
}

/// What to run and with which knobs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub groups: Vec<GroupSpec>,
    pub primes: Vec<u64>,
    pub suites: Vec<SuiteName>,
    pub seed: u64,
    pub samples: usize,
    /// Truncation degree for the twisted action.
    pub degree: usize,
    /// Record per-task wall-clock times; off by default so that reports
    /// are byte-identical across runs.
    pub timing: bool,
    #[serde(skip)]
    pub table: PrimeTable,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            groups: Vec::new(),
            primes: DEFAULT_PRIMES.to_vec(),
            suites: SuiteName::ALL.to_vec(),
            seed: 0,
            samples: 100,
            degree: 6,
            timing: false,
            table: PrimeTable::default(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.groups.is_empty() {
            return Err(Error::Config("no group specs given".into()));
        }
        if self.primes.is_empty() {
            return Err(Error::Config("no primes given".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites given".into()));
        }
        if let Some(&p) = self.primes.iter().find(|&&p| p != 0 && (p > MAX_PRIME || !is_prime(p))) {
            return Err(Error::Config(format!("{p} is neither 0 nor a prime below 2^32")));
        }
        if self.degree > MAX_DEGREE {
            return Err(Error::Config(format!("truncation degree {} exceeds {MAX_DEGREE}", self.degree)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites() {
        assert_eq!(parse_suite_list("all").unwrap(), SuiteName::ALL.to_vec());
        assert_eq!(
            parse_suite_list("groth, slice,groth").unwrap(),
            vec![SuiteName::Slice, SuiteName::Groth]
        );
        for bad in ["", "slice,", "Slice", "everything"] {
            assert!(matches!(parse_suite_list(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn primes() {
        assert_eq!(parse_prime_list("7, 2,0,2").unwrap(), vec![0, 2, 7]);
        assert_eq!(parse_prime_list("4294967291").unwrap(), vec![4_294_967_291]);
        for bad in ["", "4", "1", "-3", "2,,3", "x", "4294967311", "18446744073709551616"] {
            assert!(matches!(parse_prime_list(bad), Err(Error::Config(_))), "{bad}");
        }
    }

    #[test]
    fn groups() {
        let g = parse_group_list("SC(A2), GL(3)").unwrap();
        assert_eq!(g.len(), 2);
        assert!(parse_group_list("SC(A2),").is_err());
    }

    #[test]
    fn defaults_validate_once_groups_are_set() {
        let mut c = SuiteConfig::default();
        assert!(c.validate().is_err());
        c.groups = parse_group_list("SC(A1)").unwrap();
        c.validate().unwrap();
        c.degree = 11;
        assert!(c.validate().is_err());
    }
}
