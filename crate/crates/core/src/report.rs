//! Report entries shared by every audit.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::roots::conditions::Condition;
use crate::roots::{ConditionProfile, PrimeTable};

/// Outcome of one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A precondition does not hold; the check certifies nothing here.
    NotApplicable,
    /// Failure at a documented bad prime.
    ExpectedFail,
}

impl Status {
    pub fn is_unexpected_failure(self) -> bool {
        self == Status::Fail
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One row of a verification report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub group: String,
    /// Characteristic of the field the check ran over (0 for `Q`), or
    /// `None` for statements about the integral form.
    pub prime: Option<u64>,
    /// Dotted check name, e.g. `slice.direct-sum`.
    pub check: String,
    /// Identifier of the statement the check certifies.
    pub statement: String,
    pub status: Status,
    /// Counts, counterexamples and reasons.
    pub witness: Value,
}

impl CheckEntry {
    pub fn new(
        group: &str,
        prime: impl Into<Option<u64>>,
        check: &str,
        statement: &str,
        status: Status,
        witness: Value,
    ) -> Self {
        CheckEntry {
            group: group.to_string(),
            prime: prime.into(),
            check: check.to_string(),
            statement: statement.to_string(),
            status,
            witness,
        }
    }
}

/// Knobs shared by the sampled audits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditOptions {
    pub samples: usize,
    pub seed: u64,
    /// Raise [`crate::Error::ConditionViolation`] instead of reporting
    /// not-applicable when a precondition fails.
    pub strict: bool,
    pub table: PrimeTable,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            samples: 100,
            seed: 0,
            strict: false,
            table: PrimeTable::default(),
        }
    }
}

/// SplitMix64 finalizer, used to derive independent per-task seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for a named task, stable across runs and thread counts.
pub fn task_seed(seed: u64, parts: &[&str], index: u64) -> u64 {
    let mut h = mix64(seed);
    for part in parts {
        for b in part.bytes() {
            h = mix64(h ^ u64::from(b));
        }
        h = mix64(h ^ 0xff);
    }
    mix64(h ^ index)
}

/// Reason string for a failed precondition, e.g. `(C3) fails at p=3 for SC(A2)`.
pub fn precondition_reason(condition: Condition, profile: &ConditionProfile, group: &str) -> String {
    format!("({condition}) fails at p={} for {group}", profile.p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_kebab_case() {
        assert_eq!(serde_json::to_string(&Status::NotApplicable).unwrap(), "\"not-applicable\"");
        assert_eq!(serde_json::to_string(&Status::ExpectedFail).unwrap(), "\"expected-fail\"");
    }

    #[test]
    fn task_seeds_differ() {
        let a = task_seed(1, &["SC(A2)", "slice"], 0);
        assert_ne!(a, task_seed(1, &["SC(A2)", "slice"], 1));
        assert_ne!(a, task_seed(2, &["SC(A2)", "slice"], 0));
        assert_ne!(a, task_seed(1, &["SC(A2)slice"], 0));
        assert_eq!(a, task_seed(1, &["SC(A2)", "slice"], 0));
    }
}
