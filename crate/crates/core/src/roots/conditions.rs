//! Torsion conditions on the characteristic and the good/very good prime
//! tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::form::FormData;
use super::{CartanType, FactorSpec, RootDatum};
use crate::linalg::{prime_factors, smith_normal_form};

/// Bad primes per type, keyed by `A`..`D`, `E6`, `E7`, `E8`, `F4`, `G2`,
/// `GL`. Very good additionally excludes primes dividing `n + 1` for `A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeTable {
    pub bad: BTreeMap<String, Vec<u64>>,
}

impl Default for PrimeTable {
    fn default() -> Self {
        let entries: [(&str, &[u64]); 10] = [
            ("A", &[]),
            ("B", &[2]),
            ("C", &[2]),
            ("D", &[2]),
            ("E6", &[2, 3]),
            ("E7", &[2, 3]),
            ("E8", &[2, 3, 5]),
            ("F4", &[2, 3]),
            ("G2", &[2, 3]),
            ("GL", &[]),
        ];
        PrimeTable {
            bad: entries.iter().map(|(k, v)| (k.to_string(), v.to_vec())).collect(),
        }
    }
}

impl PrimeTable {
    fn key(spec: &FactorSpec) -> String {
        match *spec {
            FactorSpec::GeneralLinear { .. } => "GL".into(),
            FactorSpec::SimplyConnected { cartan, rank } if cartan.is_exceptional() => {
                format!("{}{rank}", cartan.letter())
            }
            FactorSpec::SimplyConnected { cartan, .. } => cartan.letter().to_string(),
        }
    }

    pub fn bad_primes(&self, spec: &FactorSpec) -> &[u64] {
        self.bad.get(&Self::key(spec)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Primes that are not very good for the factor.
    pub fn non_very_good(&self, spec: &FactorSpec) -> Vec<u64> {
        let mut out = self.bad_primes(spec).to_vec();
        if let FactorSpec::SimplyConnected { cartan: CartanType::A, rank } = *spec {
            out.extend(prime_factors(&BigInt::from(rank + 1)));
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_good(&self, rd: &RootDatum, p: u64) -> bool {
        p == 0 || rd.factors.iter().all(|f| !self.bad_primes(&f.spec).contains(&p))
    }

    pub fn is_very_good(&self, rd: &RootDatum, p: u64) -> bool {
        p == 0 || !self.non_very_good_primes(rd).contains(&p)
    }

    /// Union over the factors of the primes that are not very good.
    pub fn non_very_good_primes(&self, rd: &RootDatum) -> Vec<u64> {
        let mut out: Vec<u64> = rd.factors.iter().flat_map(|f| self.non_very_good(&f.spec)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The product of all primes that are not very good for some factor.
    pub fn very_good_product(&self, rd: &RootDatum) -> BigInt {
        self.non_very_good_primes(rd)
            .into_iter()
            .fold(BigInt::one(), |acc, p| acc * BigInt::from(p))
    }
}

/// Evidence that a condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConditionWitness {
    /// A root whose differential vanishes mod p.
    VanishingRoot { condition: String, root: String, weight: Vec<i64> },
    /// A factor for which p is bad.
    BadPrime { condition: String, factor: String },
    /// An elementary divisor of `X_*/ZΦ̌` (or `X*/ZΦ`) exhibiting torsion.
    LatticeTorsion { condition: String, lattice: String, divisor: String },
    /// Gram determinant of the invariant form divisible by p.
    DegenerateForm { condition: String, determinant: String },
}

/// Which of the conditions C1 to C4 hold at a characteristic.
///
/// * C1: `dα ≠ 0` for every root.
/// * C2: p good and `X_*/ZΦ̌` has no p-torsion.
/// * C3: C2 and `X*/ZΦ` has no p-torsion.
/// * C4: p good, `X_*/ZΦ̌` torsion free, and the invariant form is
///   nondegenerate mod p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionProfile {
    pub p: u64,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub c4: bool,
    pub good: bool,
    pub very_good: bool,
    pub witnesses: Vec<ConditionWitness>,
}

impl ConditionProfile {
    /// Whether the implication chain `c4 ⇒ c3 ⇒ c2` and `c3 ⇒ c1` holds.
    pub fn chain_holds(&self) -> bool {
        (!self.c4 || self.c3) && (!self.c3 || self.c2) && (!self.c3 || self.c1)
    }

    pub fn holds(&self, condition: Condition) -> bool {
        match condition {
            Condition::C1 => self.c1,
            Condition::C2 => self.c2,
            Condition::C3 => self.c3,
            Condition::C4 => self.c4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    C1,
    C2,
    C3,
    C4,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3 => "C3",
            Condition::C4 => "C4",
        };
        f.write_str(s)
    }
}

fn divides(p: u64, d: &BigInt) -> bool {
    if p == 0 {
        return d.is_zero();
    }
    (d % BigInt::from(p)).is_zero()
}

/// Evaluates the four conditions at characteristic `p` (0 for the
/// rationals).
pub fn condition_check(rd: &RootDatum, p: u64, table: &PrimeTable) -> ConditionProfile {
    let mut witnesses = Vec::new();

    let mut c1 = true;
    if p != 0 {
        for (i, r) in rd.roots().iter().enumerate().take(rd.n_positive()) {
            if r.weight.iter().all(|&w| w.rem_euclid(p as i64) == 0) {
                c1 = false;
                witnesses.push(ConditionWitness::VanishingRoot {
                    condition: "C1".into(),
                    root: rd.root_label(i),
                    weight: r.weight.clone(),
                });
                break;
            }
        }
    }

    let good = table.is_good(rd, p);
    if !good {
        for f in &rd.factors {
            if table.bad_primes(&f.spec).contains(&p) {
                witnesses.push(ConditionWitness::BadPrime {
                    condition: "C2".into(),
                    factor: f.spec.to_string(),
                });
            }
        }
    }

    // X_*/ZΦ̌ and X*/ZΦ via elementary divisors; zero divisors are free
    // summands, not torsion.
    let cochar = smith_normal_form(&rd.simple_coroot_matrix());
    let chr = smith_normal_form(&rd.simple_root_matrix());
    let torsion_at = |divs: &[BigInt], p: u64| -> Option<BigInt> {
        divs.iter().find(|d| !d.is_zero() && p != 0 && divides(p, d)).cloned()
    };

    let cochar_p = torsion_at(&cochar.divisors, p);
    if let Some(d) = &cochar_p {
        witnesses.push(ConditionWitness::LatticeTorsion {
            condition: "C2".into(),
            lattice: "cocharacters/coroots".into(),
            divisor: d.to_string(),
        });
    }
    let c2 = good && cochar_p.is_none();

    let char_p = torsion_at(&chr.divisors, p);
    if let Some(d) = &char_p {
        witnesses.push(ConditionWitness::LatticeTorsion {
            condition: "C3".into(),
            lattice: "characters/roots".into(),
            divisor: d.to_string(),
        });
    }
    let c3 = c2 && char_p.is_none();

    let cochar_any = cochar.divisors.iter().find(|d| !d.is_zero() && !d.is_one()).cloned();
    if let Some(d) = &cochar_any {
        witnesses.push(ConditionWitness::LatticeTorsion {
            condition: "C4".into(),
            lattice: "cocharacters/coroots".into(),
            divisor: d.to_string(),
        });
    }
    let det = FormData::new(rd).gram_determinant(rd);
    let degenerate = divides(p, &det);
    if degenerate {
        witnesses.push(ConditionWitness::DegenerateForm {
            condition: "C4".into(),
            determinant: det.to_string(),
        });
    }
    let c4 = good && cochar_any.is_none() && !degenerate;

    ConditionProfile {
        p,
        c1,
        c2,
        c3,
        c4,
        good,
        very_good: table.is_very_good(rd, p),
        witnesses,
    }
}
