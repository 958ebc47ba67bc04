//! Springer's maps `t_i : g^i → g^{i+1}, y ↦ [e, y]` and their torsion.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::roots::PrimeTable;

/// Matrix of `t_i` from the degree-`i` basis to the degree-`(i+1)` basis.
pub fn springer_map(alg: &ChevalleyAlgebra, i: i64) -> Result<IntMatrix> {
    let src = alg.degree_basis(i);
    if src.is_empty() {
        return Err(Error::EmptyDegree(i));
    }
    let tgt = alg.degree_basis(i + 1);
    let e = alg.principal_nilpotent().e;
    let e_sparse: Vec<(usize, i64)> = e.iter().enumerate().filter(|(_, v)| **v != 0).map(|(k, &v)| (k, v)).collect();
    let mut m = IntMatrix::zeros(tgt.len(), src.len());
    for (col, &b) in src.iter().enumerate() {
        for (k, v) in alg.bracket_sparse(&e_sparse, &[(b, 1)]) {
            let row = tgt.binary_search(&k).expect("bracket with e raises degree by one");
            m[(row, col)] = BigInt::from(v);
        }
    }
    Ok(m)
}

/// Torsion data of one Springer map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTorsion {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub injective_over_q: bool,
    pub surjective_over_q: bool,
    /// Nonzero elementary divisors other than 1.
    pub divisors: Vec<String>,
    pub torsion_primes: Vec<u64>,
}

/// Per-degree torsion of the cokernels of all `t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpringerTorsionReport {
    pub group: String,
    pub degrees: Vec<DegreeTorsion>,
    /// Torsion primes of all `t_i`; their product is the inverted integer
    /// `N`.
    pub derived_primes: Vec<u64>,
    /// Torsion primes of `t_i` for `i ≤ 0` only.
    pub nonpositive_primes: Vec<u64>,
    /// Primes that are not very good according to the table.
    pub table_primes: Vec<u64>,
    pub bad_primes: Vec<u64>,
    /// Torsion primes in degrees `i ∉ {-1, 0}` are all bad.
    pub localized: bool,
    /// `derived_primes == table_primes`.
    pub n_matches_table: bool,
}

impl SpringerTorsionReport {
    pub fn derived_n(&self) -> BigInt {
        self.derived_primes.iter().fold(BigInt::from(1), |a, &p| a * BigInt::from(p))
    }

    pub fn degree(&self, i: i64) -> Option<&DegreeTorsion> {
        self.degrees.iter().find(|d| d.degree == i)
    }
}

pub fn springer_torsion_report(alg: &ChevalleyAlgebra, table: &PrimeTable) -> SpringerTorsionReport {
    let rd = alg.datum();
    let h = alg.max_height();
    let mut degrees = Vec::new();
    for i in -h..=h {
        let Ok(m) = springer_map(alg, i) else { continue };
        let snf = smith_normal_form(&m);
        let rank = snf.rank();
        degrees.push(DegreeTorsion {
            degree: i,
            source_dim: m.cols(),
            target_dim: m.rows(),
            injective_over_q: rank == m.cols(),
            surjective_over_q: rank == m.rows(),
            divisors: snf
                .divisors
                .iter()
                .filter(|d| **d != BigInt::from(0) && **d != BigInt::from(1))
                .map(|d| d.to_string())
                .collect(),
            torsion_primes: snf.torsion_primes(),
        });
    }
    let collect = |keep: &dyn Fn(i64) -> bool| {
        let mut v: Vec<u64> = degrees
            .iter()
            .filter(|d| keep(d.degree))
            .flat_map(|d| d.torsion_primes.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let derived = collect(&|_| true);
    let nonpositive = collect(&|i| i <= 0);
    let mut bad: Vec<u64> = rd.factors.iter().flat_map(|f| table.bad_primes(&f.spec).to_vec()).collect();
    bad.sort_unstable();
    bad.dedup();
    let localized = degrees
        .iter()
        .filter(|d| d.degree != -1 && d.degree != 0)
        .all(|d| d.torsion_primes.iter().all(|p| bad.contains(p)));
    let table_primes = table.non_very_good_primes(rd);
    SpringerTorsionReport {
        group: rd.spec.to_string(),
        n_matches_table: derived == table_primes,
        degrees,
        derived_primes: derived,
        nonpositive_primes: nonpositive,
        table_primes,
        bad_primes: bad,
        localized,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::roots::build_root_datum;

    fn alg(s: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(&build_root_datum(s).unwrap()).unwrap()
    }

    #[test]
    fn sl2_maps() {
        let a = alg("SC(A1)");
        assert_eq!(springer_map(&a, -1).unwrap(), IntMatrix::from_i64_rows(&[vec![1]]));
        // [e, h] = -⟨α, h⟩ e.
        assert_eq!(springer_map(&a, 0).unwrap(), IntMatrix::from_i64_rows(&[vec![-2]]));
        assert!(matches!(springer_map(&a, -2), Err(Error::EmptyDegree(-2))));
    }

    #[test]
    fn gl2_inclusion_is_saturated() {
        let a = alg("GL(2)");
        let m = springer_map(&a, -1).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert_eq!(smith_normal_form(&m).divisors, vec![BigInt::from(1)]);
    }

    #[test]
    fn sl2_report() {
        let r = springer_torsion_report(&alg("SC(A1)"), &PrimeTable::default());
        assert_eq!(r.degree(0).unwrap().torsion_primes, vec![2]);
        assert!(r.degree(-1).unwrap().torsion_primes.is_empty());
        assert_eq!(r.derived_primes, vec![2]);
        assert!(r.n_matches_table && r.localized);
    }

    #[test]
    fn g2_needs_positive_degrees_for_three() {
        let r = springer_torsion_report(&alg("SC(G2)"), &PrimeTable::default());
        assert_eq!(r.nonpositive_primes, vec![2]);
        assert_eq!(r.derived_primes, vec![2, 3]);
        assert_eq!(r.degree(3).unwrap().torsion_primes, vec![3]);
    }
}
