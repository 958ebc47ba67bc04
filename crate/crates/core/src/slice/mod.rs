//! The Kostant slice `S = e + s` and its audits.

pub mod audit;
pub mod model;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chevalley::{springer_map, springer_torsion_report, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{int_det, integral_basis_complement, prime_factors, Field, IntMatrix};
use crate::roots::{heights_and_exponents, PrimeTable, RootDatum};

pub use audit::{regularity_audit, sample_coords};
pub use model::{centralizer, FieldModel};

/// `S = e + s` with `s` spanned by Chevalley basis vectors of `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slice {
    pub e: Vec<i64>,
    /// Basis indices spanning `s`, ascending.
    pub complement: Vec<usize>,
    /// `G_m`-weight `2i - 2` of each complement vector of degree `i`.
    pub weights: Vec<i64>,
    /// Primes inverted in the working ring `Z[1/N]`.
    pub inverted_primes: Vec<u64>,
}

impl Slice {
    pub fn inverted_n(&self) -> BigInt {
        self.inverted_primes.iter().fold(BigInt::from(1), |a, &p| a * BigInt::from(p))
    }

    /// `e + Σ c_j s_j` over a field.
    pub fn point<F: Field>(&self, model: &FieldModel<'_, F>, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.complement.len());
        let mut x = model.embed(&self.e);
        for (c, &b) in coords.iter().zip(&self.complement) {
            x[b] = model.field.add(&x[b], c);
        }
        x
    }
}

/// Chooses `s` degree by degree: in each `g^i`, `i ≤ 0`, the
/// lexicographically first standard basis vectors completing the image of
/// `t_{i-1}` over `Z[1/N]`.
pub fn integral_complement(alg: &ChevalleyAlgebra) -> Result<Slice> {
    let report = springer_torsion_report(alg, &PrimeTable::default());
    let primes = report.derived_primes.clone();
    let mut complement = Vec::new();
    for i in -alg.max_height()..=0 {
        let piece = alg.degree_basis(i);
        if piece.is_empty() {
            continue;
        }
        let gens = match springer_map(alg, i - 1) {
            Ok(m) => m,
            Err(Error::EmptyDegree(_)) => IntMatrix::zeros(piece.len(), 0),
            Err(e) => return Err(e),
        };
        let local = integral_basis_complement(&gens, piece.len(), &primes)?;
        complement.extend(local.into_iter().map(|k| piece[k]));
    }
    complement.sort_unstable();
    let weights = complement.iter().map(|&b| 2 * alg.degrees()[b] - 2).collect();
    let slice = Slice {
        e: alg.principal_nilpotent().e,
        complement,
        weights,
        inverted_primes: primes,
    };
    if slice.complement.len() != alg.rank() {
        return Err(Error::NoIntegralComplement {
            n: slice.inverted_n().to_string(),
            reason: format!("complement has {} vectors, expected rank {}", slice.complement.len(), alg.rank()),
        });
    }
    let det = borel_decomposition_det(alg, &slice);
    let bad: Vec<u64> = prime_factors(&det).into_iter().filter(|p| !slice.inverted_primes.contains(p)).collect();
    if det == BigInt::from(0) || !bad.is_empty() {
        return Err(Error::NoIntegralComplement {
            n: slice.inverted_n().to_string(),
            reason: format!("b = s ⊕ [e, n] has determinant {det}"),
        });
    }
    Ok(slice)
}

/// Determinant over `Z` of the basis `s ∪ [e, n]` of `b`, in `b`'s basis.
pub fn borel_decomposition_det(alg: &ChevalleyAlgebra, slice: &Slice) -> BigInt {
    let b = alg.borel_basis();
    let n = alg.nilradical_basis();
    let pos = |k: usize| b.binary_search(&k).expect("lands in b");
    let e: Vec<(usize, i64)> = slice.e.iter().enumerate().filter(|(_, v)| **v != 0).map(|(k, &v)| (k, v)).collect();
    let mut m = IntMatrix::zeros(b.len(), b.len());
    let mut col = 0;
    for &v in &slice.complement {
        m[(pos(v), col)] = BigInt::from(1);
        col += 1;
    }
    for &y in &n {
        for (k, c) in alg.bracket_sparse(&e, &[(y, 1)]) {
            m[(pos(k), col)] = BigInt::from(c);
        }
        col += 1;
    }
    int_det(&m)
}

/// Comparison of the slice weights with `{-2 d_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCheck {
    pub pass: bool,
    pub slice_weights: Vec<i64>,
    pub expected: Vec<i64>,
}

/// Checks that the `G_m`-weights of `s` are `{-2 d_i}` for the invariant
/// degrees `d_i`.
pub fn slice_weight_check(slice: &Slice, rd: &RootDatum) -> WeightCheck {
    let mut slice_weights = slice.weights.clone();
    slice_weights.sort_unstable();
    let mut expected: Vec<i64> = heights_and_exponents(rd).degrees.iter().map(|d| -2 * d).collect();
    expected.sort_unstable();
    WeightCheck {
        pass: slice_weights == expected,
        slice_weights,
        expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::roots::build_root_datum;

    fn slice_of(s: &str) -> (ChevalleyAlgebra, Slice) {
        let alg = build_chevalley_algebra(&build_root_datum(s).unwrap()).unwrap();
        let sl = integral_complement(&alg).unwrap();
        (alg, sl)
    }

    #[test]
    fn gl2_picks_e21_and_e11() {
        let (alg, s) = slice_of("GL(2)");
        let labels: Vec<String> = s.complement.iter().map(|&b| alg.basis_label(b)).collect();
        assert_eq!(labels, vec!["e[-α1]", "h1"]);
        assert!(s.inverted_primes.is_empty());
    }

    #[test]
    fn sl2_slice() {
        let (_, s) = slice_of("SC(A1)");
        assert_eq!(s.complement, vec![1]);
        assert_eq!(s.inverted_primes, vec![2]);
        assert_eq!(s.weights, vec![-4]);
    }

    #[test]
    fn gl3_has_three_vectors_and_weights_match() {
        let (alg, s) = slice_of("GL(3)");
        assert_eq!(s.complement.len(), 3);
        assert!(slice_weight_check(&s, alg.datum()).pass);
    }

    #[test]
    fn weights_match_degrees() {
        for g in ["SC(A1)", "SC(A3)", "SC(B3)", "SC(C3)", "SC(D4)", "SC(G2)", "SC(F4)", "SC(A2)*GL(2)"] {
            let (alg, s) = slice_of(g);
            let w = slice_weight_check(&s, alg.datum());
            assert!(w.pass, "{g}: {w:?}");
        }
        let (alg, s) = slice_of("SC(G2)");
        assert_eq!(slice_weight_check(&s, alg.datum()).slice_weights, vec![-12, -4]);
    }

    #[test]
    fn deterministic() {
        assert_eq!(slice_of("SC(B3)").1, slice_of("SC(B3)").1);
    }
}
