use num_bigint::BigInt;

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Upper bound on candidate subsets tried before giving up.
const MAX_CANDIDATES: u64 = 2_000_000;

/// Chooses standard basis vectors completing a sublattice to the ambient
/// lattice over `Z[1/N]`, where `N` is the product of `inverted`.
///
/// `sublattice_gens` holds the generators as columns (`ambient_rank` rows).
/// Returns 0-based indices of the chosen basis vectors, lexicographically
/// minimal among valid subsets.
pub fn integral_basis_complement(
    sublattice_gens: &IntMatrix,
    ambient_rank: usize,
    inverted: &[u64],
) -> Result<Vec<usize>> {
    assert_eq!(sublattice_gens.rows(), ambient_rank, "generators must live in the ambient lattice");
    let n_label = || {
        inverted
            .iter()
            .fold(BigInt::from(1u32), |acc, &p| acc * BigInt::from(p))
            .to_string()
    };

    let snf = smith_normal_form(sublattice_gens);
    if !snf.divisors_are_units_away_from(inverted) {
        return Err(Error::NoIntegralComplement {
            n: n_label(),
            reason: format!(
                "sublattice is not a summand: elementary divisors carry primes {:?}",
                snf.torsion_primes()
            ),
        });
    }
    let need = ambient_rank - snf.rank();
    let mut tried = 0u64;
    for subset in Combinations::new(ambient_rank, need) {
        tried += 1;
        if tried > MAX_CANDIDATES {
            break;
        }
        let mut m = sublattice_gens.clone();
        for &idx in &subset {
            let mut e = IntMatrix::zeros(ambient_rank, 1);
            e[(idx, 0)] = BigInt::from(1u32);
            m = m.hcat(&e);
        }
        let f = smith_normal_form(&m);
        if f.rank() == ambient_rank && f.divisors_are_units_away_from(inverted) {
            return Ok(subset);
        }
    }
    Err(Error::NoIntegralComplement {
        n: n_label(),
        reason: format!("no subset of {need} standard basis vectors completes the sublattice"),
    })
}

/// k-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antidiagonal_line() {
        let gens = IntMatrix::from_i64_rows(&[vec![1], vec![-1]]);
        assert_eq!(integral_basis_complement(&gens, 2, &[]).unwrap(), vec![0]);
    }

    #[test]
    fn diagonal_line() {
        let gens = IntMatrix::from_i64_rows(&[vec![1], vec![1]]);
        assert_eq!(integral_basis_complement(&gens, 2, &[]).unwrap(), vec![0]);
    }

    #[test]
    fn gl2_cartan_picks_first_diagonal_unit() {
        // Sublattice Z(E11 - E22) in the diagonal lattice of gl_2 with basis
        // (E11, E22). Completing with E11 gives det 1; the identity
        // E11 + E22 would only give index 2, and is not a basis vector anyway.
        let gens = IntMatrix::from_i64_rows(&[vec![1], vec![-1]]);
        let chosen = integral_basis_complement(&gens, 2, &[]).unwrap();
        assert_eq!(chosen, vec![0]);
        let identity_det = 1 - (-1);
        assert_eq!(identity_det, 2);
    }

    #[test]
    fn non_summand_is_rejected_unless_inverted() {
        let gens = IntMatrix::from_i64_rows(&[vec![2], vec![0]]);
        assert!(matches!(
            integral_basis_complement(&gens, 2, &[]),
            Err(Error::NoIntegralComplement { .. })
        ));
        assert_eq!(integral_basis_complement(&gens, 2, &[2]).unwrap(), vec![1]);
    }

    #[test]
    fn empty_sublattice_takes_everything() {
        let gens = IntMatrix::zeros(3, 0);
        assert_eq!(integral_basis_complement(&gens, 3, &[]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
