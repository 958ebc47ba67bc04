//! The symmetric invariant form `κ` on a Chevalley basis.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::chevalley::{springer_torsion_report, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{prime_factors, IntMatrix};
use crate::roots::form::{factor_scale, FormData};
use crate::roots::{FactorSpec, PrimeTable};

/// Gram matrix of `κ` with its determinant data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KappaForm {
    #[serde(skip)]
    pub gram: IntMatrix,
    /// Gram determinant up to sign.
    pub determinant: String,
    /// Primes dividing the determinant.
    pub degenerate_primes: Vec<u64>,
    /// Primes inverted in the working ring.
    pub inverted_primes: Vec<u64>,
}

impl KappaForm {
    pub fn is_nondegenerate_at(&self, p: u64) -> bool {
        if p == 0 {
            return self.determinant != "0";
        }
        !self.degenerate_primes.contains(&p)
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = x.len();
        let mut acc = BigInt::zero();
        for i in (0..n).filter(|&i| x[i] != 0) {
            for j in (0..n).filter(|&j| y[j] != 0) {
                acc += &self.gram[(i, j)] * BigInt::from(x[i] * y[j]);
            }
        }
        i64::try_from(acc).expect("pairing fits in i64")
    }
}

/// Builds `κ`: trace forms for classical and `GL` factors, the Killing
/// form (computed from structure constants) for exceptional factors.
///
/// Verifies symmetry and invariance on all basis triples, and fails with
/// [`Error::DegenerateForm`] if the determinant is not a unit once the
/// torsion primes of the Springer maps are inverted.
pub fn kappa_form(alg: &ChevalleyAlgebra) -> Result<KappaForm> {
    let rd = alg.datum();
    let data = FormData::new(rd);
    let n = alg.dim();
    let mut gram = IntMatrix::zeros(n, n);
    for a in 0..alg.n_roots() {
        gram[(a, rd.negative_of(a))] = BigInt::from(data.root_pairing[a]);
    }
    for i in 0..rd.rank() {
        for j in 0..rd.rank() {
            gram[(alg.h_index(i), alg.h_index(j))] = data.cartan_block[(i, j)].clone();
        }
    }

    for (fi, info) in rd.factors.iter().enumerate() {
        if let FactorSpec::SimplyConnected { cartan, .. } = info.spec {
            if cartan.is_exceptional() {
                let members: Vec<usize> = (0..n).filter(|&b| factor_of(alg, b) == Some(fi)).collect();
                for &i in &members {
                    for &j in &members {
                        let k = killing_entry(alg, i, j);
                        if BigInt::from(k) != gram[(i, j)] {
                            return Err(Error::StructureConstant(format!(
                                "Killing form of {} differs from {} times the normalized form at ({}, {})",
                                info.spec,
                                factor_scale(&info.spec),
                                alg.basis_label(i),
                                alg.basis_label(j)
                            )));
                        }
                    }
                }
            }
        }
    }

    if gram != gram.transpose() {
        return Err(Error::StructureConstant("invariant form is not symmetric".into()));
    }
    check_invariance(alg, &gram)?;

    let det = data.gram_determinant(rd);
    let degenerate_primes = prime_factors(&det);
    let inverted = springer_torsion_report(alg, &PrimeTable::default()).derived_primes;
    let outside: Vec<u64> = degenerate_primes.iter().copied().filter(|p| !inverted.contains(p)).collect();
    if det.is_zero() || !outside.is_empty() {
        return Err(Error::DegenerateForm { primes: outside });
    }
    Ok(KappaForm {
        gram,
        determinant: det.to_string(),
        degenerate_primes,
        inverted_primes: inverted,
    })
}

/// `κ([b_i, b_j], b_k) + κ(b_j, [b_i, b_k]) = 0` for all triples.
fn check_invariance(alg: &ChevalleyAlgebra, gram: &IntMatrix) -> Result<()> {
    let n = alg.dim();
    // Gram is sparse: one nonzero per root row plus the torus block.
    let partners: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| !gram[(i, j)].is_zero())
                .map(|j| (j, i64::try_from(&gram[(i, j)]).expect("small")))
                .collect()
        })
        .collect();
    let pair = |x: &[(usize, i64)], k: usize| -> i64 {
        x.iter()
            .map(|&(i, c)| partners[i].iter().filter(|(j, _)| *j == k).map(|(_, g)| c * g).sum::<i64>())
            .sum()
    };
    for i in 0..n {
        for j in 0..n {
            let ij = alg.bracket_basis(i, j);
            for k in 0..n {
                let lhs = pair(ij, k) + pair(alg.bracket_basis(i, k), j);
                if lhs != 0 {
                    return Err(Error::StructureConstant(format!(
                        "κ is not invariant on ({}, {}, {})",
                        alg.basis_label(i),
                        alg.basis_label(j),
                        alg.basis_label(k)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn factor_of(alg: &ChevalleyAlgebra, b: usize) -> Option<usize> {
    let rd = alg.datum();
    if b < alg.n_roots() {
        return Some(rd.root(b).factor);
    }
    let k = b - alg.n_roots();
    rd.factors
        .iter()
        .position(|f| (f.lattice_offset..f.lattice_offset + f.lattice_rank).contains(&k))
}

/// `tr(ad b_i ∘ ad b_j)`.
pub fn killing_entry(alg: &ChevalleyAlgebra, i: usize, j: usize) -> i64 {
    let mut tr = 0;
    for l in 0..alg.dim() {
        for &(k, c) in alg.bracket_basis(j, l) {
            for &(m, d) in alg.bracket_basis(i, k) {
                if m == l {
                    tr += c * d;
                }
            }
        }
    }
    tr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::linalg::int_det;
    use crate::roots::build_root_datum;

    fn alg(s: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(&build_root_datum(s).unwrap()).unwrap()
    }

    #[test]
    fn gl2_trace_form_is_unimodular() {
        let k = kappa_form(&alg("GL(2)")).unwrap();
        assert_eq!(int_det(&k.gram).magnitude(), &1u32.into());
        assert!(k.degenerate_primes.is_empty());
        for p in [2, 3, 5] {
            assert!(k.is_nondegenerate_at(p));
        }
    }

    #[test]
    fn sl2_trace_form() {
        let a = alg("SC(A1)");
        let k = kappa_form(&a).unwrap();
        // Basis (e, f, h).
        assert_eq!(k.pair(&[1, 0, 0], &[0, 1, 0]), 1);
        assert_eq!(k.pair(&[0, 0, 1], &[0, 0, 1]), 2);
        assert_eq!(k.degenerate_primes, vec![2]);
        assert!(!k.is_nondegenerate_at(2) && k.is_nondegenerate_at(5));
        let (e, f, h) = ([1, 0, 0], [0, 1, 0], [0, 0, 1]);
        assert_eq!(k.pair(&a.bracket(&e, &f), &h) + k.pair(&f, &a.bracket(&e, &h)), 0);
    }

    #[test]
    fn block_determinant_matches_full_determinant() {
        for s in ["SC(A2)", "SC(B2)", "SC(G2)", "GL(3)", "SC(C3)"] {
            let a = alg(s);
            let k = kappa_form(&a).unwrap();
            assert_eq!(int_det(&k.gram).magnitude().to_string(), k.determinant.trim_start_matches('-'), "{s}");
        }
    }

    #[test]
    fn exceptional_killing_forms() {
        kappa_form(&alg("SC(G2)")).unwrap();
        kappa_form(&alg("SC(F4)")).unwrap();
    }
}
