//! The normalized invariant form on `g`, described on root data.
//!
//! Per factor the form is `k` times the normalized form, with `k = 1` for
//! types A and C (trace form of the defining representation), `k = 2` for B
//! and D (trace form on `so_m`), `k = 2h^∨` for exceptional types (Killing
//! form), and the trace form for `GL(n)`.

use num_bigint::BigInt;
use num_traits::One;

use super::{FactorSpec, RootDatum};
use super::cartan::dual_coxeter_number;
use crate::linalg::{int_det, IntMatrix};

/// Root-space pairings and the restriction to `t` of the invariant form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormData {
    /// `κ(e_α, e_{-α})` for every root index.
    pub root_pairing: Vec<i64>,
    /// `κ` on the `X_*` basis of `t`.
    pub cartan_block: IntMatrix,
}

impl FormData {
    pub fn new(rd: &RootDatum) -> Self {
        let n = rd.rank();
        let mut root_pairing = vec![0; rd.n_roots()];
        let mut block = IntMatrix::zeros(n, n);
        for (fi, info) in rd.factors.iter().enumerate() {
            let scale = factor_scale(&info.spec);
            let long = rd.roots().iter().filter(|r| r.factor == fi).map(|r| r.length).max().unwrap_or(1);
            for (i, r) in rd.roots().iter().enumerate().filter(|(_, r)| r.factor == fi) {
                root_pairing[i] = scale * long / r.length;
            }
            match info.spec {
                FactorSpec::GeneralLinear { n } => {
                    for k in 0..n {
                        let d = info.lattice_offset + k;
                        block[(d, d)] = BigInt::one();
                    }
                }
                FactorSpec::SimplyConnected { .. } => {
                    // κ(α̌_i, α̌_j) = ⟨α_i, α̌_j⟩ κ(e_{α_i}, e_{-α_i}).
                    for a in 0..info.simple_count {
                        for b in 0..info.simple_count {
                            let ia = rd.simple_indices()[info.simple_offset + a];
                            let ib = rd.simple_indices()[info.simple_offset + b];
                            let v = rd.cartan_integer(ia, ib) * root_pairing[ia];
                            block[(info.lattice_offset + a, info.lattice_offset + b)] = BigInt::from(v);
                        }
                    }
                }
            }
        }
        FormData {
            root_pairing,
            cartan_block: block,
        }
    }

    /// Determinant of the Gram matrix on a Chevalley basis, up to sign:
    /// `Π_{α>0} κ(e_α, e_{-α})² · det(cartan_block)`.
    pub fn gram_determinant(&self, rd: &RootDatum) -> BigInt {
        let mut d = int_det(&self.cartan_block);
        for c in &self.root_pairing[..rd.n_positive()] {
            d *= BigInt::from(*c) * BigInt::from(*c);
        }
        d
    }
}

/// Multiple of the normalized form used for a factor.
pub fn factor_scale(spec: &FactorSpec) -> i64 {
    use super::CartanType::*;
    match *spec {
        FactorSpec::GeneralLinear { .. } => 1,
        FactorSpec::SimplyConnected { cartan, rank } => match cartan {
            A | C => 1,
            B | D => 2,
            E | F | G => 2 * dual_coxeter_number(cartan, rank),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::prime_factors;
    use crate::roots::build_root_datum;

    fn det_primes(s: &str) -> Vec<u64> {
        let rd = build_root_datum(s).unwrap();
        prime_factors(&FormData::new(&rd).gram_determinant(&rd))
    }

    #[test]
    fn sl2_trace_form() {
        let rd = build_root_datum("SC(A1)").unwrap();
        let f = FormData::new(&rd);
        assert_eq!(f.root_pairing, vec![1, 1]);
        assert_eq!(f.cartan_block[(0, 0)], BigInt::from(2));
        assert_eq!(det_primes("SC(A1)"), vec![2]);
    }

    #[test]
    fn block_is_symmetric() {
        for s in ["SC(B3)", "SC(C3)", "SC(G2)", "SC(F4)", "SC(D4)"] {
            let rd = build_root_datum(s).unwrap();
            let b = FormData::new(&rd).cartan_block;
            assert_eq!(b, b.transpose(), "{s}");
        }
    }

    #[test]
    fn degenerate_primes_are_not_very_good() {
        assert!(det_primes("GL(3)").is_empty());
        assert_eq!(det_primes("SC(A2)"), vec![3]);
        assert_eq!(det_primes("SC(B2)"), vec![2]);
        assert_eq!(det_primes("SC(G2)"), vec![2, 3]);
        assert_eq!(det_primes("SC(F4)"), vec![2, 3]);
        assert_eq!(det_primes("SC(E8)"), vec![2, 3, 5]);
    }
}
