//! Weyl group of a root datum, acting on `X_*`.

use std::collections::HashMap;

use super::cartan::weyl_order;
use super::{FactorSpec, RootDatum};
use crate::error::{Error, Result};

/// Default enumeration cap: the order of `W(E6)`.
pub const DEFAULT_WEYL_CAP: u128 = 51_840;

/// A Weyl group element as an integer matrix on `X_*` coordinates, with a
/// word in the simple reflections producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Row-major `rank × rank` matrix acting on column vectors.
    pub matrix: Vec<i64>,
    /// Simple reflection indices, applied right to left.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = v.len();
        (0..n).map(|i| (0..n).map(|j| self.matrix[i * n + j] * v[j]).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

/// Order of `W`, or `None` if it overflows `u128`.
pub fn weyl_group_order(rd: &RootDatum) -> Option<u128> {
    rd.factors.iter().try_fold(1u128, |acc, f| {
        let o = match f.spec {
            FactorSpec::SimplyConnected { cartan, rank } => weyl_order(cartan, rank)?,
            FactorSpec::GeneralLinear { n } => (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b))?,
        };
        acc.checked_mul(o)
    })
}

/// `s_i` on `X_*`: `λ ↦ λ - ⟨α_i, λ⟩ α̌_i`, row-major.
pub fn simple_reflection_cochar(rd: &RootDatum, i: usize) -> Vec<i64> {
    let root = rd.root(rd.simple_indices()[i]);
    let n = rd.rank();
    let mut m = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] = i64::from(r == c) - root.coroot[r] * root.weight[c];
        }
    }
    m
}

/// `s_i` on `X*`: `μ ↦ μ - ⟨μ, α̌_i⟩ α_i`, row-major.
pub fn simple_reflection_char(rd: &RootDatum, i: usize) -> Vec<i64> {
    let root = rd.root(rd.simple_indices()[i]);
    let n = rd.rank();
    let mut m = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] = i64::from(r == c) - root.weight[r] * root.coroot[c];
        }
    }
    m
}

fn matmul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += x * b[k * n + j];
            }
        }
    }
    out
}

/// All elements of `W` by breadth-first closure under simple reflections.
///
/// The identity comes first; words are shortlex-minimal in the order found.
pub fn weyl_elements(rd: &RootDatum, cap: u128) -> Result<Vec<WeylElement>> {
    let order = weyl_group_order(rd).unwrap_or(u128::MAX);
    if order > cap {
        return Err(Error::WeylTooLarge { order, cap });
    }
    let n = rd.rank();
    let gens: Vec<Vec<i64>> = (0..rd.semisimple_rank()).map(|i| simple_reflection_cochar(rd, i)).collect();
    let mut identity = vec![0; n * n];
    for i in 0..n {
        identity[i * n + i] = 1;
    }
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut out = vec![WeylElement { matrix: identity, word: Vec::new() }];
    let mut cursor = 0;
    while cursor < out.len() {
        for (i, g) in gens.iter().enumerate() {
            let m = matmul(g, &out[cursor].matrix, n);
            if seen.insert(m.clone(), ()).is_none() {
                let mut word = vec![i];
                word.extend_from_slice(&out[cursor].word);
                out.push(WeylElement { matrix: m, word });
            }
        }
        cursor += 1;
    }
    if out.len() as u128 != order {
        return Err(Error::StructureConstant(format!(
            "Weyl closure produced {} elements, expected {order}",
            out.len()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_datum;

    #[test]
    fn small_orders() {
        for (s, n) in [("SC(A1)", 2), ("SC(A2)", 6), ("SC(G2)", 12), ("SC(B3)", 48), ("GL(3)", 6), ("SC(A1)*GL(2)", 4)] {
            let rd = build_root_datum(s).unwrap();
            assert_eq!(weyl_elements(&rd, DEFAULT_WEYL_CAP).unwrap().len(), n, "{s}");
        }
    }

    #[test]
    fn e7_is_too_large() {
        let rd = build_root_datum("SC(E7)").unwrap();
        assert!(matches!(weyl_elements(&rd, DEFAULT_WEYL_CAP), Err(Error::WeylTooLarge { .. })));
    }

    #[test]
    fn reflections_permute_roots() {
        let rd = build_root_datum("SC(F4)").unwrap();
        let coroots: std::collections::HashSet<Vec<i64>> = rd.roots().iter().map(|r| r.coroot.clone()).collect();
        for w in weyl_elements(&rd, DEFAULT_WEYL_CAP).unwrap().iter().step_by(37) {
            for r in rd.roots() {
                assert!(coroots.contains(&w.apply(&r.coroot)));
            }
        }
    }
}
