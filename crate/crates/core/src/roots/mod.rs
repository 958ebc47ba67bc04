//! Root data for products of split simply connected quasi-simple groups and
//! general linear groups.
//!
//! Lattices are global: `X*` is the direct sum of the factors' character
//! lattices, in factor order. For a simply connected factor the basis of
//! `X*` is the fundamental weights and the dual basis of `X_*` is the simple
//! coroots. For `GL(n)` both are the standard basis of `Z^n`. The pairing
//! `⟨λ, μ⟩` of a character and a cocharacter is the dot product of
//! coordinates.

pub mod cartan;
pub mod conditions;
pub mod form;
pub mod spec;
pub mod weyl;

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use cartan::{positive_root_count, DynkinData};
pub use conditions::{condition_check, ConditionProfile, ConditionWitness, PrimeTable};
pub use spec::{CartanType, FactorSpec, GroupSpec};
pub use weyl::{weyl_elements, WeylElement, DEFAULT_WEYL_CAP};

/// A root together with its coroot and combinatorial data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    /// Coordinates in `X*`.
    pub weight: Vec<i64>,
    /// Coordinates of the coroot in `X_*`.
    pub coroot: Vec<i64>,
    /// Coefficients over all simple roots of the datum.
    pub simple_coeffs: Vec<i64>,
    /// Signed height.
    pub height: i64,
    /// `|α|²`, with short roots of each factor of length one.
    pub length: i64,
    /// Index of the factor the root belongs to.
    pub factor: usize,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.height > 0
    }
}

/// Placement of one factor inside the global lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorInfo {
    pub spec: FactorSpec,
    pub lattice_offset: usize,
    pub lattice_rank: usize,
    pub simple_offset: usize,
    pub simple_count: usize,
    /// Dynkin data for simply connected factors.
    pub dynkin: Option<DynkinData>,
}

/// Root datum `(X*, Φ, X_*, Φ̌)` with a fixed base.
///
/// `roots` lists the positive roots by increasing height, then the negative
/// roots in the same order, so `roots[i + n_positive] = -roots[i]`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub spec: GroupSpec,
    pub factors: Vec<FactorInfo>,
    rank: usize,
    roots: Vec<Root>,
    n_positive: usize,
    simple: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

/// Parses a group spec and builds its root datum.
pub fn build_root_datum(spec: &str) -> Result<RootDatum> {
    RootDatum::new(GroupSpec::parse(spec)?)
}

impl RootDatum {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let mut factors = Vec::new();
        let (mut lat, mut simp) = (0, 0);
        for f in &spec.factors {
            let dynkin = match *f {
                FactorSpec::SimplyConnected { cartan, rank } => Some(DynkinData::new(cartan, rank)),
                FactorSpec::GeneralLinear { .. } => None,
            };
            factors.push(FactorInfo {
                spec: *f,
                lattice_offset: lat,
                lattice_rank: f.torus_rank(),
                simple_offset: simp,
                simple_count: f.semisimple_rank(),
                dynkin,
            });
            lat += f.torus_rank();
            simp += f.semisimple_rank();
        }
        let (rank, ell) = (lat, simp);

        // Positive roots, generated per factor and then merged by height.
        let mut positives: Vec<Root> = Vec::new();
        for (fi, info) in factors.iter().enumerate() {
            let local = match &info.dynkin {
                Some(d) => sc_positive_roots(d),
                None => gl_positive_roots(info.spec.torus_rank()),
            };
            let expected = match info.spec {
                FactorSpec::SimplyConnected { cartan, rank } => positive_root_count(cartan, rank),
                FactorSpec::GeneralLinear { n } => n * (n - 1) / 2,
            };
            if local.len() != expected {
                return Err(Error::StructureConstant(format!(
                    "{} has {} positive roots, expected {expected}",
                    info.spec,
                    local.len()
                )));
            }
            for lr in local {
                let mut root = Root {
                    weight: vec![0; rank],
                    coroot: vec![0; rank],
                    simple_coeffs: vec![0; ell],
                    height: lr.coeffs.iter().sum(),
                    length: lr.length,
                    factor: fi,
                };
                root.weight[info.lattice_offset..info.lattice_offset + info.lattice_rank]
                    .copy_from_slice(&lr.weight);
                root.coroot[info.lattice_offset..info.lattice_offset + info.lattice_rank]
                    .copy_from_slice(&lr.coroot);
                root.simple_coeffs[info.simple_offset..info.simple_offset + info.simple_count]
                    .copy_from_slice(&lr.coeffs);
                positives.push(root);
            }
        }
        positives.sort_by_key(|r| r.height);
        let n_positive = positives.len();
        let negatives: Vec<Root> = positives
            .iter()
            .map(|r| Root {
                weight: r.weight.iter().map(|v| -v).collect(),
                coroot: r.coroot.iter().map(|v| -v).collect(),
                simple_coeffs: r.simple_coeffs.iter().map(|v| -v).collect(),
                height: -r.height,
                length: r.length,
                factor: r.factor,
            })
            .collect();
        let mut roots = positives;
        roots.extend(negatives);

        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.simple_coeffs.clone(), i)).collect();
        let simple: Vec<usize> = (0..ell)
            .map(|k| {
                let mut c = vec![0; ell];
                c[k] = 1;
                index[&c]
            })
            .collect();
        let cartan = (0..ell)
            .map(|i| {
                (0..ell)
                    .map(|j| pair(&roots[simple[j]].weight, &roots[simple[i]].coroot))
                    .collect()
            })
            .collect();

        let rd = RootDatum {
            spec,
            factors,
            rank,
            roots,
            n_positive,
            simple,
            cartan,
            index,
        };
        rd.validate()?;
        Ok(rd)
    }

    fn validate(&self) -> Result<()> {
        for r in &self.roots {
            if pair(&r.weight, &r.coroot) != 2 {
                return Err(Error::StructureConstant(format!(
                    "⟨α, α̌⟩ ≠ 2 for root with coefficients {:?}",
                    r.simple_coeffs
                )));
            }
        }
        for info in &self.factors {
            if let Some(d) = &info.dynkin {
                let expected = d.cartan_matrix();
                for (i, row) in expected.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        if self.cartan[info.simple_offset + i][info.simple_offset + j] != v {
                            return Err(Error::StructureConstant(format!(
                                "Cartan matrix of {} does not round-trip",
                                info.spec
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Rank of `X*` (equal to the rank of `X_*`).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple.len()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn n_positive(&self) -> usize {
        self.n_positive
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_positive]
    }

    /// Indices into [`roots`](Self::roots) of the simple roots, in Bourbaki
    /// order within each factor.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    /// `cartan[i][j] = ⟨α_j, α̌_i⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Index of the root with the given simple-root coefficients.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of `-α`.
    pub fn negative_of(&self, i: usize) -> usize {
        if i < self.n_positive {
            i + self.n_positive
        } else {
            i - self.n_positive
        }
    }

    /// Index of `α + β` if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let c: Vec<i64> = self.roots[a]
            .simple_coeffs
            .iter()
            .zip(&self.roots[b].simple_coeffs)
            .map(|(x, y)| x + y)
            .collect();
        self.root_index(&c)
    }

    /// `⟨α_a, α̌_b⟩`.
    pub fn cartan_integer(&self, a: usize, b: usize) -> i64 {
        pair(&self.roots[a].weight, &self.roots[b].coroot)
    }

    /// `λ̌∘`: the sum of the positive coroots, in `X_*` coordinates.
    pub fn rho_check_doubled(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for r in self.positive_roots() {
            for (a, b) in v.iter_mut().zip(&r.coroot) {
                *a += b;
            }
        }
        v
    }

    /// Simple roots as the columns of an `rank × ℓ` matrix over `X*`.
    pub fn simple_root_matrix(&self) -> IntMatrix {
        self.column_matrix(|r| &r.weight)
    }

    /// Simple coroots as the columns of an `rank × ℓ` matrix over `X_*`.
    pub fn simple_coroot_matrix(&self) -> IntMatrix {
        self.column_matrix(|r| &r.coroot)
    }

    fn column_matrix(&self, f: impl Fn(&Root) -> &Vec<i64>) -> IntMatrix {
        let ell = self.simple.len();
        IntMatrix::from_fn(self.rank, ell, |i, j| BigInt::from(f(&self.roots[self.simple[j]])[i]))
    }

    /// Highest root among the short roots of a single irreducible factor.
    pub fn highest_short_root(&self, factor: usize) -> usize {
        let min_len = self.roots.iter().filter(|r| r.factor == factor).map(|r| r.length).min();
        (0..self.n_positive)
            .filter(|&i| self.roots[i].factor == factor && Some(self.roots[i].length) == min_len)
            .max_by_key(|&i| self.roots[i].height)
            .expect("factor has roots")
    }

    /// Human-readable label of a root, e.g. `α1+2α2` or `-(α1+α2)`.
    pub fn root_label(&self, i: usize) -> String {
        let r = &self.roots[i];
        let sign = if r.height < 0 { -1 } else { 1 };
        let mut terms = Vec::new();
        for (k, &c) in r.simple_coeffs.iter().enumerate() {
            let c = c * sign;
            match c {
                0 => {}
                1 => terms.push(format!("α{}", k + 1)),
                _ => terms.push(format!("{c}α{}", k + 1)),
            }
        }
        let body = terms.join("+");
        if sign < 0 {
            if terms.len() == 1 {
                format!("-{body}")
            } else {
                format!("-({body})")
            }
        } else {
            body
        }
    }
}

/// `⟨λ, μ⟩` for a character `λ` and a cocharacter `μ`.
pub fn pair(lambda: &[i64], mu: &[i64]) -> i64 {
    lambda.iter().zip(mu).map(|(a, b)| a * b).sum()
}

struct LocalRoot {
    coeffs: Vec<i64>,
    weight: Vec<i64>,
    coroot: Vec<i64>,
    length: i64,
}

/// Positive roots of an irreducible system via root strings.
fn sc_positive_roots(d: &DynkinData) -> Vec<LocalRoot> {
    let ell = d.lengths.len();
    let cartan = d.cartan_matrix();
    let gram = d.doubled_gram();
    let mut list: Vec<Vec<i64>> = (0..ell)
        .map(|k| {
            let mut c = vec![0; ell];
            c[k] = 1;
            c
        })
        .collect();
    let mut seen: std::collections::HashSet<Vec<i64>> = list.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < list.len() {
        let beta = list[cursor].clone();
        cursor += 1;
        for i in 0..ell {
            // β - kα_i ∈ Φ for k ≤ p; β + α_i ∈ Φ iff p - ⟨β, α̌_i⟩ > 0.
            let mut p = 0;
            loop {
                let mut c = beta.clone();
                c[i] -= p + 1;
                if seen.contains(&c) {
                    p += 1;
                } else {
                    break;
                }
            }
            let pairing: i64 = (0..ell).map(|j| beta[j] * cartan[i][j]).sum();
            if p - pairing > 0 {
                let mut c = beta.clone();
                c[i] += 1;
                if seen.insert(c.clone()) {
                    list.push(c);
                }
            }
        }
    }
    list.sort_by_key(|c| c.iter().sum::<i64>());
    list.into_iter()
        .map(|c| {
            let doubled: i64 = (0..ell).map(|i| (0..ell).map(|j| c[i] * c[j] * gram[i][j]).sum::<i64>()).sum();
            let length = doubled / 2;
            let weight = (0..ell).map(|k| (0..ell).map(|j| c[j] * cartan[k][j]).sum()).collect();
            let coroot = (0..ell).map(|i| c[i] * d.lengths[i] / length).collect();
            LocalRoot { coeffs: c, weight, coroot, length }
        })
        .collect()
}

/// Positive roots `ε_i - ε_j` (`i < j`) of `GL(n)`.
fn gl_positive_roots(n: usize) -> Vec<LocalRoot> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut coeffs = vec![0; n - 1];
            for c in coeffs.iter_mut().take(j).skip(i) {
                *c = 1;
            }
            let mut weight = vec![0; n];
            weight[i] = 1;
            weight[j] = -1;
            out.push(LocalRoot { coeffs, coroot: weight.clone(), weight, length: 1 });
        }
    }
    out.sort_by_key(|r| r.coeffs.iter().sum::<i64>());
    out
}

/// Height multiset of the positive roots and the invariant degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightsAndExponents {
    /// Heights of the positive roots, ascending.
    pub heights: Vec<i64>,
    /// Degrees `d_i = m_i + 1` per factor, ascending within each factor.
    pub degrees_per_factor: Vec<Vec<i64>>,
    /// All degrees, ascending.
    pub degrees: Vec<i64>,
}

/// Heights of positive roots and the degrees of the basic invariants.
///
/// Exponents are the dual partition of the height multiset; `GL(n)` factors
/// add the degree-one invariant of the center.
pub fn heights_and_exponents(rd: &RootDatum) -> HeightsAndExponents {
    let mut heights: Vec<i64> = rd.positive_roots().iter().map(|r| r.height).collect();
    heights.sort_unstable();
    let mut degrees_per_factor = Vec::new();
    for (fi, info) in rd.factors.iter().enumerate() {
        let hs: Vec<i64> = rd.positive_roots().iter().filter(|r| r.factor == fi).map(|r| r.height).collect();
        let max_h = hs.iter().copied().max().unwrap_or(0);
        let counts: Vec<usize> = (1..=max_h).map(|h| hs.iter().filter(|&&x| x == h).count()).collect();
        let n_exponents = counts.first().copied().unwrap_or(0);
        let mut degrees: Vec<i64> = (1..=n_exponents)
            .map(|j| counts.iter().filter(|&&c| c >= j).count() as i64 + 1)
            .collect();
        degrees.extend(std::iter::repeat_n(1, info.lattice_rank - n_exponents));
        degrees.sort_unstable();
        degrees_per_factor.push(degrees);
    }
    let mut degrees: Vec<i64> = degrees_per_factor.iter().flatten().copied().collect();
    degrees.sort_unstable();
    HeightsAndExponents {
        heights,
        degrees_per_factor,
        degrees,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        build_root_datum(s).unwrap()
    }

    #[test]
    fn sl2_weight_lattice() {
        let a1 = rd("SC(A1)");
        assert_eq!(a1.n_roots(), 2);
        assert_eq!(a1.rank(), 1);
        assert_eq!(a1.root(0).weight, vec![2]);
        assert_eq!(a1.root(0).coroot, vec![1]);
    }

    #[test]
    fn gl2_roots() {
        let g = rd("GL(2)");
        assert_eq!(g.root(0).weight, vec![1, -1]);
        assert_eq!(g.root(1).weight, vec![-1, 1]);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.semisimple_rank(), 1);
        assert_eq!(rd("GL(1)").n_roots(), 0);
    }

    #[test]
    fn g2_lengths() {
        let g = rd("SC(G2)");
        assert_eq!(g.n_roots(), 12);
        assert_eq!(g.roots().iter().filter(|r| r.length == 3).count(), 6);
        assert_eq!(g.roots().iter().filter(|r| r.length == 1).count(), 6);
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("SC(B3)", 18), ("SC(C3)", 18), ("SC(D4)", 24), ("SC(F4)", 48), ("SC(E6)", 72), ("SC(E8)", 240)] {
            assert_eq!(rd(s).n_roots(), n, "{s}");
        }
    }

    #[test]
    fn lambda_check_pairs_to_twice_height() {
        for s in ["SC(A3)", "SC(B2)", "SC(G2)", "SC(F4)", "GL(3)*SC(C3)"] {
            let d = rd(s);
            let lc = d.rho_check_doubled();
            for r in d.roots() {
                assert_eq!(pair(&r.weight, &lc), 2 * r.height, "{s}");
            }
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(heights_and_exponents(&rd("SC(A1)")).degrees, vec![2]);
        assert_eq!(heights_and_exponents(&rd("GL(3)")).degrees, vec![1, 2, 3]);
        let g2 = heights_and_exponents(&rd("SC(G2)"));
        assert_eq!(g2.heights, vec![1, 1, 2, 3, 4, 5]);
        assert_eq!(g2.degrees, vec![2, 6]);
        assert_eq!(heights_and_exponents(&rd("SC(E8)")).degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
        assert_eq!(heights_and_exponents(&rd("SC(F4)")).degrees, vec![2, 6, 8, 12]);
        assert_eq!(heights_and_exponents(&rd("SC(D4)")).degrees, vec![2, 4, 4, 6]);
    }

    #[test]
    fn labels() {
        let g = rd("SC(G2)");
        let top = g.n_positive() - 1;
        assert_eq!(g.root_label(top), "3α1+2α2");
        assert_eq!(g.root_label(g.negative_of(top)), "-(3α1+2α2)");
        assert_eq!(g.root_label(g.simple_indices()[0]), "α1");
    }

    #[test]
    fn highest_short_roots() {
        let g = rd("SC(G2)");
        assert_eq!(g.root_label(g.highest_short_root(0)), "2α1+α2");
        let a = rd("SC(A2)");
        assert_eq!(a.root_label(a.highest_short_root(0)), "α1+α2");
    }
}
