//! Chevalley bases over the integers.
//!
//! Basis order: one `e_α` per root in [`RootDatum::roots`] order (positive
//! roots by height, then their negatives), followed by `h_1, …, h_r`, the
//! basis of `t = X_* ⊗ Z`. Brackets:
//!
//! * `[h, e_α] = ⟨α, h⟩ e_α`
//! * `[e_α, e_{-α}] = α̌`
//! * `[e_α, e_β] = N_{α,β} e_{α+β}` when `α + β` is a root.
//!
//! The height grading puts `e_α` in degree `ht(α)` and `t` in degree 0.

pub mod constants;
pub mod divided;
pub mod springer;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, IntMatrix, Matrix};
use crate::roots::RootDatum;

pub use divided::{divided_power_exp, divided_powers};
pub use springer::{springer_map, springer_torsion_report, DegreeTorsion, SpringerTorsionReport};

/// Sparse integer vector in the Chevalley basis.
pub type Sparse = Vec<(usize, i64)>;

/// A Lie algebra over `Z` with a validated Chevalley basis.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    datum: RootDatum,
    table: Vec<Sparse>,
    degrees: Vec<i64>,
}

/// Triples above this dimension are sampled instead of scanned.
const EXHAUSTIVE_JACOBI_RANK: usize = 4;
const RANDOM_JACOBI_TRIPLES: usize = 10_000;

/// Builds and validates the Chevalley algebra of a root datum.
pub fn build_chevalley_algebra(rd: &RootDatum) -> Result<ChevalleyAlgebra> {
    ChevalleyAlgebra::new(rd.clone())
}

impl ChevalleyAlgebra {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let n = datum.constants_dim();
        let nr = datum.n_roots();
        let consts = constants::structure_constants(&datum)?;
        let mut table = vec![Vec::new(); n * n];
        for a in 0..nr {
            let ra = datum.root(a);
            for b in 0..nr {
                let entry = if b == datum.negative_of(a) {
                    ra.coroot
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (nr + k, c))
                        .collect()
                } else if let Some(s) = datum.sum_index(a, b) {
                    vec![(s, consts[&(a, b)])]
                } else {
                    Vec::new()
                };
                table[a * n + b] = entry;
            }
            for k in 0..datum.rank() {
                let w = ra.weight[k];
                if w != 0 {
                    table[(nr + k) * n + a] = vec![(a, w)];
                    table[a * n + nr + k] = vec![(a, -w)];
                }
            }
        }
        let mut degrees: Vec<i64> = datum.roots().iter().map(|r| r.height).collect();
        degrees.extend(std::iter::repeat_n(0, datum.rank()));
        let alg = ChevalleyAlgebra { datum, table, degrees };
        alg.validate()?;
        divided::check_simple_negatives(&alg)?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let mut s = self.bracket_basis(i, j).to_vec();
                add_scaled(&mut s, self.bracket_basis(j, i), 1);
                if !s.is_empty() {
                    return Err(Error::StructureConstant(format!("[b{i}, b{j}] is not antisymmetric")));
                }
                for &(k, _) in self.bracket_basis(i, j) {
                    if self.degrees[k] != self.degrees[i] + self.degrees[j] {
                        return Err(Error::StructureConstant(format!(
                            "[b{i}, b{j}] leaves degree {}",
                            self.degrees[i] + self.degrees[j]
                        )));
                    }
                }
            }
        }
        if self.datum.semisimple_rank() <= EXHAUSTIVE_JACOBI_RANK {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        self.check_jacobi(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x4a61_636f_6269);
            for _ in 0..RANDOM_JACOBI_TRIPLES {
                let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                self.check_jacobi(i, j, k)?;
            }
        }
        Ok(())
    }

    fn check_jacobi(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let mut s = self.bracket_sparse(&[(i, 1)], self.bracket_basis(j, k));
        add_scaled(&mut s, &self.bracket_sparse(&[(j, 1)], self.bracket_basis(k, i)), 1);
        add_scaled(&mut s, &self.bracket_sparse(&[(k, 1)], self.bracket_basis(i, j)), 1);
        if s.is_empty() {
            Ok(())
        } else {
            Err(Error::StructureConstant(format!("Jacobi identity fails on (b{i}, b{j}, b{k})")))
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Number of root vectors; `h_k` has basis index `n_roots() + k`.
    pub fn n_roots(&self) -> usize {
        self.datum.n_roots()
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn h_index(&self, k: usize) -> usize {
        self.n_roots() + k
    }

    /// Height degree of each basis vector.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn max_height(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Basis indices of degree `i`, in basis order.
    pub fn degree_basis(&self, i: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.degrees[b] == i).collect()
    }

    /// Basis indices of `b = t ⊕ n` (degrees ≤ 0).
    pub fn borel_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.degrees[b] <= 0).collect()
    }

    /// Basis indices of `n` (degrees < 0).
    pub fn nilradical_basis(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.degrees[b] < 0).collect()
    }

    /// `[b_i, b_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_sparse(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Sparse {
        let mut acc = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for &(k, c) in self.bracket_basis(i, j) {
                    *acc.entry(k).or_insert(0) += a * b * c;
                }
            }
        }
        acc.into_iter().filter(|&(_, v)| v != 0).collect()
    }

    /// `[x, y]` for dense integer vectors.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        let n = self.dim();
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                for &(k, c) in &self.table[i * n + j] {
                    out[k] += a * b * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)` over `Z`: column `j` is `[x, b_j]`.
    pub fn ad_int(&self, x: &[i64]) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for j in 0..n {
                for &(k, c) in &self.table[i * n + j] {
                    m[(k, j)] += BigInt::from(a * c);
                }
            }
        }
        m
    }

    /// Matrix of `ad(x)` over a field.
    pub fn ad<F: Field>(&self, field: &F, x: &[F::Elem]) -> AdOperator<F::Elem> {
        let n = self.dim();
        let mut m = Matrix::filled(n, n, field.zero());
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !field.is_zero(a)) {
            for j in 0..n {
                for &(k, c) in &self.table[i * n + j] {
                    let t = field.mul(a, &field.from_i64(c));
                    m[(k, j)] = field.add(&m[(k, j)], &t);
                }
            }
        }
        AdOperator { matrix: m }
    }

    /// `[x, y]` over a field.
    pub fn bracket_in<F: Field>(&self, field: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let n = self.dim();
        let mut out = vec![field.zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !field.is_zero(a)) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !field.is_zero(b)) {
                let ab = field.mul(a, b);
                for &(k, c) in &self.table[i * n + j] {
                    let t = field.mul(&ab, &field.from_i64(c));
                    out[k] = field.add(&out[k], &t);
                }
            }
        }
        out
    }

    /// Unit vector `b_i` over `Z`.
    pub fn basis_vector(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    /// Label of basis vector `i`: `e[α1+α2]` or `h3`.
    pub fn basis_label(&self, i: usize) -> String {
        if i < self.n_roots() {
            format!("e[{}]", self.datum.root_label(i))
        } else {
            format!("h{}", i - self.n_roots() + 1)
        }
    }

    /// The principal nilpotent `e = Σ_{α∈Δ} e_α` and the paired negatives
    /// `e_{-α}`, `α ∈ Δ`, as basis indices.
    pub fn principal_nilpotent(&self) -> PrincipalNilpotent {
        let mut e = vec![0; self.dim()];
        for &s in self.datum.simple_indices() {
            e[s] = 1;
        }
        let negatives = self
            .datum
            .simple_indices()
            .iter()
            .map(|&s| self.datum.negative_of(s))
            .collect();
        PrincipalNilpotent { e, negatives }
    }

    /// `α̌` as a dense vector (supported on the `h` block).
    pub fn coroot_vector(&self, root: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        for (k, &c) in self.datum.root(root).coroot.iter().enumerate() {
            v[self.h_index(k)] = c;
        }
        v
    }
}

/// Output of [`ChevalleyAlgebra::principal_nilpotent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalNilpotent {
    pub e: Vec<i64>,
    /// Basis index of `e_{-α}` for each simple `α`, in simple-root order.
    pub negatives: Vec<usize>,
}

/// Matrix of `ad(x)` on the Chevalley basis.
#[derive(Clone, PartialEq, Eq)]
pub struct AdOperator<T> {
    pub matrix: Matrix<T>,
}

impl<T: std::fmt::Display> std::fmt::Debug for AdOperator<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AdOperator({:?})", self.matrix)
    }
}

impl<T: Clone> AdOperator<T> {
    pub fn apply<F: Field<Elem = T>>(&self, field: &F, v: &[T]) -> Vec<T> {
        crate::linalg::elim::apply(field, &self.matrix, v)
    }
}

fn add_scaled(acc: &mut Sparse, x: &[(usize, i64)], c: i64) {
    for &(k, v) in x {
        match acc.iter_mut().find(|(i, _)| *i == k) {
            Some(slot) => slot.1 += c * v,
            None => acc.push((k, c * v)),
        }
    }
    acc.retain(|&(_, v)| v != 0);
}

impl RootDatum {
    /// Dimension of the Lie algebra: roots plus torus rank.
    pub fn constants_dim(&self) -> usize {
        self.n_roots() + self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_datum;

    fn alg(s: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(&build_root_datum(s).unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let a = alg("SC(A1)");
        assert_eq!(a.dim(), 3);
        // Basis (e, f, h).
        assert_eq!(a.bracket_basis(0, 1), &[(2, 1)]);
        assert_eq!(a.bracket_basis(2, 0), &[(0, 2)]);
        assert_eq!(a.bracket_basis(2, 1), &[(1, -2)]);
    }

    #[test]
    fn gl2_elementary_matrices() {
        let a = alg("GL(2)");
        assert_eq!(a.dim(), 4);
        // [E12, E21] = E11 - E22.
        assert_eq!(a.bracket_basis(0, 1), &[(2, 1), (3, -1)]);
    }

    #[test]
    fn g2_constants_reach_three() {
        let a = alg("SC(G2)");
        assert_eq!(a.dim(), 14);
        let max = (0..a.n_roots())
            .flat_map(|i| (0..a.n_roots()).map(move |j| (i, j)))
            .flat_map(|(i, j)| a.bracket_basis(i, j).iter().filter(|(k, _)| *k < a.n_roots()).map(|(_, c)| c.abs()))
            .max()
            .unwrap();
        assert_eq!(max, 3);
    }

    #[test]
    fn exhaustive_validation_passes() {
        for s in ["SC(A4)", "SC(B3)", "SC(C3)", "SC(D4)", "SC(F4)", "SC(B4)", "SC(C4)", "GL(4)", "SC(A1)*GL(2)"] {
            alg(s);
        }
    }

    #[test]
    fn sampled_validation_passes() {
        alg("SC(E6)");
        alg("SC(D5)");
    }

    /// Flips `N_{α,β}` (and `N_{β,α}`, keeping antisymmetry) for one pair of
    /// positive roots; the Jacobi scan must notice.
    fn mutate(a: &mut ChevalleyAlgebra, scale: i64) {
        let n = a.dim();
        let np = a.datum().n_positive();
        let (i, j) = (0..np)
            .flat_map(|i| (0..np).map(move |j| (i, j)))
            .find(|&(i, j)| !a.table[i * n + j].is_empty())
            .unwrap();
        for (x, y) in [(i, j), (j, i)] {
            for (_, c) in &mut a.table[x * n + y] {
                *c *= scale;
            }
        }
    }

    #[test]
    fn corrupted_constants_fail_jacobi() {
        for s in ["SC(A2)", "SC(B2)", "SC(G2)", "SC(A2)*GL(1)", "GL(3)"] {
            for scale in [-1, 2] {
                let mut a = alg(s);
                mutate(&mut a, scale);
                match a.validate() {
                    Err(Error::StructureConstant(m)) => assert!(m.contains("Jacobi"), "{s}: {m}"),
                    other => panic!("{s} scale {scale}: corruption not detected: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn principal_nilpotent_normalization() {
        for s in ["SC(A2)", "SC(G2)", "GL(3)"] {
            let a = alg(s);
            let pn = a.principal_nilpotent();
            for (k, &neg) in pn.negatives.iter().enumerate() {
                let pos = a.datum().simple_indices()[k];
                let b = a.bracket(&a.basis_vector(pos), &a.basis_vector(neg));
                assert_eq!(b, a.coroot_vector(pos), "{s}");
            }
        }
    }
}
