//! Dynkin data for the irreducible types: simple root lengths and bonds.

use super::spec::CartanType;

/// Simple-root data of an irreducible root system in Bourbaki numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinData {
    /// `|α_i|²`, normalized so that short roots have length one.
    pub lengths: Vec<i64>,
    /// Bonds as 0-based pairs.
    pub edges: Vec<(usize, usize)>,
}

impl DynkinData {
    pub fn new(cartan: CartanType, rank: usize) -> Self {
        let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match cartan {
            CartanType::A => DynkinData { lengths: vec![1; rank], edges: chain(rank) },
            CartanType::B => {
                let mut lengths = vec![2; rank];
                lengths[rank - 1] = 1;
                DynkinData { lengths, edges: chain(rank) }
            }
            CartanType::C => {
                let mut lengths = vec![1; rank];
                lengths[rank - 1] = 2;
                DynkinData { lengths, edges: chain(rank) }
            }
            CartanType::D => {
                let mut edges = chain(rank - 1);
                edges.push((rank - 3, rank - 1));
                DynkinData { lengths: vec![1; rank], edges }
            }
            CartanType::E => {
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((2..rank - 1).map(|i| (i, i + 1)));
                DynkinData { lengths: vec![1; rank], edges }
            }
            CartanType::F => DynkinData { lengths: vec![2, 2, 1, 1], edges: chain(4) },
            CartanType::G => DynkinData { lengths: vec![1, 3], edges: vec![(0, 1)] },
        }
    }

    /// Twice the symmetric form on simple roots: `2(α_i, α_j)`.
    pub fn doubled_gram(&self) -> Vec<Vec<i64>> {
        let n = self.lengths.len();
        let mut g = vec![vec![0; n]; n];
        for i in 0..n {
            g[i][i] = 2 * self.lengths[i];
        }
        for &(i, j) in &self.edges {
            let v = -self.lengths[i].max(self.lengths[j]);
            g[i][j] = v;
            g[j][i] = v;
        }
        g
    }

    /// `cartan[i][j] = ⟨α_j, α̌_i⟩ = 2(α_i, α_j) / (α_i, α_i)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let g = self.doubled_gram();
        g.iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&v| v / self.lengths[i]).collect())
            .collect()
    }
}

/// Order of the Weyl group of an irreducible type, if it fits in `u128`.
pub fn weyl_order(cartan: CartanType, rank: usize) -> Option<u128> {
    let fact = |n: usize| (1..=n as u128).try_fold(1u128, |a, b| a.checked_mul(b));
    let pow2 = |n: usize| 1u128.checked_shl(n as u32);
    match cartan {
        CartanType::A => fact(rank + 1),
        CartanType::B | CartanType::C => fact(rank)?.checked_mul(pow2(rank)?),
        CartanType::D => fact(rank)?.checked_mul(pow2(rank - 1)?),
        CartanType::E => Some(match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        }),
        CartanType::F => Some(1152),
        CartanType::G => Some(12),
    }
}

/// Number of positive roots of an irreducible type.
pub fn positive_root_count(cartan: CartanType, rank: usize) -> usize {
    match cartan {
        CartanType::A => rank * (rank + 1) / 2,
        CartanType::B | CartanType::C => rank * rank,
        CartanType::D => rank * (rank - 1),
        CartanType::E => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        CartanType::F => 24,
        CartanType::G => 6,
    }
}

/// Dual Coxeter number.
pub fn dual_coxeter_number(cartan: CartanType, rank: usize) -> i64 {
    let n = rank as i64;
    match cartan {
        CartanType::A => n + 1,
        CartanType::B => 2 * n - 1,
        CartanType::C => n + 1,
        CartanType::D => 2 * n - 2,
        CartanType::E => match rank {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        CartanType::F => 9,
        CartanType::G => 4,
    }
}
