//! A Chevalley algebra base-changed to a prime field or the rationals.

use crate::chevalley::ChevalleyAlgebra;
use crate::linalg::{elim, Characteristic, Field, Matrix};

/// `g_F = F ⊗ g_Z` for a prime field or `Q`.
#[derive(Clone, Debug)]
pub struct FieldModel<'a, F: Field> {
    pub alg: &'a ChevalleyAlgebra,
    pub field: F,
}

impl<'a, F: Field> FieldModel<'a, F> {
    pub fn new(alg: &'a ChevalleyAlgebra, field: F) -> Self {
        FieldModel { alg, field }
    }

    pub fn characteristic(&self) -> Characteristic {
        self.field.characteristic()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    /// Image of an integral vector.
    pub fn embed(&self, v: &[i64]) -> Vec<F::Elem> {
        v.iter().map(|&x| self.field.from_i64(x)).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Matrix of `ad(x)`: column `j` is `[x, b_j]`.
    pub fn ad(&self, x: &[F::Elem]) -> Matrix<F::Elem> {
        self.alg.ad(&self.field, x).matrix
    }

    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        self.alg.bracket_in(&self.field, x, y)
    }

    pub fn add(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().zip(y).map(|(a, b)| self.field.add(a, b)).collect()
    }

    pub fn scale(&self, c: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
        x.iter().map(|a| self.field.mul(c, a)).collect()
    }

    /// Basis of `g_x = ker ad(x)`.
    pub fn centralizer(&self, x: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        elim::kernel(&self.field, &self.ad(x))
    }
}

/// Basis of the centralizer `g_x`.
pub fn centralizer<F: Field>(model: &FieldModel<'_, F>, x: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    model.centralizer(x)
}
