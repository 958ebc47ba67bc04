//! Sparse polynomials in a few variables, scalar- and vector-valued.

use std::collections::BTreeMap;

use crate::linalg::{Field, Matrix};

/// Exponent vector.
pub type Monomial = Vec<u32>;

pub fn total_degree(m: &Monomial) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All monomials in `vars` variables of total degree at most `degree`,
/// in graded lexicographic order.
pub fn monomials_up_to(vars: usize, degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=degree {
        let mut current = vec![0u32; vars];
        fill(&mut current, 0, d as u32, &mut out);
    }
    out
}

fn fill(current: &mut Monomial, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 >= current.len() {
        if let Some(last) = current.last_mut() {
            *last = left;
            out.push(current.clone());
        } else if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=left).rev() {
        current[pos] = e;
        fill(current, pos + 1, left - e, out);
    }
    current[pos] = 0;
}

/// Scalar polynomial: monomial to nonzero coefficient.
pub type ScalarPoly<E> = BTreeMap<Monomial, E>;

/// The linear form `Σ_j coeffs[j] c_j`.
pub fn linear<F: Field>(field: &F, coeffs: &[F::Elem]) -> ScalarPoly<F::Elem> {
    let vars = coeffs.len();
    let mut out = BTreeMap::new();
    for (j, c) in coeffs.iter().enumerate() {
        if !field.is_zero(c) {
            let mut m = vec![0; vars];
            m[j] = 1;
            out.insert(m, c.clone());
        }
    }
    out
}

pub fn scalar_one<F: Field>(field: &F, vars: usize) -> ScalarPoly<F::Elem> {
    BTreeMap::from([(vec![0; vars], field.one())])
}

pub fn scalar_mul<F: Field>(field: &F, a: &ScalarPoly<F::Elem>, b: &ScalarPoly<F::Elem>) -> ScalarPoly<F::Elem> {
    let mut out: ScalarPoly<F::Elem> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = mono_mul(ma, mb);
            let t = field.mul(ca, cb);
            let slot = out.entry(m).or_insert_with(|| field.zero());
            *slot = field.add(slot, &t);
        }
    }
    out.retain(|_, c| !field.is_zero(c));
    out
}

pub fn scalar_add<F: Field>(field: &F, a: &ScalarPoly<F::Elem>, b: &ScalarPoly<F::Elem>) -> ScalarPoly<F::Elem> {
    let mut out = a.clone();
    for (m, c) in b {
        let slot = out.entry(m.clone()).or_insert_with(|| field.zero());
        *slot = field.add(slot, c);
    }
    out.retain(|_, c| !field.is_zero(c));
    out
}

/// `V`-valued polynomial: monomial to nonzero coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorPoly<E> {
    pub dim: usize,
    pub terms: BTreeMap<Monomial, Vec<E>>,
}

impl<E: Clone + PartialEq> VectorPoly<E> {
    pub fn zero(dim: usize) -> Self {
        VectorPoly { dim, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(total_degree).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<E: Clone + PartialEq> VectorPoly<E> {
    /// The function `c ↦ c^m · b_i`.
    pub fn basis_function<F: Field<Elem = E>>(field: &F, dim: usize, m: Monomial, i: usize) -> Self {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        VectorPoly { dim, terms: BTreeMap::from([(m, v)]) }
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, m: Monomial, v: &[E]) {
        let slot = self.terms.entry(m.clone()).or_insert_with(|| vec![field.zero(); v.len()]);
        for (s, x) in slot.iter_mut().zip(v) {
            *s = field.add(s, x);
        }
        if slot.iter().all(|x| field.is_zero(x)) {
            self.terms.remove(&m);
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(field, m.clone(), v);
        }
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            let neg: Vec<E> = v.iter().map(|x| field.neg(x)).collect();
            out.add_term(field, m.clone(), &neg);
        }
        out
    }

    /// `p · f` for a scalar polynomial `p`.
    pub fn scale<F: Field<Elem = E>>(&self, field: &F, p: &ScalarPoly<E>) -> Self {
        let mut out = VectorPoly::zero(self.dim);
        for (mp, cp) in p {
            for (mf, v) in &self.terms {
                let w: Vec<E> = v.iter().map(|x| field.mul(cp, x)).collect();
                out.add_term(field, mono_mul(mp, mf), &w);
            }
        }
        out
    }

    /// Applies a constant matrix to every coefficient vector.
    pub fn map_matrix<F: Field<Elem = E>>(&self, field: &F, m: &Matrix<E>) -> Self {
        let mut out = VectorPoly::zero(m.rows());
        for (mono, v) in &self.terms {
            out.add_term(field, mono.clone(), &crate::linalg::elim::apply(field, m, v));
        }
        out
    }

    /// `c ↦ f(L(c))` where `forms[k]` is the `k`-th coordinate of `L(c)`.
    pub fn substitute<F: Field<Elem = E>>(&self, field: &F, forms: &[ScalarPoly<E>], out_vars: usize) -> Self {
        let mut powers: Vec<Vec<ScalarPoly<E>>> = forms.iter().map(|_| vec![scalar_one(field, out_vars)]).collect();
        let mut out = VectorPoly::zero(self.dim);
        for (mono, v) in &self.terms {
            let mut p = scalar_one(field, out_vars);
            for (k, &e) in mono.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = scalar_mul(field, powers[k].last().expect("nonempty"), &forms[k]);
                    powers[k].push(next);
                }
                p = scalar_mul(field, &p, &powers[k][e as usize]);
            }
            for (m, c) in &p {
                let w: Vec<E> = v.iter().map(|x| field.mul(c, x)).collect();
                out.add_term(field, m.clone(), &w);
            }
        }
        out
    }

    /// Coefficient of `b_i` at monomial `m`.
    pub fn coefficient<F: Field<Elem = E>>(&self, field: &F, m: &Monomial, i: usize) -> E {
        self.terms.get(m).map_or_else(|| field.zero(), |v| v[i].clone())
    }
}
