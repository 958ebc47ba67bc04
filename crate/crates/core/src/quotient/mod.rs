//! The adjoint quotient at desk scale: invariants of `gl_n`, the chart
//! `S → t/W` for `GL(n)`, and the invariant form.

pub mod kappa;

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::chevalley::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{elim, Field, Fp, Matrix};
use crate::report::{task_seed, CheckEntry, Status};
use crate::roots::FactorSpec;
use crate::slice::{FieldModel, Slice};

pub use kappa::{kappa_form, KappaForm};

/// Largest `n` and `q` for the exhaustive chart audit.
pub const CHART_MAX_N: usize = 4;
pub const CHART_MAX_Q: u64 = 11;

/// Coefficients of `det(t I - x) = t^n + a_1 t^{n-1} + … + a_n`, as
/// `[1, a_1, …, a_n]`, by Berkowitz's division-free recursion.
pub fn char_poly<F: Field>(field: &F, x: &Matrix<F::Elem>) -> Vec<F::Elem> {
    assert!(x.is_square());
    let n = x.rows();
    let mut coeffs = vec![field.one()];
    for r in 0..n {
        // Leading (r+1)×(r+1) block: M = x[..r, ..r], row R, column S,
        // corner a = x[r][r].
        let a = x[(r, r)].clone();
        let row: Vec<F::Elem> = (0..r).map(|j| x[(r, j)].clone()).collect();
        let mut v: Vec<F::Elem> = (0..r).map(|i| x[(i, r)].clone()).collect();
        // Toeplitz column (1, -a, -R S, -R M S, …, -R M^{r-1} S).
        let mut col = vec![field.one(), field.neg(&a)];
        for _ in 0..r {
            let rs = row.iter().zip(&v).fold(field.zero(), |acc, (p, q)| field.add(&acc, &field.mul(p, q)));
            col.push(field.neg(&rs));
            v = (0..r)
                .map(|i| (0..r).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&x[(i, j)], &v[j]))))
                .collect();
        }
        let mut next = vec![field.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, c) in coeffs.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    *slot = field.add(slot, &field.mul(&col[i - j], c));
                }
            }
        }
        coeffs = next;
    }
    coeffs
}

/// `(c_1, …, c_n)` with `c_i` the trace of the `i`-th exterior power of `x`,
/// i.e. `(-1)^i a_i`.
pub fn invariant_map_gl<F: Field>(field: &F, x: &Matrix<F::Elem>) -> Vec<F::Elem> {
    char_poly(field, x)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| if i % 2 == 0 { a } else { field.neg(&a) })
        .collect()
}

/// Elementary symmetric polynomials `e_1, …, e_n` of a list.
pub fn elementary_symmetric<F: Field>(field: &F, xs: &[F::Elem]) -> Vec<F::Elem> {
    let mut e = vec![field.one()];
    for x in xs {
        let mut next = e.clone();
        next.push(field.zero());
        for k in 1..next.len() {
            next[k] = field.add(&e.get(k).cloned().unwrap_or_else(|| field.zero()), &field.mul(x, &e[k - 1]));
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}

/// Size `n` of a `GL(n)` algebra, or an error for anything else.
pub fn gl_size(alg: &ChevalleyAlgebra) -> Result<usize> {
    match alg.datum().spec.factors.as_slice() {
        [FactorSpec::GeneralLinear { n }] => Ok(*n),
        _ => Err(Error::UnsupportedGroup(format!("{} is not GL(n)", alg.datum().spec))),
    }
}

/// The `n × n` matrix of an element of `gl_n` given in the Chevalley basis.
pub fn gl_matrix<F: Field>(field: &F, alg: &ChevalleyAlgebra, v: &[F::Elem]) -> Result<Matrix<F::Elem>> {
    let n = gl_size(alg)?;
    let mut m = Matrix::filled(n, n, field.zero());
    for (a, root) in alg.datum().roots().iter().enumerate() {
        let i = root.weight.iter().position(|&w| w == 1).expect("GL root");
        let j = root.weight.iter().position(|&w| w == -1).expect("GL root");
        m[(i, j)] = v[a].clone();
    }
    for k in 0..n {
        m[(k, k)] = v[alg.h_index(k)].clone();
    }
    Ok(m)
}

/// Inverse of [`gl_matrix`].
pub fn gl_vector<F: Field>(alg: &ChevalleyAlgebra, m: &Matrix<F::Elem>) -> Result<Vec<F::Elem>> {
    let n = gl_size(alg)?;
    let mut v = Vec::with_capacity(alg.dim());
    for root in alg.datum().roots() {
        let i = root.weight.iter().position(|&w| w == 1).expect("GL root");
        let j = root.weight.iter().position(|&w| w == -1).expect("GL root");
        v.push(m[(i, j)].clone());
    }
    for k in 0..n {
        v.push(m[(k, k)].clone());
    }
    Ok(v)
}

/// Outcome of the exhaustive chart audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartAudit {
    pub n: usize,
    pub q: u64,
    pub slice_points: u64,
    pub distinct_images: u64,
    pub target_points: u64,
    pub pass: bool,
}

/// Enumerates `S(F_q)` for `GL(n)` and checks that `x ↦ (c_1(x), …, c_n(x))`
/// is a bijection onto `F_q^n`.
pub fn slice_chart_audit_gl(alg: &ChevalleyAlgebra, q: u64, slice: &Slice) -> Result<ChartAudit> {
    let n = gl_size(alg)?;
    if n > CHART_MAX_N || q > CHART_MAX_Q {
        return Err(Error::BruteForceTooLarge(format!(
            "chart audit needs n ≤ {CHART_MAX_N} and q ≤ {CHART_MAX_Q}, got n = {n}, q = {q}"
        )));
    }
    let field = Fp::new(q);
    let model = FieldModel::new(alg, field);
    let dim = slice.complement.len();
    let total = q.pow(dim as u32);
    let mut images = HashSet::new();
    let mut coords = vec![0u64; dim];
    for idx in 0..total {
        let mut t = idx;
        for c in coords.iter_mut() {
            *c = t % q;
            t /= q;
        }
        let x = gl_matrix(&field, alg, &slice.point(&model, &coords))?;
        images.insert(invariant_map_gl(&field, &x));
    }
    let target = q.pow(n as u32);
    Ok(ChartAudit {
        n,
        q,
        slice_points: total,
        distinct_images: images.len() as u64,
        target_points: target,
        pass: total == target && images.len() as u64 == target,
    })
}

/// Checks the invariants against two oracles on seeded samples: on
/// diagonal matrices they are the elementary symmetric polynomials of the
/// diagonal, and they are unchanged by conjugation.
pub fn gl_invariant_audit<F: Field>(alg: &ChevalleyAlgebra, field: &F, samples: usize, seed: u64) -> Result<Vec<CheckEntry>> {
    let n = gl_size(alg)?;
    let group = alg.datum().spec.to_string();
    let p = field.characteristic().value();
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, &[&group, "gl-invariants"], 0));

    let mut diag_bad = None;
    for i in 0..samples {
        let d: Vec<F::Elem> = (0..n).map(|_| field.sample(&mut rng)).collect();
        let x = Matrix::from_fn(n, n, |a, b| if a == b { d[a].clone() } else { field.zero() });
        if invariant_map_gl(field, &x) != elementary_symmetric(field, &d) && diag_bad.is_none() {
            diag_bad = Some(i);
        }
    }

    let mut conj_bad = None;
    let mut singular_draws = 0usize;
    for i in 0..samples {
        let x = Matrix::from_fn(n, n, |_, _| field.sample(&mut rng));
        let g = loop {
            let g = Matrix::from_fn(n, n, |_, _| field.sample(&mut rng));
            match elim::inverse(field, &g) {
                Some(inv) => break (g, inv),
                None => singular_draws += 1,
            }
        };
        let y = elim::matmul(field, &elim::matmul(field, &g.0, &x), &g.1);
        if invariant_map_gl(field, &x) != invariant_map_gl(field, &y) && conj_bad.is_none() {
            conj_bad = Some(i);
        }
    }
    Ok(vec![
        CheckEntry::new(
            &group,
            p,
            "quotient.diagonal-restriction",
            "invariants-restrict-to-symmetric-functions",
            Status::from_bool(diag_bad.is_none()),
            json!({ "samples": samples, "first_failure": diag_bad }),
        ),
        CheckEntry::new(
            &group,
            p,
            "quotient.conjugation-invariance",
            "invariants-are-conjugation-invariant",
            Status::from_bool(conj_bad.is_none()),
            json!({ "samples": samples, "singular_draws": singular_draws, "first_failure": conj_bad }),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::linalg::Rationals;
    use crate::roots::build_root_datum;
    use crate::slice::integral_complement;

    fn q_mat(rows: &[Vec<i64>]) -> Matrix<num_rational::BigRational> {
        Matrix::from_rows(rows).map(|&v| Rationals.from_i64(v))
    }

    #[test]
    fn small_invariants() {
        let q = Rationals;
        let z = invariant_map_gl(&q, &q_mat(&[vec![0, 0], vec![0, 0]]));
        assert!(z.iter().all(|v| q.is_zero(v)));
        assert_eq!(invariant_map_gl(&q, &q_mat(&[vec![1, 0], vec![0, 1]])), vec![q.from_i64(2), q.from_i64(1)]);
        assert_eq!(invariant_map_gl(&q, &q_mat(&[vec![1, 0], vec![0, 2]])), vec![q.from_i64(3), q.from_i64(2)]);
        let m = q_mat(&[vec![2, 1, 0], vec![0, 1, 3], vec![4, 0, 5]]);
        // tr = 8, sum of 2x2 principal minors = 2 + 5 + 10 - 0 = 17 - 0, det = 10 + 12 = 22.
        assert_eq!(invariant_map_gl(&q, &m), vec![q.from_i64(8), q.from_i64(17), q.from_i64(22)]);
    }

    #[test]
    fn oracles_agree() {
        for n in 1..=4 {
            let alg = build_chevalley_algebra(&build_root_datum(&format!("GL({n})")).unwrap()).unwrap();
            for e in gl_invariant_audit(&alg, &Fp::new(7), 250, 1).unwrap() {
                assert_eq!(e.status, Status::Pass, "{e:?}");
            }
        }
        let alg = build_chevalley_algebra(&build_root_datum("GL(3)").unwrap()).unwrap();
        for e in gl_invariant_audit(&alg, &Rationals, 20, 1).unwrap() {
            assert_eq!(e.status, Status::Pass, "{e:?}");
        }
    }

    #[test]
    fn chart_counts() {
        for (n, q) in [(1, 5), (2, 3), (3, 2)] {
            let alg = build_chevalley_algebra(&build_root_datum(&format!("GL({n})")).unwrap()).unwrap();
            let s = integral_complement(&alg).unwrap();
            let a = slice_chart_audit_gl(&alg, q, &s).unwrap();
            assert!(a.pass, "{a:?}");
            assert_eq!(a.slice_points, q.pow(n as u32));
        }
    }

    #[test]
    fn chart_envelope() {
        let alg = build_chevalley_algebra(&build_root_datum("GL(2)").unwrap()).unwrap();
        let s = integral_complement(&alg).unwrap();
        assert!(matches!(slice_chart_audit_gl(&alg, 13, &s), Err(Error::BruteForceTooLarge(_))));
        let sl = build_chevalley_algebra(&build_root_datum("SC(A1)").unwrap()).unwrap();
        let s = integral_complement(&sl).unwrap();
        assert!(matches!(slice_chart_audit_gl(&sl, 3, &s), Err(Error::UnsupportedGroup(_))));
    }
}
