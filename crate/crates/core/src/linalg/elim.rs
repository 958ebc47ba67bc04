//! Gaussian elimination over an exact field.

use super::field::Field;
use super::matrix::{IntMatrix, Matrix};

/// Reduced row echelon form of `m`, with the list of pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(pr) = (row..a.rows()).find(|&r| !field.is_zero(&a[(r, col)])) else {
            continue;
        };
        a.swap_rows(row, pr);
        let inv = field.inv(&a[(row, col)]).expect("pivot is nonzero");
        for j in col..a.cols() {
            a[(row, j)] = field.mul(&a[(row, j)], &inv);
        }
        for r in 0..a.rows() {
            if r == row || field.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = a[(r, col)].clone();
            for j in col..a.cols() {
                let t = field.mul(&factor, &a[(row, j)]);
                a[(r, j)] = field.sub(&a[(r, j)], &t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // Forward elimination only; cheaper than a full rref.
    let mut a = m.clone();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(pr) = (row..a.rows()).find(|&r| !field.is_zero(&a[(r, col)])) else {
            continue;
        };
        a.swap_rows(row, pr);
        let inv = field.inv(&a[(row, col)]).expect("pivot is nonzero");
        for r in row + 1..a.rows() {
            if field.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = field.mul(&a[(r, col)], &inv);
            for j in col..a.cols() {
                let t = field.mul(&factor, &a[(row, j)]);
                a[(r, j)] = field.sub(&a[(r, j)], &t);
            }
        }
        row += 1;
    }
    row
}

/// Basis of the null space `{v : m v = 0}`, one vector per free column.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&r[(row, free)]);
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square matrix.
pub fn det<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.rows();
    let mut d = field.one();
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| !field.is_zero(&a[(r, col)])) else {
            return field.zero();
        };
        if pr != col {
            a.swap_rows(pr, col);
            d = field.neg(&d);
        }
        let piv = a[(col, col)].clone();
        d = field.mul(&d, &piv);
        let inv = field.inv(&piv).expect("pivot is nonzero");
        for r in col + 1..n {
            if field.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = field.mul(&a[(r, col)], &inv);
            for j in col..n {
                let t = field.mul(&factor, &a[(col, j)]);
                a[(r, j)] = field.sub(&a[(r, j)], &t);
            }
        }
    }
    d
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert!(m.is_square());
    let n = m.rows();
    let id = Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() });
    let (r, pivots) = rref(field, &m.hcat(&id));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// Matrix-vector product over the field.
pub fn apply<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|i| {
            let mut acc = field.zero();
            for (j, x) in v.iter().enumerate() {
                if !field.is_zero(x) {
                    field.mul_add_assign(&mut acc, &m[(i, j)], x);
                }
            }
            acc
        })
        .collect()
}

pub fn matmul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows());
    let mut out = Matrix::filled(a.rows(), b.cols(), field.zero());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols() {
                let y = &b[(k, j)];
                if !field.is_zero(y) {
                    let mut acc = out[(i, j)].clone();
                    field.mul_add_assign(&mut acc, x, y);
                    out[(i, j)] = acc;
                }
            }
        }
    }
    out
}

/// Image of an integer matrix in the field.
pub fn reduce<F: Field>(field: &F, m: &IntMatrix) -> Matrix<F::Elem> {
    m.map(|v| field.from_bigint(v))
}

pub fn reduce_i64<F: Field>(field: &F, m: &Matrix<i64>) -> Matrix<F::Elem> {
    m.map(|&v| field.from_i64(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{Fp, Rationals};

    fn fp_mat(f: &Fp, rows: &[Vec<i64>]) -> Matrix<u64> {
        Matrix::from_rows(rows).map(|&v: &i64| f.from_i64(v))
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let f = Fp::new(5);
        let k = kernel(&f, &fp_mat(&f, &[vec![0, 0], vec![0, 0]]));
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let f = Fp::new(5);
        let k = kernel(&f, &fp_mat(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert!(k.is_empty());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let m = vec![vec![2, -1], vec![-1, 2]];
        assert_eq!(rank(&Fp::new(3), &fp_mat(&Fp::new(3), &m)), 1);
        assert_eq!(rank(&Fp::new(5), &fp_mat(&Fp::new(5), &m)), 2);
        let q = Rationals;
        let mq = Matrix::from_rows(&m).map(|&v: &i64| q.from_i64(v));
        assert_eq!(rank(&q, &mq), 2);
        assert_eq!(det(&q, &mq), q.from_i64(3));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Fp::new(7);
        let m = fp_mat(&f, &[vec![1, 2], vec![3, 4]]);
        let inv = inverse(&f, &m).unwrap();
        let id = matmul(&f, &m, &inv);
        assert_eq!(id, fp_mat(&f, &[vec![1, 0], vec![0, 1]]));
        assert!(inverse(&f, &fp_mat(&f, &[vec![1, 2], vec![2, 4]])).is_none());
    }
}
