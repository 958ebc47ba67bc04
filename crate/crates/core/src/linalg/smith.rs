//! Smith normal form over the integers.
//!
//! Every torsion statement in the crate is decided here: the cokernel of an
//! integer matrix `M` is `Z^r / im(M)`, and its p-primary part is read off
//! the elementary divisors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::prime_factors;
use super::matrix::IntMatrix;

/// Elementary divisors together with the unimodular transforms.
///
/// `left * M * right` is the `rows x cols` matrix with `divisors` on the
/// diagonal. `divisors` has length `min(rows, cols)`; trailing zeros record
/// rank deficiency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal matrix `left * M * right`.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.rows());
        for (i, v) in self.divisors.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    /// Number of nonzero divisors divisible by `p`: the p-rank of the torsion
    /// part of the cokernel.
    pub fn prime_torsion(&self, p: u64) -> usize {
        let bp = BigInt::from(p);
        self.divisors
            .iter()
            .filter(|d| !d.is_zero() && (*d % &bp).is_zero())
            .count()
    }

    /// Primes dividing some nonzero divisor, ascending.
    pub fn torsion_primes(&self) -> Vec<u64> {
        let mut set = BTreeSet::new();
        for d in self.divisors.iter().filter(|d| !d.is_zero()) {
            set.extend(prime_factors(d));
        }
        set.into_iter().collect()
    }

    /// Whether every nonzero divisor is a unit once the given primes are
    /// inverted.
    pub fn divisors_are_units_away_from(&self, inverted: &[u64]) -> bool {
        self.torsion_primes().iter().all(|p| inverted.contains(p))
    }
}

/// Smith normal form of `m`. Total: defined for every shape, including empty.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        // Pivot-magnitude heuristic: start from the smallest entry left.
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        left.swap_rows(t, pi);
        a.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            clear_column(&mut a, &mut left, t);
            let row_clean = clear_row(&mut a, &mut right, t);
            if !row_clean {
                continue;
            }
            if (t + 1..rows).any(|i| !a[(i, t)].is_zero()) {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row.
            let piv = a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&a[(i, j)] % &piv).is_zero()));
            match offender {
                Some(i) => {
                    add_row(&mut a, t, i, &BigInt::one());
                    add_row(&mut left, t, i, &BigInt::one());
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
    }

    let divisors = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        divisors,
        left,
        right,
    }
}

/// Number of elementary divisors of `m` divisible by `p`.
pub fn prime_torsion(m: &IntMatrix, p: u64) -> usize {
    smith_normal_form(m).prime_torsion(p)
}

/// Determinant of a square integer matrix via fraction-free elimination.
pub fn int_det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * a[(n - 1, n - 1)].clone()
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Euclidean reduction of column `t` below the pivot, swapping in smaller
/// remainders as they appear.
fn clear_column(a: &mut IntMatrix, left: &mut IntMatrix, t: usize) {
    loop {
        let best = (t..a.rows())
            .filter(|&i| !a[(i, t)].is_zero())
            .min_by(|&x, &y| a[(x, t)].abs().cmp(&a[(y, t)].abs()));
        let Some(best) = best else { return };
        a.swap_rows(t, best);
        left.swap_rows(t, best);
        let mut done = true;
        for i in t + 1..a.rows() {
            if a[(i, t)].is_zero() {
                continue;
            }
            let q = -(&a[(i, t)] / &a[(t, t)]);
            add_row(a, i, t, &q);
            add_row(left, i, t, &q);
            if !a[(i, t)].is_zero() {
                done = false;
            }
        }
        if done {
            return;
        }
    }
}

/// Same as [`clear_column`] along row `t`; returns whether column `t` is
/// still clean afterwards.
fn clear_row(a: &mut IntMatrix, right: &mut IntMatrix, t: usize) -> bool {
    let mut swapped = false;
    loop {
        let best = (t..a.cols())
            .filter(|&j| !a[(t, j)].is_zero())
            .min_by(|&x, &y| a[(t, x)].abs().cmp(&a[(t, y)].abs()));
        let Some(best) = best else { return !swapped };
        if best != t {
            a.swap_cols(t, best);
            right.swap_cols(t, best);
            swapped = true;
        }
        let mut done = true;
        for j in t + 1..a.cols() {
            if a[(t, j)].is_zero() {
                continue;
            }
            let q = -(&a[(t, j)] / &a[(t, t)]);
            add_col(a, j, t, &q);
            add_col(right, j, t, &q);
            if !a[(t, j)].is_zero() {
                done = false;
            }
        }
        if done {
            return !swapped || (t + 1..a.rows()).all(|i| a[(i, t)].is_zero());
        }
    }
}

/// `row[dst] += c * row[src]`.
fn add_row(a: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for j in 0..a.cols() {
        if a[(src, j)].is_zero() {
            continue;
        }
        let v = c * &a[(src, j)];
        a[(dst, j)] += v;
    }
}

/// `col[dst] += c * col[src]`.
fn add_col(a: &mut IntMatrix, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    for i in 0..a.rows() {
        if a[(i, src)].is_zero() {
            continue;
        }
        let v = c * &a[(i, src)];
        a[(i, dst)] += v;
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for v in a.row_mut(i) {
        *v = -std::mem::take(v);
    }
}

/// Greatest common divisor of all entries (0 for the zero matrix).
pub fn content(m: &IntMatrix) -> BigInt {
    m.as_slice()
        .iter()
        .fold(BigInt::zero(), |g, v| g.gcd(v))
}
