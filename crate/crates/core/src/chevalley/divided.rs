//! Divided-power exponentials `Σ_k c^k (ad y)^k / k!` of root vectors.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ChevalleyAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Field, IntMatrix, Matrix};

/// `[(ad e_α)^k / k!]` for `k = 0, 1, …` up to the last nonzero power.
///
/// Fails with [`Error::NonIntegralDividedPower`] if some power is not
/// divisible by `k!` over `Z`.
pub fn divided_powers(alg: &ChevalleyAlgebra, root: usize) -> Result<Vec<IntMatrix>> {
    let n = alg.dim();
    let ad = alg.ad_int(&alg.basis_vector(root));
    let mut out = vec![IntMatrix::identity(n)];
    for k in 1..=n {
        let prev = out.last().expect("nonempty");
        let raw = prev.mul(&ad);
        if raw.is_zero() {
            return Ok(out);
        }
        let kb = BigInt::from(k);
        if raw.as_slice().iter().any(|v| !(v % &kb).is_zero()) {
            return Err(Error::NonIntegralDividedPower { power: k });
        }
        out.push(raw.map(|v| v / &kb));
    }
    Err(Error::StructureConstant(format!("ad of basis vector {root} is not nilpotent")))
}

/// `exp(c · ad e_α)` realized with divided powers and reduced to `field`.
pub fn divided_power_exp<F: Field>(
    alg: &ChevalleyAlgebra,
    root: usize,
    c: &F::Elem,
    field: &F,
) -> Result<Matrix<F::Elem>> {
    let powers = divided_powers(alg, root)?;
    Ok(exp_from_powers(field, &powers, c))
}

/// `Σ_k c^k P_k` for precomputed divided powers `P_k`.
pub fn exp_from_powers<F: Field>(field: &F, powers: &[IntMatrix], c: &F::Elem) -> Matrix<F::Elem> {
    let n = powers[0].rows();
    let mut out = Matrix::filled(n, n, field.zero());
    let mut ck = field.one();
    for p in powers {
        if !field.is_zero(&ck) {
            for i in 0..n {
                for j in 0..n {
                    let v = &p[(i, j)];
                    if !v.is_zero() {
                        let t = field.mul(&ck, &field.from_bigint(v));
                        out[(i, j)] = field.add(&out[(i, j)], &t);
                    }
                }
            }
        }
        ck = field.mul(&ck, c);
    }
    out
}

pub(super) fn check_simple_negatives(alg: &ChevalleyAlgebra) -> Result<()> {
    for &s in alg.datum().simple_indices() {
        divided_powers(alg, alg.datum().negative_of(s))?;
    }
    Ok(())
}
