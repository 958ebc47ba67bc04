//! Exact linear algebra over the integers, the rationals and prime fields.

pub mod complement;
pub mod elim;
pub mod field;
pub mod matrix;
pub mod smith;

pub use complement::integral_basis_complement;
pub use field::{is_prime, prime_factors, Characteristic, Field, FieldScalar, Fp, Rationals};
pub use matrix::{IntMatrix, Matrix};
pub use smith::{int_det, prime_torsion, smith_normal_form, SmithForm};

/// Null-space basis of an integer matrix reduced to the prime field of the
/// given characteristic (the rationals for characteristic 0).
pub fn kernel(m: &IntMatrix, characteristic: Characteristic) -> Vec<Vec<FieldScalar>> {
    fn run<F: Field>(f: &F, m: &IntMatrix) -> Vec<Vec<FieldScalar>> {
        elim::kernel(f, &elim::reduce(f, m))
            .into_iter()
            .map(|v| v.iter().map(|x| f.to_scalar(x)).collect())
            .collect()
    }
    if characteristic.is_zero() {
        run(&Rationals, m)
    } else {
        run(&Fp::new(characteristic.value()), m)
    }
}

/// Rank of an integer matrix over the prime field of the given characteristic.
pub fn rank_in(m: &IntMatrix, characteristic: Characteristic) -> usize {
    if characteristic.is_zero() {
        elim::rank(&Rationals, &elim::reduce(&Rationals, m))
    } else {
        let f = Fp::new(characteristic.value());
        elim::rank(&f, &elim::reduce(&f, m))
    }
}
