//! The rescaled Killing-type pairing on `X*(T)` and the map `τ` it induces.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{elim, Field, Matrix, Rationals};
use crate::report::{CheckEntry, Status};
use crate::roots::weyl::{simple_reflection_char, simple_reflection_cochar};
use crate::roots::{FactorSpec, PrimeTable, RootDatum};

/// `(ν, η)_Kil = Σ_{α̌} ⟨ν, α̌⟩⟨η, α̌⟩`, its rescaling `⟨,⟩_Gr` with
/// `⟨θ, θ⟩_Gr = 2` for the highest short root `θ`, and `τ: X → Q ⊗ X_*`
/// defined by `⟨μ, τ(λ)⟩ = ⟨λ, μ⟩_Gr`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrForm {
    /// Gram matrix of `(,)_Kil` on the `X*` basis.
    pub killing: Vec<Vec<i64>>,
    /// Index of `θ` in the root list.
    pub theta: usize,
    pub theta_norm: i64,
    /// Gram matrix of `⟨,⟩_Gr`; also the matrix of `τ` from `X*` to `X_*`
    /// coordinates.
    #[serde(skip)]
    pub gr: Matrix<BigRational>,
    /// `|α|² = ⟨α, α⟩_Gr / 2` for every root, so short roots have 1.
    pub squared_lengths: Vec<i64>,
}

impl GrForm {
    pub fn rank(&self) -> usize {
        self.killing.len()
    }

    /// `τ(λ)` in `X_*` coordinates.
    pub fn tau(&self, lambda: &[i64]) -> Vec<BigRational> {
        let q = Rationals;
        elim::apply(&q, &self.gr, &lambda.iter().map(|&v| q.from_i64(v)).collect::<Vec<_>>())
    }

    pub fn pair(&self, lambda: &[i64], mu: &[i64]) -> BigRational {
        let t = self.tau(lambda);
        mu.iter().zip(&t).fold(BigRational::zero(), |acc, (&m, v)| acc + v * BigInt::from(m))
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Builds `⟨,⟩_Gr` and `τ` for a single simply connected factor and checks
/// `W`-invariance of `(,)_Kil`, `⟨θ, θ⟩_Gr = 2`, `W`-equivariance of `τ`
/// and integrality of `|α|²`.
pub fn gr_form(rd: &RootDatum) -> Result<GrForm> {
    match rd.factors.as_slice() {
        [f] if matches!(f.spec, FactorSpec::SimplyConnected { .. }) => {}
        _ => {
            return Err(Error::UnsupportedGroup(format!(
                "{} is not a single simply connected factor",
                rd.spec
            )))
        }
    }
    let r = rd.rank();
    let mut killing = vec![vec![0i64; r]; r];
    for root in rd.roots() {
        for i in 0..r {
            for j in 0..r {
                killing[i][j] += root.coroot[i] * root.coroot[j];
            }
        }
    }
    let bilinear = |a: &[i64], b: &[i64]| -> i64 {
        (0..r).map(|i| (0..r).map(|j| a[i] * killing[i][j] * b[j]).sum::<i64>()).sum()
    };
    for i in 0..r {
        let s = simple_reflection_char(rd, i);
        let col = |j: usize| (0..r).map(|k| s[k * r + j]).collect::<Vec<_>>();
        for a in 0..r {
            for b in 0..r {
                if bilinear(&col(a), &col(b)) != killing[a][b] {
                    return Err(Error::StructureConstant(format!(
                        "Killing-type pairing is not invariant under s{} on {}",
                        i + 1,
                        rd.spec
                    )));
                }
            }
        }
    }
    let theta = rd.highest_short_root(0);
    let theta_norm = bilinear(&rd.root(theta).weight, &rd.root(theta).weight);
    let scale = rat(2) / rat(theta_norm);
    let gr = Matrix::from_fn(r, r, |i, j| rat(killing[i][j]) * &scale);
    let form = GrForm {
        killing,
        theta,
        theta_norm,
        gr,
        squared_lengths: Vec::new(),
    };
    if form.pair(&rd.root(theta).weight, &rd.root(theta).weight) != rat(2) {
        return Err(Error::StructureConstant(format!("⟨θ, θ⟩_Gr ≠ 2 on {}", rd.spec)));
    }
    let mut squared_lengths = Vec::with_capacity(rd.n_roots());
    for (a, root) in rd.roots().iter().enumerate() {
        let half = form.pair(&root.weight, &root.weight) / rat(2);
        if !half.is_integer() {
            return Err(Error::StructureConstant(format!(
                "|{}|² = {half} is not an integer on {}",
                rd.root_label(a),
                rd.spec
            )));
        }
        squared_lengths.push(i64::try_from(half.to_integer()).expect("small"));
    }
    let q = Rationals;
    for i in 0..r {
        let s_char = Matrix::from_fn(r, r, |a, b| rat(simple_reflection_char(rd, i)[a * r + b]));
        let s_cochar = Matrix::from_fn(r, r, |a, b| rat(simple_reflection_cochar(rd, i)[a * r + b]));
        if elim::matmul(&q, &s_cochar, &form.gr) != elim::matmul(&q, &form.gr, &s_char) {
            return Err(Error::StructureConstant(format!("τ does not commute with s{} on {}", i + 1, rd.spec)));
        }
    }
    Ok(GrForm { squared_lengths, ..form })
}

/// `τ` reduced to `F`, or `None` if some denominator vanishes there.
pub fn tau_in<F: Field>(field: &F, form: &GrForm) -> Option<Matrix<F::Elem>> {
    let r = form.rank();
    let mut out = Matrix::filled(r, r, field.zero());
    for i in 0..r {
        for j in 0..r {
            out[(i, j)] = field.from_rational(&form.gr[(i, j)])?;
        }
    }
    Some(out)
}

/// Checks `τ(α) = |α|² α̌` and `(dα) ∘ τ = |α|² h_α` exactly over `Q` for
/// every root, and that `τ` and every `|α|²` are invertible mod `p`.
pub fn tau_root_audit<F: Field>(field: &F, rd: &RootDatum, table: &PrimeTable) -> Result<Vec<CheckEntry>> {
    let p = field.characteristic().value();
    if p != 0 && !table.is_very_good(rd, p) {
        return Err(Error::ConditionViolation(format!("p={p} is not very good for {}", rd.spec)));
    }
    let form = gr_form(rd)?;
    let group = rd.spec.to_string();
    let q = Rationals;
    let gr_t = form.gr.transpose();
    let mut tau_bad = None;
    let mut functional_bad = None;
    for (a, root) in rd.roots().iter().enumerate() {
        let expected: Vec<BigRational> = root.coroot.iter().map(|&c| rat(c * form.squared_lengths[a])).collect();
        if form.tau(&root.weight) != expected && tau_bad.is_none() {
            tau_bad = Some(rd.root_label(a));
        }
        // Coefficients of the linear function ξ ↦ dα(τ(ξ)) on t*.
        let weight: Vec<BigRational> = root.weight.iter().map(|&w| rat(w)).collect();
        if elim::apply(&q, &gr_t, &weight) != expected && functional_bad.is_none() {
            functional_bad = Some(rd.root_label(a));
        }
    }
    let reduced = tau_in(field, &form);
    let det = reduced.as_ref().map(|m| elim::det(field, m));
    let lengths_invertible = form.squared_lengths.iter().all(|&l| !field.is_zero(&field.from_i64(l)));
    let invertible = det.as_ref().is_some_and(|d| !field.is_zero(d)) && lengths_invertible;
    let det_q = elim::det(&q, &form.gr);
    Ok(vec![
        CheckEntry::new(
            &group,
            p,
            "waction.tau-roots",
            "tau-of-roots",
            Status::from_bool(tau_bad.is_none()),
            json!({ "roots": rd.n_roots(), "counterexample": tau_bad }),
        ),
        CheckEntry::new(
            &group,
            p,
            "waction.tau-linking",
            "root-differential-through-tau",
            Status::from_bool(functional_bad.is_none()),
            json!({ "roots": rd.n_roots(), "counterexample": functional_bad }),
        ),
        CheckEntry::new(
            &group,
            p,
            "waction.tau-invertible",
            "tau-isomorphism",
            Status::from_bool(invertible),
            json!({
                "determinant_over_q": det_q.to_string(),
                "determinant_mod_p": det.map(|d| field.to_scalar(&d).plain()),
                "theta_norm": form.theta_norm,
                "squared_lengths_invertible": lengths_invertible,
            }),
        ),
    ])
}
