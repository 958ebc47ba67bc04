//! Regularity, transversality and differential audits along the slice.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{borel_decomposition_det, FieldModel, Slice};
use crate::error::{Error, Result};
use crate::linalg::{elim, prime_factors, Field, Matrix};
use crate::report::{precondition_reason, task_seed, AuditOptions, CheckEntry, Status};
use crate::roots::conditions::Condition;
use crate::roots::condition_check;

/// Pointwise outcome at one `x ∈ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointChecks {
    pub centralizer_dim: usize,
    /// `dim g_x = r`.
    pub regular: bool,
    /// `g = s ⊕ [x, g]`.
    pub direct_sum: bool,
    /// `n ⊕ s → b, (y, v) ↦ [y, x] + v` is bijective.
    pub differential: bool,
}

/// Runs the three pointwise checks at `x`.
pub fn point_checks<F: Field>(model: &FieldModel<'_, F>, slice: &Slice, x: &[F::Elem]) -> PointChecks {
    let f = &model.field;
    let n = model.dim();
    let r = model.alg.rank();
    let ad = model.ad(x);
    let rk = elim::rank(f, &ad);
    let centralizer_dim = n - rk;

    let s_cols: Vec<Vec<F::Elem>> = slice.complement.iter().map(|&b| model.basis_vector(b)).collect();
    let s_mat = Matrix::from_cols(n, &s_cols, f.zero());
    let joint = elim::rank(f, &s_mat.hcat(&ad));
    let direct_sum = joint == n && slice.complement.len() + rk == n;

    let borel = model.alg.borel_basis();
    let nil = model.alg.nilradical_basis();
    let mut in_b = vec![None; n];
    for (k, &b) in borel.iter().enumerate() {
        in_b[b] = Some(k);
    }
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    let mut lands_in_b = true;
    for &y in &nil {
        let mut col = vec![f.zero(); borel.len()];
        for k in 0..n {
            let v = f.neg(&ad[(k, y)]);
            if f.is_zero(&v) {
                continue;
            }
            match in_b[k] {
                Some(pos) => col[pos] = v,
                None => lands_in_b = false,
            }
        }
        cols.push(col);
    }
    for &v in &slice.complement {
        let mut col = vec![f.zero(); borel.len()];
        col[in_b[v].expect("s lies in b")] = f.one();
        cols.push(col);
    }
    let d = Matrix::from_cols(borel.len(), &cols, f.zero());
    let differential = lands_in_b && d.cols() == borel.len() && elim::rank(f, &d) == borel.len();

    PointChecks {
        centralizer_dim,
        regular: centralizer_dim == r,
        direct_sum,
        differential,
    }
}

/// Seeded uniform slice coordinates for sample `index`.
pub fn sample_coords<F: Field>(field: &F, slice: &Slice, seed: u64, group: &str, index: u64) -> Vec<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, &[group, "slice-point"], index));
    (0..slice.complement.len()).map(|_| field.sample(&mut rng)).collect()
}

struct Tally {
    samples: usize,
    passed: usize,
    counterexample: Option<Value>,
}

impl Tally {
    fn witness(&self) -> Value {
        json!({
            "samples": self.samples,
            "passed": self.passed,
            "counterexample": self.counterexample,
        })
    }
}

/// Samples `x ∈ S(F)` and checks regularity, `g = s ⊕ [x, g]`, and
/// bijectivity of the differential `n ⊕ s → b`; then the same at `x = e`
/// together with the integral determinant at `e`.
pub fn regularity_audit<F: Field>(
    model: &FieldModel<'_, F>,
    slice: &Slice,
    opts: &AuditOptions,
) -> Result<Vec<CheckEntry>> {
    let rd = model.alg.datum();
    let group = rd.spec.to_string();
    let p = model.characteristic().value();
    let profile = condition_check(rd, p, &opts.table);
    if !profile.c3 && opts.strict {
        return Err(Error::ConditionViolation(precondition_reason(Condition::C3, &profile, &group)));
    }

    let outcomes: Vec<(Vec<F::Elem>, PointChecks)> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let coords = sample_coords(&model.field, slice, opts.seed, &group, i);
            let x = slice.point(model, &coords);
            let checks = point_checks(model, slice, &x);
            (coords, checks)
        })
        .collect();

    let tally = |pick: &dyn Fn(&PointChecks) -> bool| {
        let passed = outcomes.iter().filter(|(_, c)| pick(c)).count();
        let counterexample = outcomes.iter().enumerate().find(|(_, (_, c))| !pick(c)).map(|(i, (coords, c))| {
            json!({
                "sample": i,
                "slice_coords": coords.iter().map(|v| model.field.to_scalar(v).plain()).collect::<Vec<_>>(),
                "centralizer_dim": c.centralizer_dim,
            })
        });
        Tally { samples: outcomes.len(), passed, counterexample }
    };

    let at_e = point_checks(model, slice, &model.embed(&slice.e));
    let det_e = borel_decomposition_det(model.alg, slice);
    let det_primes = prime_factors(&det_e);
    let non_vg = opts.table.non_very_good_primes(rd);
    let det_unit = det_e != 0.into() && det_primes.iter().all(|q| non_vg.contains(q));

    let gate = |ok: bool, mut witness: Value| -> (Status, Value) {
        if profile.c3 {
            (Status::from_bool(ok), witness)
        } else {
            witness["reason"] = json!(precondition_reason(Condition::C3, &profile, &group));
            (Status::NotApplicable, witness)
        }
    };

    let mut entries = Vec::new();
    let specs: [(&str, &str, Tally); 3] = [
        ("slice.centralizer-dimension", "regular-centralizer-dimension", tally(&|c| c.regular)),
        ("slice.direct-sum", "slice-transversality", tally(&|c| c.direct_sum)),
        ("slice.differential", "unipotent-slice-differential", tally(&|c| c.differential)),
    ];
    for (check, statement, t) in specs {
        let (status, witness) = gate(t.passed == t.samples, t.witness());
        entries.push(CheckEntry::new(&group, p, check, statement, status, witness));
    }
    let (status, witness) = gate(
        at_e.regular && at_e.direct_sum && at_e.differential,
        json!({
            "centralizer_dim": at_e.centralizer_dim,
            "rank": model.alg.rank(),
            "direct_sum": at_e.direct_sum,
            "differential": at_e.differential,
        }),
    );
    entries.push(CheckEntry::new(&group, p, "slice.principal-nilpotent", "principal-nilpotent-regular", status, witness));
    let (status, witness) = gate(
        det_unit,
        json!({
            "determinant": det_e.to_string(),
            "determinant_primes": det_primes,
            "non_very_good_primes": non_vg,
        }),
    );
    entries.push(CheckEntry::new(&group, p, "slice.integral-differential", "unipotent-slice-differential", status, witness));
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::linalg::Fp;
    use crate::roots::build_root_datum;
    use crate::slice::integral_complement;

    fn run(g: &str, p: u64, samples: usize) -> Vec<CheckEntry> {
        let alg = build_chevalley_algebra(&build_root_datum(g).unwrap()).unwrap();
        let slice = integral_complement(&alg).unwrap();
        let model = FieldModel::new(&alg, Fp::new(p));
        let opts = AuditOptions { samples, ..AuditOptions::default() };
        regularity_audit(&model, &slice, &opts).unwrap()
    }

    #[test]
    fn sl3_mod_5_passes() {
        for e in run("SC(A2)", 5, 100) {
            assert_eq!(e.status, Status::Pass, "{e:?}");
        }
    }

    #[test]
    fn sl2_mod_2_is_not_applicable() {
        let entries = run("SC(A1)", 2, 10);
        for e in &entries {
            assert_eq!(e.status, Status::NotApplicable);
            assert!(e.witness["reason"].as_str().unwrap().contains("(C3) fails at p=2"));
        }
    }

    #[test]
    fn strict_mode_raises() {
        let alg = build_chevalley_algebra(&build_root_datum("SC(A2)").unwrap()).unwrap();
        let slice = integral_complement(&alg).unwrap();
        let model = FieldModel::new(&alg, Fp::new(3));
        let opts = AuditOptions { samples: 1, strict: true, ..AuditOptions::default() };
        assert!(matches!(regularity_audit(&model, &slice, &opts), Err(Error::ConditionViolation(_))));
    }
}
