//! Fiberwise audits of the universal centralizer's Lie algebra: the
//! pairing `g_x → s*` induced by `κ`, the identity `κ(g_x, [x, g]) = 0`,
//! and centralizers of regular semisimple elements of `t`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{elim, Field, Matrix};
use crate::quotient::KappaForm;
use crate::report::{precondition_reason, task_seed, AuditOptions, CheckEntry, Status};
use crate::roots::conditions::Condition;
use crate::roots::weyl::{weyl_elements, DEFAULT_WEYL_CAP};
use crate::roots::{condition_check, RootDatum};
use crate::slice::{sample_coords, FieldModel, Slice};

/// Matrix of `g_x ↪ g →κ g* ↠ s*` at one slice point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CotangentCertificate {
    /// The point `x`, in the Chevalley basis.
    pub point: Vec<String>,
    /// `matrix[i][j] = κ(y_i, s_j)` for a kernel basis `y_i` of `ad(x)`.
    pub matrix: Vec<Vec<String>>,
    /// Determinant, or `None` when the matrix is not square.
    pub determinant: Option<String>,
    pub pass: bool,
}

/// Outcome of [`kappa_annihilator_check`] at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorOutcome {
    pub centralizer_dim: usize,
    pub ad_rank: usize,
    /// Pairs `(i, z)` with `κ(y_i, [x, b_z]) ≠ 0`.
    pub violations: Vec<(usize, usize)>,
    /// Rank of `κ` restricted to `g_x`, i.e. `dim κ(g_x)`.
    pub image_dim: usize,
    pub pass: bool,
}

fn gram_in<F: Field>(model: &FieldModel<'_, F>, kappa: &KappaForm) -> Matrix<F::Elem> {
    elim::reduce(&model.field, &kappa.gram)
}

fn require_nondegenerate<F: Field>(model: &FieldModel<'_, F>, kappa: &KappaForm) -> Result<()> {
    let p = model.characteristic().value();
    if kappa.is_nondegenerate_at(p) {
        Ok(())
    } else {
        Err(Error::ConditionViolation(format!(
            "invariant form is degenerate at p={p} for {} (determinant {})",
            model.alg.datum().spec,
            kappa.determinant
        )))
    }
}

/// Builds the pairing matrix between `g_x` and the slice directions and
/// reports whether it is invertible.
pub fn cotangent_iso_check<F: Field>(
    model: &FieldModel<'_, F>,
    slice: &Slice,
    kappa: &KappaForm,
    x: &[F::Elem],
) -> Result<CotangentCertificate> {
    require_nondegenerate(model, kappa)?;
    let f = &model.field;
    let gram = gram_in(model, kappa);
    let gx = model.centralizer(x);
    let pairing: Vec<Vec<F::Elem>> = gx
        .iter()
        .map(|y| {
            let gy = (0..model.dim())
                .map(|j| (0..model.dim()).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&y[i], &gram[(i, j)]))))
                .collect::<Vec<_>>();
            slice.complement.iter().map(|&s| gy[s].clone()).collect()
        })
        .collect();
    let square = gx.len() == slice.complement.len();
    let det = square.then(|| {
        if pairing.is_empty() {
            f.one()
        } else {
            elim::det(f, &Matrix::from_rows(&pairing))
        }
    });
    let show = |v: &F::Elem| f.to_scalar(v).plain();
    Ok(CotangentCertificate {
        point: x.iter().map(show).collect(),
        matrix: pairing.iter().map(|row| row.iter().map(show).collect()).collect(),
        pass: det.as_ref().is_some_and(|d| !f.is_zero(d)),
        determinant: det.as_ref().map(show),
    })
}

/// Checks `κ(y, [x, z]) = 0` for every `y` in a kernel basis of `ad(x)` and
/// every basis vector `z`, and that `κ` is injective on `g_x`, so that
/// `κ(g_x)` is the full annihilator of `[x, g]`.
pub fn kappa_annihilator_check<F: Field>(
    model: &FieldModel<'_, F>,
    kappa: &KappaForm,
    x: &[F::Elem],
) -> Result<AnnihilatorOutcome> {
    require_nondegenerate(model, kappa)?;
    let f = &model.field;
    let n = model.dim();
    let gram = gram_in(model, kappa);
    let ad = model.ad(x);
    let ad_rank = elim::rank(f, &ad);
    let gx = model.centralizer(x);
    let gram_ad = elim::matmul(f, &gram, &ad);
    let mut violations = Vec::new();
    let mut images = Vec::with_capacity(gx.len());
    for (i, y) in gx.iter().enumerate() {
        let row: Vec<F::Elem> = (0..n)
            .map(|z| (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&y[k], &gram_ad[(k, z)]))))
            .collect();
        violations.extend(row.iter().enumerate().filter(|(_, v)| !f.is_zero(v)).map(|(z, _)| (i, z)));
        images.push(elim::apply(f, &gram, y));
    }
    let image_dim = if images.is_empty() { 0 } else { elim::rank(f, &Matrix::from_rows(&images)) };
    let centralizer_dim = gx.len();
    Ok(AnnihilatorOutcome {
        pass: violations.is_empty() && centralizer_dim + ad_rank == n && image_dim == centralizer_dim,
        centralizer_dim,
        ad_rank,
        violations,
        image_dim,
    })
}

/// Seeded uniform element of `g(F)`.
fn sample_element<F: Field>(model: &FieldModel<'_, F>, seed: u64, group: &str, index: u64) -> Vec<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, &[group, "lie-algebra-point"], index));
    (0..model.dim()).map(|_| model.field.sample(&mut rng)).collect()
}

/// Cotangent certificates and the annihilator identity over seeded slice
/// samples, plus the annihilator identity over uniform elements of `g`.
pub fn centralizer_audit<F: Field>(
    model: &FieldModel<'_, F>,
    slice: &Slice,
    kappa: &KappaForm,
    opts: &AuditOptions,
) -> Result<Vec<CheckEntry>> {
    let rd = model.alg.datum();
    let group = rd.spec.to_string();
    let p = model.characteristic().value();
    let profile = condition_check(rd, p, &opts.table);
    if !profile.c4 || !kappa.is_nondegenerate_at(p) {
        let reason = precondition_reason(Condition::C4, &profile, &group);
        if opts.strict {
            return Err(Error::ConditionViolation(reason));
        }
        return Ok([
            ("centralizer.cotangent", "cotangent-isomorphism"),
            ("centralizer.kappa-annihilator", "centralizer-form-image"),
        ]
        .iter()
        .map(|(check, statement)| {
            CheckEntry::new(&group, p, check, statement, Status::NotApplicable, json!({ "reason": reason }))
        })
        .collect());
    }

    let slice_points: Vec<(Vec<F::Elem>, CotangentCertificate, AnnihilatorOutcome)> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let coords = sample_coords(&model.field, slice, opts.seed, &group, i);
            let x = slice.point(model, &coords);
            let cert = cotangent_iso_check(model, slice, kappa, &x)?;
            let ann = kappa_annihilator_check(model, kappa, &x)?;
            Ok((x, cert, ann))
        })
        .collect::<Result<_>>()?;
    let generic: Vec<AnnihilatorOutcome> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| kappa_annihilator_check(model, kappa, &sample_element(model, opts.seed, &group, i)))
        .collect::<Result<_>>()?;

    let cert_pass = slice_points.iter().filter(|(_, c, _)| c.pass).count();
    let cert_witness = json!({
        "samples": slice_points.len(),
        "passed": cert_pass,
        "counterexample": slice_points.iter().find(|(_, c, _)| !c.pass).map(|(_, c, _)| c),
    });
    let ann_all = slice_points.iter().map(|(_, _, a)| a).chain(&generic);
    let mut ann_pass = 0;
    let mut ann_total = 0;
    let mut ann_bad: Option<&AnnihilatorOutcome> = None;
    for a in ann_all {
        ann_total += 1;
        if a.pass {
            ann_pass += 1;
        } else if ann_bad.is_none() {
            ann_bad = Some(a);
        }
    }
    let ann_witness = json!({
        "slice_samples": slice_points.len(),
        "uniform_samples": generic.len(),
        "passed": ann_pass,
        "counterexample": ann_bad,
    });
    Ok(vec![
        CheckEntry::new(
            &group,
            p,
            "centralizer.cotangent",
            "cotangent-isomorphism",
            Status::from_bool(cert_pass == slice_points.len()),
            cert_witness,
        ),
        CheckEntry::new(
            &group,
            p,
            "centralizer.kappa-annihilator",
            "centralizer-form-image",
            Status::from_bool(ann_pass == ann_total),
            ann_witness,
        ),
    ])
}

/// `dα(h)` for every positive root, with `h` in `X_*` coordinates.
fn root_values<F: Field>(field: &F, rd: &RootDatum, h: &[F::Elem]) -> Vec<F::Elem> {
    rd.positive_roots()
        .iter()
        .map(|r| {
            r.weight
                .iter()
                .zip(h)
                .fold(field.zero(), |acc, (&w, c)| field.add(&acc, &field.mul(&field.from_i64(w), c)))
        })
        .collect()
}

/// Samples `h ∈ t(F)`, keeps those with `dα(h) ≠ 0` for all roots, and
/// checks `g_h = t` and that no nontrivial Weyl element fixes `h`.
/// Membership counts are reported; with no members the checks are
/// not applicable rather than vacuously passing.
pub fn rs_audit<F: Field>(model: &FieldModel<'_, F>, opts: &AuditOptions) -> Result<Vec<CheckEntry>> {
    let rd = model.alg.datum();
    let group = rd.spec.to_string();
    let p = model.characteristic().value();
    let f = &model.field;
    let weyl = weyl_elements(rd, DEFAULT_WEYL_CAP)?;
    let r = rd.rank();
    let weyl_mats: Vec<Matrix<F::Elem>> = weyl
        .iter()
        .map(|w| Matrix::from_fn(r, r, |i, j| f.from_i64(w.matrix[i * r + j])))
        .collect();

    struct Sample {
        member: bool,
        torus_centralizer: bool,
        free: bool,
        coords: Vec<String>,
    }
    let samples: Vec<Sample> = (0..opts.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(task_seed(opts.seed, &[&group, "torus-point"], i));
            let h: Vec<F::Elem> = (0..r).map(|_| f.sample(&mut rng)).collect();
            let coords = h.iter().map(|v| f.to_scalar(v).plain()).collect();
            let member = root_values(f, rd, &h).iter().all(|v| !f.is_zero(v));
            if !member {
                return Sample { member, torus_centralizer: true, free: true, coords };
            }
            let mut x = model.zero();
            for (k, c) in h.iter().enumerate() {
                x[model.alg.h_index(k)] = c.clone();
            }
            let gx = model.centralizer(&x);
            let torus_centralizer = gx.len() == r
                && gx.iter().all(|y| (0..model.alg.n_roots()).all(|a| f.is_zero(&y[a])));
            let free = weyl
                .iter()
                .zip(&weyl_mats)
                .filter(|(w, _)| !w.is_identity())
                .all(|(_, m)| elim::apply(f, m, &h) != h);
            Sample { member, torus_centralizer, free, coords }
        })
        .collect();

    let members = samples.iter().filter(|s| s.member).count();
    let witness = |pick: &dyn Fn(&Sample) -> bool| -> (Status, Value) {
        let passed = samples.iter().filter(|s| s.member && pick(s)).count();
        let bad = samples.iter().find(|s| s.member && !pick(s)).map(|s| &s.coords);
        let status = if members == 0 {
            Status::NotApplicable
        } else {
            Status::from_bool(passed == members)
        };
        (
            status,
            json!({
                "reason": (members == 0).then_some("no sampled element of t is regular semisimple"),
                "samples": samples.len(),
                "members": members,
                "passed": passed,
                "weyl_order": weyl.len(),
                "counterexample": bad,
            }),
        )
    };
    let (s1, w1) = witness(&|s| s.torus_centralizer);
    let (s2, w2) = witness(&|s| s.free);
    Ok(vec![
        CheckEntry::new(&group, p, "centralizer.regular-semisimple", "regular-semisimple-centralizer", s1, w1),
        CheckEntry::new(&group, p, "centralizer.weyl-free", "weyl-free-on-regular-semisimple", s2, w2),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{build_chevalley_algebra, ChevalleyAlgebra};
    use crate::linalg::Fp;
    use crate::quotient::kappa_form;
    use crate::roots::build_root_datum;
    use crate::slice::integral_complement;

    fn alg(g: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(&build_root_datum(g).unwrap()).unwrap()
    }

    #[test]
    fn gl2_at_e() {
        let a = alg("GL(2)");
        let s = integral_complement(&a).unwrap();
        let k = kappa_form(&a).unwrap();
        let m = FieldModel::new(&a, Fp::new(5));
        let cert = cotangent_iso_check(&m, &s, &k, &m.embed(&s.e)).unwrap();
        assert!(cert.pass);
        assert_eq!(cert.matrix.len(), 2);
        // g_e = span{E12, I} and s = span{E21, E11}; the traces give
        // rows (1, 0) and (0, 1) up to the kernel basis elimination picks.
        assert_ne!(cert.determinant.as_deref(), Some("0"));
    }

    #[test]
    fn sl2_at_e() {
        let a = alg("SC(A1)");
        let s = integral_complement(&a).unwrap();
        let k = kappa_form(&a).unwrap();
        let m = FieldModel::new(&a, Fp::new(5));
        let cert = cotangent_iso_check(&m, &s, &k, &m.embed(&s.e)).unwrap();
        assert_eq!(cert.matrix, vec![vec!["1".to_string()]]);
        let ann = kappa_annihilator_check(&m, &k, &m.embed(&s.e)).unwrap();
        assert!(ann.pass);
        assert!(kappa_annihilator_check(&m, &k, &m.zero()).unwrap().pass);
        let m2 = FieldModel::new(&a, Fp::new(2));
        assert!(matches!(cotangent_iso_check(&m2, &s, &k, &m2.embed(&s.e)), Err(Error::ConditionViolation(_))));
    }

    #[test]
    fn random_gl3_mod_7() {
        let a = alg("GL(3)");
        let k = kappa_form(&a).unwrap();
        let m = FieldModel::new(&a, Fp::new(7));
        for i in 0..50 {
            let x = sample_element(&m, 3, "GL(3)", i);
            assert!(kappa_annihilator_check(&m, &k, &x).unwrap().pass);
        }
    }

    #[test]
    fn audit_passes_on_sl3_mod_5() {
        let a = alg("SC(A2)");
        let s = integral_complement(&a).unwrap();
        let k = kappa_form(&a).unwrap();
        let m = FieldModel::new(&a, Fp::new(5));
        let opts = AuditOptions { samples: 30, ..AuditOptions::default() };
        for e in centralizer_audit(&m, &s, &k, &opts).unwrap() {
            assert_eq!(e.status, Status::Pass, "{e:?}");
        }
        let m3 = FieldModel::new(&a, Fp::new(3));
        for e in centralizer_audit(&m3, &s, &k, &opts).unwrap() {
            assert_eq!(e.status, Status::NotApplicable);
        }
    }

    #[test]
    fn regular_semisimple_sl3_mod_7() {
        let a = alg("SC(A2)");
        let m = FieldModel::new(&a, Fp::new(7));
        let opts = AuditOptions { samples: 200, ..AuditOptions::default() };
        let entries = rs_audit(&m, &opts).unwrap();
        for e in &entries {
            assert_eq!(e.status, Status::Pass, "{e:?}");
            assert!(e.witness["members"].as_u64().unwrap() > 0);
        }
    }

    #[test]
    fn sl2_h_is_regular_semisimple() {
        let a = alg("SC(A1)");
        let f = Fp::new(5);
        let m = FieldModel::new(&a, f);
        // h = α̌ has dα(h) = 2.
        assert_eq!(root_values(&f, a.datum(), &[1]), vec![2]);
        let mut x = m.zero();
        x[a.h_index(0)] = 1;
        assert_eq!(m.centralizer(&x).len(), 1);
        assert_eq!(root_values(&f, a.datum(), &[0]), vec![0]);
    }

    #[test]
    fn sl2_mod_2_has_no_members() {
        let a = alg("SC(A1)");
        let m = FieldModel::new(&a, Fp::new(2));
        let opts = AuditOptions { samples: 20, ..AuditOptions::default() };
        for e in rs_audit(&m, &opts).unwrap() {
            assert_eq!(e.status, Status::NotApplicable);
            assert_eq!(e.witness["members"], 0);
        }
    }

    #[test]
    fn weyl_cap_is_enforced() {
        let a = alg("SC(E7)");
        let m = FieldModel::new(&a, Fp::new(7));
        let opts = AuditOptions { samples: 1, ..AuditOptions::default() };
        assert!(matches!(rs_audit(&m, &opts), Err(Error::WeylTooLarge { .. })));
    }
}
