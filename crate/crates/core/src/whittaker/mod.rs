//! The twisted Weyl-group action on `V`-valued polynomial functions on
//! `Σ = e + t` (with `V` the adjoint representation), the form `⟨,⟩_Gr`
//! and the map `τ` linking it to the action on functions on `t*`.

pub mod form;
pub mod poly;

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

pub use form::{gr_form, tau_in, tau_root_audit, GrForm};
pub use poly::{monomials_up_to, Monomial, ScalarPoly, VectorPoly};

use crate::chevalley::{divided_powers, ChevalleyAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{elim, Field, Matrix};
use crate::report::{task_seed, CheckEntry, Status};
use crate::roots::weyl::{simple_reflection_char, simple_reflection_cochar, weyl_elements, DEFAULT_WEYL_CAP};
use crate::roots::PrimeTable;

/// Largest truncation degree accepted by the audit.
pub const MAX_DEGREE: usize = 10;
/// Largest rank audited by default; braid words grow quickly past this.
pub const MAX_RANK: usize = 2;
/// Degree used for the invariant-dimension comparison.
pub const INVARIANT_DEGREE: usize = 4;

/// Coordinates the functions are written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `h ∈ t` in `X_*` coordinates, for functions on `Σ = e + t`.
    Sigma,
    /// `ξ ∈ t*` in `X*` coordinates.
    DualTorus,
}

/// Data for one simple reflection: `(s_α f)(c) = u_{−α}(ℓ(c)) f(S c)`.
#[derive(Clone)]
struct SimpleOperator<E> {
    substitution: Vec<ScalarPoly<E>>,
    parameter: ScalarPoly<E>,
    /// `(ad e_{−α})^k / k!` on `V`.
    powers: Vec<Matrix<E>>,
}

/// `V ⊗ O(chart)` restricted to degree `≤ degree`, with the twisted
/// simple reflections. Results above `cap` are refused, never truncated.
#[derive(Clone)]
pub struct TruncatedTwistedModule<'a, F: Field> {
    pub alg: &'a ChevalleyAlgebra,
    pub field: F,
    pub degree: usize,
    pub cap: usize,
    pub chart: Chart,
    operators: Vec<SimpleOperator<F::Elem>>,
}

/// Order of `s_i s_j` from the Cartan integers.
pub fn braid_order(alg: &ChevalleyAlgebra, i: usize, j: usize) -> usize {
    let c = alg.datum().cartan_matrix();
    match c[i][j] * c[j][i] {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

impl<'a, F: Field> TruncatedTwistedModule<'a, F> {
    /// `(s_α f)(e + h) = u_{−α}(−dα(h)) · f(e + s_α h)`.
    pub fn new(alg: &'a ChevalleyAlgebra, field: F, degree: usize) -> Result<Self> {
        let rd = alg.datum();
        let r = rd.rank();
        let mut ops = Vec::new();
        for (i, &root) in rd.simple_indices().iter().enumerate() {
            let s = simple_reflection_cochar(rd, i);
            let neg_weight: Vec<F::Elem> = rd.root(root).weight.iter().map(|&w| field.from_i64(-w)).collect();
            ops.push(Self::operator(alg, &field, &s, r, &neg_weight, rd.negative_of(root))?);
        }
        Ok(Self::assemble(alg, field, degree, Chart::Sigma, ops))
    }

    /// `(s_α f)(ξ) = u_{−α}(−|α|² ⟨ξ, h_α⟩) · f(s_α ξ)` on `t*`.
    pub fn geometric(alg: &'a ChevalleyAlgebra, field: F, degree: usize, form: &GrForm) -> Result<Self> {
        let rd = alg.datum();
        let r = rd.rank();
        let mut ops = Vec::new();
        for (i, &root) in rd.simple_indices().iter().enumerate() {
            let s = simple_reflection_char(rd, i);
            let len = form.squared_lengths[root];
            let coeffs: Vec<F::Elem> = rd.root(root).coroot.iter().map(|&c| field.from_i64(-len * c)).collect();
            ops.push(Self::operator(alg, &field, &s, r, &coeffs, rd.negative_of(root))?);
        }
        Ok(Self::assemble(alg, field, degree, Chart::DualTorus, ops))
    }

    fn operator(
        alg: &ChevalleyAlgebra,
        field: &F,
        reflection: &[i64],
        r: usize,
        parameter: &[F::Elem],
        negative: usize,
    ) -> Result<SimpleOperator<F::Elem>> {
        let substitution = (0..r)
            .map(|k| {
                let row: Vec<F::Elem> = (0..r).map(|j| field.from_i64(reflection[k * r + j])).collect();
                poly::linear(field, &row)
            })
            .collect();
        let powers = divided_powers(alg, negative)?.iter().map(|p| elim::reduce(field, p)).collect();
        Ok(SimpleOperator {
            substitution,
            parameter: poly::linear(field, parameter),
            powers,
        })
    }

    fn assemble(alg: &'a ChevalleyAlgebra, field: F, degree: usize, chart: Chart, operators: Vec<SimpleOperator<F::Elem>>) -> Self {
        let ell = operators.len();
        let k_max = operators.iter().map(|o| o.powers.len() - 1).max().unwrap_or(0);
        let m_max = (0..ell)
            .flat_map(|i| (0..ell).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| braid_order(alg, i, j))
            .max()
            .unwrap_or(1);
        TruncatedTwistedModule {
            alg,
            field,
            degree,
            cap: degree + 2 * m_max * k_max,
            chart,
            operators,
        }
    }

    pub fn vars(&self) -> usize {
        self.alg.rank()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn simple_count(&self) -> usize {
        self.operators.len()
    }

    /// Basis `c^m · b_i` of the functions of degree `≤ degree`.
    pub fn basis(&self, degree: usize) -> Vec<VectorPoly<F::Elem>> {
        let mut out = Vec::new();
        for m in monomials_up_to(self.vars(), degree) {
            for i in 0..self.dim() {
                out.push(VectorPoly::basis_function(&self.field, self.dim(), m.clone(), i));
            }
        }
        out
    }

    /// The twisted action of the `i`-th simple reflection.
    pub fn twisted_action(&self, i: usize, f: &VectorPoly<F::Elem>) -> Result<VectorPoly<F::Elem>> {
        if f.degree() > self.cap {
            return Err(Error::TruncationOverflow { degree: f.degree(), cap: self.cap });
        }
        let field = &self.field;
        let op = &self.operators[i];
        let g = f.substitute(field, &op.substitution, self.vars());
        let mut out = VectorPoly::zero(self.dim());
        let mut ell_k = poly::scalar_one(field, self.vars());
        for p in &op.powers {
            out = out.add(field, &g.map_matrix(field, p).scale(field, &ell_k));
            ell_k = poly::scalar_mul(field, &ell_k, &op.parameter);
        }
        if out.degree() > self.cap {
            return Err(Error::TruncationOverflow { degree: out.degree(), cap: self.cap });
        }
        Ok(out)
    }

    /// Applies a word in the simple reflections, rightmost letter first.
    pub fn apply_word(&self, word: &[usize], f: &VectorPoly<F::Elem>) -> Result<VectorPoly<F::Elem>> {
        word.iter().rev().try_fold(f.clone(), |acc, &i| self.twisted_action(i, &acc))
    }

    /// The tautological section `e + h ↦ e + h` on `Σ`.
    pub fn tautological_section(&self) -> VectorPoly<F::Elem> {
        let field = &self.field;
        let r = self.vars();
        let mut f = VectorPoly::zero(self.dim());
        let e: Vec<F::Elem> = self.alg.principal_nilpotent().e.iter().map(|&v| field.from_i64(v)).collect();
        f.add_term(field, vec![0; r], &e);
        for k in 0..r {
            let mut m = vec![0; r];
            m[k] = 1;
            let mut v = vec![field.zero(); self.dim()];
            v[self.alg.h_index(k)] = field.one();
            f.add_term(field, m, &v);
        }
        f
    }
}

/// `P(h) = Σ_{α ∈ Φ} dα(h)²`, a `W`-invariant quadratic on `t`.
pub fn root_square_sum<F: Field>(field: &F, alg: &ChevalleyAlgebra) -> ScalarPoly<F::Elem> {
    let mut out = ScalarPoly::new();
    for root in alg.datum().roots() {
        let w: Vec<F::Elem> = root.weight.iter().map(|&v| field.from_i64(v)).collect();
        let l = poly::linear(field, &w);
        out = poly::scalar_add(field, &out, &poly::scalar_mul(field, &l, &l));
    }
    out
}

/// Dimension of `{f : M f = 0}` where the columns of `M` are the
/// coordinate vectors of `images[j]`.
fn kernel_dim<F: Field>(field: &F, images: &[VectorPoly<F::Elem>]) -> usize {
    let mut index: HashMap<(Monomial, usize), usize> = HashMap::new();
    let mut entries = Vec::new();
    for (j, img) in images.iter().enumerate() {
        for (m, v) in &img.terms {
            for (i, x) in v.iter().enumerate() {
                if field.is_zero(x) {
                    continue;
                }
                let next = index.len();
                let row = *index.entry((m.clone(), i)).or_insert(next);
                entries.push((row, j, x.clone()));
            }
        }
    }
    let mut mat = Matrix::filled(index.len(), images.len(), field.zero());
    for (r, c, x) in entries {
        mat[(r, c)] = x;
    }
    images.len() - if index.is_empty() { 0 } else { elim::rank(field, &mat) }
}

fn not_applicable(group: &str, p: u64, reason: &str) -> Vec<CheckEntry> {
    [
        ("waction.involution", "twisted-reflection-involution"),
        ("waction.braid", "twisted-braid-relations"),
        ("waction.tautological-section", "unipotent-cocycle-on-sigma"),
        ("waction.tau-pullback", "geometric-algebraic-agreement"),
        ("waction.invariant-linearity", "invariant-polynomial-linearity"),
        ("waction.invariant-dimension", "invariant-dimension-oracles"),
    ]
    .iter()
    .map(|(c, s)| CheckEntry::new(group, p, c, s, Status::NotApplicable, json!({ "reason": reason })))
    .collect()
}

/// Runs the `τ` audits and checks the twisted action at truncation degree
/// `degree`: involutions, braid relations, invariance of the tautological
/// section, agreement with the `t*` formula under `τ`, linearity over
/// `W`-invariant polynomials, and two independent counts of invariants.
pub fn waction_audit<F: Field>(
    alg: &ChevalleyAlgebra,
    field: F,
    degree: usize,
    seed: u64,
    table: &PrimeTable,
) -> Result<Vec<CheckEntry>> {
    let rd = alg.datum();
    let group = rd.spec.to_string();
    let p = field.characteristic().value();
    if degree > MAX_DEGREE {
        return Err(Error::Config(format!("truncation degree {degree} exceeds {MAX_DEGREE}")));
    }
    let form = match gr_form(rd) {
        Ok(f) => f,
        Err(Error::UnsupportedGroup(reason)) => return Ok(not_applicable(&group, p, &reason)),
        Err(e) => return Err(e),
    };
    if rd.rank() > MAX_RANK {
        return Err(Error::BruteForceTooLarge(format!("twisted action audit needs rank ≤ {MAX_RANK}, got {}", rd.rank())));
    }
    if p != 0 && !table.is_very_good(rd, p) {
        return Ok(not_applicable(&group, p, &format!("p={p} is not very good for {group}")));
    }
    let mut entries = tau_root_audit(&field, rd, table)?;

    let module = TruncatedTwistedModule::new(alg, field.clone(), degree)?;
    let basis = module.basis(degree);
    let ell = module.simple_count();

    let involution_bad: Vec<(usize, usize)> = (0..ell)
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| Ok((i, j, module.apply_word(&[i, i], &basis[j])? == basis[j])))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|t| !t.2)
        .map(|(i, j, _)| (i, j))
        .collect();
    entries.push(CheckEntry::new(
        &group,
        p,
        "waction.involution",
        "twisted-reflection-involution",
        Status::from_bool(involution_bad.is_empty()),
        json!({ "degree": degree, "basis_functions": basis.len(), "simple_reflections": ell, "failures": involution_bad.len(), "first_failure": involution_bad.first() }),
    ));

    let mut braid_words = Vec::new();
    for i in 0..ell {
        for j in i + 1..ell {
            let m = braid_order(alg, i, j);
            let word: Vec<usize> = (0..m).flat_map(|_| [i, j]).collect();
            braid_words.push((i, j, m, word));
        }
    }
    let mut braid_failures = 0usize;
    let mut braid_first = None;
    let mut braid_checked = 0usize;
    for (i, j, m, word) in &braid_words {
        let results: Vec<bool> = basis
            .par_iter()
            .map(|f| Ok(module.apply_word(word, f)? == *f))
            .collect::<Result<_>>()?;
        braid_checked += results.len();
        for (k, ok) in results.iter().enumerate() {
            if !ok {
                braid_failures += 1;
                braid_first.get_or_insert(json!({ "pair": [i, j], "order": m, "basis_function": k }));
            }
        }
    }
    entries.push(CheckEntry::new(
        &group,
        p,
        "waction.braid",
        "twisted-braid-relations",
        Status::from_bool(braid_failures == 0),
        json!({ "pairs": braid_words.len(), "checked": braid_checked, "failures": braid_failures, "first_failure": braid_first, "cap": module.cap }),
    ));

    let taut = module.tautological_section();
    let mut taut_bad = Vec::new();
    for i in 0..ell {
        if module.twisted_action(i, &taut)? != taut {
            taut_bad.push(i);
        }
    }
    entries.push(CheckEntry::new(
        &group,
        p,
        "waction.tautological-section",
        "unipotent-cocycle-on-sigma",
        Status::from_bool(taut_bad.is_empty()),
        json!({ "simple_reflections": ell, "failing": taut_bad }),
    ));

    entries.push(tau_pullback_check(alg, &field, degree, &form, &module, &basis)?);
    entries.push(invariant_linearity_check(alg, &field, &module, &basis)?);
    entries.push(invariant_dimension_check(alg, &field, &module, seed)?);
    Ok(entries)
}

/// `τ^*(s_α^Σ f) = s_α^{t*}(τ^* f)` on every basis function, where
/// `(τ^* f)(ξ) = f(e + τ(ξ))`.
fn tau_pullback_check<F: Field>(
    alg: &ChevalleyAlgebra,
    field: &F,
    degree: usize,
    form: &GrForm,
    module: &TruncatedTwistedModule<'_, F>,
    basis: &[VectorPoly<F::Elem>],
) -> Result<CheckEntry> {
    let rd = alg.datum();
    let group = rd.spec.to_string();
    let p = field.characteristic().value();
    let Some(tau) = tau_in(field, form) else {
        return Ok(CheckEntry::new(
            &group,
            p,
            "waction.tau-pullback",
            "geometric-algebraic-agreement",
            Status::Fail,
            json!({ "reason": "τ has a denominator divisible by p" }),
        ));
    };
    let r = rd.rank();
    let forms: Vec<ScalarPoly<F::Elem>> = (0..r).map(|k| poly::linear(field, tau.row(k))).collect();
    let geo = TruncatedTwistedModule::geometric(alg, field.clone(), degree, form)?;
    let pull = |f: &VectorPoly<F::Elem>| f.substitute(field, &forms, r);
    let checks: Vec<(usize, usize, bool)> = (0..module.simple_count())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let lhs = pull(&module.twisted_action(i, &basis[j])?);
            let rhs = geo.twisted_action(i, &pull(&basis[j]))?;
            Ok((i, j, lhs == rhs))
        })
        .collect::<Result<_>>()?;
    let bad = checks.iter().find(|c| !c.2).map(|c| json!({ "simple": c.0, "basis_function": c.1 }));
    Ok(CheckEntry::new(
        &group,
        p,
        "waction.tau-pullback",
        "geometric-algebraic-agreement",
        Status::from_bool(bad.is_none()),
        json!({ "checked": checks.len(), "counterexample": bad }),
    ))
}

/// `P ∘ s_α = P` and `s_α(P f) = P · s_α(f)` for `P = Σ dα²`.
fn invariant_linearity_check<F: Field>(
    alg: &ChevalleyAlgebra,
    field: &F,
    module: &TruncatedTwistedModule<'_, F>,
    basis: &[VectorPoly<F::Elem>],
) -> Result<CheckEntry> {
    let rd = alg.datum();
    let group = rd.spec.to_string();
    let p = field.characteristic().value();
    let pp = root_square_sum(field, alg);
    let as_vector = VectorPoly {
        dim: 1,
        terms: pp.iter().map(|(m, c)| (m.clone(), vec![c.clone()])).collect(),
    };
    let invariant = (0..module.simple_count())
        .all(|i| as_vector.substitute(field, &module.operators[i].substitution, module.vars()) == as_vector);
    let checks: Vec<bool> = (0..module.simple_count())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let lhs = module.twisted_action(i, &basis[j].scale(field, &pp))?;
            let rhs = module.twisted_action(i, &basis[j])?.scale(field, &pp);
            Ok(lhs == rhs)
        })
        .collect::<Result<_>>()?;
    let failures = checks.iter().filter(|ok| !**ok).count();
    Ok(CheckEntry::new(
        &group,
        p,
        "waction.invariant-linearity",
        "invariant-polynomial-linearity",
        Status::from_bool(invariant && failures == 0),
        json!({ "polynomial_invariant": invariant, "checked": checks.len(), "failures": failures }),
    ))
}

/// Invariants of degree `≤ min(D, 4)` counted two ways: the joint kernel
/// of `s_α − 1` over simple `α`, and the kernel of `Σ_w w − |W|` over an
/// enumerated `W`. The second needs `|W|` invertible. A seeded random
/// invariant from the first method is also checked to be fixed by every
/// enumerated `w`.
fn invariant_dimension_check<F: Field>(
    alg: &ChevalleyAlgebra,
    field: &F,
    module: &TruncatedTwistedModule<'_, F>,
    seed: u64,
) -> Result<CheckEntry> {
    let rd = alg.datum();
    let group = rd.spec.to_string();
    let p = field.characteristic().value();
    let d = module.degree.min(INVARIANT_DEGREE);
    let basis = module.basis(d);
    let weyl = weyl_elements(rd, DEFAULT_WEYL_CAP)?;
    let order = field.from_i64(weyl.len() as i64);

    let stacked: Vec<VectorPoly<F::Elem>> = basis
        .par_iter()
        .map(|f| {
            // Tag each simple reflection's residual with its own coordinate
            // block by shifting the vector index.
            let mut out = VectorPoly::zero(module.dim() * module.simple_count());
            for i in 0..module.simple_count() {
                let diff = module.twisted_action(i, f)?.sub(field, f);
                for (m, v) in &diff.terms {
                    let mut w = vec![field.zero(); out.dim];
                    w[i * module.dim()..(i + 1) * module.dim()].clone_from_slice(v);
                    out.add_term(field, m.clone(), &w);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let by_generators = kernel_dim(field, &stacked);

    let by_averaging = if field.is_zero(&order) {
        None
    } else {
        let averaged: Vec<VectorPoly<F::Elem>> = basis
            .par_iter()
            .map(|f| {
                let mut sum = VectorPoly::zero(module.dim());
                for w in &weyl {
                    sum = sum.add(field, &module.apply_word(&w.word, f)?);
                }
                let scaled: ScalarPoly<F::Elem> = [(vec![0; module.vars()], order.clone())].into_iter().collect();
                Ok(sum.sub(field, &f.scale(field, &scaled)))
            })
            .collect::<Result<_>>()?;
        Some(kernel_dim(field, &averaged))
    };

    // A random combination of the averaged basis is invariant under every w.
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, &[&group, "invariant-probe"], 0));
    let probe_ok = if field.is_zero(&order) {
        true
    } else {
        let mut f = VectorPoly::zero(module.dim());
        for b in basis.iter().take(3 * module.dim()) {
            let c = field.sample(&mut rng);
            f = f.add(field, &b.scale(field, &[(vec![0; module.vars()], c)].into_iter().collect()));
        }
        let mut avg = VectorPoly::zero(module.dim());
        for w in &weyl {
            avg = avg.add(field, &module.apply_word(&w.word, &f)?);
        }
        let mut ok = true;
        for i in 0..module.simple_count() {
            ok &= module.twisted_action(i, &avg)? == avg;
        }
        ok
    };

    let (status, reason) = match by_averaging {
        Some(avg) => (Status::from_bool(avg == by_generators && probe_ok), None),
        None => (Status::NotApplicable, Some(format!("|W| = {} is divisible by p={p}", weyl.len()))),
    };
    Ok(CheckEntry::new(
        &group,
        p,
        "waction.invariant-dimension",
        "invariant-dimension-oracles",
        status,
        json!({
            "degree": d,
            "weyl_order": weyl.len(),
            "by_generators": by_generators,
            "by_averaging": by_averaging,
            "averaged_probe_invariant": probe_ok,
            "reason": reason,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley_algebra;
    use crate::linalg::Fp;
    use crate::roots::build_root_datum;

    fn alg(g: &str) -> ChevalleyAlgebra {
        build_chevalley_algebra(&build_root_datum(g).unwrap()).unwrap()
    }

    #[test]
    fn sl2_action_on_constant_e() {
        let a = alg("SC(A1)");
        let f = Fp::new(7);
        let m = TruncatedTwistedModule::new(&a, f, 6).unwrap();
        // Basis (e, f, h); h = c·α̌ so dα(h) = 2c, and the result is
        // e + 2c·h − 4c²·f.
        let e = VectorPoly::basis_function(&f, 3, vec![0], 0);
        let out = m.twisted_action(0, &e).unwrap();
        assert_eq!(out.coefficient(&f, &vec![0], 0), 1);
        assert_eq!(out.coefficient(&f, &vec![1], 2), 2);
        assert_eq!(out.coefficient(&f, &vec![2], 1), f.from_i64(-4));
        assert_eq!(out.terms.len(), 3);
    }

    #[test]
    fn lowest_vector_is_fixed() {
        let a = alg("SC(A1)");
        let f = Fp::new(5);
        let m = TruncatedTwistedModule::new(&a, f, 6).unwrap();
        let low = VectorPoly::basis_function(&f, 3, vec![0], 1);
        assert_eq!(m.twisted_action(0, &low).unwrap(), low);
    }

    #[test]
    fn involution_on_all_a1_basis_functions() {
        let a = alg("SC(A1)");
        let f = Fp::new(5);
        let m = TruncatedTwistedModule::new(&a, f, 6).unwrap();
        let basis = m.basis(6);
        assert_eq!(basis.len(), 21);
        for b in &basis {
            assert_eq!(&m.apply_word(&[0, 0], b).unwrap(), b);
        }
    }

    #[test]
    fn flipped_parameter_breaks_the_cocycle() {
        let a = alg("SC(A2)");
        let f = Fp::new(7);
        let mut m = TruncatedTwistedModule::new(&a, f, 2).unwrap();
        for op in &mut m.operators {
            op.parameter = op.parameter.iter().map(|(k, v)| (k.clone(), f.neg(v))).collect();
        }
        let t = m.tautological_section();
        assert_ne!(m.twisted_action(0, &t).unwrap(), t);
    }

    #[test]
    fn overflow_is_refused() {
        let a = alg("SC(A1)");
        let f = Fp::new(5);
        let m = TruncatedTwistedModule::new(&a, f, 2).unwrap();
        let high = VectorPoly::basis_function(&f, 3, vec![m.cap as u32], 0);
        assert!(matches!(m.twisted_action(0, &high), Err(Error::TruncationOverflow { .. })));
    }

    #[test]
    fn audits_pass() {
        for g in ["SC(A1)", "SC(A2)", "SC(B2)"] {
            let a = alg(g);
            for e in waction_audit(&a, Fp::new(5), 4, 0, &PrimeTable::default()).unwrap() {
                assert_eq!(e.status, Status::Pass, "{e:?}");
            }
        }
    }

    #[test]
    fn gated_cases() {
        let a = alg("SC(B2)");
        for e in waction_audit(&a, Fp::new(2), 2, 0, &PrimeTable::default()).unwrap() {
            assert_eq!(e.status, Status::NotApplicable);
        }
        let g = alg("GL(2)");
        for e in waction_audit(&g, Fp::new(5), 2, 0, &PrimeTable::default()).unwrap() {
            assert_eq!(e.status, Status::NotApplicable);
        }
        assert!(matches!(waction_audit(&a, Fp::new(5), 11, 0, &PrimeTable::default()), Err(Error::Config(_))));
    }
}
