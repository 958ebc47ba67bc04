//! Structure constants `N_{α,β}` of a Chevalley basis.
//!
//! Signs on extraspecial pairs are fixed to be positive; everything else is
//! forced by the standard relations between the `N_{α,β}`. Simply connected
//! factors use this recursion; `GL(n)` factors read the constants off the
//! commutators of elementary matrices.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::roots::{FactorSpec, RootDatum};

type Q = Ratio<i64>;

/// `N_{α,β}` for every ordered pair of roots whose sum is a root.
pub fn structure_constants(rd: &RootDatum) -> Result<HashMap<(usize, usize), i64>> {
    let mut out = HashMap::new();
    for (fi, info) in rd.factors.iter().enumerate() {
        match info.spec {
            FactorSpec::GeneralLinear { .. } => gl_constants(rd, fi, &mut out),
            FactorSpec::SimplyConnected { .. } => sc_constants(rd, fi, &mut out)?,
        }
    }
    Ok(out)
}

/// Largest `p` with `β - pα` a root.
pub fn string_below(rd: &RootDatum, alpha: usize, beta: usize) -> i64 {
    let a = &rd.root(alpha).simple_coeffs;
    let mut c = rd.root(beta).simple_coeffs.clone();
    let mut p = 0;
    loop {
        for (x, y) in c.iter_mut().zip(a) {
            *x -= y;
        }
        if rd.root_index(&c).is_none() {
            return p;
        }
        p += 1;
    }
}

fn gl_constants(rd: &RootDatum, factor: usize, out: &mut HashMap<(usize, usize), i64>) {
    // e_{ε_i - ε_j} = E_ij; [E_ij, E_kl] = δ_jk E_il - δ_li E_kj.
    let off = rd.factors[factor].lattice_offset;
    let ends = |r: usize| {
        let w = &rd.root(r).weight;
        let i = (0..w.len()).find(|&k| w[k] == 1).expect("GL root has a +1 entry") - off;
        let j = (0..w.len()).find(|&k| w[k] == -1).expect("GL root has a -1 entry") - off;
        (i, j)
    };
    let idx: Vec<usize> = (0..rd.n_roots()).filter(|&r| rd.root(r).factor == factor).collect();
    for &a in &idx {
        for &b in &idx {
            if rd.sum_index(a, b).is_none() {
                continue;
            }
            let ((i, j), (k, l)) = (ends(a), ends(b));
            let n = if j == k { 1 } else if l == i { -1 } else { 0 };
            out.insert((a, b), n);
        }
    }
}

fn sc_constants(rd: &RootDatum, factor: usize, out: &mut HashMap<(usize, usize), i64>) -> Result<()> {
    let pos: Vec<usize> = (0..rd.n_positive()).filter(|&r| rd.root(r).factor == factor).collect();
    let len = |r: usize| Q::from_integer(rd.root(r).length);
    let mut npos: HashMap<(usize, usize), Q> = HashMap::new();

    // N for arbitrary roots, reduced to positive pairs of smaller height.
    fn n_any(rd: &RootDatum, npos: &HashMap<(usize, usize), Q>, x: usize, y: usize) -> Q {
        let Some(z) = rd.sum_index(x, y) else {
            return Q::zero();
        };
        let len = |r: usize| Q::from_integer(rd.root(r).length);
        let (xp, yp) = (rd.root(x).is_positive(), rd.root(y).is_positive());
        match (xp, yp) {
            (true, true) => npos[&(x, y)],
            (false, false) => -npos[&(rd.negative_of(x), rd.negative_of(y))],
            (true, false) => {
                if rd.root(z).is_positive() {
                    -len(z) / len(x) * npos[&(rd.negative_of(y), z)]
                } else {
                    let eta = rd.negative_of(z);
                    len(eta) / len(y) * npos[&(eta, x)]
                }
            }
            (false, true) => -n_any(rd, npos, y, x),
        }
    }

    for &xi in &pos {
        let pairs: Vec<(usize, usize)> = pos
            .iter()
            .filter(|&&a| a < xi)
            .filter_map(|&a| {
                let c: Vec<i64> = rd
                    .root(xi)
                    .simple_coeffs
                    .iter()
                    .zip(&rd.root(a).simple_coeffs)
                    .map(|(u, v)| u - v)
                    .collect();
                rd.root_index(&c).filter(|&b| rd.root(b).is_positive() && a < b).map(|b| (a, b))
            })
            .collect();
        let Some(&(gamma, delta)) = pairs.first() else {
            continue;
        };
        let n_gd = Q::from_integer(string_below(rd, gamma, delta) + 1);
        npos.insert((gamma, delta), n_gd);
        npos.insert((delta, gamma), -n_gd);
        let n_mgmd = -n_gd;
        let (mg, md) = (rd.negative_of(gamma), rd.negative_of(delta));
        for &(a, b) in &pairs[1..] {
            let mut s = Q::zero();
            if let Some(bg) = rd.sum_index(b, mg) {
                s += n_any(rd, &npos, b, mg) * n_any(rd, &npos, a, md) / len(bg);
            }
            if let Some(ag) = rd.sum_index(a, mg) {
                s += n_any(rd, &npos, mg, a) * n_any(rd, &npos, b, md) / len(ag);
            }
            let n = -len(xi) / n_mgmd * s;
            npos.insert((a, b), n);
            npos.insert((b, a), -n);
        }
    }

    let all: Vec<usize> = (0..rd.n_roots()).filter(|&r| rd.root(r).factor == factor).collect();
    for &a in &all {
        for &b in &all {
            if rd.sum_index(a, b).is_none() {
                continue;
            }
            let n = n_any(rd, &npos, a, b);
            if !n.is_integer() || n.is_zero() {
                return Err(Error::StructureConstant(format!(
                    "N({}, {}) = {n} is not a nonzero integer",
                    rd.root_label(a),
                    rd.root_label(b)
                )));
            }
            let expected = string_below(rd, a, b) + 1;
            if n.to_integer().abs() != expected {
                return Err(Error::StructureConstant(format!(
                    "|N({}, {})| = {} but the root string predicts {expected}",
                    rd.root_label(a),
                    rd.root_label(b),
                    n.abs()
                )));
            }
            out.insert((a, b), n.to_integer());
        }
    }
    Ok(())
}
