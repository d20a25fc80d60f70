use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gradedmat::{graded_dagger, graded_kron, GradedMatrix};
use crate::laxengine::SigmaSet;
use crate::qring::LaurentPoly;
use crate::superroot::{AlgebraData, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RKind {
    Lax,
    Vector,
    Opposite,
}

/// An R-matrix on `V ⊗ W` with `V` the vector module.
#[derive(Clone, Debug, PartialEq)]
pub struct RTensor {
    pub kind: RKind,
    pub v_gradings: Vec<u8>,
    pub w_gradings: Vec<u8>,
    pub matrix: GradedMatrix,
}

impl RTensor {
    pub fn v_dim(&self) -> usize {
        self.v_gradings.len()
    }

    pub fn w_dim(&self) -> usize {
        self.w_gradings.len()
    }
}

/// `R = Σ_a E^a_a ⊗ q^{h_{ε_a}} + (q − q^{-1}) Σ_{ε_b > ε_a} (−1)^{[b]} E^a_b ⊗ q^{h_{ε_a}} σ̂_ba`.
pub fn assemble_r(sigma: &SigmaSet) -> Result<RTensor> {
    if !sigma.is_complete() {
        return Err(Error::InvalidInput("assemble_r needs a complete sigma set".into()));
    }
    let alg = sigma.algebra();
    let w = &sigma.rep;
    let g = alg.grading.clone();
    let qmq = LaurentPoly::q_minus_qinv();
    let mut r = GradedMatrix::zero(crate::gradedmat::kron_gradings(&g, &w.gradings));
    for a in 0..alg.dim() {
        let ea = GradedMatrix::elementary(g.clone(), a, a);
        r = &r + &graded_kron(&ea, &w.qh(&alg.weights[a], 2)?);
    }
    for ((b, a), x) in sigma.iter() {
        if x.is_zero() {
            continue;
        }
        let eab = GradedMatrix::elementary(g.clone(), a, b);
        let c = if alg.grading[b] == 1 { -&qmq } else { qmq.clone() };
        let term = graded_kron(&eab, &(&w.qh(&alg.weights[a], 2)? * x));
        r = &r + &term.scale(&c);
    }
    let kind = if w.name == "vector" { RKind::Vector } else { RKind::Lax };
    let out = RTensor {
        kind,
        v_gradings: g,
        w_gradings: w.gradings.clone(),
        matrix: r,
    };
    check_weightless(&out, alg, &w.weights)?;
    Ok(out)
}

/// Asserts that `r` commutes with `q^{h_w} ⊗ q^{h_w}` for every weight
/// direction `w`.
pub fn check_weightless(r: &RTensor, alg: &AlgebraData, w_weights: &[Weight]) -> Result<()> {
    let mut dirs = Vec::new();
    for i in 1..=alg.l {
        dirs.push(Weight::eps(alg.l, alg.k, i, 1));
    }
    for mu in 1..=alg.k {
        dirs.push(Weight::delta(alg.l, alg.k, mu, 1));
    }
    for d in &dirs {
        let kv = crate::gradedmat::qh_weights(&r.v_gradings, &alg.weights, d, 2)?;
        let kw = crate::gradedmat::qh_weights(&r.w_gradings, w_weights, d, 2)?;
        let k = graded_kron(&kv, &kw);
        if let Some(diff) = (&k * &r.matrix).first_difference(&(&r.matrix * &k)) {
            return Err(Error::relation(
                "R is weightless",
                format!("[q^h_({d}), R] nonzero at ({}, {})", diff.row + 1, diff.col + 1),
            ));
        }
    }
    Ok(())
}

/// The opposite operator built from `σ̂_ab = (−1)^{[b]([a]+[b])} σ̂_ba^†`:
/// `R^T = Σ_a E^a_a ⊗ q^{h_{ε_a}} + (q − q^{-1}) Σ (−1)^{[a]} E^b_a ⊗ σ̂_ab q^{h_{ε_a}}`.
pub fn opposite_r(sigma: &SigmaSet) -> Result<RTensor> {
    if !sigma.is_complete() {
        return Err(Error::InvalidInput("opposite_r needs a complete sigma set".into()));
    }
    let alg = sigma.algebra();
    let w = &sigma.rep;
    let g = alg.grading.clone();
    let qmq = LaurentPoly::q_minus_qinv();
    let mut r = GradedMatrix::zero(crate::gradedmat::kron_gradings(&g, &w.gradings));
    for a in 0..alg.dim() {
        let ea = GradedMatrix::elementary(g.clone(), a, a);
        r = &r + &graded_kron(&ea, &w.qh(&alg.weights[a], 2)?);
    }
    for ((b, a), x) in sigma.iter() {
        if x.is_zero() {
            continue;
        }
        let mut sab = graded_dagger(x);
        if g[b] * (g[a] + g[b]) % 2 == 1 {
            sab = -&sab;
        }
        let eba = GradedMatrix::elementary(g.clone(), b, a);
        let c = if g[a] == 1 { -&qmq } else { qmq.clone() };
        let term = graded_kron(&eba, &(&sab * &w.qh(&alg.weights[a], 2)?));
        r = &r + &term.scale(&c);
    }
    Ok(RTensor {
        kind: RKind::Opposite,
        v_gradings: g,
        w_gradings: w.gradings.clone(),
        matrix: r,
    })
}

impl RTensor {
    pub fn to_json_value(&self, alg: &AlgebraData, rep_name: &str) -> serde_json::Value {
        json!({
            "kind": self.kind,
            "algebra": {"m": alg.m, "n": alg.n},
            "rep_name": rep_name,
            "v_gradings": self.v_gradings,
            "w_gradings": self.w_gradings,
            "entries": self.matrix.to_triples(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            kind: RKind,
            v_gradings: Vec<u8>,
            w_gradings: Vec<u8>,
            entries: Vec<(usize, usize, LaurentPoly)>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Schema(format!("R-matrix JSON: {e}")))?;
        let g = crate::gradedmat::kron_gradings(&raw.v_gradings, &raw.w_gradings);
        Ok(RTensor {
            kind: raw.kind,
            matrix: GradedMatrix::from_triples(g, raw.entries)?,
            v_gradings: raw.v_gradings,
            w_gradings: raw.w_gradings,
        })
    }
}
