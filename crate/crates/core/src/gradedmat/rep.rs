use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedmat::{graded_kron, kron_gradings, GradedMatrix};
use crate::qring::{LaurentPoly, Rational};
use crate::superroot::{build_algebra, AlgebraData, Weight};

/// A finite-dimensional module given by matrices for every `e_a`, `f_a`.
///
/// Cartan elements act diagonally through the basis weights:
/// `q^{t h_w} = diag(q^{t (w, wt_b)})`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub algebra: AlgebraData,
    pub name: String,
    pub gradings: Vec<u8>,
    pub weights: Vec<Weight>,
    /// Raising generators, in the order of `algebra.simple_roots`.
    pub e: Vec<GradedMatrix>,
    /// Lowering generators, in the order of `algebra.simple_roots`.
    pub f: Vec<GradedMatrix>,
}

/// `π(σ^a_b) = E^a_b − (−1)^{[a]([a]+[b])} ξ_a ξ_b E^{b̄}_{ā}` on the vector
/// module.
pub fn pi_sigma(alg: &AlgebraData, a: usize, b: usize) -> GradedMatrix {
    let g = alg.grading.clone();
    let mut m = GradedMatrix::elementary(g.clone(), a, b);
    let odd = alg.grading[a] * (alg.grading[a] + alg.grading[b]) % 2 == 1;
    let mut c = alg.xi[a] * alg.xi[b];
    if !odd {
        c = -c;
    }
    m.add_to(alg.bar[b], alg.bar[a], &LaurentPoly::from_int(c));
    m
}

pub fn build_vector_rep(alg: &AlgebraData) -> Result<Representation> {
    let mut e = Vec::new();
    let mut f = Vec::new();
    for r in &alg.simple_roots {
        e.push(pi_sigma(alg, r.e_row, r.e_col).with_parity(r.parity)?);
        let fm = pi_sigma(alg, r.e_col, r.e_row).scale(&LaurentPoly::from_int(r.f_sign));
        f.push(fm.with_parity(r.parity)?);
    }
    let rep = Representation {
        algebra: alg.clone(),
        name: "vector".into(),
        gradings: alg.grading.clone(),
        weights: alg.weights.clone(),
        e,
        f,
    };
    rep.validate()?;
    Ok(rep)
}

pub fn build_trivial_rep(alg: &AlgebraData) -> Result<Representation> {
    let zero = GradedMatrix::zero(vec![0]);
    let rep = Representation {
        algebra: alg.clone(),
        name: "trivial".into(),
        gradings: vec![0],
        weights: vec![alg.zero_weight()],
        e: vec![zero.clone(); alg.simple_roots.len()],
        f: vec![zero; alg.simple_roots.len()],
    };
    rep.validate()?;
    Ok(rep)
}

/// `(q^n − q^{−n}) / (q − q^{−1})`.
pub fn q_number(n: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for j in 0..n.abs() {
        p += &LaurentPoly::q_int(n.abs() - 1 - 2 * j);
    }
    if n < 0 {
        -p
    } else {
        p
    }
}

/// Diagonal `q^{t h_w}` on a basis with the given weights; `t = t2 / 2`.
pub fn qh_weights(gradings: &[u8], weights: &[Weight], w: &Weight, t2: i64) -> Result<GradedMatrix> {
    let mut diag = Vec::with_capacity(weights.len());
    for wt in weights {
        let e = &Weight::bilinear(w, wt) * &Rational::from_int(t2);
        let e = e
            .to_i64()
            .ok_or_else(|| Error::InvalidInput(format!("q^{{({t2}/2)({w}, {wt})}} is not a power of q^(1/2)")))?;
        diag.push(LaurentPoly::s_pow(e));
    }
    GradedMatrix::diagonal(gradings.to_vec(), diag).with_parity(0)
}

/// `q^{t h_w}` in `rep`; `t` must be a half-integer.
pub fn qh_diag(rep: &Representation, w: &Weight, t: &Rational) -> Result<GradedMatrix> {
    let t2 = (t * &Rational::from_int(2))
        .to_i64()
        .ok_or_else(|| Error::InvalidInput(format!("q^{{{t} h}}: t is not a half-integer")))?;
    rep.qh(w, t2)
}

/// `ad X ∘ Y = X Y − (−1)^{p_X p_Y} (K Y K^{-1}) X`.
pub fn adjoint(
    x: &GradedMatrix,
    px: u8,
    k: &GradedMatrix,
    kinv: &GradedMatrix,
    y: &GradedMatrix,
    py: u8,
) -> GradedMatrix {
    let conj = &(k * y) * kinv;
    let second = &conj * x;
    if px * py % 2 == 1 {
        &(x * y) + &second
    } else {
        &(x * y) - &second
    }
}

/// One standard q-Serre instance `(ad X_b ∘)^{1−a_bc} X_c`.
#[derive(Clone, Debug)]
pub struct SerreInstance {
    pub b: usize,
    pub c: usize,
    pub power: u32,
    pub value: GradedMatrix,
}

/// Operators realising one family (raising or lowering) of simple generators
/// in some module: `ops[a]` is the generator, `k[a]`/`kinv[a]` are
/// `q^{±h_a}` in the same module.
pub struct GeneratorFamily {
    pub ops: Vec<GradedMatrix>,
    pub k: Vec<GradedMatrix>,
    pub kinv: Vec<GradedMatrix>,
}

/// Evaluates every standard q-Serre word for `b ≠ c` with `(α_b, α_b) ≠ 0`.
pub fn serre_words(alg: &AlgebraData, fam: &GeneratorFamily) -> Result<Vec<SerreInstance>> {
    let roots = &alg.simple_roots;
    let mut out = Vec::new();
    for (b, rb) in roots.iter().enumerate() {
        if Weight::bilinear(&rb.weight, &rb.weight).is_zero() {
            continue;
        }
        for (c, rc) in roots.iter().enumerate() {
            if b == c {
                continue;
            }
            let power = (&Rational::one() - &alg.cartan[b][c])
                .to_i64()
                .filter(|p| *p >= 0)
                .ok_or_else(|| Error::Internal(format!("Serre exponent 1 - a_({},{}) is not a natural number", rb.label, rc.label)))?;
            let mut x = fam.ops[c].clone();
            let mut px = rc.parity;
            for _ in 0..power {
                x = adjoint(&fam.ops[b], rb.parity, &fam.k[b], &fam.kinv[b], &x, px);
                px = (px + rb.parity) % 2;
            }
            out.push(SerreInstance {
                b,
                c,
                power: power as u32,
                value: x,
            });
        }
    }
    Ok(out)
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.gradings.len()
    }

    pub fn root_index(&self, label: &str) -> Option<usize> {
        self.algebra.simple_roots.iter().position(|r| r.label == label)
    }

    /// `q^{t h_w}` with `t = t2 / 2`.
    pub fn qh(&self, w: &Weight, t2: i64) -> Result<GradedMatrix> {
        qh_weights(&self.gradings, &self.weights, w, t2)
    }

    pub fn identity(&self) -> GradedMatrix {
        GradedMatrix::identity(self.gradings.clone())
    }

    /// `E_a = e_a q^{h_a / 2}` (raising) or `F_a = f_a q^{h_a / 2}` (lowering)
    /// for every simple root, with `q^{±h_a}`.
    pub fn family(&self, lowering: bool) -> Result<GeneratorFamily> {
        let mut fam = GeneratorFamily {
            ops: Vec::new(),
            k: Vec::new(),
            kinv: Vec::new(),
        };
        for (a, r) in self.algebra.simple_roots.iter().enumerate() {
            let x = if lowering { &self.f[a] } else { &self.e[a] };
            fam.ops.push(x * &self.qh(&r.weight, 1)?);
            fam.k.push(self.qh(&r.weight, 2)?);
            fam.kinv.push(self.qh(&r.weight, -2)?);
        }
        Ok(fam)
    }

    /// The same family on `W ⊗ W` through the coproduct
    /// `Δ(E_a) = q^{h_a} ⊗ E_a + E_a ⊗ 1`, `Δ(q^{h_a}) = q^{h_a} ⊗ q^{h_a}`.
    pub fn tensor_square_family(&self, lowering: bool) -> Result<GeneratorFamily> {
        let fam = self.family(lowering)?;
        let id = self.identity();
        let mut out = GeneratorFamily {
            ops: Vec::new(),
            k: Vec::new(),
            kinv: Vec::new(),
        };
        for a in 0..fam.ops.len() {
            out.ops.push(&graded_kron(&fam.k[a], &fam.ops[a]) + &graded_kron(&fam.ops[a], &id));
            out.k.push(graded_kron(&fam.k[a], &fam.k[a]));
            out.kinv.push(graded_kron(&fam.kinv[a], &fam.kinv[a]));
        }
        Ok(out)
    }

    /// `W ⊗ W` with `Δ(e_a) = q^{h_a/2} ⊗ e_a + e_a ⊗ q^{−h_a/2}`, and `f_a`
    /// likewise.
    pub fn tensor_square(&self) -> Result<Representation> {
        let mut e = Vec::new();
        let mut f = Vec::new();
        for (a, r) in self.algebra.simple_roots.iter().enumerate() {
            let (kh, khi) = (self.qh(&r.weight, 1)?, self.qh(&r.weight, -1)?);
            e.push(&graded_kron(&kh, &self.e[a]) + &graded_kron(&self.e[a], &khi));
            f.push(&graded_kron(&kh, &self.f[a]) + &graded_kron(&self.f[a], &khi));
        }
        let weights = self
            .weights
            .iter()
            .flat_map(|x| self.weights.iter().map(move |y| x + y))
            .collect();
        Ok(Representation {
            algebra: self.algebra.clone(),
            name: format!("{0}(x){0}", self.name),
            gradings: kron_gradings(&self.gradings, &self.gradings),
            weights,
            e,
            f,
        })
    }

    /// Checks the defining relations; the error names the first violation.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let n = self.dim();
        let nroots = alg.simple_roots.len();
        if self.weights.len() != n {
            return Err(Error::Schema(format!("{} weights for dimension {n}", self.weights.len())));
        }
        if self.e.len() != nroots || self.f.len() != nroots {
            return Err(Error::Schema("one e and one f matrix per simple root required".into()));
        }
        for w in &self.weights {
            if w.eps.len() != alg.l || w.delta.len() != alg.k {
                return Err(Error::Schema(format!("weight {w} has the wrong number of coordinates")));
            }
        }
        let viol = |rel: String, detail: String| Err(Error::relation(rel, detail));
        for (a, r) in alg.simple_roots.iter().enumerate() {
            for p in 0..n {
                if !Weight::bilinear(&r.weight, &self.weights[p]).is_integer() {
                    return viol(
                        format!("integral eigenvalue of h_{}", r.label),
                        format!("(alpha_{}, wt_{}) is not an integer", r.label, p + 1),
                    );
                }
            }
            for (name, x, sign) in [("e", &self.e[a], 1i64), ("f", &self.f[a], -1)] {
                if x.gradings() != self.gradings.as_slice() {
                    return Err(Error::Schema(format!("{name}_{} has the wrong size", r.label)));
                }
                let target = r.weight.scale(&Rational::from_int(sign));
                for (row, col, _) in x.entries() {
                    if (self.gradings[row] + self.gradings[col]) % 2 != r.parity {
                        return viol(
                            format!("parity of {name}_{}", r.label),
                            format!("entry ({}, {}) has the wrong parity", row + 1, col + 1),
                        );
                    }
                    if &self.weights[row] - &self.weights[col] != target {
                        return viol(
                            format!("[h, {name}_{}] = (alpha, alpha_{}) {name}_{}", r.label, r.label, r.label),
                            format!("entry ({}, {}) shifts weight by {}", row + 1, col + 1, &self.weights[row] - &self.weights[col]),
                        );
                    }
                }
            }
        }
        for (a, ra) in alg.simple_roots.iter().enumerate() {
            let hdiag: Vec<LaurentPoly> = self
                .weights
                .iter()
                .map(|w| q_number(Weight::bilinear(&ra.weight, w).to_i64().expect("checked integral")))
                .collect();
            let qnum = GradedMatrix::diagonal(self.gradings.clone(), hdiag);
            for (b, rb) in alg.simple_roots.iter().enumerate() {
                let ef = &self.e[a] * &self.f[b];
                let fe = &self.f[b] * &self.e[a];
                let lhs = if ra.parity * rb.parity == 1 { &ef + &fe } else { &ef - &fe };
                let rhs = if a == b { qnum.clone() } else { GradedMatrix::zero(self.gradings.clone()) };
                if let Some(d) = lhs.first_difference(&rhs) {
                    return viol(
                        format!("[e_{},f_{}]", ra.label, rb.label),
                        format!("entry ({}, {}): {} vs {}", d.row + 1, d.col + 1, d.lhs, d.rhs),
                    );
                }
            }
            if Weight::bilinear(&ra.weight, &ra.weight).is_zero() {
                for (name, x) in [("e", &self.e[a]), ("f", &self.f[a])] {
                    if !(x * x).is_zero() {
                        return viol(format!("[{name}_{0},{name}_{0}] = 0", ra.label), "square is nonzero".into());
                    }
                }
            }
        }
        for lowering in [false, true] {
            let fam = self.family(lowering)?;
            for inst in serre_words(alg, &fam)? {
                if !inst.value.is_zero() {
                    let g = if lowering { "f" } else { "e" };
                    return viol(
                        format!(
                            "(ad {g}_{} o)^{} {g}_{} = 0",
                            alg.simple_roots[inst.b].label, inst.power, alg.simple_roots[inst.c].label
                        ),
                        "nonzero in the representation".into(),
                    );
                }
            }
        }
        Ok(())
    }
}

type Triple = (usize, usize, LaurentPoly);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MnJson {
    m: i64,
    n: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepJson {
    algebra: MnJson,
    name: String,
    dim: usize,
    gradings: Vec<u8>,
    weights: Vec<Weight>,
    e: BTreeMap<String, Vec<Triple>>,
    f: BTreeMap<String, Vec<Triple>>,
}

impl Representation {
    pub fn to_json_value(&self) -> serde_json::Value {
        let mats = |ms: &[GradedMatrix]| -> BTreeMap<String, Vec<Triple>> {
            self.algebra
                .simple_roots
                .iter()
                .zip(ms)
                .map(|(r, m)| (r.label.clone(), m.to_triples()))
                .collect()
        };
        let doc = RepJson {
            algebra: MnJson {
                m: self.algebra.m as i64,
                n: self.algebra.n as i64,
            },
            name: self.name.clone(),
            dim: self.dim(),
            gradings: self.gradings.clone(),
            weights: self.weights.clone(),
            e: mats(&self.e),
            f: mats(&self.f),
        };
        serde_json::to_value(doc).expect("representation serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("representation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Schema(format!("representation JSON: {e}")))?;
        load_representation(&v)
    }
}

/// Parses and validates a representation document.
pub fn load_representation(doc: &serde_json::Value) -> Result<Representation> {
    let raw: RepJson = serde_json::from_value(doc.clone())
        .map_err(|e| Error::Schema(format!("representation JSON: {e}")))?;
    let alg = build_algebra(raw.algebra.m, raw.algebra.n)?;
    if raw.gradings.len() != raw.dim || raw.gradings.iter().any(|g| *g > 1) {
        return Err(Error::Schema("gradings must list dim entries in {0, 1}".into()));
    }
    let take = |mut map: BTreeMap<String, Vec<Triple>>, which: &str| -> Result<Vec<GradedMatrix>> {
        let mut out = Vec::new();
        for r in &alg.simple_roots {
            let t = map
                .remove(&r.label)
                .ok_or_else(|| Error::Schema(format!("missing {which}[\"{}\"]", r.label)))?;
            out.push(GradedMatrix::from_triples(raw.gradings.clone(), t)?);
        }
        if let Some(extra) = map.keys().next() {
            return Err(Error::Schema(format!("unknown root label {which}[\"{extra}\"]")));
        }
        Ok(out)
    };
    let e = take(raw.e, "e")?;
    let f = take(raw.f, "f")?;
    let mut e_typed = Vec::new();
    let mut f_typed = Vec::new();
    for ((r, x), y) in alg.simple_roots.iter().zip(e).zip(f) {
        let ex = x.with_parity(r.parity).map_err(|err| Error::relation(format!("parity of e_{}", r.label), err.to_string()))?;
        let fy = y.with_parity(r.parity).map_err(|err| Error::relation(format!("parity of f_{}", r.label), err.to_string()))?;
        e_typed.push(ex);
        f_typed.push(fy);
    }
    let rep = Representation {
        algebra: alg,
        name: raw.name,
        gradings: raw.gradings,
        weights: raw.weights,
        e: e_typed,
        f: f_typed,
    };
    rep.validate()?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn vector_rep_generators() {
        let a = build_algebra(3, 0).unwrap();
        let v = build_vector_rep(&a).unwrap();
        let l = v.root_index("l").unwrap();
        let mut expect = GradedMatrix::zero(a.grading.clone());
        expect.set(0, 1, lp("1"));
        expect.set(1, 2, lp("-1"));
        assert_eq!(v.e[l], expect);

        let a = build_algebra(3, 2).unwrap();
        let v = build_vector_rep(&a).unwrap();
        let s = v.root_index("s").unwrap();
        let mut expect = GradedMatrix::zero(a.grading.clone());
        expect.set(0, 1, lp("1"));
        expect.set(3, 4, lp("-1"));
        assert_eq!(v.e[s], expect);

        let a = build_algebra(4, 0).unwrap();
        let v = build_vector_rep(&a).unwrap();
        let l = v.root_index("l").unwrap();
        let mut expect = GradedMatrix::zero(a.grading.clone());
        expect.set(0, 2, lp("1"));
        expect.set(1, 3, lp("-1"));
        assert_eq!(v.e[l], expect);
    }

    #[test]
    fn qh_examples() {
        let a = build_algebra(3, 0).unwrap();
        let v = build_vector_rep(&a).unwrap();
        let e1 = a.weights[0].clone();
        let d = qh_diag(&v, &e1, &Rational::half()).unwrap();
        assert_eq!(d, GradedMatrix::diagonal(a.grading.clone(), vec![lp("1*s^1"), lp("1"), lp("1*s^-1")]));
        assert_eq!(qh_diag(&v, &e1, &Rational::zero()).unwrap(), v.identity());

        let a = build_algebra(3, 2).unwrap();
        let v = build_vector_rep(&a).unwrap();
        let s = a.simple_root("s").unwrap().weight.clone();
        let d = qh_diag(&v, &s, &Rational::half()).unwrap();
        let want = ["1*s^-1", "1*s^-1", "1", "1*s^1", "1*s^1"].map(lp).to_vec();
        assert_eq!(d, GradedMatrix::diagonal(a.grading.clone(), want));
    }

    #[test]
    fn trivial_and_round_trip() {
        let a = build_algebra(4, 2).unwrap();
        assert!(build_trivial_rep(&a).is_ok());
        let v = build_vector_rep(&a).unwrap();
        let back = Representation::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.to_json(), v.to_json());
    }

    #[test]
    fn flipped_sign_is_rejected() {
        let a = build_algebra(3, 2).unwrap();
        let v = build_vector_rep(&a).unwrap();
        let mut doc = v.to_json_value();
        let entry = &mut doc["e"]["s"][0][2];
        assert_eq!(entry, "1");
        *entry = serde_json::Value::from("-1");
        let err = load_representation(&doc).unwrap_err().to_string();
        assert!(err.contains("[e_s,f_s]"), "{err}");
    }

    #[test]
    fn q_numbers() {
        assert_eq!(q_number(0), LaurentPoly::zero());
        assert_eq!(q_number(1), LaurentPoly::one());
        assert_eq!(q_number(2), lp("1*s^-2 + 1*s^2"));
        assert_eq!(q_number(-1), lp("-1"));
    }
}
