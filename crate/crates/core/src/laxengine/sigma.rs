use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gradedmat::{build_vector_rep, GradedMatrix, Representation};
use crate::qring::LaurentPoly;
use crate::superroot::{AlgebraData, IndexLabel, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Simple,
    Recursed { via: usize },
    ClosedForm,
    ForcedZero,
}

/// The operators `σ̂_ba` for `ε_b > ε_a`, evaluated in a module `W`.
///
/// Pair indices are positions in the vector layout of the algebra; the
/// matrices act on `W`.
#[derive(Clone, Debug)]
pub struct SigmaSet {
    pub rep: Representation,
    sigma: BTreeMap<(usize, usize), GradedMatrix>,
    provenance: BTreeMap<(usize, usize), Provenance>,
}

impl PartialEq for SigmaSet {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.sigma == other.sigma
    }
}

fn s_pow(k: i64) -> LaurentPoly {
    LaurentPoly::s_pow(k)
}

impl SigmaSet {
    pub fn algebra(&self) -> &AlgebraData {
        &self.rep.algebra
    }

    pub fn get(&self, b: usize, a: usize) -> Option<&GradedMatrix> {
        self.sigma.get(&(b, a))
    }

    /// `σ̂_ba`; panics if the pair is absent.
    pub fn at(&self, b: usize, a: usize) -> &GradedMatrix {
        self.get(b, a)
            .unwrap_or_else(|| panic!("sigma({b},{a}) not constructed"))
    }

    pub fn provenance(&self, b: usize, a: usize) -> Option<Provenance> {
        self.provenance.get(&(b, a)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &GradedMatrix)> {
        self.sigma.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.algebra()
            .extended_pairs()
            .iter()
            .all(|p| self.sigma.contains_key(p))
    }

    /// Replaces one operator, keeping its provenance. Used to build
    /// deliberately corrupted inputs.
    pub fn replace(&mut self, b: usize, a: usize, m: GradedMatrix) {
        self.sigma.insert((b, a), m);
    }

    fn insert(&mut self, b: usize, a: usize, m: GradedMatrix, p: Provenance) {
        let alg = &self.rep.algebra;
        let parity = (alg.grading[a] + alg.grading[b]) % 2;
        let m = m.with_parity(parity).unwrap_or_else(|e| {
            panic!("sigma({},{}) is not homogeneous: {e}", alg.layout[b], alg.layout[a])
        });
        self.sigma.insert((b, a), m);
        self.provenance.insert((b, a), p);
    }

    pub fn pair_label(&self, b: usize, a: usize) -> String {
        pair_label(self.algebra(), b, a)
    }

    /// Pairs whose operator fails `q^{h_w} σ̂ q^{−h_w} = q^{(w, ε_b − ε_a)} σ̂`
    /// for some basis weight direction `w`.
    pub fn weight_defects(&self) -> Result<Vec<(usize, usize)>> {
        let alg = self.algebra();
        let mut dirs = Vec::new();
        for i in 1..=alg.l {
            dirs.push(Weight::eps(alg.l, alg.k, i, 1));
        }
        for mu in 1..=alg.k {
            dirs.push(Weight::delta(alg.l, alg.k, mu, 1));
        }
        let mut bad = Vec::new();
        for (&(b, a), x) in &self.sigma {
            let shift = &alg.weights[b] - &alg.weights[a];
            for w in &dirs {
                let k = self.rep.qh(w, 2)?;
                let kinv = self.rep.qh(w, -2)?;
                let e = Weight::bilinear(w, &shift).to_i64().expect("integral");
                if &(&k * x) * &kinv != x.scale(&s_pow(2 * e)) {
                    bad.push((b, a));
                    break;
                }
            }
        }
        Ok(bad)
    }
}

pub fn pair_label(alg: &AlgebraData, b: usize, a: usize) -> String {
    format!("{},{}", alg.layout[b], alg.layout[a])
}

/// Table of seeded values in module `rep`.
pub fn init_simple_sigma(rep: &Representation) -> Result<SigmaSet> {
    let alg = &rep.algebra;
    let (m, n, l, k) = (alg.m, alg.n, alg.l, alg.k);
    let bar = &alg.bar;
    let mut set = SigmaSet {
        rep: rep.clone(),
        sigma: BTreeMap::new(),
        provenance: BTreeMap::new(),
    };
    let fam = rep.family(false)?;
    let big_e = |label: &str| -> GradedMatrix {
        let a = rep.root_index(label).expect("root exists");
        fam.ops[a].clone()
    };
    let (ev, od) = (|i| alg.even(i), |mu| alg.odd(mu));
    use Provenance::Simple;
    for i in 1..l {
        let x = big_e(&format!("i{i}")).scale(&s_pow(1));
        set.insert(bar[ev(i + 1)], bar[ev(i)], -&x, Simple);
        set.insert(ev(i), ev(i + 1), x, Simple);
    }
    if m % 2 == 0 {
        let x = big_e("l").scale(&s_pow(1));
        set.insert(ev(l), bar[ev(l - 1)], -&x, Simple);
        set.insert(ev(l - 1), bar[ev(l)], x, Simple);
        set.insert(ev(l), bar[ev(l)], GradedMatrix::zero(rep.gradings.clone()), Provenance::ForcedZero);
    } else {
        let x = big_e("l");
        set.insert(ev(l + 1), bar[ev(l)], x.scale(&-s_pow(1)), Simple);
        set.insert(ev(l), ev(l + 1), x, Simple);
    }
    for mu in 1..k {
        let x = big_e(&format!("mu{mu}")).scale(&s_pow(-1));
        set.insert(bar[od(mu + 1)], bar[od(mu)], x.clone(), Simple);
        set.insert(od(mu), od(mu + 1), x, Simple);
    }
    if n > 0 {
        let x = big_e("s").scale(&s_pow(1));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        set.insert(bar[ev(1)], bar[od(k)], x.scale(&s_pow(-2).scale(&sign.into())), Simple);
        set.insert(od(k), ev(1), x, Simple);
    }
    Ok(set)
}

/// Right-hand side of the induction relation through intermediate `c`:
/// `q^{−(ε_b,ε_a)} σ̂_bc σ̂_ca − q^{−(ε_c,ε_c)} (−1)^{([b]+[c])([a]+[c])} σ̂_ca σ̂_bc`.
pub fn indrel(set: &SigmaSet, b: usize, c: usize, a: usize) -> Option<GradedMatrix> {
    let alg = set.algebra();
    let g = &alg.grading;
    let x = set.get(b, c)?;
    let y = set.get(c, a)?;
    let pba = Weight::bilinear(&alg.weights[b], &alg.weights[a]).to_i64().expect("integral");
    let pcc = Weight::bilinear(&alg.weights[c], &alg.weights[c]).to_i64().expect("integral");
    let mut c2 = s_pow(-2 * pcc);
    if ((g[b] + g[c]) * (g[a] + g[c])).is_multiple_of(2) {
        c2 = -c2;
    }
    Some(&(x * y).scale(&s_pow(-2 * pba)) + &(y * x).scale(&c2))
}

/// Intermediates `c` with `ε_b > ε_c > ε_a`, `c ∉ {b̄, ā}`.
pub fn admissible_intermediates(alg: &AlgebraData, b: usize, a: usize) -> Vec<usize> {
    (b + 1..a).filter(|&c| c != alg.bar[b] && c != alg.bar[a]).collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Half {
    Upper,
    Zero,
    Lower,
}

fn half(alg: &AlgebraData, p: usize) -> Half {
    match alg.layout[p] {
        IndexLabel::Even(i) if i <= alg.l => Half::Upper,
        IndexLabel::Even(i) if i > alg.m - alg.l => Half::Lower,
        IndexLabel::Even(_) => Half::Zero,
        IndexLabel::Odd(mu) if mu <= alg.k => Half::Upper,
        IndexLabel::Odd(_) => Half::Lower,
    }
}

/// Construction step (1..=6) of the pair `(b, a)`.
pub fn construction_step(alg: &AlgebraData, b: usize, a: usize) -> u8 {
    use Half::*;
    let (hb, ha) = (half(alg, b), half(alg, a));
    let same = |x: Half, y: Half| matches!((x, y), (Upper | Zero, Upper | Zero) | (Lower | Zero, Lower | Zero));
    match (alg.grading[b], alg.grading[a]) {
        (0, 0) => if same(hb, ha) { 1 } else { 4 },
        (1, 1) => if hb == ha { 2 } else { 6 },
        (1, 0) => if ha == Lower { 5 } else { 3 },
        _ => if hb == Upper { 5 } else { 3 },
    }
}

/// Completes a seeded set by the induction relations, step by step; inside a
/// step pairs are taken by increasing layout gap, each through the first
/// admissible intermediate whose two factors already exist.
pub fn extend_sigma(partial: SigmaSet) -> Result<SigmaSet> {
    let mut set = partial;
    let alg = set.algebra().clone();
    let mut todo: Vec<(u8, usize, usize, usize)> = alg
        .extended_pairs()
        .into_iter()
        .filter(|p| !set.sigma.contains_key(p))
        .map(|(b, a)| (construction_step(&alg, b, a), a - b, b, a))
        .collect();
    todo.sort();
    for (step, _, b, a) in todo {
        let via = admissible_intermediates(&alg, b, a)
            .into_iter()
            .find(|&c| set.sigma.contains_key(&(b, c)) && set.sigma.contains_key(&(c, a)));
        let Some(c) = via else {
            return Err(Error::Internal(format!(
                "no admissible intermediate for sigma({}) at step {step}",
                pair_label(&alg, b, a)
            )));
        };
        let v = indrel(&set, b, c, a).expect("factors present");
        set.insert(b, a, v, Provenance::Recursed { via: c });
    }
    Ok(set)
}

/// `σ̂_ba = q^{−h_{ε_a}} σ̃_ba` with
/// `σ̃_ba = E^b_a − (−1)^{[b]([a]+[b])} ξ_a ξ_b q^{(ρ, ε_a − ε_b)} E^{ā}_{b̄}`.
pub fn closed_form_sigma(alg: &AlgebraData) -> Result<SigmaSet> {
    let rep = build_vector_rep(alg)?;
    let g = &alg.grading;
    let mut set = SigmaSet {
        rep: rep.clone(),
        sigma: BTreeMap::new(),
        provenance: BTreeMap::new(),
    };
    for (b, a) in alg.extended_pairs() {
        let e = (&Weight::bilinear(&alg.rho, &(&alg.weights[a] - &alg.weights[b]))
            * &crate::qring::Rational::from_int(2))
            .to_i64()
            .expect("2(rho, root) is integral");
        let mut coeff = alg.xi[a] * alg.xi[b];
        if (g[b] * (g[a] + g[b])).is_multiple_of(2) {
            coeff = -coeff;
        }
        let mut tilde = GradedMatrix::elementary(alg.grading.clone(), b, a);
        tilde.add_to(alg.bar[a], alg.bar[b], &s_pow(e).scale(&coeff.into()));
        let hat = &rep.qh(&alg.weights[a], -2)? * &tilde;
        let prov = if hat.is_zero() {
            Provenance::ForcedZero
        } else {
            Provenance::ClosedForm
        };
        set.insert(b, a, hat, prov);
    }
    Ok(set)
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Simple => f.write_str("simple"),
            Provenance::Recursed { via } => write!(f, "recursed({via})"),
            Provenance::ClosedForm => f.write_str("closed_form"),
            Provenance::ForcedZero => f.write_str("forced_zero"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    matrix: Vec<(usize, usize, LaurentPoly)>,
    provenance: serde_json::Value,
}

impl SigmaSet {
    fn provenance_json(&self, p: Provenance) -> serde_json::Value {
        match p {
            Provenance::Simple => json!({"kind": "simple"}),
            Provenance::Recursed { via } => {
                json!({"kind": "recursed", "via": self.algebra().layout[via].to_string()})
            }
            Provenance::ClosedForm => json!({"kind": "closed_form"}),
            Provenance::ForcedZero => json!({"kind": "forced_zero"}),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut entries = serde_json::Map::new();
        for (&(b, a), m) in &self.sigma {
            let e = EntryJson {
                matrix: m.to_triples(),
                provenance: self.provenance_json(self.provenance[&(b, a)]),
            };
            entries.insert(self.pair_label(b, a), serde_json::to_value(e).expect("serializes"));
        }
        json!({
            "algebra": self.algebra(),
            "rep_name": self.rep.name,
            "entries": entries,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializes")
    }

    /// Reads a sigma document for module `rep`. The operators are taken as
    /// given; only shapes, labels and parities are checked.
    pub fn from_json(text: &str, rep: &Representation) -> Result<Self> {
        let schema = |e: String| Error::Schema(format!("sigma JSON: {e}"));
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
        let alg: AlgebraData =
            serde_json::from_value(v["algebra"].clone()).map_err(|e| schema(e.to_string()))?;
        if alg != rep.algebra {
            return Err(schema(format!(
                "algebra ({}, {}) does not match the representation's ({}, {})",
                alg.m, alg.n, rep.algebra.m, rep.algebra.n
            )));
        }
        if v["rep_name"].as_str() != Some(rep.name.as_str()) {
            return Err(schema(format!("rep_name {} does not match `{}`", v["rep_name"], rep.name)));
        }
        let entries = v["entries"].as_object().ok_or_else(|| schema("missing entries".into()))?;
        let mut set = SigmaSet {
            rep: rep.clone(),
            sigma: BTreeMap::new(),
            provenance: BTreeMap::new(),
        };
        for (key, val) in entries {
            let (bl, al) = key.split_once(',').ok_or_else(|| schema(format!("bad pair key `{key}`")))?;
            let b = alg.position(bl.parse()?).ok_or_else(|| schema(format!("unknown index `{bl}`")))?;
            let a = alg.position(al.parse()?).ok_or_else(|| schema(format!("unknown index `{al}`")))?;
            if b >= a {
                return Err(schema(format!("pair `{key}` is not ordered by weight")));
            }
            let e: EntryJson = serde_json::from_value(val.clone()).map_err(|e| schema(e.to_string()))?;
            let m = GradedMatrix::from_triples(rep.gradings.clone(), e.matrix)?;
            let prov = match e.provenance["kind"].as_str() {
                Some("simple") => Provenance::Simple,
                Some("closed_form") => Provenance::ClosedForm,
                Some("forced_zero") => Provenance::ForcedZero,
                Some("recursed") => {
                    let via = e.provenance["via"]
                        .as_str()
                        .and_then(|s| s.parse().ok())
                        .and_then(|lab| alg.position(lab))
                        .ok_or_else(|| schema(format!("bad `via` for `{key}`")))?;
                    Provenance::Recursed { via }
                }
                _ => return Err(schema(format!("bad provenance for `{key}`"))),
            };
            let parity = (alg.grading[a] + alg.grading[b]) % 2;
            let m = m.with_parity(parity).map_err(|e| schema(format!("`{key}`: {e}")))?;
            set.sigma.insert((b, a), m);
            set.provenance.insert((b, a), prov);
        }
        Ok(set)
    }
}
