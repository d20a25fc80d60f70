//! Combinatorial data of osp(m|n): index layout, gradings, bar map, metric
//! signs, weights, simple roots, Cartan matrix and rho.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qring::Rational;

mod weight;

pub use weight::Weight;

/// A basis index in the conventional labelling: even `i` (1..=m) or odd `mu` (1..=n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexLabel {
    Even(usize),
    Odd(usize),
}

impl IndexLabel {
    pub fn parity(self) -> u8 {
        match self {
            IndexLabel::Even(_) => 0,
            IndexLabel::Odd(_) => 1,
        }
    }
}

impl fmt::Display for IndexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexLabel::Even(i) => write!(f, "i{i}"),
            IndexLabel::Odd(mu) => write!(f, "mu{mu}"),
        }
    }
}

impl fmt::Debug for IndexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for IndexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad index label `{s}` (expected `i<n>` or `mu<n>`)"));
        let (ctor, rest): (fn(usize) -> IndexLabel, &str) = if let Some(r) = s.strip_prefix("mu") {
            (IndexLabel::Odd, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (IndexLabel::Even, r)
        } else {
            return Err(bad());
        };
        let v: usize = rest.parse().map_err(|_| bad())?;
        if v == 0 {
            return Err(bad());
        }
        Ok(ctor(v))
    }
}

impl Serialize for IndexLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IndexLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A simple root together with the generator it labels.
///
/// In the vector representation `e = π(σ^{row}_{col})` and
/// `f = f_sign · π(σ^{col}_{row})`, with positions in the canonical layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleRoot {
    pub label: String,
    pub weight: Weight,
    pub parity: u8,
    pub e_row: usize,
    pub e_col: usize,
    pub f_sign: i64,
}

/// Immutable root and index data for one (m, n).
///
/// Positions are 0-based internally; the canonical layout is
/// `mu1..mu_k, i1..i_m, mu_{k+1}..mu_n`, which is the descending weight order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub k: usize,
    pub layout: Vec<IndexLabel>,
    pub grading: Vec<u8>,
    pub bar: Vec<usize>,
    pub xi: Vec<i64>,
    pub weights: Vec<Weight>,
    pub simple_roots: Vec<SimpleRoot>,
    pub cartan: Vec<Vec<Rational>>,
    pub rho: Weight,
}

pub fn build_algebra(m: i64, n: i64) -> Result<AlgebraData> {
    if m <= 2 {
        return Err(Error::UnsupportedRank { m });
    }
    if n < 0 || n % 2 != 0 {
        return Err(Error::InvalidInput(format!(
            "n = {n}: the odd dimension must be even and non-negative"
        )));
    }
    let (m, n) = (m as usize, n as usize);
    let (l, k) = (m / 2, n / 2);

    let mut layout: Vec<IndexLabel> = (1..=k).map(IndexLabel::Odd).collect();
    layout.extend((1..=m).map(IndexLabel::Even));
    layout.extend((k + 1..=n).map(IndexLabel::Odd));
    let dim = layout.len();
    let pos_of = |lab: IndexLabel| layout.iter().position(|x| *x == lab).expect("label in layout");

    let grading: Vec<u8> = layout.iter().map(|x| x.parity()).collect();
    let bar: Vec<usize> = layout
        .iter()
        .map(|x| match *x {
            IndexLabel::Even(i) => pos_of(IndexLabel::Even(m + 1 - i)),
            IndexLabel::Odd(mu) => pos_of(IndexLabel::Odd(n + 1 - mu)),
        })
        .collect();
    let xi: Vec<i64> = layout
        .iter()
        .map(|x| match *x {
            IndexLabel::Even(_) => 1,
            IndexLabel::Odd(mu) => if mu % 2 == 0 { 1 } else { -1 },
        })
        .collect();
    let weights: Vec<Weight> = layout
        .iter()
        .map(|x| match *x {
            IndexLabel::Even(i) if i <= l => Weight::eps(l, k, i, 1),
            IndexLabel::Even(i) if i > m - l => Weight::eps(l, k, m + 1 - i, -1),
            IndexLabel::Even(_) => Weight::zero(l, k),
            IndexLabel::Odd(mu) if mu <= k => Weight::delta(l, k, mu, 1),
            IndexLabel::Odd(mu) => Weight::delta(l, k, n + 1 - mu, -1),
        })
        .collect();

    let rho = Weight::new(
        (1..=l).map(|i| Rational::frac(m as i64 - 2 * i as i64, 2)).collect(),
        (1..=k)
            .map(|mu| Rational::frac(n as i64 - m as i64 + 2 - 2 * mu as i64, 2))
            .collect(),
    );

    let even = |i: usize| pos_of(IndexLabel::Even(i));
    let odd = |mu: usize| pos_of(IndexLabel::Odd(mu));
    let diff = |a: usize, b: usize| &weights[a] - &weights[b];
    let mut simple_roots = Vec::new();
    let mut push = |label: String, weight: Weight, parity: u8, r: usize, c: usize, f_sign: i64| {
        simple_roots.push(SimpleRoot {
            label,
            weight,
            parity,
            e_row: r,
            e_col: c,
            f_sign,
        })
    };
    for mu in 1..k {
        let (a, b) = (odd(mu), odd(mu + 1));
        push(format!("mu{mu}"), diff(a, b), 0, a, b, -1);
    }
    if n > 0 {
        let (a, b) = (odd(k), even(1));
        push("s".into(), diff(a, b), 1, a, b, -1);
    }
    for i in 1..l {
        let (a, b) = (even(i), even(i + 1));
        push(format!("i{i}"), diff(a, b), 0, a, b, 1);
    }
    if m % 2 == 0 {
        let (a, b) = (even(l - 1), even(m + 1 - l));
        let w = &weights[even(l - 1)] + &weights[even(l)];
        push("l".into(), w, 0, a, b, 1);
    } else {
        let (a, b) = (even(l), even(l + 1));
        push("l".into(), diff(a, b), 0, a, b, 1);
    }

    let cartan = simple_roots
        .iter()
        .map(|b| {
            let bb = Weight::bilinear(&b.weight, &b.weight);
            simple_roots
                .iter()
                .map(|c| {
                    let bc = Weight::bilinear(&b.weight, &c.weight);
                    if bb.is_zero() {
                        bc
                    } else {
                        &(&bc * &Rational::from_int(2)) / &bb
                    }
                })
                .collect()
        })
        .collect();

    let alg = AlgebraData {
        m,
        n,
        l,
        k,
        layout,
        grading,
        bar,
        xi,
        weights,
        simple_roots,
        cartan,
        rho,
    };
    alg.assert_invariants()?;
    debug_assert_eq!(alg.dim(), dim);
    Ok(alg)
}

pub fn bilinear(w1: &Weight, w2: &Weight) -> Rational {
    Weight::bilinear(w1, w2)
}

pub fn rho(alg: &AlgebraData) -> Weight {
    alg.rho.clone()
}

impl AlgebraData {
    pub fn dim(&self) -> usize {
        self.layout.len()
    }

    pub fn position(&self, label: IndexLabel) -> Option<usize> {
        self.layout.iter().position(|x| *x == label)
    }

    /// Position of even index `i` (1-based label).
    pub fn even(&self, i: usize) -> usize {
        self.k + i - 1
    }

    /// Position of odd index `mu` (1-based label).
    pub fn odd(&self, mu: usize) -> usize {
        if mu <= self.k {
            mu - 1
        } else {
            self.m + mu - 1
        }
    }

    pub fn label(&self, p: usize) -> IndexLabel {
        self.layout[p]
    }

    pub fn parity(&self, p: usize) -> u8 {
        self.grading[p]
    }

    pub fn weight(&self, p: usize) -> &Weight {
        &self.weights[p]
    }

    pub fn simple_root(&self, label: &str) -> Option<&SimpleRoot> {
        self.simple_roots.iter().find(|r| r.label == label)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.l, self.k)
    }

    /// Index of the basis vector with weight `w`, if any.
    pub fn index_of_weight(&self, w: &Weight) -> Option<usize> {
        self.weights.iter().position(|x| x == w)
    }

    /// `(w, ε_p)` as an integer; basis weights have integral pairings with
    /// every root and with every basis weight.
    pub fn pairing_int(&self, w: &Weight, p: usize) -> Result<i64> {
        let v = Weight::bilinear(w, &self.weights[p]);
        v.to_i64()
            .ok_or_else(|| Error::Internal(format!("non-integral pairing ({w}, {})", self.weights[p])))
    }

    /// Basis positions sorted by descending weight; equals the layout.
    pub fn weight_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.dim()).collect();
        idx.sort_by(|&a, &b| self.weight_cmp(b, a));
        idx
    }

    fn weight_cmp(&self, a: usize, b: usize) -> Ordering {
        self.weights[a].order_key().cmp(&self.weights[b].order_key())
    }

    /// Compares the weights at positions `a` and `b`.
    pub fn compare(&self, a: usize, b: usize) -> Result<Ordering> {
        if a == b {
            return Err(Error::InvalidInput(format!(
                "compare({}, {}): an index is not comparable with itself",
                self.layout[a], self.layout[a]
            )));
        }
        Ok(self.weight_cmp(a, b))
    }

    /// All `(b, a)` with `ε_b > ε_a`, in layout order.
    pub fn extended_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|b| (b + 1..n).map(move |a| (b, a)))
            .collect()
    }

    /// The extended positive roots: positive roots of osp(m|n) plus `2ε_i`,
    /// enumerated independently of the basis weights.
    pub fn extended_positive_roots(&self) -> Vec<Weight> {
        let (l, k, m) = (self.l, self.k, self.m);
        let e = |i: usize, s: i64| Weight::eps(l, k, i, s);
        let d = |mu: usize, s: i64| Weight::delta(l, k, mu, s);
        let mut out = Vec::new();
        for i in 1..=l {
            for j in i + 1..=l {
                out.push(&e(i, 1) - &e(j, 1));
                out.push(&e(i, 1) + &e(j, 1));
            }
            out.push(e(i, 2));
            if m % 2 == 1 {
                out.push(e(i, 1));
            }
        }
        for mu in 1..=k {
            for nu in mu + 1..=k {
                out.push(&d(mu, 1) - &d(nu, 1));
                out.push(&d(mu, 1) + &d(nu, 1));
            }
            out.push(d(mu, 2));
            for i in 1..=l {
                out.push(&d(mu, 1) - &e(i, 1));
                out.push(&d(mu, 1) + &e(i, 1));
            }
            if m % 2 == 1 {
                out.push(d(mu, 1));
            }
        }
        out
    }

    fn assert_invariants(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Internal(format!("algebra data ({}, {}): {what}", self.m, self.n)));
        for p in 0..self.dim() {
            let b = self.bar[p];
            if self.bar[b] != p {
                return fail(format!("bar is not an involution at {}", self.layout[p]));
            }
            if self.weights[b] != -&self.weights[p] {
                return fail(format!("weight(bar {}) != -weight", self.layout[p]));
            }
            if p + 1 < self.dim() && self.weight_cmp(p, p + 1) != Ordering::Greater {
                return fail(format!("layout not strictly descending at {}", self.layout[p]));
            }
        }
        for r in &self.simple_roots {
            let lhs = Weight::bilinear(&self.rho, &r.weight);
            let rhs = &Weight::bilinear(&r.weight, &r.weight) * &Rational::half();
            if lhs != rhs {
                return fail(format!("(rho, alpha_{}) != (alpha, alpha)/2", r.label));
            }
            if r.e_row >= r.e_col {
                return fail(format!("alpha_{} is not positive", r.label));
            }
        }
        let mut roots = self.extended_positive_roots();
        let mut diffs: Vec<Weight> = self
            .extended_pairs()
            .iter()
            .map(|&(b, a)| &self.weights[b] - &self.weights[a])
            .collect();
        roots.sort_by_key(Weight::order_key);
        diffs.sort_by_key(Weight::order_key);
        diffs.dedup();
        if roots != diffs {
            return fail("weight differences do not match the extended positive roots".into());
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SimpleRootJson {
    label: String,
    eps: Vec<Rational>,
    delta: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    m: usize,
    n: usize,
    layout: Vec<IndexLabel>,
    gradings: Vec<u8>,
    bar: Vec<usize>,
    xi: Vec<i64>,
    simple_roots: Vec<SimpleRootJson>,
    cartan: Vec<Vec<Rational>>,
    rho: Weight,
}

impl Serialize for AlgebraData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraJson {
            m: self.m,
            n: self.n,
            layout: self.layout.clone(),
            gradings: self.grading.clone(),
            bar: self.bar.iter().map(|b| b + 1).collect(),
            xi: self.xi.clone(),
            simple_roots: self
                .simple_roots
                .iter()
                .map(|r| SimpleRootJson {
                    label: r.label.clone(),
                    eps: r.weight.eps.clone(),
                    delta: r.weight.delta.clone(),
                })
                .collect(),
            cartan: self.cartan.clone(),
            rho: self.rho.clone(),
        }
        .serialize(s)
    }
}

/// Only `m` and `n` are read back; the rest is rebuilt and must agree.
impl<'de> Deserialize<'de> for AlgebraData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Mn {
            m: i64,
            n: i64,
        }
        let raw = Mn::deserialize(d)?;
        build_algebra(raw.m, raw.n).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn osp_3_2_roots() {
        let a = build_algebra(3, 2).unwrap();
        assert_eq!((a.l, a.k), (1, 1));
        let labels: Vec<&str> = a.simple_roots.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["s", "l"]);
        assert_eq!(a.simple_roots[0].weight, Weight::new(vec![r(-1)], vec![r(1)]));
        assert_eq!(a.simple_roots[1].weight, Weight::new(vec![r(1)], vec![r(0)]));
    }

    #[test]
    fn o4_roots_and_cartan() {
        let a = build_algebra(4, 0).unwrap();
        assert_eq!(a.simple_roots[0].weight, Weight::new(vec![r(1), r(-1)], vec![]));
        assert_eq!(a.simple_roots[1].weight, Weight::new(vec![r(1), r(1)], vec![]));
        assert_eq!(a.cartan, vec![vec![r(2), r(0)], vec![r(0), r(2)]]);
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!(matches!(build_algebra(3, 1), Err(Error::InvalidInput(_))));
        let err = build_algebra(2, 2).unwrap_err();
        assert!(err.to_string().contains("only valid for m > 2"));
    }

    #[test]
    fn bilinear_and_rho() {
        let a = build_algebra(3, 2).unwrap();
        let e1 = a.weight(a.even(1)).clone();
        let d1 = a.weight(a.odd(1)).clone();
        assert_eq!(bilinear(&e1, &e1), r(1));
        assert_eq!(bilinear(&d1, &d1), r(-1));
        assert_eq!(a.rho, Weight::new(vec![Rational::half()], vec![-Rational::half()]));
        let a30 = build_algebra(3, 0).unwrap();
        assert_eq!(bilinear(&a30.rho, a30.weight(0)), Rational::half());
        assert_eq!(build_algebra(4, 0).unwrap().rho, Weight::new(vec![r(1), r(0)], vec![]));
    }

    #[test]
    fn orders_and_pairs() {
        let a = build_algebra(3, 2).unwrap();
        let names: Vec<String> = a.weight_order().iter().map(|&p| a.label(p).to_string()).collect();
        assert_eq!(names, ["mu1", "i1", "i2", "i3", "mu2"]);
        let a = build_algebra(4, 2).unwrap();
        let names: Vec<String> = a.weight_order().iter().map(|&p| a.label(p).to_string()).collect();
        assert_eq!(names, ["mu1", "i1", "i2", "i3", "i4", "mu2"]);
        assert_eq!(build_algebra(3, 0).unwrap().extended_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(build_algebra(3, 2).unwrap().extended_pairs().len(), 10);
        let a = build_algebra(4, 0).unwrap();
        assert_eq!(a.extended_pairs().len(), 6);
        assert_eq!(&a.weights[1] - &a.weights[2], Weight::new(vec![r(0), r(2)], vec![]));
        assert!(a.compare(1, 1).is_err());
        assert_eq!(a.compare(0, 3).unwrap(), Ordering::Greater);
    }

    #[test]
    fn labels_parse() {
        assert_eq!("mu2".parse::<IndexLabel>().unwrap(), IndexLabel::Odd(2));
        assert_eq!("i3".parse::<IndexLabel>().unwrap(), IndexLabel::Even(3));
        assert!("j1".parse::<IndexLabel>().is_err());
        assert!("i0".parse::<IndexLabel>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = build_algebra(5, 4).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"layout\":[\"mu1\",\"mu2\",\"i1\""));
        let b: AlgebraData = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
