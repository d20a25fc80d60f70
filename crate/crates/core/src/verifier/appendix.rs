//! Explicit recursion and q-commutation relations among the `σ̂_ba`, one
//! family per simple root.

use crate::error::Result;
use crate::gradedmat::GradedMatrix;
use crate::laxengine::SigmaSet;
use crate::qring::LaurentPoly;
use crate::superroot::{bilinear, AlgebraData, Weight};
use crate::verifier::report::{CheckReport, Tally};

struct Ctx<'a> {
    set: &'a SigmaSet,
    alg: &'a AlgebraData,
    tally: Tally,
}

fn sp(k: i64) -> LaurentPoly {
    LaurentPoly::s_pow(k)
}

/// `q^{x}` for an integral pairing `x`.
fn qw(x: i64) -> LaurentPoly {
    sp(2 * x)
}

impl<'a> Ctx<'a> {
    fn sg(&self, b: usize, a: usize) -> Option<&'a GradedMatrix> {
        if b == a {
            None
        } else {
            self.set.get(b, a)
        }
    }

    fn lab(&self, p: usize) -> String {
        self.alg.layout[p].to_string()
    }

    fn pair(&self, b: usize, a: usize) -> String {
        format!("s({},{})", self.lab(b), self.lab(a))
    }

    fn pw(&self, root: &Weight, p: usize) -> i64 {
        bilinear(root, &self.alg.weights[p]).to_i64().expect("integral pairing")
    }

    /// `σ̂_{t} = c1 σ̂_{x1} σ̂_{x2} − c2 σ̂_{x2} σ̂_{x1}`.
    fn rec(&mut self, family: &str, t: (usize, usize), x1: (usize, usize), x2: (usize, usize), c1: LaurentPoly, c2: LaurentPoly) {
        let name = || {
            format!(
                "{family}: {} = ({}) {} {} - ({}) {} {}",
                self.pair(t.0, t.1),
                c1,
                self.pair(x1.0, x1.1),
                self.pair(x2.0, x2.1),
                c2,
                self.pair(x2.0, x2.1),
                self.pair(x1.0, x1.1)
            )
        };
        match (self.sg(t.0, t.1), self.sg(x1.0, x1.1), self.sg(x2.0, x2.1)) {
            (Some(target), Some(a), Some(b)) => {
                let rhs = &(a * b).scale(&c1) - &(b * a).scale(&c2);
                let label = name();
                self.tally.compare(|| label, target, &rhs);
            }
            _ => {
                let label = name();
                self.tally.missing(label);
            }
        }
    }

    /// `q^{(α,ε_b)} σ̂_ba x − sign q^{−(α,ε_a)} x σ̂_ba = 0` for all stored
    /// pairs outside the excluded rows and columns.
    fn commute(&mut self, family: &str, x: &GradedMatrix, xname: &str, root: &Weight, skip: impl Fn(usize, usize) -> bool, graded: bool) {
        let g = &self.alg.grading;
        for ((b, a), big) in self.set.iter() {
            if skip(b, a) {
                continue;
            }
            let mut c2 = qw(-self.pw(root, a));
            if graded && (g[a] + g[b]) % 2 == 1 {
                c2 = -c2;
            }
            let v = &(big * x).scale(&qw(self.pw(root, b))) - &(x * big).scale(&c2);
            let label = format!("{family}: {} q-commutes with {xname}", self.pair(b, a));
            self.tally.zero(|| label, &v);
        }
    }
}

pub fn check_appendix(set: &SigmaSet) -> Result<CheckReport> {
    let alg = set.algebra();
    let mut cx = Ctx {
        set,
        alg,
        tally: Tally::new("appendix"),
    };
    let (l, k, n) = (alg.l, alg.k, alg.n);
    let nn = alg.dim();
    let bar = &alg.bar;
    let w = &alg.weights;
    let e = |i: usize| alg.even(i);
    let o = |mu: usize| alg.odd(mu);
    let q = || sp(2);
    let qi = || sp(-2);
    let one = LaurentPoly::one;

    for i in 1..l {
        let fam = format!("i{i}");
        let a_i = &w[e(i)] - &w[e(i + 1)];
        let (ei, ej, bi, bj) = (e(i), e(i + 1), bar[e(i)], bar[e(i + 1)]);
        for b in 0..ei {
            cx.rec(&fam, (b, ej), (b, ei), (ei, ej), one(), qi());
        }
        for a in bi + 1..nn {
            cx.rec(&fam, (bj, a), (bj, bi), (bi, a), one(), qi());
        }
        for b in 0..bj {
            if b != ej {
                let c1 = qw(cx.pw(&a_i, b));
                cx.rec(&fam, (b, bi), (b, bj), (bj, bi), c1, qi());
            }
        }
        for a in ej + 1..nn {
            if a != bj {
                let c1 = qw(-cx.pw(&a_i, a));
                cx.rec(&fam, (ei, a), (ei, ej), (ej, a), c1, qi());
            }
        }
        let x = cx.sg(ei, ej);
        let y = cx
            .sg(ej, bj)
            .cloned()
            .unwrap_or_else(|| GradedMatrix::zero(alg.grading.clone()));
        match (x, cx.sg(ej, bi), cx.sg(ei, bj)) {
            (Some(x), Some(u), Some(v)) => {
                let lhs = u + v;
                let rhs = (&(x * &y) - &(&y * x)).scale(&qi());
                let label = format!("{fam}: {} + {} = q^-1 [{}, {}]", cx.pair(ej, bi), cx.pair(ei, bj), cx.pair(ei, ej), cx.pair(ej, bj));
                cx.tally.compare(|| label, &lhs, &rhs);
            }
            _ => cx.tally.missing(format!("{fam}: bracket through {}", cx.pair(ej, bj))),
        }
        if let Some(x) = x {
            let xname = cx.pair(ei, ej);
            cx.commute(&fam, x, &xname, &a_i, |b, a| a == ei || a == bj || b == ej || b == bi, false);
        }
    }

    for mu in 1..k {
        let fam = format!("mu{mu}");
        let a_m = &w[o(mu)] - &w[o(mu + 1)];
        let (om, on, bm, bn) = (o(mu), o(mu + 1), bar[o(mu)], bar[o(mu + 1)]);
        for nu in 1..mu {
            cx.rec(&fam, (o(nu), on), (o(nu), om), (om, on), one(), q());
            cx.rec(&fam, (bn, bar[o(nu)]), (bn, bm), (bm, bar[o(nu)]), one(), q());
        }
        for b in 0..bn {
            if b != on {
                let c1 = qw(cx.pw(&a_m, b));
                cx.rec(&fam, (b, bm), (b, bn), (bn, bm), c1, q());
            }
        }
        for a in on + 1..nn {
            if a != bn {
                let c1 = qw(-cx.pw(&a_m, a));
                cx.rec(&fam, (om, a), (om, on), (on, a), c1, q());
            }
        }
        match (cx.sg(om, on), cx.sg(on, bn), cx.sg(on, bm), cx.sg(om, bn)) {
            (Some(x), Some(y), Some(u), Some(v)) => {
                let lhs = u - v;
                let rhs = (&(y * x) - &(x * y)).scale(&q());
                let label = format!("{fam}: {} - {} = q [{}, {}]", cx.pair(on, bm), cx.pair(om, bn), cx.pair(on, bn), cx.pair(om, on));
                cx.tally.compare(|| label, &lhs, &rhs);
            }
            _ => cx.tally.missing(format!("{fam}: bracket through {}", cx.pair(on, bn))),
        }
        if let Some(x) = cx.sg(om, on) {
            let xname = cx.pair(om, on);
            cx.commute(&fam, x, &xname, &a_m, |b, a| a == om || a == bn || b == on || b == bm, false);
        }
    }

    if n > 0 {
        let fam = "s";
        let a_s = &w[o(k)] - &w[e(1)];
        let (ok, e1, bk, b1) = (o(k), e(1), bar[o(k)], bar[e(1)]);
        for nu in 1..k {
            cx.rec(fam, (o(nu), e1), (o(nu), ok), (ok, e1), one(), q());
            cx.rec(fam, (b1, bar[o(nu)]), (b1, bk), (bk, bar[o(nu)]), one(), q());
        }
        for a in e1 + 1..nn {
            if a != b1 {
                let c1 = qw(-cx.pw(&a_s, a));
                let c2 = if alg.grading[a] == 1 { -qi() } else { qi() };
                cx.rec(fam, (ok, a), (ok, e1), (e1, a), c1, c2);
            }
        }
        for b in 0..b1 {
            if b != e1 {
                let c1 = qw(cx.pw(&a_s, b));
                let c2 = if alg.grading[b] == 1 { -qi() } else { qi() };
                cx.rec(fam, (b, bk), (b, b1), (b1, bk), c1, c2);
            }
        }
        match (cx.sg(ok, e1), cx.sg(e1, b1), cx.sg(ok, b1), cx.sg(e1, bk)) {
            (Some(x), Some(y), Some(u), Some(v)) => {
                let sign = if k % 2 == 0 { q() } else { -q() };
                let lhs = u - &v.scale(&sign);
                let rhs = (&(x * y) - &(y * x)).scale(&qi());
                let label = format!(
                    "{fam}: {} - (-1)^k q {} = q^-1 [{}, {}]",
                    cx.pair(ok, b1),
                    cx.pair(e1, bk),
                    cx.pair(ok, e1),
                    cx.pair(e1, b1)
                );
                cx.tally.compare(|| label, &lhs, &rhs);
            }
            _ => cx.tally.missing(format!("{fam}: bracket through {}", cx.pair(e1, b1))),
        }
        if let Some(x) = cx.sg(ok, e1) {
            let xname = cx.pair(ok, e1);
            let (wk, w1b, w1, wkb) = (&w[ok], &w[b1], &w[e1], &w[bk]);
            cx.commute(
                fam,
                x,
                &xname,
                &a_s,
                |b, a| &w[a] == wk || &w[a] == w1b || &w[b] == w1 || &w[b] == wkb,
                true,
            );
        }
    }

    if alg.m.is_multiple_of(2) {
        let fam = "l";
        let a_l = &w[e(l - 1)] + &w[e(l)];
        let (ll, lm, lb, lmb) = (e(l), e(l - 1), bar[e(l)], bar[e(l - 1)]);
        for b in 0..nn {
            if b < ll {
                let c1 = qw(cx.pw(&a_l, b));
                cx.rec(fam, (b, lmb), (b, ll), (ll, lmb), c1, qi());
            }
            if b < lm {
                cx.rec(fam, (b, lb), (b, lm), (lm, lb), one(), qi());
            }
        }
        for a in 0..nn {
            if lmb < a {
                cx.rec(fam, (ll, a), (ll, lmb), (lmb, a), one(), qi());
            }
            if lb < a {
                let c1 = qw(-cx.pw(&a_l, a));
                cx.rec(fam, (lm, a), (lm, lb), (lb, a), c1, qi());
            }
        }
        if let Some(x) = cx.sg(lm, lb) {
            let xname = cx.pair(lm, lb);
            cx.commute(fam, x, &xname, &a_l, |b, a| a == ll || a == lm || b == lmb || b == lb, false);
        }
    } else {
        let fam = "l";
        let a_l = w[e(l)].clone();
        let (ll, l1, lb) = (e(l), e(l + 1), bar[e(l)]);
        for b in 0..nn {
            if b < ll {
                cx.rec(fam, (b, l1), (b, ll), (ll, l1), one(), qi());
            }
            if b < l1 {
                let c1 = qw(cx.pw(&a_l, b));
                cx.rec(fam, (b, lb), (b, l1), (l1, lb), c1, one());
            }
        }
        for a in 0..nn {
            if l1 < a {
                let c1 = qw(-cx.pw(&a_l, a));
                cx.rec(fam, (ll, a), (ll, l1), (l1, a), c1, one());
            }
            if lb < a {
                cx.rec(fam, (l1, a), (l1, lb), (lb, a), one(), qi());
            }
        }
        if let Some(x) = cx.sg(ll, l1) {
            let xname = cx.pair(ll, l1);
            cx.commute(fam, x, &xname, &a_l, |b, a| a == ll || a == l1 || b == l1 || b == lb, false);
        }
    }
    Ok(cx.tally.finish())
}
