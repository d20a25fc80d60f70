//! Spectral-parameter R-matrices for the vector module, untwisted and
//! twisted, and their exact checks.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gradedmat::{graded_kron, graded_permutation, GradedMatrix};
use crate::laxengine::{assemble_r, closed_form_sigma};
use crate::qring::{LaurentPoly, RatFunc, Rational, ZPoly};
use crate::superroot::{bilinear, AlgebraData};
use crate::verifier::{CheckReport, Tally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    Untwisted,
    Twisted,
}

impl SpectralKind {
    pub fn name(self) -> &'static str {
        match self {
            SpectralKind::Untwisted => "untwisted",
            SpectralKind::Twisted => "twisted",
        }
    }
}

impl fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpectralKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "untwisted" => Ok(SpectralKind::Untwisted),
            "twisted" => Ok(SpectralKind::Twisted),
            _ => Err(Error::InvalidInput(format!("unknown spectral kind '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRMatrix {
    pub algebra: AlgebraData,
    pub kind: SpectralKind,
    pub matrix: GradedMatrix<RatFunc>,
}

fn sp(k: i64) -> LaurentPoly {
    LaurentPoly::s_pow(k)
}

fn pairing(alg: &AlgebraData, a: usize, b: usize) -> i64 {
    bilinear(&alg.weights[a], &alg.weights[b]).to_i64().expect("integral pairing")
}

/// `σ̂^a_a = q^{(ε_a,ε_a)/2} E^a_a − q^{−(ε_a,ε_a)/2} E^ā_ā`, one per index.
pub fn sigma_hat_diag(alg: &AlgebraData) -> Vec<GradedMatrix> {
    (0..alg.dim())
        .map(|a| {
            let t = pairing(alg, a, a);
            let b = alg.bar[a];
            let mut x = GradedMatrix::zero(alg.grading.clone());
            x.add_to(a, a, &sp(t));
            x.add_to(b, b, &-sp(-t));
            x
        })
        .collect()
}

/// `Σ_{a,b} (−1)^{[a][b]} ξ_a ξ_b q^{(ρ, ε_a − ε_b)} E^a_b ⊗ E^ā_b̄`.
pub fn build_e_tensor(alg: &AlgebraData) -> GradedMatrix {
    let g = &alg.grading;
    let n = alg.dim();
    let mut out = GradedMatrix::zero(crate::gradedmat::kron_gradings(g, g));
    for a in 0..n {
        for b in 0..n {
            let diff = &alg.weights[a] - &alg.weights[b];
            let t2 = (&bilinear(&alg.rho, &diff) * &Rational::from_int(2))
                .to_i64()
                .expect("(rho, root) is a half-integer");
            let mut c = alg.xi[a] * alg.xi[b];
            if g[a] * g[b] == 1 {
                c = -c;
            }
            let x = GradedMatrix::elementary(g.clone(), a, b);
            let y = GradedMatrix::elementary(g.clone(), alg.bar[a], alg.bar[b]);
            out = &out + &graded_kron(&x, &y).scale(&(&LaurentPoly::from_int(c) * &sp(t2)));
        }
    }
    out
}

/// `I + (q^{1/2} − q^{−1/2}) Σ_a (−1)^{[a]} E^a_a ⊗ σ̂^a_a
///    + (q − q^{−1}) Σ_{ε_a < ε_b} (−1)^{[b]} E^a_b ⊗ σ̃_ba`.
pub fn braces_matrix(alg: &AlgebraData) -> Result<GradedMatrix> {
    let g = &alg.grading;
    let gg = crate::gradedmat::kron_gradings(g, g);
    let mut out = GradedMatrix::identity(gg);
    let half = &sp(1) - &sp(-1);
    for (a, d) in sigma_hat_diag(alg).iter().enumerate() {
        let c = if g[a] == 1 { -&half } else { half.clone() };
        let x = GradedMatrix::elementary(g.clone(), a, a);
        out = &out + &graded_kron(&x, d).scale(&c);
    }
    let qmq = LaurentPoly::q_minus_qinv();
    let closed = closed_form_sigma(alg)?;
    let vec_rep = &closed.rep;
    for ((b, a), x) in closed.iter() {
        let tilde = &vec_rep.qh(&alg.weights[a], 2)? * x;
        let c = if g[b] == 1 { -&qmq } else { qmq.clone() };
        let e = GradedMatrix::elementary(g.clone(), a, b);
        out = &out + &graded_kron(&e, &tilde).scale(&c);
    }
    Ok(out)
}

/// The constant R-matrix on `V ⊗ V` from the closed-form operators.
pub fn constant_r(alg: &AlgebraData) -> Result<GradedMatrix> {
    Ok(assemble_r(&closed_form_sigma(alg)?)?.matrix)
}

/// Braces factor against a supplied constant R-matrix.
pub fn check_braces(alg: &AlgebraData, r: &GradedMatrix) -> Result<CheckReport> {
    let mut t = Tally::new("braces");
    t.compare(|| "braced factor = R".into(), &braces_matrix(alg)?, r);
    Ok(t.finish())
}

fn xi_point(alg: &AlgebraData, kind: SpectralKind) -> LaurentPoly {
    let d = alg.m as i64 - alg.n as i64;
    match kind {
        SpectralKind::Untwisted => sp(2 * (d - 2)),
        SpectralKind::Twisted => -sp(2 * d),
    }
}

/// The untwisted formula with `m − n = 2`, where `ξ = 1`.
pub fn degenerate_at_one(alg: &AlgebraData, kind: SpectralKind) -> bool {
    xi_point(alg, kind).is_one()
}

fn rf(num: Vec<LaurentPoly>, den: Vec<LaurentPoly>) -> RatFunc {
    RatFunc::make(ZPoly::from_coeffs(num), ZPoly::from_coeffs(den)).expect("nonzero denominator")
}

fn lift(m: &GradedMatrix) -> GradedMatrix<RatFunc> {
    m.map(|c| RatFunc::from(c.clone()))
}

/// `𝔯(z) = c_P(z) P + c_E(z) E + c_R(z) 𝔯` with
/// `c_P = (q − q⁻¹) z / (q − q⁻¹ z)`,
/// `c_E = −(q − q⁻¹) z (z − 1) / ((q − q⁻¹ z)(z − ξ))`,
/// `c_R = −(z − 1) / (q − q⁻¹ z)`,
/// `ξ = q^{m−n−2}` (untwisted) or `−q^{m−n}` (twisted).
pub fn build_spectral_r(alg: &AlgebraData, kind: SpectralKind) -> Result<SpectralRMatrix> {
    let r = constant_r(alg)?;
    Ok(spectral_from_parts(alg, kind, &r, &build_e_tensor(alg)))
}

/// Assembles the three-term formula from explicit `𝔯` and `E`.
pub fn spectral_from_parts(alg: &AlgebraData, kind: SpectralKind, r: &GradedMatrix, e: &GradedMatrix) -> SpectralRMatrix {
    let zero = LaurentPoly::zero;
    let one = LaurentPoly::one;
    let qmq = LaurentPoly::q_minus_qinv();
    let xi = xi_point(alg, kind);
    // q − q⁻¹ z
    let lin = vec![sp(2), -sp(-2)];
    // (q − q⁻¹ z)(z − ξ)
    let quad = vec![-(&sp(2) * &xi), &sp(2) + &(&sp(-2) * &xi), -sp(-2)];
    let c_p = rf(vec![zero(), qmq.clone()], lin.clone());
    let c_e = rf(vec![zero(), qmq.clone(), -qmq.clone()], quad);
    let c_r = rf(vec![one(), -one()], lin);
    let g = alg.grading.clone();
    let p = lift(&graded_permutation(&g));
    let m = &(&p.scale(&c_p) + &lift(e).scale(&c_e)) + &lift(r).scale(&c_r);
    SpectralRMatrix {
        algebra: alg.clone(),
        kind,
        matrix: m,
    }
}

/// `𝔯(1) = P`, `𝔯(0) = q⁻¹ 𝔯`, and z-degrees at most 2, all symbolic. When
/// `ξ = 1` the first becomes `𝔯(1) = P − E`.
pub fn check_spectral_limits(sr: &SpectralRMatrix, r: &GradedMatrix) -> Result<CheckReport> {
    let g = sr.algebra.grading.clone();
    let mut t = Tally::new("spectral-limits");
    let at = |z: LaurentPoly| sr.matrix.try_map(|c| c.at_z(&z));
    let p = lift(&graded_permutation(&g));
    if degenerate_at_one(&sr.algebra, sr.kind) {
        // ξ = 1: (z − 1)/(z − ξ) cancels and the E-term survives at z = 1.
        let e = lift(&build_e_tensor(&sr.algebra));
        t.compare(|| "r(1) = P - E (xi = 1)".into(), &at(LaurentPoly::one())?, &(&p - &e));
    } else {
        t.compare(|| "r(1) = P".into(), &at(LaurentPoly::one())?, &p);
    }
    t.compare(|| "r(0) = q^-1 R".into(), &at(LaurentPoly::zero())?, &lift(&r.scale(&sp(-2))));
    for (row, col, c) in sr.matrix.entries() {
        let ok = c.num().degree().unwrap_or(0) <= 2 && c.den().degree().unwrap_or(0) <= 2;
        if !ok {
            t.missing(format!("z-degree of entry ({}, {}) exceeds 2: {c}", row + 1, col + 1));
        }
    }
    Ok(t.finish())
}

fn eval_matrix(m: &GradedMatrix<RatFunc>, s0: &Rational, z0: &Rational) -> Result<GradedMatrix<Rational>> {
    m.try_map(|c| c.eval(s0, z0))
}

/// One sample point `(s0, z0, w0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub s: Rational,
    pub z: Rational,
    pub w: Rational,
}

fn small_rational(rng: &mut ChaCha8Rng, allow_negative: bool) -> Rational {
    loop {
        let num: i64 = if allow_negative { rng.gen_range(-9..=9) } else { rng.gen_range(1..=9) };
        let den: i64 = rng.gen_range(1..=9);
        if num != 0 {
            return Rational::frac(num, den);
        }
    }
}

fn draw(rng: &mut ChaCha8Rng) -> SamplePoint {
    const PRIMES: [i64; 4] = [2, 3, 5, 7];
    loop {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let s = &Rational::from_int(p) * &small_rational(rng, false);
        if s.is_one() {
            continue;
        }
        return SamplePoint {
            s,
            z: small_rational(rng, true),
            w: small_rational(rng, true),
        };
    }
}

/// `𝔯₁₂(z) 𝔯₁₃(zw) 𝔯₂₃(w) = 𝔯₂₃(w) 𝔯₁₃(zw) 𝔯₁₂(z)` at one point, over ℚ.
pub fn spectral_ybe_at(sr: &SpectralRMatrix, pt: &SamplePoint) -> Result<(GradedMatrix<Rational>, GradedMatrix<Rational>)> {
    let g = sr.algebra.grading.clone();
    let zw = &pt.z * &pt.w;
    let a = eval_matrix(&sr.matrix, &pt.s, &pt.z)?;
    let b = eval_matrix(&sr.matrix, &pt.s, &zw)?;
    let c = eval_matrix(&sr.matrix, &pt.s, &pt.w)?;
    let id = GradedMatrix::<Rational>::identity(g.clone());
    let p12 = graded_kron(&graded_permutation::<Rational>(&g), &id);
    let r12 = graded_kron(&a, &id);
    let r13 = &(&p12 * &graded_kron(&id, &b)) * &p12;
    let r23 = graded_kron(&id, &c);
    Ok((&(&r12 * &r13) * &r23, &(&r23 * &r13) * &r12))
}

/// Draws `samples` pole-free points from `seed`.
pub fn sample_points(sr: &SpectralRMatrix, samples: usize, seed: u64) -> Result<Vec<SamplePoint>> {
    if samples == 0 {
        return Err(Error::InvalidInput("at least one sample is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let budget = 50 * samples;
    for _ in 0..budget {
        if out.len() == samples {
            break;
        }
        let pt = draw(&mut rng);
        let zw = &pt.z * &pt.w;
        let pole = [&pt.z, &zw, &pt.w]
            .iter()
            .any(|z| sr.matrix.entries().any(|(_, _, c)| c.den().eval(&pt.s, z).map_or(true, |d| d.is_zero())));
        if !pole {
            out.push(pt);
        }
    }
    if out.len() < samples {
        return Err(Error::Sampling(format!(
            "only {} of {samples} sample points avoided the poles; try another seed",
            out.len()
        )));
    }
    Ok(out)
}

pub fn check_spectral_ybe_matrix(sr: &SpectralRMatrix, samples: usize, seed: u64) -> Result<CheckReport> {
    let mut t = Tally::new(&format!("spectral-ybe-{}", sr.kind));
    for pt in sample_points(sr, samples, seed)? {
        let (lhs, rhs) = spectral_ybe_at(sr, &pt)?;
        t.compare(
            || format!("spectral YBE at s = {}, z = {}, w = {}", pt.s, pt.z, pt.w),
            &lhs,
            &rhs,
        );
    }
    Ok(t.finish())
}

pub fn check_spectral_ybe(alg: &AlgebraData, kind: SpectralKind, samples: usize, seed: u64) -> Result<CheckReport> {
    check_spectral_ybe_matrix(&build_spectral_r(alg, kind)?, samples, seed)
}

/// Braces identity, symbolic limits and sampled YBE folded into one report.
pub fn check_spectral(alg: &AlgebraData, kind: SpectralKind, samples: usize, seed: u64) -> Result<CheckReport> {
    let r = constant_r(alg)?;
    let sr = spectral_from_parts(alg, kind, &r, &build_e_tensor(alg));
    let parts = [
        check_braces(alg, &r)?,
        check_spectral_limits(&sr, &r)?,
        check_spectral_ybe_matrix(&sr, samples, seed)?,
    ];
    let witness = parts.iter().find_map(|p| p.witness.clone());
    Ok(CheckReport {
        check: format!("spectral-{kind}"),
        status: if witness.is_some() { crate::verifier::Status::Fail } else { crate::verifier::Status::Pass },
        relations_checked: parts.iter().map(|p| p.relations_checked).sum(),
        vacuous: false,
        witness,
    })
}

impl SpectralRMatrix {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "kind": self.kind,
            "algebra": {"m": self.algebra.m, "n": self.algebra.n},
            "gradings": crate::gradedmat::kron_gradings(&self.algebra.grading, &self.algebra.grading),
            "entries": self.matrix.to_triples(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Alg {
            m: i64,
            n: i64,
        }
        #[derive(Deserialize)]
        struct Raw {
            kind: SpectralKind,
            algebra: Alg,
            entries: Vec<(usize, usize, RatFunc)>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Schema(format!("spectral JSON: {e}")))?;
        let alg = crate::superroot::build_algebra(raw.algebra.m, raw.algebra.n)?;
        let g = crate::gradedmat::kron_gradings(&alg.grading, &alg.grading);
        Ok(SpectralRMatrix {
            matrix: GradedMatrix::from_triples(g, raw.entries)?,
            algebra: alg,
            kind: raw.kind,
        })
    }

    /// Exact value at `(s0, z0)`.
    pub fn eval(&self, s0: &Rational, z0: &Rational) -> Result<GradedMatrix<Rational>> {
        eval_matrix(&self.matrix, s0, z0)
    }
}
