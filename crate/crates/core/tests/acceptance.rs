//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p laxforge --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use laxforge::gradedmat::{build_trivial_rep, build_vector_rep, GradedMatrix};
use laxforge::laxengine::{assemble_r, closed_form_sigma, extend_sigma, init_simple_sigma, opposite_r, RTensor, SigmaSet};
use laxforge::qring::{LaurentPoly, Rational};
use laxforge::spectral::{
    build_e_tensor, build_spectral_r, check_braces, check_spectral_limits, check_spectral_ybe_matrix, constant_r,
    spectral_from_parts, SpectralKind,
};
use laxforge::superroot::{bilinear, build_algebra, IndexLabel};
use laxforge::verifier::{
    check_appendix, check_delta_property, check_extra_serre, check_intertwining, check_lax_ybe, check_opposite,
    check_path_independence, check_qcom, check_qserre, check_ybe, CheckReport,
};
use laxforge::Result;

const ACCEPTANCE_SET: [(i64, i64); 9] = [(3, 0), (4, 0), (5, 0), (6, 0), (3, 2), (4, 2), (5, 2), (3, 4), (5, 4)];
const CLOSED_FORM_LIMIT: Duration = Duration::from_secs(30);
const YBE_DIM9_LIMIT: Duration = Duration::from_secs(300);
const SPECTRAL_LIMIT: Duration = Duration::from_secs(600);
const SPECTRAL_SAMPLES: usize = 20;
const SPECTRAL_SEED: u64 = 20240517;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn sigma_for(m: i64, n: i64) -> Result<SigmaSet> {
    let alg = build_algebra(m, n)?;
    extend_sigma(init_simple_sigma(&build_vector_rep(&alg)?)?)
}

fn lp(s: &str) -> LaurentPoly {
    s.parse().expect("valid literal")
}

/// Flips the sign of the first stored entry of `x`, off the diagonal if possible.
fn flip_one(x: &GradedMatrix) -> GradedMatrix {
    let pick = x
        .entries()
        .find(|(r, c, _)| r != c)
        .or_else(|| x.entries().next())
        .map(|(r, c, v)| (r, c, v.clone()))
        .expect("matrix has an entry to mutate");
    let mut y = x.clone();
    y.set(pick.0, pick.1, -pick.2);
    y
}

fn over_all(mut f: impl FnMut(i64, i64) -> Result<CheckReport>) -> Outcome {
    let mut relations = 0;
    for (m, n) in ACCEPTANCE_SET {
        let r = f(m, n)?;
        if !r.passed() {
            return Ok((false, format!("({m},{n}) {r}")));
        }
        relations += r.relations_checked;
    }
    Ok((true, format!("{relations} relations over {} cases", ACCEPTANCE_SET.len())))
}

fn c1_closed_form() -> Outcome {
    let mut worst = Duration::ZERO;
    for (m, n) in ACCEPTANCE_SET {
        let t = Instant::now();
        let set = sigma_for(m, n)?;
        let closed = closed_form_sigma(set.algebra())?;
        for ((b, a), x) in closed.iter() {
            if set.at(b, a) != x {
                return Ok((false, format!("({m},{n}) differs at {}", set.pair_label(b, a))));
            }
        }
        let dt = t.elapsed();
        if dt > CLOSED_FORM_LIMIT {
            return Ok((false, format!("({m},{n}) took {dt:?}, limit {CLOSED_FORM_LIMIT:?}")));
        }
        worst = worst.max(dt);
    }
    Ok((true, format!("all {} cases, slowest {worst:.2?}", ACCEPTANCE_SET.len())))
}

fn c2_anchors() -> Outcome {
    let set = sigma_for(3, 0)?;
    let g = set.algebra().grading.clone();
    let mut s12 = GradedMatrix::zero(g.clone());
    s12.set(0, 1, lp("1"));
    s12.set(1, 2, lp("-1*s^-1"));
    let mut s13 = GradedMatrix::zero(g);
    s13.set(0, 2, lp("-1 + 1*s^2"));
    let set32 = sigma_for(3, 2)?;
    let alg = set32.algebra();
    let p = |s: &str| alg.position(s.parse::<IndexLabel>().unwrap()).unwrap();
    let (mu1, i1, i3, mu2) = (p("mu1"), p("i1"), p("i3"), p("mu2"));
    let mut x = GradedMatrix::zero(alg.grading.clone());
    x.set(mu1, i1, lp("1"));
    x.set(i3, mu2, lp("-1*s^2"));
    let mut y = GradedMatrix::zero(alg.grading.clone());
    y.set(mu1, mu2, lp("1*s^-4 + 1*s^-2"));
    let checks = [
        ("(3,0) s(i1,i2)", set.at(0, 1) == &s12),
        ("(3,0) s(i1,i3)", set.at(0, 2) == &s13),
        ("(3,2) s(mu1,i1)", set32.at(mu1, i1) == &x),
        ("(3,2) s(mu1,mu2)", set32.at(mu1, mu2) == &y),
    ];
    match checks.iter().find(|c| !c.1) {
        Some((name, _)) => Ok((false, format!("{name} differs"))),
        None => Ok((true, "4 anchor operators match".into())),
    }
}

fn c3_ybe() -> Outcome {
    let mut relations = 0;
    for (m, n) in ACCEPTANCE_SET {
        let t = Instant::now();
        let set = sigma_for(m, n)?;
        let r = check_ybe(&assemble_r(&set)?)?;
        let dt = t.elapsed();
        if !r.passed() {
            return Ok((false, format!("({m},{n}) {r}")));
        }
        if set.algebra().dim() == 9 && dt > YBE_DIM9_LIMIT {
            return Ok((false, format!("({m},{n}) took {dt:?}, limit {YBE_DIM9_LIMIT:?}")));
        }
        relations += r.relations_checked;
    }
    Ok((true, format!("{relations} cases exact")))
}

fn c4_intertwining() -> Outcome {
    over_all(|m, n| {
        let set = sigma_for(m, n)?;
        check_intertwining(&assemble_r(&set)?, &set.rep)
    })
}

fn c5_delta() -> Outcome {
    over_all(|m, n| check_delta_property(&sigma_for(m, n)?))
}

fn c6_opposite() -> Outcome {
    over_all(|m, n| {
        let set = sigma_for(m, n)?;
        check_opposite(&assemble_r(&set)?, &opposite_r(&set)?)
    })
}

fn c7_path_independence() -> Outcome {
    over_all(|m, n| check_path_independence(&sigma_for(m, n)?))
}

fn c8_relations() -> Outcome {
    over_all(|m, n| {
        let set = sigma_for(m, n)?;
        let a = check_appendix(&set)?;
        if !a.passed() {
            return Ok(a);
        }
        let q = check_qcom(&set)?;
        Ok(CheckReport {
            relations_checked: a.relations_checked + q.relations_checked,
            ..q
        })
    })
}

fn c9_serre() -> Outcome {
    let (ok, detail) = over_all(|m, n| check_qserre(&build_vector_rep(&build_algebra(m, n)?)?))?;
    if !ok {
        return Ok((false, detail));
    }
    let extra = check_extra_serre(&sigma_for(5, 4)?)?;
    if !extra.passed() || extra.vacuous {
        return Ok((false, format!("(5,4) {extra}")));
    }
    Ok((true, format!("{detail}; extra relations on (5,4): {}", extra.relations_checked)))
}

fn c10_specializations() -> Outcome {
    for (m, n) in ACCEPTANCE_SET {
        let set = sigma_for(m, n)?;
        let alg = set.algebra();
        let r = assemble_r(&set)?;
        let at_one = r.matrix.try_map(|c| c.eval(&Rational::one()))?;
        if at_one != GradedMatrix::identity(r.matrix.gradings().to_vec()) {
            return Ok((false, format!("({m},{n}) R at s = 1 is not the identity")));
        }
        for root in &alg.simple_roots {
            let lhs = bilinear(&alg.rho, &root.weight);
            let rhs = &bilinear(&root.weight, &root.weight) * &Rational::half();
            if lhs != rhs {
                return Ok((false, format!("({m},{n}) (rho, alpha_{}) = {lhs}, expected {rhs}", root.label)));
            }
        }
    }
    Ok((true, "R(s=1) = I and (rho, alpha) = (alpha, alpha)/2 on all cases".into()))
}

fn c11_spectral() -> Outcome {
    let t = Instant::now();
    let mut notes = Vec::new();
    for (m, n) in ACCEPTANCE_SET {
        let alg = build_algebra(m, n)?;
        let r = constant_r(&alg)?;
        let b = check_braces(&alg, &r)?;
        if !b.passed() {
            return Ok((false, format!("({m},{n}) {b}")));
        }
        for kind in [SpectralKind::Untwisted, SpectralKind::Twisted] {
            let sr = build_spectral_r(&alg, kind)?;
            let lim = check_spectral_limits(&sr, &r)?;
            if !lim.passed() {
                return Ok((false, format!("({m},{n}) {kind} {lim}")));
            }
            if laxforge::spectral::degenerate_at_one(&alg, kind) {
                notes.push(format!("({m},{n}) {kind}: r(1) = P - E"));
            }
        }
    }
    let mut samples = 0;
    for (m, n) in [(3, 2), (4, 2)] {
        let alg = build_algebra(m, n)?;
        for kind in [SpectralKind::Untwisted, SpectralKind::Twisted] {
            let rep = check_spectral_ybe_matrix(&build_spectral_r(&alg, kind)?, SPECTRAL_SAMPLES, SPECTRAL_SEED)?;
            if !rep.passed() || rep.relations_checked < SPECTRAL_SAMPLES {
                return Ok((false, format!("({m},{n}) {kind} {rep}")));
            }
            samples += rep.relations_checked;
        }
    }
    let dt = t.elapsed();
    if dt > SPECTRAL_LIMIT {
        return Ok((false, format!("took {dt:?}, limit {SPECTRAL_LIMIT:?}")));
    }
    let note = if notes.is_empty() { String::new() } else { format!("; removable singularity: {}", notes.join(", ")) };
    Ok((true, format!("braces + limits on all cases, {samples} YBE samples in {dt:.1?}{note}")))
}

/// Each suite must fail, with a witness, on a single-entry sign flip of its input.
fn c12_negative_controls() -> Outcome {
    let mut caught = Vec::new();
    let mut expect_fail = |name: &str, r: CheckReport| -> bool {
        let ok = !r.passed() && r.witness.is_some();
        if ok {
            caught.push(name.to_string());
        }
        ok
    };
    let set = sigma_for(3, 2)?;
    let alg = set.algebra().clone();
    let r = assemble_r(&set)?;
    let mut_r = RTensor {
        matrix: flip_one(&r.matrix),
        ..r.clone()
    };
    // A recursed operator, so that the seeds stay intact.
    let (b, a) = (alg.odd(1), alg.bar[alg.even(1)]);
    let mut mut_set = set.clone();
    mut_set.replace(b, a, flip_one(set.at(b, a)));

    let mut results = vec![
        ("ybe", check_ybe(&mut_r)?),
        ("intertwine", check_intertwining(&mut_r, &set.rep)?),
        ("delta", check_delta_property(&mut_set)?),
        ("opposite", check_opposite(&r, &RTensor { matrix: flip_one(&opposite_r(&set)?.matrix), ..opposite_r(&set)? })?),
        ("path-independence", check_path_independence(&mut_set)?),
        ("appendix", check_appendix(&mut_set)?),
    ];
    let mut qcom_set = set.clone();
    let fam_pair = (alg.even(1), alg.bar[alg.even(1)]);
    qcom_set.replace(fam_pair.0, fam_pair.1, flip_one(set.at(fam_pair.0, fam_pair.1)));
    results.push(("qcom", check_qcom(&qcom_set)?));

    // Serre: the D-type generators of (4,2) form a cycle.
    let alg42 = build_algebra(4, 2)?;
    let mut rep42 = build_vector_rep(&alg42)?;
    let l = rep42.root_index("l").expect("root l");
    rep42.e[l] = flip_one(&rep42.e[l]);
    results.push(("serre", check_qserre(&rep42)?));

    let set54 = sigma_for(5, 4)?;
    let a54 = set54.algebra().clone();
    let mut mut54 = set54.clone();
    let (kb, ka) = (a54.odd(a54.k), a54.even(2));
    mut54.replace(kb, ka, flip_one(set54.at(kb, ka)));
    results.push(("extra-serre", check_extra_serre(&mut54)?));

    let rr = constant_r(&alg)?;
    results.push(("braces", check_braces(&alg, &flip_one(&rr))?));
    for kind in [SpectralKind::Untwisted, SpectralKind::Twisted] {
        let sr = build_spectral_r(&alg, kind)?;
        let mut bad = sr.clone();
        let (row, col, v) = sr
            .matrix
            .entries()
            .find(|(r, c, _)| r != c)
            .map(|(r, c, v)| (r, c, v.clone()))
            .expect("entry");
        bad.matrix.set(row, col, -&v);
        results.push((if kind == SpectralKind::Untwisted { "spectral-limits-untwisted" } else { "spectral-limits-twisted" }, check_spectral_limits(&bad, &rr)?));
        results.push((if kind == SpectralKind::Untwisted { "spectral-ybe-untwisted" } else { "spectral-ybe-twisted" }, check_spectral_ybe_matrix(&bad, 4, SPECTRAL_SEED)?));
    }
    // The E-term is the part the braces check cannot see.
    let flipped_e = spectral_from_parts(&alg, SpectralKind::Untwisted, &rr, &flip_one(&build_e_tensor(&alg)));
    results.push(("spectral-ybe-e-term", check_spectral_ybe_matrix(&flipped_e, 4, SPECTRAL_SEED)?));

    let total = results.len();
    for (name, rep) in results {
        if !expect_fail(name, rep) {
            return Ok((false, format!("mutation not detected by {name}")));
        }
    }
    Ok((true, format!("{total} mutated inputs rejected: {}", caught.join(", "))))
}

fn c13_lax_ybe() -> Outcome {
    let set = sigma_for(3, 2)?;
    let alg = set.algebra();
    let rv = assemble_r(&set)?;
    let triv = extend_sigma(init_simple_sigma(&build_trivial_rep(alg)?)?)?;
    let rt = assemble_r(&triv)?;
    let a = check_lax_ybe(&rv, &rt)?;
    let b = check_lax_ybe(&rv, &rv)?;
    let c = check_ybe(&rv)?;
    let ok = a.passed() && b.passed() && c.passed();
    Ok((ok, format!("trivial: {}; vector: {}; plain YBE: {}", a, b, c)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("closed-form oracle equivalence", c1_closed_form),
        ("anchor values", c2_anchors),
        ("Yang-Baxter equation", c3_ybe),
        ("intertwining", c4_intertwining),
        ("coproduct identity", c5_delta),
        ("opposite R-matrix", c6_opposite),
        ("path independence", c7_path_independence),
        ("relation tables and q-commutation", c8_relations),
        ("q-Serre relations", c9_serre),
        ("specializations", c10_specializations),
        ("spectral R-matrices", c11_spectral),
        ("negative controls", c12_negative_controls),
        ("mixed Lax YBE", c13_lax_ybe),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let idx = i + 1;
        if !only.is_empty() && !only.contains(&idx) {
            continue;
        }
        let t = Instant::now();
        let (ok, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {idx:>2} {}: {name} [{:.1?}] {detail}",
            if ok { "PASS" } else { "FAIL" },
            t.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all criteria passed");
        ExitCode::SUCCESS
    }
}
