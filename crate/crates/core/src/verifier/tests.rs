use super::*;
use crate::gradedmat::{build_trivial_rep, build_vector_rep};
use crate::laxengine::{extend_sigma, init_simple_sigma};
use crate::qring::LaurentPoly;
use crate::superroot::build_algebra;

fn vector_sigma(m: i64, n: i64) -> SigmaSet {
    let alg = build_algebra(m, n).unwrap();
    let rep = build_vector_rep(&alg).unwrap();
    extend_sigma(init_simple_sigma(&rep).unwrap()).unwrap()
}

#[test]
fn all_checks_pass_small() {
    for (m, n) in [(3, 0), (4, 0), (3, 2), (4, 2)] {
        let set = vector_sigma(m, n);
        for r in run_checks(&Check::ALL, &set).unwrap() {
            assert!(r.passed(), "({m},{n}) {r}");
        }
    }
}

#[test]
fn extra_serre_vacuous_for_k1() {
    let set = vector_sigma(3, 2);
    let r = check_extra_serre(&set).unwrap();
    assert!(r.vacuous && r.passed());
}

#[test]
fn extra_serre_nontrivial_osp44() {
    let set = vector_sigma(4, 4);
    let r = check_extra_serre(&set).unwrap();
    assert!(r.passed() && r.relations_checked == 5, "{r}");
}

#[test]
fn mutated_sigma_fails_with_witness() {
    let mut set = vector_sigma(3, 2);
    let (b, a) = (0, 2);
    let mut x = set.at(b, a).clone();
    let (r, c, v) = x.entries().next().map(|(r, c, v)| (r, c, v.clone())).unwrap();
    x.set(r, c, &v + &LaurentPoly::one());
    set.replace(b, a, x);
    for check in [Check::PathIndependence, Check::Delta, Check::Appendix] {
        let rep = run_check(check, &set).unwrap();
        assert!(!rep.passed(), "{check} should fail");
        assert!(rep.witness.is_some());
    }
}

#[test]
fn trivial_module_checks() {
    let alg = build_algebra(3, 2).unwrap();
    let set = extend_sigma(init_simple_sigma(&build_trivial_rep(&alg).unwrap()).unwrap()).unwrap();
    for c in [Check::LaxYbe, Check::Delta, Check::PathIndependence] {
        assert!(run_check(c, &set).unwrap().passed(), "{c}");
    }
}

#[test]
fn check_names_round_trip() {
    for c in Check::ALL {
        assert_eq!(c.name().parse::<Check>().unwrap(), c);
    }
    assert!("nope".parse::<Check>().is_err());
}
