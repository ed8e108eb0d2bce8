use drinfeld_kv::associators::{solve_associator, Associator, Tiebreak};
use drinfeld_kv::verify::*;
use drinfeld_kv::{Rational, Word};

fn phi() -> Associator {
    solve_associator(6, true, &Tiebreak::Zero).unwrap()
}

fn failing(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed()).map(|c| format!("{} {:?}", c.id, c.first_failure_degree)).collect()
}

fn assert_passes(suite: Suite) {
    let checks = run_suite(suite, &phi(), Caps { two_letter: 6, multi: 5 }, 7);
    assert!(!checks.is_empty());
    assert!(checks.windows(2).all(|w| w[0].id < w[1].id), "sorted and unique");
    assert_eq!(failing(&checks), Vec::<String>::new());
}

#[test]
fn kv_suite_passes() {
    assert_passes(Suite::Kv);
    let checks = run_suite(Suite::Kv, &phi(), Caps::uniform(6), 0);
    let sym = checks.iter().find(|c| c.id == "kv.symmetry.minus_quarter").unwrap();
    assert_eq!(sym.status, Status::KnownFail);
    assert_eq!(checks.iter().find(|c| c.id == "kv.symmetry.quarter").unwrap().status, Status::Pass);
}

#[test]
fn torsor_suite_passes() {
    assert_passes(Suite::Torsor);
}

#[test]
fn braid_suite_passes() {
    assert_passes(Suite::Braid);
}

#[test]
fn cocycle_suite_passes() {
    assert_passes(Suite::Cocycle);
}

#[test]
fn centralizer_suite_passes() {
    assert_passes(Suite::Centralizer);
}

#[test]
fn corrupted_associator_fails_identity2() {
    let bad = phi().perturbed(Word::from_letters(&[0, 0, 1]), &Rational::new(1, 3));
    let checks = kv_suite(&bad, Caps::uniform(5));
    let c = checks.iter().find(|c| c.id == "kv.identity2").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.first_failure_degree, Some(3));
}

#[test]
fn seeded_suites_are_deterministic() {
    let a = cocycle_suite(4, 99, 10);
    let b = cocycle_suite(4, 99, 10);
    assert_eq!(a, b);
    let p = phi();
    assert_eq!(centralizer_suite(4, 3), centralizer_suite(4, 3));
    assert_eq!(other_associator(&p, 1).unwrap().log(), other_associator(&p, 1).unwrap().log());
}

#[test]
fn check_json_shape() {
    let c = Check::degree("x.y", "anchor", Some(3)).with_witness(serde_json::json!({ "k": 1 }));
    let v = c.to_json();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["first_failure_degree"], 3);
    assert_eq!(v["witness"]["k"], 1);
    assert!(Check::new("a", "b", true).to_json().get("witness").is_none());
}
