use rand::Rng;
use std::time::{Duration, Instant};

use drinfeld_kv::associators::*;
use drinfeld_kv::braids::*;
use drinfeld_kv::kv::*;
use drinfeld_kv::tangential::CofaceKind;
use drinfeld_kv::traces::{delta, delta_of_series, exactness, jacobian, solve_coboundary, TraceElement};
use drinfeld_kv::verify::{self, Caps, Check};
use drinfeld_kv::{free_lie::lyndon_basis, Rational, Word};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn all_pass(checks: &[Check]) -> Outcome {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}@{:?}", c.id, c.first_failure_degree))
        .collect();
    outcome(bad.is_empty(), format!("{} checks, failing: {:?}", checks.len(), bad))
}

fn even6() -> Associator {
    solve_associator(6, true, &Tiebreak::Zero).unwrap()
}

fn solver() -> Outcome {
    let t = Instant::now();
    let phi = even6();
    let dt = t.elapsed();
    let m1 = check_m1(&phi);
    outcome(m1.passes() && dt < Duration::from_secs(600), format!("{:?}, {:?}", dt, m1))
}

fn gamma_values() -> Outcome {
    let g = gamma_of_phi(&even6()).unwrap();
    let z2 = g.zeta(2) == Rational::new(-1, 24);
    let z4 = g.zeta(4) == Rational::new(1, 1440);
    let b = bernoulli_check(&g, 6);
    outcome(z2 && z4 && b.is_none(), format!("zeta2 = {}, zeta4 = {}, bernoulli {:?}", g.zeta(2), g.zeta(4), b))
}

fn end_to_end() -> Outcome {
    let phi = even6();
    let mu = mu_automorphism(&phi);
    let rep = check_solkv(&mu);
    let sol = mu_of_phi(&phi);
    outcome(rep.passes() && sol.is_ok(), format!("product {:?}, duflo ok {}", rep.product, rep.duflo.is_ok()))
}

fn identity2() -> Outcome {
    let phi = solve_associator(5, true, &Tiebreak::Zero).unwrap();
    let good = identity2_check(&phi).unwrap();
    let mut caught = Vec::new();
    for w in lyndon_basis(2, 3) {
        let bad = phi.perturbed(w, &Rational::new(1, 5));
        caught.push(identity2_check(&bad).unwrap().is_some());
    }
    let ok = good.is_none() && !caught.is_empty() && caught.iter().all(|c| *c);
    outcome(ok, format!("valid {:?}, corrupted degree-3 coefficients caught {:?}", good, caught))
}

fn jacobian_gamma() -> Outcome {
    let phi = even6();
    let lg = gamma_of_phi(&phi).unwrap().log_gamma;
    let mu = mu_automorphism(&phi);
    let j = jacobian(&mu);
    let expect = delta_of_series(&lg.neg(), j.cap(), CofaceKind::Additive);
    let r = solve_coboundary(&j, CofaceKind::Additive).unwrap();
    let ok = j == expect && r == lg.neg();
    outcome(ok, format!("J(mu) matches {}, solved r = -log Gamma {}", j == expect, r == lg.neg()))
}

fn cocycles() -> Outcome {
    let checks: Vec<Check> = verify::cocycle_suite(5, 2024, 100)
        .into_iter()
        .filter(|c| c.id == "cocycle.j_bracket" || c.id == "cocycle.J_composition")
        .collect();
    let mut o = all_pass(&checks);
    o.pass &= checks.len() == 2;
    o
}

fn complex() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 1..=6 {
        let e = exactness(d);
        ok &= e.kernel_at_two == e.image_from_one && e.kernel_at_one == usize::from(d == 1);
        rows.push((d, e.kernel_at_two, e.image_from_one, e.kernel_at_one));
    }
    let x1 = TraceElement::from_terms(1, 6, [(Word::from_letters(&[0]), Rational::one())]);
    ok &= delta(&x1).is_zero();
    outcome(ok, format!("(d, ker2, im1, ker1) = {:?}", rows))
}

fn ad_jacobian() -> Outcome {
    let mut r = verify::rng(11);
    let mut worst = None;
    for _ in 0..50 {
        let w = PbWord::random(4, r.gen_range(1..=6), &mut r);
        let j = jacobian(&malcev_taut(&w, 5));
        if !j.is_zero() {
            worst = Some(w.to_string());
        }
    }
    outcome(worst.is_none(), format!("50 words in PB_4 through degree 5, failing {:?}", worst))
}

fn identity4() -> Outcome {
    let phi = solve_associator(4, true, &Tiebreak::Zero).unwrap();
    let mut cases = 0;
    let mut bad = Vec::new();
    for n in 1..=4 {
        for o in ParenWord::all(n) {
            for i in 1..n {
                cases += 1;
                if identity4_check(&phi, &o, i).unwrap().is_some() {
                    bad.push(format!("{o}/{i}"));
                }
            }
        }
    }
    let nine = ParenWord::parse("(((••)(••))(•(••)))(••)").unwrap();
    let names: Vec<String> = telescopic_factors(&nine)
        .iter()
        .map(|(l, r)| {
            let s = |v: &Vec<usize>| v.iter().map(|k| (k + 1).to_string()).collect::<String>();
            format!("{},{}", s(l), s(r))
        })
        .collect();
    let shape = ["1234567,89", "1234,567", "8,9", "12,34", "5,67", "1,2", "3,4", "6,7"];
    let p3 = phi.truncate(3);
    let five: Vec<bool> = ParenWord::all(4)
        .iter()
        .map(|o| telescopic_mu(&p3, o).first_difference(&mu_o(&p3, &ParenWord::leaf().tensor(o)).unwrap()).is_none())
        .collect();
    let ok = bad.is_empty() && names == shape && five.iter().all(|b| *b);
    outcome(ok, format!("{cases} (O, i) cases, failing {:?}; nine-leaf {:?}; five-leaf {:?}", bad, names, five))
}

fn torsor() -> Outcome {
    let phi = solve_associator(5, false, &Tiebreak::Zero).unwrap();
    let checks: Vec<Check> = verify::torsor_suite(&phi, Caps::uniform(5), 0)
        .into_iter()
        .filter(|c| !c.id.starts_with("torsor.identity22") && !c.id.starts_with("torsor.jacobian_alpha"))
        .collect();
    all_pass(&checks)
}

fn identity22() -> Outcome {
    let p = solve_associator(5, false, &Tiebreak::Zero).unwrap();
    let q = verify::other_associator(&p, 0).unwrap();
    let f = element_between_gt(&p, &q).unwrap();
    let f4 = GTElement::new(f.log.with_cap(4)).unwrap();
    let i22 = identity22_check(&f4).unwrap();
    let p84: Vec<Option<usize>> = ParenWord::all(3).iter().map(|o| jacobian_alpha_check(&f4, o).unwrap()).collect();
    let mut p81 = Vec::new();
    for n in 3..=5 {
        for o in ParenWord::all(n) {
            if let Some(d) = jacobian_mu_o_check(&p, &o).unwrap() {
                p81.push(format!("{o}@{d}"));
            }
        }
    }
    let ok = i22.is_none() && p84.iter().all(Option::is_none) && p81.is_empty();
    outcome(ok, format!("identity22 {:?}, J(alpha_f^O) {:?}, J(mu_O) failing {:?}", i22, p84, p81))
}

struct KvOutcome {
    main: Outcome,
    literal_symmetry: Option<usize>,
    shifted_symmetry: Option<usize>,
}

fn kv_equations() -> KvOutcome {
    let phi = even6();
    let lg = gamma_of_phi(&phi).unwrap().log_gamma;
    let mu = mu_automorphism(&phi);
    let duf = mu_of_phi(&phi).unwrap().duflo;
    let ab = extract_ab(&mu).unwrap();
    let kv1 = check_kv1(&ab);
    let kv3 = check_kv3(&ab.to_der(), &duf.neg());
    let fam: Vec<Option<usize>> =
        [Rational::one(), Rational::new(-1, 4)].iter().map(|s| check_kv1(&s_family(&ab, s))).collect();
    let ok = kv1.is_none() && kv3.is_none() && fam.iter().all(Option::is_none) && duf == lg.neg();
    KvOutcome {
        main: outcome(ok, format!("KV1 {:?}, KV3 {:?}, s-family KV1 {:?}", kv1, kv3, fam)),
        literal_symmetry: symmetry_check(&s_family(&ab, &Rational::new(-1, 4))),
        shifted_symmetry: symmetry_check(&s_family(&ab, &Rational::new(1, 4))),
    }
}

fn appendix() -> Outcome {
    let mut ok = true;
    let mut dims = Vec::new();
    for n in 2..=4 {
        let rows = centralizer_rows(n, 5).unwrap();
        ok &= rows.iter().all(|r| r.equal && r.kernel == r.predicted);
        dims.push((n, rows.iter().map(|r| r.kernel).collect::<Vec<_>>()));
    }
    let mut rel = Vec::new();
    for n in 2..=4 {
        let r = check_pb_relations(n);
        ok &= r.passes() && (n < 3 || !r.controls.is_empty());
        rel.push((n, r.relators.len(), r.controls.len()));
    }
    outcome(ok, format!("centralizer dims {:?}; (n, relators, controls) {:?}", dims, rel))
}

fn line(k: usize, name: &str, o: &Outcome) {
    println!("{} criterion {:>2} {}: {}", if o.pass { "PASS" } else { "FAIL" }, k, name, o.detail);
}

fn main() {
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "solver degree 6 even", solver()),
        (2, "gamma values", gamma_values()),
        (3, "solkv end to end", end_to_end()),
        (4, "mu cocycle identity and sensitivity", identity2()),
        (5, "jacobian of mu and log gamma", jacobian_gamma()),
        (6, "cocycle suites", cocycles()),
        (7, "complex exactness", complex()),
        (8, "jacobian of Ad on PB_4", ad_jacobian()),
        (9, "doubling identity and telescopic", identity4()),
        (10, "torsor suite", torsor()),
        (11, "alpha cocycle identity, alpha and mu_O jacobians", identity22()),
    ];
    for (k, name, o) in &results {
        line(*k, name, o);
    }
    let kv = kv_equations();
    let c12 = outcome(
        kv.main.pass && kv.literal_symmetry.is_none(),
        format!(
            "{}; swap symmetry at s = -1/4 first fails at {:?} (expected, reported); at s = +1/4 {:?}",
            kv.main.detail, kv.literal_symmetry, kv.shifted_symmetry
        ),
    );
    line(12, "KV1, KV3, s-family, symmetry", &c12);
    let c13 = appendix();
    line(13, "centralizers and PB relators", &c13);

    for (k, _, o) in &results {
        assert!(o.pass, "criterion {k}: {}", o.detail);
    }
    assert!(kv.main.pass, "criterion 12: {}", kv.main.detail);
    assert!(kv.shifted_symmetry.is_none(), "criterion 12 shifted symmetry");
    if kv.literal_symmetry.is_some() {
        eprintln!("criterion 12: s = -1/4 swap symmetry FAILS at degree {:?}", kv.literal_symmetry);
    }
    assert!(c13.pass, "criterion 13: {}", c13.detail);
}
