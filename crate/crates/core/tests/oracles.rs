use drinfeld_kv::associators::*;
use drinfeld_kv::braids::*;
use drinfeld_kv::drinfeld_kohno::{ad_tn, StrandMap, TnElement};
use drinfeld_kv::free_lie::{cbh_lie, lyndon_basis};
use drinfeld_kv::kv::*;
use drinfeld_kv::tangential::{taut_exp, CofaceKind, TangAut, TangDer};
use drinfeld_kv::traces::{divergence, jacobian, TraceElement};
use drinfeld_kv::verify::{random_aut, random_der, rng};
use drinfeld_kv::{LieElement, NCSeries, Rational, UniSeries};

fn gen(n: usize, cap: usize, i: usize) -> LieElement {
    LieElement::generator(n, cap, i)
}

fn even(cap: usize) -> Associator {
    solve_associator(cap, true, &Tiebreak::Zero).unwrap()
}

fn moebius(n: usize) -> i64 {
    let (mut m, mut k, mut r) = (n, 2, 1);
    while k * k <= m {
        if m % k == 0 {
            m /= k;
            if m % k == 0 {
                return 0;
            }
            r = -r;
        }
        k += 1;
    }
    if m > 1 {
        r = -r;
    }
    r
}

#[test]
fn lyndon_counts_match_necklace_formula() {
    for q in 2..=3usize {
        for d in 1..=8usize {
            let count: i64 = (1..=d).filter(|k| d % k == 0).map(|k| moebius(k) * (q as i64).pow((d / k) as u32)).sum();
            assert_eq!(lyndon_basis(q, d).len() as i64, count / d as i64, "q={q} d={d}");
        }
    }
}

#[test]
fn cbh_low_degrees_by_brute_force() {
    let cap = 3;
    let (x, y) = (gen(2, cap, 0), gen(2, cap, 1));
    let z = (&x.to_assoc().exp().unwrap() * &y.to_assoc().exp().unwrap()).log().unwrap();
    let twelfth = Rational::new(1, 12);
    let expect = x
        .add(&y)
        .add(&x.bracket(&y).scale(&Rational::new(1, 2)))
        .add(&x.bracket(&x.bracket(&y)).scale(&twelfth))
        .add(&y.bracket(&y.bracket(&x)).scale(&twelfth));
    assert_eq!(z, expect.to_assoc());
    assert_eq!(cbh_lie(&[x.clone(), y.clone()]), expect);
    assert!(cbh_lie(&[x.clone(), x.neg()]).is_zero());
}

fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut s = Rational::zero();
        let mut binom = Rational::one();
        for (k, bk) in b.iter().enumerate() {
            s = &s + &(&binom * bk);
            binom = &(&binom * &Rational::from_int((m + 1 - k) as i64)) / &Rational::from_int(k as i64 + 1);
        }
        b.push(&-&s / &Rational::from_int(m as i64 + 1));
    }
    b
}

#[test]
fn even_zeta_values_are_bernoulli_numbers() {
    let b = bernoulli(8);
    let series = bernoulli_even_series(8);
    for n in [2usize, 4, 6, 8] {
        let fact: i64 = (1..=n as i64).product();
        let expect = &b[n] * &Rational::new(-1, 2 * fact);
        assert_eq!(series.coeff(n), expect, "n={n}");
    }
    assert_eq!(series.coeff(2), Rational::new(-1, 24));
    assert_eq!(series.coeff(4), Rational::new(1, 1440));
    let g = gamma_of_phi(&even(6)).unwrap();
    assert_eq!(g.zeta(6), series.coeff(6));
    assert_eq!(g.zeta(3), Rational::zero());
    assert_eq!(g.zeta(5), Rational::zero());
}

#[test]
fn duflo_even_part_is_bernoulli() {
    let phi = even(6);
    let duf = mu_of_phi(&phi).unwrap().duflo;
    let phi_t = kv3_phi(&duf.neg());
    let b = bernoulli_even_series(6);
    for n in [2, 4, 6] {
        assert_eq!(phi_t.coeff(n), b.coeff(n));
    }
}

#[test]
fn infinitesimal_braid_relations() {
    let t = |i, j| TnElement::generator(4, 3, i, j).unwrap();
    assert!(t(0, 1).bracket(&t(0, 2).add(&t(1, 2))).is_zero());
    assert!(t(0, 1).bracket(&t(2, 3)).is_zero());
    assert_eq!(t(0, 1).bracket(&t(0, 2)), t(0, 1).bracket(&t(1, 2)).neg());
}

#[test]
fn ad_of_generators() {
    let cap = 3;
    let x = |k| gen(3, cap, k);
    let u = ad_tn(&TnElement::generator(4, cap, 0, 2).unwrap(), 0);
    for j in 0..3 {
        assert_eq!(u.act_lie(&x(j)), x(1).bracket(&x(j)).truncate(cap));
    }
    let v = ad_tn(&TnElement::generator(4, cap, 1, 2).unwrap(), 0);
    assert!(v.act_lie(&x(2)).is_zero());
    assert!(ad_tn(&TnElement::casimir(4, cap), 0).is_zero());
    for (i, j) in [(0, 1), (1, 2), (1, 3)] {
        assert!(divergence(&ad_tn(&TnElement::generator(4, cap, i, j).unwrap(), 0)).is_zero());
    }
}

#[test]
fn jacobian_trivia() {
    assert!(jacobian(&TangAut::identity(3, 4)).is_zero());
    let w = gen(3, 4, 0).add(&gen(3, 4, 1).bracket(&gen(3, 4, 2)));
    assert!(jacobian(&TangAut::inner(&w)).is_zero());
    let u = TangDer::new(vec![gen(2, 4, 1).bracket(&gen(2, 4, 0)), LieElement::zero(2, 4)]).unwrap();
    let j = jacobian(&taut_exp(&u));
    assert_eq!(j.degree_part(2), divergence(&u).degree_part(2));
}

#[test]
fn delta_twist_agrees_in_lowest_degree() {
    let f = TraceElement::project(&NCSeries::letter(1, 4, 0).pow(3));
    let d = drinfeld_kv::traces::delta(&f);
    let dt = drinfeld_kv::traces::delta_tilde(&f);
    assert_eq!(d.degree_part(3), dt.degree_part(3));
    let diff = d.sub(&dt);
    assert!(diff.is_zero() || diff.valuation() > 3);
}

#[test]
fn associator_degree_two() {
    let phi = even(3);
    let ab = gen(2, 3, 0).bracket(&gen(2, 3, 1)).scale(&Rational::new(1, 24));
    assert_eq!(phi.log().degree_part(2), ab.degree_part(2));
}

#[test]
fn tiebreaks_differ_in_free_direction() {
    let p = solve_associator(5, false, &Tiebreak::Zero).unwrap();
    let q = solve_associator(5, false, &Tiebreak::FreeValue(Rational::one())).unwrap();
    assert_ne!(p.log(), q.log());
    assert!(check_m1(&p).passes() && check_m1(&q).passes());
}

#[test]
fn torsor_identities() {
    let p = solve_associator(5, false, &Tiebreak::Zero).unwrap();
    assert_eq!(act_gt(&GTElement::identity(5), &p).log(), p.log());
    assert_eq!(act_grt(&p, &GRTElement::identity(5)).log(), p.log());
    assert!(element_between_gt(&p, &p).unwrap().log.is_zero());
    let g = gamma_of_f(&GTElement::identity(5)).unwrap();
    assert!(g.log_gamma.is_zero());
}

#[test]
fn alpha_and_a_are_antimorphisms() {
    let p = solve_associator(5, false, &Tiebreak::Zero).unwrap();
    let q1 = solve_associator(5, false, &Tiebreak::FreeValue(Rational::one())).unwrap();
    let q2 = solve_associator(5, false, &Tiebreak::FreeValue(Rational::from_int(-2))).unwrap();
    let f1 = element_between_gt(&p, &q1).unwrap();
    let f2 = element_between_gt(&p, &q2).unwrap();
    assert!(alpha_of_f(&f1.mul(&f2)).same_action(&alpha_of_f(&f2).compose(&alpha_of_f(&f1))));
    let g1 = element_between_grt(&p, &q1).unwrap();
    let g2 = element_between_grt(&p, &q2).unwrap();
    assert!(a_of_g(&g1.mul(&g2)).same_action(&a_of_g(&g2).compose(&a_of_g(&g1))));
    let lg = |f: &GTElement| gamma_of_f(f).unwrap().log_gamma;
    assert_eq!(lg(&f1.mul(&f2)), lg(&f1).add(&lg(&f2)));
    let s = |f: &GTElement| check_kv_group(&alpha_of_f(f)).1.unwrap();
    assert_eq!(check_kv_group(&alpha_of_f(&f2).compose(&alpha_of_f(&f1))).1.unwrap(), s(&f1).add(&s(&f2)));
}

#[test]
fn mu_inverse_of_sum() {
    let phi = even(5);
    let mu = mu_automorphism(&phi);
    let (x, y) = (gen(2, 5, 0), gen(2, 5, 1));
    assert_eq!(mu.inverse().apply_lie(&x.add(&y)), cbh_lie(&[x.clone(), y.clone()]));
    assert!(check_solkv(&inner_shift(&mu, &Rational::one())).passes());
    assert_eq!(check_solkv(&TangAut::identity(2, 4)).product, Some(2));
}

#[test]
fn ab_pair_low_degree() {
    let phi = even(5);
    let ab = extract_ab(&mu_automorphism(&phi)).unwrap();
    assert!(ab.a.degree_part(1).is_zero());
    assert_eq!(ab.b.degree_part(1), gen(2, 5, 0).scale(&Rational::new(-1, 2)).degree_part(1));
    let zero = ABPair { a: LieElement::zero(2, 4), b: LieElement::zero(2, 4) };
    assert_eq!(check_kv1(&zero), Some(2));
    assert!(check_kv3(&TangDer::zero(2, 4), &UniSeries::zero(4)).is_none());
    assert_eq!(s_family(&ab, &Rational::zero()), ab);
}

#[test]
fn kappa_of_inner_shift_is_s_family() {
    let phi = even(5);
    let mu = mu_automorphism(&phi);
    let ab = extract_ab(&mu).unwrap();
    for s in [Rational::one(), Rational::new(-1, 4)] {
        assert_eq!(extract_ab(&inner_shift(&mu, &s)).unwrap(), s_family(&ab, &s));
    }
    assert!(kappa(&TangAut::identity(2, 4)).unwrap().is_zero());
}

#[test]
fn artin_generators() {
    let x13 = BraidWord::new(3, vec![(1, -1), (2, 1), (2, 1), (1, 1)]).unwrap();
    assert!(braid_eq(&pb_gen(3, 1, 3).unwrap(), &x13));
    assert_eq!(pb_gen(2, 1, 2).unwrap(), BraidWord::new(2, vec![(1, 1), (1, 1)]).unwrap());
    for i in 1..=4 {
        for j in i + 1..=4 {
            assert!(pb_gen(4, i, j).unwrap().is_pure());
        }
    }
    let l = BraidWord::new(4, vec![(1, 1), (3, 1)]).unwrap();
    let r = BraidWord::new(4, vec![(3, 1), (1, 1)]).unwrap();
    assert!(braid_eq(&l, &r));
}

#[test]
fn ad_action_on_free_group() {
    let n = 3;
    let xs: Vec<FreeWord> = (0..n).map(|k| FreeWord::generator(n, k)).collect();
    let a = ad_pb(&PbWord::generator(4, 1, 3).unwrap());
    for k in 0..n {
        assert_eq!(a.apply(&xs[k]), xs[1].conj(&xs[k]));
    }
    let b = ad_pb(&PbWord::generator(5, 3, 4).unwrap());
    let xs4: Vec<FreeWord> = (0..4).map(|k| FreeWord::generator(4, k)).collect();
    assert_eq!(b.apply(&xs4[0]), xs4[0]);
    assert_eq!(b.apply(&xs4[3]), xs4[3]);
}

#[test]
fn cabling_doubling_example() {
    let w = PbWord::generator(2, 1, 2).unwrap();
    let c = cabling(&w, &[1, 2]).unwrap();
    let expect = PbWord::generator(3, 1, 2).unwrap().mul(&PbWord::generator(3, 1, 3).unwrap());
    assert_eq!(c, expect);
    assert!(cabling_matches_geometry(&w, &[1, 2]).unwrap());
    assert_eq!(cabling(&w, &[1, 1]).unwrap(), w);
}

#[test]
fn associator_between_houses() {
    let phi = even(4);
    let o = ParenWord::parse("•((••)•)").unwrap();
    let o2 = ParenWord::parse("•(•(••))").unwrap();
    assert_eq!(phi_oo(&phi, &o, &o2).unwrap().log(), &phi.instantiate(4, (&[1], &[2], &[3])));
    assert!(phi_oo(&phi, &o, &o).unwrap().log().is_zero());
    let p = move_path(&ParenWord::parse("(••)•").unwrap(), &ParenWord::parse("•(••)").unwrap()).unwrap();
    assert_eq!(p.len(), 1);
}

#[test]
fn associator_cocycle_on_four_leaf_trees() {
    let phi = even(4);
    let trees = ParenWord::all(4);
    for a in &trees {
        for b in &trees {
            for c in &trees {
                let ab = phi_oo(&phi, a, b).unwrap();
                let bc = phi_oo(&phi, b, c).unwrap();
                let ac = phi_oo(&phi, a, c).unwrap();
                assert!(ab.mul(&bc) == ac || bc.mul(&ab) == ac, "{a} {b} {c}");
            }
        }
        for b in &trees {
            let o = phi_oo_via(&phi, a, b, CombRoute::Outermost).unwrap();
            let i = phi_oo_via(&phi, a, b, CombRoute::Innermost).unwrap();
            assert_eq!(o, i);
        }
    }
}

#[test]
fn mu_o_base_cases() {
    let phi = even(5);
    let house = ParenWord::parse("•(••)").unwrap();
    assert!(mu_o(&phi, &house).unwrap().same_action(&mu_automorphism(&phi)));
    for o in ParenWord::all(3) {
        let mu = mu_o(&phi, &ParenWord::leaf().tensor(&o)).unwrap();
        assert!(check_solkv_n(&mu).passes(), "{o}");
    }
    let l = mu_o(&phi, &house.double(1).unwrap()).unwrap();
    let c = |m: Vec<Option<usize>>| mu_automorphism(&phi).coface(&StrandMap::new(2, m).unwrap(), CofaceKind::Additive).unwrap();
    assert!(l.same_action(&c(vec![Some(0), Some(0), Some(1)]).compose(&c(vec![Some(0), Some(1), None]))));
    let r = mu_o(&phi, &house.double(2).unwrap()).unwrap();
    assert!(r.same_action(&c(vec![Some(0), Some(1), Some(1)]).compose(&c(vec![None, Some(0), Some(1)]))));
}

#[test]
fn comb_conjugators_in_degree_one() {
    let phi = even(4);
    let m = mu_o(&phi, &ParenWord::right_comb(5)).unwrap().normalized();
    let n = m.letters();
    for i in 0..n {
        let mut expect = LieElement::zero(n, 4);
        for k in 0..i {
            expect = expect.add(&gen(n, 4, k).scale(&Rational::new(-1, 2)));
        }
        let mut got = m.exponents()[i].degree_part(1);
        got = got.sub(&gen(n, 4, i).scale(&got.coeff(&drinfeld_kv::Word::letter(i))));
        assert_eq!(got, expect.degree_part(1), "letter {i}");
    }
}

#[test]
fn telescopic_two_leaves_is_mu() {
    let phi = even(5);
    let two = ParenWord::parse("••").unwrap();
    assert!(telescopic_mu(&phi, &two).same_action(&mu_automorphism(&phi)));
    let f = GTElement::identity(4);
    assert!(alpha_f_o(&f, &ParenWord::parse("•(••)").unwrap()).same_action(&TangAut::identity(3, 4)));
}

#[test]
fn centralizer_examples() {
    let w = centralizer_element(&PbWord::identity(2), 1).unwrap();
    assert_eq!(w, PbWord::generator(3, 1, 2).unwrap());
    assert_eq!(commutes_with_x12(&w, 5), None);
}

#[test]
fn coface_compatibility_of_divergence() {
    let mut r = rng(5);
    let phi = StrandMap::new(2, vec![Some(0), Some(1), Some(1)]).unwrap();
    for _ in 0..10 {
        let u = random_der(2, 4, &mut r);
        let lhs = divergence(&u.coface(&phi, CofaceKind::Additive).unwrap());
        let rhs = divergence(&u).coface(&phi, CofaceKind::Additive).unwrap();
        assert_eq!(lhs, rhs.truncate(lhs.cap()));
        let g = random_aut(2, 4, &mut r);
        let lhs = jacobian(&g.coface(&phi, CofaceKind::Cbh).unwrap());
        let rhs = jacobian(&g).coface(&phi, CofaceKind::Cbh).unwrap();
        assert_eq!(lhs, rhs.truncate(lhs.cap()));
    }
}
