use drinfeld_kv::associators::*;
use drinfeld_kv::{Rational, Word};

#[test]
fn trivial_passes_mod_two() {
    let r = check_m1(&Associator::trivial(1));
    assert!(r.passes(), "{:?}", r);
}

#[test]
fn degree_two_is_pinned() {
    let phi = solve_associator(3, true, &Tiebreak::Zero).unwrap();
    let ab = Word::from_letters(&[0, 1]);
    assert_eq!(phi.log().coeff(&ab), Rational::new(1, 24));
    assert!(phi.log().degree_part(3).is_zero());
    let bad = phi.perturbed(ab, &Rational::new(1, 7));
    assert_eq!(check_m1(&bad).hexagon, Some(2));
}

#[test]
fn zeta_values() {
    let phi = solve_associator(4, true, &Tiebreak::Zero).unwrap();
    assert!(check_m1(&phi).passes());
    let g = gamma_of_phi(&phi).unwrap();
    assert_eq!(g.zeta(2), Rational::new(-1, 24));
    assert_eq!(g.zeta(3), Rational::zero());
    assert_eq!(g.zeta(4), Rational::new(1, 1440));
    assert_eq!(bernoulli_check(&g, 4), None);
}
