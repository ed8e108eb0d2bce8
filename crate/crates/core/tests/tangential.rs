use drinfeld_kv::tangential::*;
use drinfeld_kv::{LieElement, NCSeries, Rational};

fn gen(n: usize, cap: usize, i: usize) -> LieElement {
    LieElement::generator(n, cap, i)
}

#[test]
fn normalization() {
    let u = TangDer::new(vec![gen(2, 3, 0).add(&gen(2, 3, 1)), LieElement::zero(2, 3)]).unwrap();
    assert_eq!(u.part(0), &gen(2, 3, 1));
    assert!(TangDer::new(vec![gen(2, 3, 0), LieElement::zero(2, 3)]).unwrap().is_zero());
}

#[test]
fn action_on_generator() {
    let u = TangDer::new(vec![gen(2, 3, 1), LieElement::zero(2, 3)]).unwrap();
    let img = u.act(&NCSeries::letter(2, 4, 0));
    assert_eq!(img, NCSeries::letter(2, 4, 1).bracket(&NCSeries::letter(2, 4, 0)));
}

#[test]
fn exp_of_inner_letter() {
    let u = TangDer::new(vec![gen(2, 4, 1), LieElement::zero(2, 4)]).unwrap();
    let g = taut_exp(&u);
    let expect = TangAut::from_exponents(vec![gen(2, 4, 1), LieElement::zero(2, 4)]).unwrap();
    assert!(g.same_action(&expect));
    assert_eq!(taut_log(&g), u);
}

#[test]
fn compose_doubles() {
    let g = TangAut::from_exponents(vec![gen(2, 4, 1), LieElement::zero(2, 4)]).unwrap();
    let gg = g.compose(&g);
    let expect = TangAut::from_exponents(vec![gen(2, 4, 1).scale(&Rational::from_int(2)), LieElement::zero(2, 4)]).unwrap();
    assert!(gg.same_action(&expect));
}

#[test]
fn conjugator_recovered() {
    let x = gen(3, 6, 0);
    let y = gen(3, 6, 1);
    let z = gen(3, 6, 2);
    let c = y.bracket(&z).bracket(&x).add(&y.bracket(&x).bracket(&y)).add(&z);
    let e = c.to_assoc().exp().unwrap();
    let target = &(&e * &x.to_assoc()) * &e.inverse().unwrap();
    assert_eq!(solve_conjugator(&target, 0, 5).unwrap(), c.truncate(5));
}
