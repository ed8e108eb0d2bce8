use drinfeld_kv::traces::*;
use drinfeld_kv::tangential::{CofaceKind, TangAut, TangDer};
use drinfeld_kv::{NCSeries, Rational, Word};
use drinfeld_kv::free_lie::LieElement;

fn w(ls: &[usize]) -> Word {
    Word::from_letters(ls)
}

#[test]
fn projection() {
    let x = NCSeries::letter(2, 3, 0);
    let y = NCSeries::letter(2, 3, 1);
    assert!(TraceElement::project(&x.bracket(&y)).is_zero());
    let t = TraceElement::project(&(&(&x * &y) * &x));
    assert_eq!(t.coeff(&w(&[0, 0, 1])), Rational::one());
}

#[test]
fn divergence_of_bracket() {
    let x = LieElement::generator(2, 2, 0);
    let y = LieElement::generator(2, 2, 1);
    let u = TangDer::new(vec![x.bracket(&y), LieElement::zero(2, 2)]).unwrap();
    let j = divergence(&u);
    assert_eq!(j, TraceElement::from_terms(2, 2, [(w(&[0, 1]), Rational::one())]));
}

#[test]
fn delta_of_square() {
    let f = TraceElement::from_terms(1, 3, [(w(&[0, 0]), Rational::one())]);
    let expect = TraceElement::from_terms(2, 3, [(w(&[0, 1]), Rational::from_int(2))]);
    assert_eq!(delta(&f), expect);
    assert!(delta(&TraceElement::from_terms(1, 3, [(w(&[0]), Rational::one())])).is_zero());
    let r = solve_coboundary(&expect, CofaceKind::Additive).unwrap();
    assert_eq!(r.coeff(2), Rational::one());
    assert_eq!(r.coeff(3), Rational::zero());
}

#[test]
fn delta_squares_to_zero() {
    let f = TraceElement::from_terms(2, 4, [(w(&[0, 1, 1]), Rational::one()), (w(&[0, 0, 1, 1]), Rational::new(1, 3))]);
    assert!(delta(&delta(&f)).is_zero());
    assert!(delta_tilde(&delta_tilde(&f)).is_zero());
}

#[test]
fn exact_in_low_degree() {
    for d in 1..=5 {
        let e = exactness(d);
        assert_eq!(e.kernel_at_two, e.image_from_one, "degree {}", d);
        assert_eq!(e.kernel_at_one, usize::from(d == 1));
    }
}

#[test]
fn jacobian_of_identity() {
    assert!(jacobian(&TangAut::identity(2, 4)).is_zero());
    let w = LieElement::generator(2, 4, 0).add(&LieElement::generator(2, 4, 1).bracket(&LieElement::generator(2, 4, 0)));
    assert!(jacobian(&TangAut::inner(&w)).is_zero());
}
