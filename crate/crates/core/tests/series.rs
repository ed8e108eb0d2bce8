use drinfeld_kv::series::*;
use drinfeld_kv::{Rational, Word};

fn x(cap: usize) -> NCSeries {
    NCSeries::letter(2, cap, 0)
}
fn y(cap: usize) -> NCSeries {
    NCSeries::letter(2, cap, 1)
}

#[test]
fn ring_basics() {
    let s = &x(3) + &y(3);
    let sq = &s * &s;
    assert_eq!(sq.len(), 4);
    assert!((&x(1) * &y(1)).is_zero());
    assert_eq!(&x(3) * &NCSeries::one(2, 3), x(3));
}

#[test]
fn exp_log() {
    let e = x(2).exp().unwrap();
    assert_eq!(e.coeff(&Word::from_letters(&[0, 0])), Rational::new(1, 2));
    let z = (&x(4) + &y(4).scale(&Rational::new(2, 3))).bracket(&x(4));
    let z = &z + &y(4);
    assert_eq!(z.exp().unwrap().log().unwrap(), z);
    assert!(NCSeries::one(2, 3).log().unwrap().is_zero());
    assert!(x(2).log().is_err());
    assert!(NCSeries::one(2, 2).exp().is_err());
}

#[test]
fn substitute_identity_and_zero() {
    let f = &(&x(4) * &y(4)) + &x(4).pow(3);
    assert_eq!(f.substitute(&[x(4), y(4)]).unwrap(), f);
    let g = x(3).substitute(&[NCSeries::zero(2, 3), y(3)]).unwrap();
    assert!(g.is_zero());
    assert!(f.substitute(&[x(4)]).is_err());
}

#[test]
fn partial_and_abelianize() {
    let w = NCSeries::monomial(2, 3, Word::from_letters(&[0, 1]), Rational::one());
    assert_eq!(w.partial(0), y(3));
    assert!(w.partial(1).is_zero());
    assert!(x(3).bracket(&y(3)).abelianize().is_zero());
}

#[test]
fn primitivity() {
    let l = &x(4).bracket(&y(4)).bracket(&x(4)) + &y(4);
    assert!(l.is_primitive());
    let w = NCSeries::monomial(2, 4, Word::from_letters(&[0, 1]), Rational::one());
    assert!(!w.is_primitive());
    let g = &(&NCSeries::one(2, 3) + &x(3)) + &w.truncate(3);
    assert!(!g.is_grouplike());
}

#[test]
fn inverse() {
    let g = (&x(4) + &y(4)).exp().unwrap();
    let gi = g.inverse().unwrap();
    assert_eq!(&g * &gi, NCSeries::one(2, 4));
}

#[test]
fn json_round_trip() {
    let z = (&x(3) + &y(3).scale(&Rational::new(-1, 7))).exp().unwrap();
    let v = z.to_json();
    let back = NCSeries::from_json(&v).unwrap();
    assert_eq!(back, z);
    assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), serde_json::to_string(&v).unwrap());
}
