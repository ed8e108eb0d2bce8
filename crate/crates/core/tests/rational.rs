use drinfeld_kv::rational::*;
use num_bigint::BigInt;

#[test]
fn reduces_and_normalizes_sign() {
    let r = Rational::new(6, -8);
    assert_eq!(r.to_string(), "-3/4");
    assert_eq!(Rational::new(0, -5), Rational::zero());
}

#[test]
fn promotes_on_overflow() {
    let big = Rational::from_int(i64::MAX);
    let sq = &big * &big;
    assert_eq!(sq.numer(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
    let back = &sq / &big;
    assert_eq!(back, big);
    assert_eq!(back.denom(), BigInt::from(1));
}

#[test]
fn parse_round_trip() {
    for s in ["-1/24", "1/1440", "0/1", "7/1", "100000000000000000000000000001/2"] {
        let r: Rational = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
    }
    assert_eq!("3".parse::<Rational>().unwrap(), Rational::from_int(3));
    assert!("1/0".parse::<Rational>().is_err());
}

#[test]
fn ordering() {
    assert!(Rational::new(1, 3) < Rational::new(1, 2));
    assert!(Rational::new(-1, 2) < Rational::zero());
}
