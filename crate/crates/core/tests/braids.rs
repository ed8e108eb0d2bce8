use drinfeld_kv::braids::*;

#[test]
fn braid_relation() {
    let l = BraidWord::new(3, vec![(1, 1), (2, 1), (1, 1)]).unwrap();
    let r = BraidWord::new(3, vec![(2, 1), (1, 1), (2, 1)]).unwrap();
    assert!(braid_eq(&l, &r));
    assert!(artin_action(&l.mul(&l.inverse())).is_identity());
}

#[test]
fn ad_inverse() {
    for (i, j) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
        let w = PbWord::generator(5, i, j).unwrap();
        assert!(ad_pb(&w.mul(&w.inverse())).is_identity());
        assert!(ad_pb(&w.inverse().mul(&w)).is_identity());
    }
}

#[test]
fn paren_parse_and_double() {
    let o = ParenWord::parse("•(••)").unwrap();
    assert_eq!(o.double(1).unwrap().to_string(), "•((••)•)");
    assert_eq!(ParenWord::parse("(••)•").unwrap().to_string(), "(••)•");
    assert_eq!(ParenWord::all(4).len(), 5);
}
