use proptest::prelude::*;
use rand::Rng;

use drinfeld_kv::braids::{braid_eq, cabling, PbWord};
use drinfeld_kv::drinfeld_kohno::{StrandMap, TnElement, TnGroupElement};
use drinfeld_kv::free_lie::cbh_lie;
use drinfeld_kv::tangential::{taut_exp, taut_log, TangAut};
use drinfeld_kv::verify::{bracket_cocycle_case, composition_cocycle_case, random_der, random_lie, rng};
use drinfeld_kv::{LieElement, NCSeries, Rational};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rational_field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn lie_assoc_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let z = random_lie(n, 5, 1, &mut rng(seed));
        prop_assert_eq!(LieElement::from_assoc(&z.to_assoc()).unwrap(), z);
    }

    #[test]
    fn exp_log_round_trip(seed in any::<u64>()) {
        let z = random_lie(2, 5, 1, &mut rng(seed)).to_assoc();
        prop_assert_eq!(z.exp().unwrap().log().unwrap(), z.clone());
        prop_assert!(z.exp().unwrap().is_grouplike());
    }

    #[test]
    fn cbh_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (random_lie(2, 5, 1, &mut r), random_lie(2, 5, 1, &mut r), random_lie(2, 5, 1, &mut r));
        let left = cbh_lie(&[cbh_lie(&[a.clone(), b.clone()]), c.clone()]);
        let right = cbh_lie(&[a.clone(), cbh_lie(&[b.clone(), c.clone()])]);
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, cbh_lie(&[a, b, c]));
    }

    #[test]
    fn partial_reconstruction(seed in any::<u64>()) {
        let z = random_lie(3, 5, 1, &mut rng(seed)).to_assoc();
        let mut acc = NCSeries::zero(3, 5);
        for k in 0..3 {
            acc = &acc + &(&NCSeries::letter(3, 5, k) * &z.partial(k));
        }
        prop_assert_eq!(acc, z);
    }

    #[test]
    fn derivation_leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = random_der(2, 4, &mut r);
        let p = random_lie(2, 4, 1, &mut r).to_assoc();
        let q = random_lie(2, 4, 1, &mut r).to_assoc();
        let lhs = u.act(&(&p * &q));
        let rhs = &(&u.act(&p) * &q) + &(&p * &u.act(&q));
        prop_assert_eq!(lhs, rhs.truncate(4));
    }

    #[test]
    fn taut_exp_log_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let u = random_der(n, 4, &mut rng(seed));
        prop_assert_eq!(taut_log(&taut_exp(&u)), u);
    }

    #[test]
    fn inner_is_a_morphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let w = random_lie(3, 4, 1, &mut r);
        let v = random_lie(3, 4, 1, &mut r);
        let lhs = TangAut::inner(&w).compose(&TangAut::inner(&v));
        prop_assert!(lhs.same_action(&TangAut::inner(&cbh_lie(&[w, v]))));
    }

    #[test]
    fn inverse_composes_to_identity(seed in any::<u64>()) {
        let g = drinfeld_kv::verify::random_aut(2, 4, &mut rng(seed));
        prop_assert!(g.compose(&g.inverse()).same_action(&TangAut::identity(2, 4)));
        prop_assert!(g.inverse().compose(&g).same_action(&TangAut::identity(2, 4)));
    }

    #[test]
    fn divergence_bracket_cocycle(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert_eq!(bracket_cocycle_case(n, 4, &mut rng(seed)), None);
    }

    #[test]
    fn jacobian_composition_cocycle(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert_eq!(composition_cocycle_case(n, 4, &mut rng(seed)), None);
    }

    #[test]
    fn tn_coface_is_a_morphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut pick = || {
            (1..=3).flat_map(|d| TnElement::basis(3, 4, d)).fold(TnElement::zero(3, 4), |acc, b| {
                acc.add(&b.scale(&Rational::from_int(r.gen_range(-2..=2))))
            })
        };
        let g = TnGroupElement::from_log(pick()).unwrap();
        let h = TnGroupElement::from_log(pick()).unwrap();
        let phi = StrandMap::new(3, vec![Some(0), Some(1), Some(1), Some(2)]).unwrap();
        let lhs = g.mul(&h).coface(&phi).unwrap();
        let rhs = g.coface(&phi).unwrap().mul(&h.coface(&phi).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cabling_composes(seed in any::<u64>(), len in 1usize..=4) {
        let w = PbWord::random(3, len, &mut rng(seed));
        let twice = cabling(&cabling(&w, &[1, 2, 1]).unwrap(), &[1, 1, 2, 1]).unwrap();
        let once = cabling(&w, &[1, 3, 1]).unwrap();
        prop_assert!(braid_eq(&twice.to_braid(), &once.to_braid()));
    }
}
