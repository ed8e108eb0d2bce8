use drinfeld_kv::tangential::TangDer;
use drinfeld_kv::LieElement;
use drinfeld_kv::drinfeld_kohno::*;

fn t(n: usize, cap: usize, i: usize, j: usize) -> TnElement {
    TnElement::generator(n, cap, i - 1, j - 1).unwrap()
}

#[test]
fn four_term_relation() {
    let a = t(3, 3, 1, 2).bracket(&t(3, 3, 1, 3).add(&t(3, 3, 2, 3)));
    assert!(a.is_zero());
    let b = t(3, 3, 1, 3).bracket(&t(3, 3, 1, 2).add(&t(3, 3, 2, 3)));
    assert!(b.is_zero());
    assert!(t(4, 3, 1, 2).bracket(&t(4, 3, 3, 4)).is_zero());
}

#[test]
fn casimir_central() {
    let c = TnElement::casimir(4, 3);
    for i in 1..=4 {
        for j in i + 1..=4 {
            assert!(c.bracket(&t(4, 3, i, j)).is_zero());
        }
    }
}

#[test]
fn coface_generator_rule() {
    let phi = StrandMap::from_fibers(3, vec![vec![0], vec![1, 2]]).unwrap();
    let img = t(2, 3, 1, 2).coface(&phi).unwrap();
    assert_eq!(img, t(3, 3, 1, 2).add(&t(3, 3, 1, 3)));
}

#[test]
fn permutation_relabels() {
    let e = t(3, 3, 1, 2).permute(&[1, 2, 0]).unwrap();
    assert_eq!(e, t(3, 3, 2, 3));
}

#[test]
fn ad_images() {
    let u = ad_tn(&t(3, 2, 1, 2), 0);
    let mut expect = vec![LieElement::zero(2, 2); 2];
    expect[1] = LieElement::generator(2, 2, 0);
    assert_eq!(u, TangDer::new(expect).unwrap());
}

#[test]
fn guard_small() {
    kernel_guard(3, 4).unwrap();
    kernel_guard(4, 3).unwrap();
}

#[test]
fn centralizer_counts() {
    let c = centralizer_t(3, 0, 1, 1).unwrap();
    assert_eq!(c.kernel.len(), 2);
    assert!(c.equal);
    let c = centralizer_t(4, 0, 1, 2).unwrap();
    assert_eq!(c.kernel.len(), TnElement::dim(3, 2));
    assert!(c.equal);
}

#[test]
fn json_round_trip() {
    let e = t(4, 3, 1, 3).bracket(&t(4, 3, 2, 4)).add(&t(4, 3, 1, 2));
    assert_eq!(TnElement::from_json(&e.to_json()).unwrap(), e);
}
