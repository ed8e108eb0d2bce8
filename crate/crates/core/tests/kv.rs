use drinfeld_kv::kv::*;
use drinfeld_kv::associators::{gamma_of_phi, solve_associator, Tiebreak};
use drinfeld_kv::tangential::TangAut;
use drinfeld_kv::{LieElement, NCSeries};

fn x(cap: usize) -> LieElement {
    LieElement::generator(2, cap, 0)
}

fn y(cap: usize) -> LieElement {
    LieElement::generator(2, cap, 1)
}

fn exp_lie(z: &LieElement) -> NCSeries {
    z.to_assoc().exp().unwrap()
}

#[test]
fn identity_is_not_a_solution() {
    let r = check_solkv(&TangAut::identity(2, 3));
    assert_eq!(r.product, Some(2));
}

#[test]
fn mu_phi_is_a_solution() {
    let phi = solve_associator(4, true, &Tiebreak::Zero).unwrap();
    let sol = mu_of_phi(&phi).unwrap();
    let g = gamma_of_phi(&phi).unwrap();
    assert_eq!(sol.duflo, g.log_gamma.neg());
    assert_eq!(identity2_check(&phi).unwrap(), None);
    let e = exp_lie(&x(4).add(&y(4)));
    assert_eq!(hexagon_route_product(&phi), e);
    assert_eq!(duality_route_product(&phi), e);
}
