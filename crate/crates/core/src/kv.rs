//! Solutions of the Kashiwara-Vergne equations built from associators.

use serde_json::{json, Value};

use crate::associators::{conjugate, Associator, GRTElement, GTElement};
use crate::drinfeld_kohno::{ad_tn, StrandMap, TnElement};
use crate::error::{Error, Result};
use crate::free_lie::{cbh_lie, lyndon_basis, LieElement};
use crate::linalg::{solve, Matrix};
use crate::rational::Rational;
use crate::series::{NCSeries, UniSeries};
use crate::tangential::{invert_ad_letter, taut_exp, CofaceKind, TangAut, TangDer};
use crate::traces::{delta_of_series, jacobian, solve_coboundary, TraceElement};

fn x(cap: usize) -> LieElement {
    LieElement::generator(2, cap, 0)
}

fn y(cap: usize) -> LieElement {
    LieElement::generator(2, cap, 1)
}

fn at(f: &LieElement, p: &LieElement, q: &LieElement) -> LieElement {
    f.substitute(&[p.clone(), q.clone()]).expect("two letters")
}

/// `μ` together with its Duflo series `r`, `J(μ) = <r(x+y) - r(x) - r(y)>`.
#[derive(Clone, Debug)]
pub struct KVSolution {
    pub mu: TangAut,
    pub duflo: UniSeries,
}

impl KVSolution {
    pub fn to_json(&self) -> Value {
        json!({ "mu": self.mu.to_json(), "duflo": self.duflo.to_json() })
    }
}

/// The automorphism `μ_Φ`: `x -> Φ(x,-x-y) x Φ(x,-x-y)^{-1}`
/// and `y -> e^{-(x+y)/2} Φ(y,-x-y) y (same)^{-1}`.
pub fn mu_automorphism(phi: &Associator) -> TangAut {
    let cap = phi.cap();
    let s = x(cap).add(&y(cap)).neg();
    let a1 = at(phi.log(), &x(cap), &s);
    let a2 = cbh_lie(&[s.scale(&Rational::new(1, 2)), at(phi.log(), &y(cap), &s)]);
    TangAut::from_exponents(vec![a1, a2]).expect("two letters")
}

pub fn mu_of_phi(phi: &Associator) -> Result<KVSolution> {
    let mu = mu_automorphism(phi);
    let report = check_solkv(&mu);
    match (report.product, report.duflo) {
        (None, Ok(duflo)) => Ok(KVSolution { mu, duflo }),
        (Some(d), _) => Err(Error::Inconsistent(d, "μ(e^x e^y) differs from e^{x+y}".into())),
        (None, Err(e)) => Err(e),
    }
}

/// `μ_Φ(X) μ_Φ(Y)` written out with duality:
/// `Φ(x,s) e^x Φ(s,x) e^{s/2} Φ(y,s) e^y Φ(s,y) e^{-s/2}`, `s = -x-y`.
pub fn duality_route_product(phi: &Associator) -> NCSeries {
    let cap = phi.cap();
    let h = Rational::new(1, 2);
    let s = x(cap).add(&y(cap)).neg();
    let f = |p: &LieElement, q: &LieElement| at(phi.log(), p, q);
    exp_product(&[f(&x(cap), &s), x(cap), f(&s, &x(cap)), s.scale(&h), f(&y(cap), &s), y(cap), f(&s, &y(cap)), s.scale(&-h)])
}

/// The hexagon-reduced form `Φ(x,s) e^{x/2} Φ(y,x) e^{y/2} Φ(s,y) e^{-s/2}`, `s = -x-y`.
pub fn hexagon_route_product(phi: &Associator) -> NCSeries {
    let cap = phi.cap();
    let h = Rational::new(1, 2);
    let s = x(cap).add(&y(cap)).neg();
    let f = |p: &LieElement, q: &LieElement| at(phi.log(), p, q);
    exp_product(&[f(&x(cap), &s), x(cap).scale(&h), f(&y(cap), &x(cap)), y(cap).scale(&h), f(&s, &y(cap)), s.scale(&-h)])
}

fn exp_product(parts: &[LieElement]) -> NCSeries {
    let cap = parts[0].cap();
    parts.iter().fold(NCSeries::one(2, cap), |g, p| &g * &exp_lie(p))
}

fn exp_lie(z: &LieElement) -> NCSeries {
    z.to_assoc().exp().expect("valuation >= 1")
}

fn first_diff(a: &NCSeries, b: &NCSeries) -> Option<usize> {
    (a - b).terms().keys().next().map(|w| w.len())
}

/// SolKV predicate: first failing degree of `μ(e^x e^y) = e^{x+y}`, and the
/// Duflo series (or the reason the Jacobian is not a coboundary).
#[derive(Clone, Debug)]
pub struct SolKvReport {
    pub cap: usize,
    pub product: Option<usize>,
    pub duflo: Result<UniSeries>,
}

impl SolKvReport {
    pub fn passes(&self) -> bool {
        self.product.is_none() && self.duflo.is_ok()
    }
}

pub fn check_solkv(mu: &TangAut) -> SolKvReport {
    let cap = mu.cap();
    let xy = &exp_lie(&x(cap)) * &exp_lie(&y(cap));
    let lhs = mu.apply(&xy).truncate(cap);
    let rhs = exp_lie(&x(cap).add(&y(cap)));
    SolKvReport { cap, product: first_diff(&lhs, &rhs), duflo: solve_coboundary(&jacobian(mu), CofaceKind::Additive) }
}

/// `r` with `J = <r(x_1 + ... + x_n) - sum_i r(x_i)>`, verified in full.
pub fn solve_sum_coboundary(c: &TraceElement) -> Result<UniSeries> {
    let n = c.letters();
    let cap = c.cap();
    let mut r = UniSeries::zero(cap);
    if n < 2 {
        return Err(Error::Shape("need at least two letters".into()));
    }
    for d in 2..=cap {
        let key = crate::word::Word::from_letters(&[vec![0; d - 1], vec![1]].concat());
        r.set(d, &c.coeff(&key) / &Rational::from_int(d as i64));
    }
    let res = c.sub(&sum_coboundary(&r, n, cap));
    match res.terms().keys().next() {
        None => Ok(r),
        Some(w) => Err(Error::Obstruction(w.len())),
    }
}

/// `<r(x_1 + ... + x_n) - sum_i r(x_i)>`.
pub fn sum_coboundary(r: &UniSeries, n: usize, cap: usize) -> TraceElement {
    let mut s = NCSeries::zero(n, cap);
    for i in 0..n {
        s = &s + &NCSeries::letter(n, cap, i);
    }
    let mut acc = TraceElement::project(&r.eval_nc(&s));
    for i in 0..n {
        acc = acc.sub(&TraceElement::project(&r.eval_nc(&NCSeries::letter(n, cap, i))));
    }
    acc
}

/// The `n`-letter predicate: `μ(e^{x_1} ... e^{x_n}) = e^{x_1 + ... + x_n}` and
/// `J(μ) = <r(sum x_i) - sum r(x_i)>`.
pub fn check_solkv_n(mu: &TangAut) -> SolKvReport {
    let n = mu.letters();
    let cap = mu.cap();
    let mut prod = NCSeries::one(n, cap);
    let mut sum = LieElement::zero(n, cap);
    for i in 0..n {
        let g = LieElement::generator(n, cap, i);
        prod = &prod * &exp_lie(&g);
        sum = sum.add(&g);
    }
    let lhs = mu.apply(&prod).truncate(cap);
    SolKvReport { cap, product: first_diff(&lhs, &exp_lie(&sum)), duflo: solve_sum_coboundary(&jacobian(mu)) }
}

fn map(target: usize, m: &[Option<usize>]) -> StrandMap {
    StrandMap::new(target, m.to_vec()).expect("valid strand map")
}

/// `Ad Φ(t_12, t_23)` on three letters.
pub fn ad_phi(phi: &Associator) -> TangAut {
    let t = phi.instantiate(4, (&[1], &[2], &[3]));
    taut_exp(&ad_tn(&t, 0))
}

/// Both sides of `Ad Φ(t_12,t_23) ∘ μ^{12,3} ∘ μ^{1,2} = μ^{1,23} ∘ μ^{2,3}`.
pub fn identity2_sides(phi: &Associator) -> Result<(TangAut, TangAut)> {
    let mu = mu_automorphism(phi);
    let c = |m: &[Option<usize>]| mu.coface(&map(2, m), CofaceKind::Additive);
    let lhs = TangAut::compose_all(&[ad_phi(phi), c(&[Some(0), Some(0), Some(1)])?, c(&[Some(0), Some(1), None])?]);
    let rhs = c(&[Some(0), Some(1), Some(1)])?.compose(&c(&[None, Some(0), Some(1)])?);
    Ok((lhs, rhs))
}

/// First degree where the two sides of the `μ` cocycle identity differ.
pub fn identity2_check(phi: &Associator) -> Result<Option<usize>> {
    let (l, r) = identity2_sides(phi)?;
    Ok(l.first_difference(&r))
}

/// `α_f`: `X -> f(X, Y^{-1}X^{-1}) X (same)^{-1}`, `Y -> f(Y, Y^{-1}X^{-1}) Y (same)^{-1}`.
pub fn alpha_of_f(f: &GTElement) -> TangAut {
    let cap = f.log.cap();
    let z = cbh_lie(&[y(cap).neg(), x(cap).neg()]);
    TangAut::from_exponents(vec![at(&f.log, &x(cap), &z), at(&f.log, &y(cap), &z)]).expect("two letters")
}

/// `a_g`: `x -> g(x, -x-y) x (same)^{-1}`, `y -> g(y, -x-y) y (same)^{-1}`.
pub fn a_of_g(g: &GRTElement) -> TangAut {
    let cap = g.log.cap();
    let s = x(cap).add(&y(cap)).neg();
    TangAut::from_exponents(vec![at(&g.log, &x(cap), &s), at(&g.log, &y(cap), &s)]).expect("two letters")
}

/// KV predicate: `α(XY) = XY` and `J(α) = δ̃(σ)`; returns `σ`.
pub fn check_kv_group(alpha: &TangAut) -> (Option<usize>, Result<UniSeries>) {
    let cap = alpha.cap();
    let xy = &exp_lie(&x(cap)) * &exp_lie(&y(cap));
    let fix = first_diff(&alpha.apply(&xy).truncate(cap), &xy);
    (fix, solve_coboundary(&jacobian(alpha), CofaceKind::Cbh))
}

/// KRV predicate: `a(x+y) = x+y` and `J(a) = δ(s)`; returns `s`.
pub fn check_krv_group(a: &TangAut) -> (Option<usize>, Result<UniSeries>) {
    let cap = a.cap();
    let s = x(cap).add(&y(cap));
    let fix = first_diff(&a.apply_lie(&s).to_assoc(), &s.to_assoc());
    (fix, solve_coboundary(&jacobian(a), CofaceKind::Additive))
}

/// First failing degrees of `μ_{f*Φ} = μ_Φ ∘ α_f` and `μ_{Φ*g} = a_g ∘ μ_Φ`.
pub fn compat_check(f: &GTElement, phi: &Associator, g: &GRTElement) -> (Option<usize>, Option<usize>) {
    let mu = mu_automorphism(phi);
    let left = mu_automorphism(&crate::associators::act_gt(f, phi)).first_difference(&mu.compose(&alpha_of_f(f)));
    let right = mu_automorphism(&crate::associators::act_grt(phi, g)).first_difference(&a_of_g(g).compose(&mu));
    (left, right)
}

fn grading(z: &NCSeries) -> NCSeries {
    NCSeries::from_terms(z.letters(), z.cap(), z.terms().iter().map(|(w, c)| (*w, c * &Rational::from_int(w.len() as i64))))
}

/// `κ(g) = ℓ - g ℓ g^{-1}` as a tangential derivation.
pub fn kappa(g: &TangAut) -> Result<TangDer> {
    let n = g.letters();
    let cap = g.cap();
    let inv = g.inverse();
    let pre = inv.generator_images(cap + 1);
    let mut parts = Vec::with_capacity(n);
    for (k, p) in pre.iter().enumerate() {
        let d = &NCSeries::letter(n, cap + 1, k) - &g.apply(&grading(p));
        let c = invert_ad_letter(&d, k);
        if c.bracket(&NCSeries::letter(n, cap + 1, k)) != d {
            return Err(Error::NotTangential(k));
        }
        parts.push(LieElement::from_assoc(&c.with_cap(cap)).map_err(|_| Error::NotTangential(k))?);
    }
    TangDer::new(parts)
}

/// Pair `(A, B)` with `-κ(μ^{-1}) = ⟦A, B⟧`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ABPair {
    pub a: LieElement,
    pub b: LieElement,
}

impl ABPair {
    pub fn to_der(&self) -> TangDer {
        TangDer::new(vec![self.a.clone(), self.b.clone()]).expect("two letters")
    }

    pub fn to_json(&self) -> Value {
        json!({ "A": self.a.to_json(), "B": self.b.to_json() })
    }
}

pub fn extract_ab(mu: &TangAut) -> Result<ABPair> {
    let u = kappa(&mu.inverse())?.scale(&Rational::from_int(-1));
    Ok(ABPair { a: u.part(0).clone(), b: u.part(1).clone() })
}

fn ad_exp_series(g: &LieElement, z: &LieElement, sign: i64) -> LieElement {
    let mut term = z.clone();
    let mut acc = LieElement::zero(z.letters(), z.cap());
    let mut k = 1i64;
    loop {
        term = g.bracket(&term).scale(&Rational::new(sign, k));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
        k += 1;
    }
}

/// First failing degree of
/// `x + y - log(e^y e^x) = (1 - e^{-ad x}) A + (e^{ad y} - 1) B`.
pub fn check_kv1(p: &ABPair) -> Option<usize> {
    let cap = p.a.cap().min(p.b.cap());
    let lhs = x(cap).add(&y(cap)).sub(&cbh_lie(&[y(cap), x(cap)]));
    let rhs = ad_exp_series(&x(cap), &p.a.with_cap(cap), -1).neg().add(&ad_exp_series(&y(cap), &p.b.with_cap(cap), 1));
    let d = lhs.sub(&rhs);
    (!d.is_zero()).then(|| d.valuation())
}

/// `φ(t) = t r'(t)`.
pub fn kv3_phi(r: &UniSeries) -> UniSeries {
    r.euler()
}

/// First failing degree of `j(u) = <φ(x) + φ(y) - φ(log(e^x e^y))>`.
pub fn check_kv3(u: &TangDer, r: &UniSeries) -> Option<usize> {
    let cap = u.cap() + 1;
    let phi = kv3_phi(r);
    let z = cbh_lie(&[x(cap), y(cap)]).to_assoc();
    let rhs = TraceElement::project(&phi.eval_nc(&NCSeries::letter(2, cap, 0)))
        .add(&TraceElement::project(&phi.eval_nc(&NCSeries::letter(2, cap, 1))))
        .sub(&TraceElement::project(&phi.eval_nc(&z)));
    let lhs = crate::traces::divergence(u);
    let d = lhs.sub(&rhs.truncate(lhs.cap()));
    d.terms().keys().next().map(|w| w.len())
}

/// `(A + s(log(e^x e^y) - x), B + s(log(e^x e^y) - y))`.
pub fn s_family(p: &ABPair, s: &Rational) -> ABPair {
    let cap = p.a.cap().min(p.b.cap());
    let z = cbh_lie(&[x(cap), y(cap)]);
    ABPair { a: p.a.add(&z.sub(&x(cap)).scale(s)), b: p.b.add(&z.sub(&y(cap)).scale(s)) }
}

/// First failing degree of `(A(x,y), B(x,y)) = (B(-y,-x), A(-y,-x))`.
pub fn symmetry_check(p: &ABPair) -> Option<usize> {
    let cap = p.a.cap().min(p.b.cap());
    let (mx, my) = (x(cap).neg(), y(cap).neg());
    let da = p.a.sub(&at(&p.b, &my, &mx));
    let db = p.b.sub(&at(&p.a, &my, &mx));
    [da, db].iter().filter(|d| !d.is_zero()).map(LieElement::valuation).min()
}

/// `Inn(e^{s(x+y)}) ∘ μ`.
pub fn inner_shift(mu: &TangAut, s: &Rational) -> TangAut {
    let cap = mu.cap();
    TangAut::inner(&x(cap).add(&y(cap)).scale(s)).compose(mu)
}

/// `c` with `e^c s e^{-c} = target`, solved degree by degree in `f_n`.
pub fn solve_sum_conjugator(target: &LieElement, s: &LieElement) -> Result<LieElement> {
    let n = s.letters();
    let cap = target.cap().min(s.cap());
    let mut c = LieElement::zero(n, cap);
    for d in 1..cap {
        let cur = conjugate(&c.with_cap(d + 1), &s.with_cap(d + 1));
        let r = target.with_cap(d + 1).sub(&cur).degree_coords(d + 1);
        if r.iter().all(Rational::is_zero) {
            continue;
        }
        let cols: Vec<Vec<Rational>> = lyndon_basis(n, d)
            .into_iter()
            .map(|w| LieElement::from_coords(n, d + 1, [(w, Rational::one())]).unwrap().bracket(&s.with_cap(d + 1)).degree_coords(d + 1))
            .collect();
        let sol = solve(&Matrix::from_columns(r.len(), &cols), &r, &Rational::zero())
            .ok_or_else(|| Error::Inconsistent(d + 1, "image is not conjugate to the sum".into()))?;
        c = c.add(&LieElement::from_degree_coords(n, cap, d, &sol.x));
    }
    let fin = target.with_cap(cap).sub(&conjugate(&c, &s.with_cap(cap)));
    match (!fin.is_zero()).then(|| fin.valuation()) {
        None => Ok(c),
        Some(d) => Err(Error::Inconsistent(d, "conjugator does not reproduce the image".into())),
    }
}

/// For `w ∈ t_{n+1}`: a conjugator `c` with `Ad(e^w)(x_1+...+x_n) = e^c (x_1+...+x_n) e^{-c}`.
pub fn sum_conjugator(w: &TnElement) -> Result<LieElement> {
    let g = taut_exp(&ad_tn(w, 0));
    let n = g.letters();
    let mut s = LieElement::zero(n, g.cap() + 1);
    for i in 0..n {
        s = s.add(&LieElement::generator(n, g.cap() + 1, i));
    }
    solve_sum_conjugator(&g.apply_lie(&s), &s)
}

/// `δ(r)` of a one-variable series at the given cap.
pub fn delta_r(r: &UniSeries, cap: usize) -> TraceElement {
    delta_of_series(r, cap, CofaceKind::Additive)
}
