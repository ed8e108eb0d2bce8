//! Drinfeld associators, the Grothendieck-Teichmuller torsor and Γ-functions.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::drinfeld_kohno::{ad_tn, kernel_guard, TnElement};
use crate::error::{Error, Result};
use crate::free_lie::{cbh_lie, eval_lie, group_mul, group_mul_all, lyndon_basis, LieElement};
use crate::linalg::{solve, Matrix};
use crate::rational::Rational;
use crate::series::{CommSeries, NCSeries, UniSeries};
use crate::tangential::{taut_exp, TangAut};
use crate::word::Word;

/// A block decomposition `(S1, S2, S3)` of strands, 0-based.
pub type Blocks<'a> = (&'a [usize], &'a [usize], &'a [usize]);

const B123: Blocks<'static> = (&[0], &[1], &[2]);
const B321: Blocks<'static> = (&[2], &[1], &[0]);
const B312: Blocks<'static> = (&[2], &[0], &[1]);
const B231: Blocks<'static> = (&[1], &[2], &[0]);
const B234: Blocks<'static> = (&[1], &[2], &[3]);
const B1_23_4: Blocks<'static> = (&[0], &[1, 2], &[3]);
const B1_2_34: Blocks<'static> = (&[0], &[1], &[2, 3]);
const B12_3_4: Blocks<'static> = (&[0, 1], &[2], &[3]);

fn block_sum(n: usize, cap: usize, s: &[usize], t: &[usize]) -> TnElement {
    let mut acc = TnElement::zero(n, cap);
    for &i in s {
        for &j in t {
            acc = acc.add(&TnElement::generator(n, cap, i, j).expect("strands in range"));
        }
    }
    acc
}

/// Image of a two-letter Lie series under `a -> t_{S1 S2}`, `b -> t_{S2 S3}`.
pub fn instantiate(log: &LieElement, n: usize, blocks: Blocks<'_>) -> TnElement {
    let cap = log.cap();
    if log.is_zero() {
        return TnElement::zero(n, cap);
    }
    let a = block_sum(n, cap, blocks.0, blocks.1);
    let b = block_sum(n, cap, blocks.1, blocks.2);
    eval_lie(log, &[a, b]).expect("two letters")
}

fn t(n: usize, cap: usize, i: usize, j: usize) -> TnElement {
    TnElement::generator(n, cap, i, j).expect("strands in range")
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn duality_residual(log: &LieElement) -> TnElement {
    group_mul(&instantiate(log, 3, B321), &instantiate(log, 3, B123))
}

fn hexagon_residual(log: &LieElement, sign: i64) -> TnElement {
    let cap = log.cap();
    let h = Rational::new(sign, 2);
    let parts = [
        t(3, cap, 1, 2).scale(&h),
        instantiate(log, 3, B123),
        t(3, cap, 0, 1).scale(&h),
        instantiate(log, 3, B312),
        t(3, cap, 0, 2).scale(&h),
        instantiate(log, 3, B231),
    ];
    group_mul_all(&parts).sub(&TnElement::casimir(3, cap).scale(&h))
}

fn pentagon_residual(log: &LieElement) -> TnElement {
    let parts = [
        instantiate(log, 4, B234),
        instantiate(log, 4, B1_23_4),
        instantiate(log, 4, B123),
        instantiate(log, 4, B12_3_4).neg(),
        instantiate(log, 4, B1_2_34).neg(),
    ];
    group_mul_all(&parts)
}

fn first_nonzero(x: &TnElement) -> Option<usize> {
    (!x.is_zero()).then(|| x.valuation())
}

fn first_nonzero_lie(x: &LieElement) -> Option<usize> {
    (!x.is_zero()).then(|| x.valuation())
}

fn swap(log: &LieElement) -> LieElement {
    let cap = log.cap();
    log.substitute(&[LieElement::generator(2, cap, 1), LieElement::generator(2, cap, 0)]).expect("two letters")
}

/// `e^g z e^{-g}` in a free Lie algebra.
pub fn conjugate(g: &LieElement, z: &LieElement) -> LieElement {
    let cap = g.cap().min(z.cap());
    let g = g.with_cap(cap);
    let mut term = z.with_cap(cap);
    let mut acc = term.clone();
    let mut k = 1i64;
    loop {
        term = g.bracket(&term).scale(&Rational::new(1, k));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
        k += 1;
    }
}

/// A two-letter associator `Φ(a, b)`, stored as its logarithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Associator {
    log: LieElement,
    even: bool,
}

impl Associator {
    pub fn new(log: LieElement, even: bool) -> Result<Self> {
        if log.letters() != 2 {
            return Err(Error::LetterMismatch(2, log.letters()));
        }
        if !log.degree_part(1).is_zero() {
            return Err(Error::Shape("associator log has a degree-1 part".into()));
        }
        if even && log.coords().keys().any(|w| w.len() % 2 == 1) {
            return Err(Error::Shape("odd-degree part in an even associator".into()));
        }
        Ok(Associator { log, even })
    }

    pub fn trivial(cap: usize) -> Self {
        Associator { log: LieElement::zero(2, cap), even: true }
    }

    pub fn log(&self) -> &LieElement {
        &self.log
    }

    pub fn cap(&self) -> usize {
        self.log.cap()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn truncate(&self, cap: usize) -> Self {
        Associator { log: self.log.truncate(cap), even: self.even }
    }

    pub fn series(&self) -> NCSeries {
        self.log.to_assoc().exp().expect("log has zero constant term")
    }

    /// `Φ^{S1,S2,S3}` as a logarithm in `t_n`.
    pub fn instantiate(&self, n: usize, blocks: Blocks<'_>) -> TnElement {
        instantiate(&self.log, n, blocks)
    }

    /// Copy with the coefficient of the Lyndon word `w` shifted by `delta`.
    pub fn perturbed(&self, w: Word, delta: &Rational) -> Self {
        let mut log = self.log.clone();
        log.add_term(w, delta);
        let even = self.even && w.len().is_multiple_of(2);
        Associator { log, even }
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.log.to_json();
        v["even"] = json!(self.even);
        if let Ok(g) = gamma_of_phi(self) {
            v["zeta"] = json!(g.zeta.values().map(Rational::to_string).collect::<Vec<_>>());
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let log = LieElement::from_json(v)?;
        let even = v.get("even").and_then(Value::as_bool).unwrap_or(false);
        Associator::new(log, even)
    }
}

/// First failing degree of each relation; `None` means it holds through the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M1Report {
    pub cap: usize,
    pub duality: Option<usize>,
    pub hexagon: Option<usize>,
    pub hexagon_mirror: Option<usize>,
    pub pentagon: Option<usize>,
    /// Pentagon through `ad_tn` into automorphisms of `f_3`, plus degree 1.
    pub pentagon_ad: std::result::Result<Option<usize>, String>,
}

impl M1Report {
    pub fn passes(&self) -> bool {
        self.duality.is_none()
            && self.hexagon.is_none()
            && self.hexagon_mirror.is_none()
            && self.pentagon.is_none()
            && matches!(self.pentagon_ad, Ok(None))
    }

    pub fn to_json(&self) -> Value {
        let ad = match &self.pentagon_ad {
            Ok(d) => json!(d),
            Err(e) => json!({ "error": e }),
        };
        json!({
            "cap": self.cap,
            "duality": self.duality,
            "hexagon": self.hexagon,
            "hexagon_mirror": self.hexagon_mirror,
            "pentagon": self.pentagon,
            "pentagon_ad": ad,
        })
    }
}

pub fn check_m1(phi: &Associator) -> M1Report {
    let log = &phi.log;
    M1Report {
        cap: phi.cap(),
        duality: first_nonzero(&duality_residual(log)),
        hexagon: first_nonzero(&hexagon_residual(log, 1)),
        hexagon_mirror: first_nonzero(&hexagon_residual(log, -1)),
        pentagon: first_nonzero(&pentagon_residual(log)),
        pentagon_ad: pentagon_via_ad(log).map_err(|e| e.to_string()),
    }
}

fn ad_exp(x: &TnElement) -> TangAut {
    taut_exp(&ad_tn(x, 0))
}

/// Pentagon for a two-letter log, compared as automorphisms of `f_3`
/// together with the degree-1 parts.
pub fn pentagon_via_ad(log: &LieElement) -> Result<Option<usize>> {
    let cap = log.cap();
    kernel_guard(4, cap)?;
    let lhs = [B234, B1_23_4, B123].map(|b| instantiate(log, 4, b));
    let rhs = [B1_2_34, B12_3_4].map(|b| instantiate(log, 4, b));
    let l = TangAut::compose_all(&lhs.iter().map(ad_exp).collect::<Vec<_>>());
    let r = TangAut::compose_all(&rhs.iter().map(ad_exp).collect::<Vec<_>>());
    let ab = |xs: &[TnElement]| xs.iter().fold(TnElement::zero(4, cap), |acc, x| acc.add(&x.degree_part(1)));
    let deg1 = !ab(&lhs).sub(&ab(&rhs)).is_zero();
    let diff = l.first_difference(&r);
    Ok(match (deg1, diff) {
        (true, _) => Some(1),
        (false, d) => d,
    })
}

/// Coordinate-wise tiebreak for the free directions of the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tiebreak {
    Zero,
    FreeValue(Rational),
}

impl Tiebreak {
    fn value(&self) -> Rational {
        match self {
            Tiebreak::Zero => Rational::zero(),
            Tiebreak::FreeValue(q) => q.clone(),
        }
    }
}

/// Per-degree record of a solver run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveStep {
    pub degree: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub free: usize,
}

fn linear_columns(d: usize) -> Vec<Vec<Rational>> {
    lyndon_basis(2, d)
        .into_iter()
        .map(|w| {
            let p = LieElement::from_coords(2, d, [(w, Rational::one())]).unwrap();
            let dual = instantiate(&p, 3, B321).add(&instantiate(&p, 3, B123));
            let hex = instantiate(&p, 3, B123).add(&instantiate(&p, 3, B312)).add(&instantiate(&p, 3, B231));
            let pent = instantiate(&p, 4, B234)
                .add(&instantiate(&p, 4, B1_23_4))
                .add(&instantiate(&p, 4, B123))
                .sub(&instantiate(&p, 4, B1_2_34))
                .sub(&instantiate(&p, 4, B12_3_4));
            [dual.coords(d), hex.coords(d), hex.coords(d), pent.coords(d)].concat()
        })
        .collect()
}

fn residual_vector(log: &LieElement, d: usize) -> Vec<Rational> {
    let l = log.with_cap(d);
    [
        duality_residual(&l).coords(d),
        hexagon_residual(&l, 1).coords(d),
        hexagon_residual(&l, -1).coords(d),
        pentagon_residual(&l).coords(d),
    ]
    .concat()
}

/// Degree-by-degree rational solution of duality, both hexagons and pentagon.
pub fn solve_associator(cap: usize, even: bool, tiebreak: &Tiebreak) -> Result<Associator> {
    solve_associator_logged(cap, even, tiebreak).map(|(a, _)| a)
}

pub fn solve_associator_logged(cap: usize, even: bool, tiebreak: &Tiebreak) -> Result<(Associator, Vec<SolveStep>)> {
    if cap < 2 {
        return Err(Error::Shape("associator solver needs cap >= 2".into()));
    }
    let mut log = LieElement::zero(2, cap);
    let mut steps = Vec::new();
    for d in 2..=cap {
        let res = residual_vector(&log, d);
        let unknowns = lyndon_basis(2, d).len();
        if even && d % 2 == 1 {
            if let Some(i) = res.iter().position(|r| !r.is_zero()) {
                return Err(Error::Inconsistent(d, format!("odd-degree residual {} nonzero under evenness", i)));
            }
            steps.push(SolveStep { degree: d, unknowns, equations: res.len(), free: 0 });
            continue;
        }
        let a = Matrix::from_columns(res.len(), &linear_columns(d));
        let b: Vec<Rational> = res.iter().map(|r| -r).collect();
        let sol = solve(&a, &b, &tiebreak.value()).ok_or_else(|| {
            let nz: Vec<String> = b.iter().enumerate().filter(|(_, r)| !r.is_zero()).map(|(i, r)| format!("{}:{}", i, r)).collect();
            Error::Inconsistent(d, format!("{}x{} system, rhs {}", a.rows, a.cols, nz.join(",")))
        })?;
        steps.push(SolveStep { degree: d, unknowns, equations: res.len(), free: sol.free });
        log = log.add(&LieElement::from_degree_coords(2, cap, d, &sol.x));
    }
    Ok((Associator::new(log, even)?, steps))
}

/// `log Γ_Φ` and the values `ζ_Φ(n)`, `2 <= n <= cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub log_gamma: UniSeries,
    pub zeta: BTreeMap<usize, Rational>,
}

impl Gamma {
    pub fn zeta(&self, n: usize) -> Rational {
        self.zeta.get(&n).cloned().unwrap_or_default()
    }

    fn from_log_gamma(log_gamma: UniSeries) -> Self {
        let zeta = (2..=log_gamma.cap())
            .map(|n| {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                (n, &log_gamma.coeff(n) * &Rational::from_int(sign * n as i64))
            })
            .collect();
        Gamma { log_gamma, zeta }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "log_gamma": self.log_gamma.to_json(),
            "zeta": self.zeta.iter().map(|(n, z)| json!([n, z.to_string()])).collect::<Vec<_>>(),
        })
    }
}

fn two_var_log_ratio(l: &UniSeries, la: &[i64; 2], lb: &[i64; 2], cap: usize) -> CommSeries {
    let r = |v: &[i64; 2]| [Rational::from_int(v[0]), Rational::from_int(v[1])];
    let sum = [la[0] + lb[0], la[1] + lb[1]];
    CommSeries::from_univariate(l, &r(&sum), cap)
        .sub(&CommSeries::from_univariate(l, &r(la), cap))
        .sub(&CommSeries::from_univariate(l, &r(lb), cap))
}

/// Γ-function of an associator from the abelianized identity
/// `(1 + Φ_b b)^{ab} = Γ(-ā) Γ(-b̄) / Γ(-ā - b̄)`, where `Φ = 1 + Φ_a a + Φ_b b`,
/// re-verified in both variables.
pub fn gamma_of_phi(phi: &Associator) -> Result<Gamma> {
    let cap = phi.cap();
    let tail = NCSeries::from_terms(
        2,
        cap,
        phi.series().terms().iter().filter(|(w, _)| !w.is_empty() && w.last() == 1).map(|(w, c)| (*w, c.clone())),
    );
    let lhs = (&NCSeries::one(2, cap) + &tail).abelianize().log()?;
    let mut lg = UniSeries::zero(cap);
    for n in 2..=cap {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        lg.set(n, &lhs.coeff(&[n as u32 - 1, 1]) * &Rational::new(sign, n as i64));
    }
    let rhs = two_var_log_ratio(&lg, &[-1, 0], &[0, -1], cap).scale(&Rational::from_int(-1));
    if rhs != lhs {
        return Err(Error::Inconsistent(cap, "two-variable Γ identity for the associator".into()));
    }
    Ok(Gamma::from_log_gamma(lg))
}

/// `-(1/2)(u/(e^u - 1) - 1 + u/2)` through degree `cap`.
pub fn bernoulli_even_series(cap: usize) -> UniSeries {
    let q = UniSeries::from_coeffs((0..=cap).map(|k| Rational::inv_factorial(k as u32 + 1)).collect());
    let mut f = q.inverse().expect("unit constant term");
    f.set(0, &f.coeff(0) - &Rational::one());
    f.set(1, &f.coeff(1) + &half());
    f.scale(&Rational::new(-1, 2))
}

/// First degree at which `sum_n ζ(2n) u^{2n}` disagrees with the Bernoulli series.
pub fn bernoulli_check(gamma: &Gamma, cap: usize) -> Option<usize> {
    let b = bernoulli_even_series(cap);
    (1..=cap).find(|&n| {
        let z = if n % 2 == 0 { gamma.zeta(n) } else { Rational::zero() };
        z != b.coeff(n)
    })
}

/// An element of the prounipotent Grothendieck-Teichmuller group, as `log f(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTElement {
    pub log: LieElement,
}

/// An element of the graded group, as `log g(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GRTElement {
    pub log: LieElement,
}

fn torsor_log(log: LieElement) -> Result<LieElement> {
    if log.letters() != 2 {
        return Err(Error::LetterMismatch(2, log.letters()));
    }
    if !log.degree_part(1).is_zero() {
        return Err(Error::Shape("degree-1 part must vanish".into()));
    }
    Ok(log)
}

impl GTElement {
    pub fn new(log: LieElement) -> Result<Self> {
        Ok(GTElement { log: torsor_log(log)? })
    }

    pub fn identity(cap: usize) -> Self {
        GTElement { log: LieElement::zero(2, cap) }
    }

    /// `(f1 * f2)(X, Y) = f1(f2 X f2^{-1}, Y) f2`.
    pub fn mul(&self, o: &GTElement) -> GTElement {
        GTElement { log: twisted_product(&self.log, &o.log) }
    }

    pub fn to_json(&self) -> Value {
        self.log.to_json()
    }
}

impl GRTElement {
    pub fn new(log: LieElement) -> Result<Self> {
        Ok(GRTElement { log: torsor_log(log)? })
    }

    pub fn identity(cap: usize) -> Self {
        GRTElement { log: LieElement::zero(2, cap) }
    }

    /// `(g1 * g2)(a, b) = g1(g2 a g2^{-1}, b) g2`.
    pub fn mul(&self, o: &GRTElement) -> GRTElement {
        GRTElement { log: twisted_product(&self.log, &o.log) }
    }

    pub fn to_json(&self) -> Value {
        self.log.to_json()
    }
}

fn twisted_product(outer: &LieElement, inner: &LieElement) -> LieElement {
    let cap = outer.cap().min(inner.cap());
    let (outer, inner) = (outer.with_cap(cap), inner.with_cap(cap));
    let a = conjugate(&inner, &LieElement::generator(2, cap, 0));
    let b = LieElement::generator(2, cap, 1);
    let first = outer.substitute(&[a, b]).expect("two letters");
    cbh_lie(&[first, inner])
}

/// `f * Φ = f(Φ e^a Φ^{-1}, e^b) Φ`.
pub fn act_gt(f: &GTElement, phi: &Associator) -> Associator {
    Associator { log: twisted_product(&f.log, &phi.log), even: false }
}

/// `Φ * g = Φ(g a g^{-1}, b) g`.
pub fn act_grt(phi: &Associator, g: &GRTElement) -> Associator {
    Associator { log: twisted_product(&phi.log, &g.log), even: false }
}

/// First failing degree of each defining relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorReport {
    pub duality: Option<usize>,
    pub hexagon: Option<usize>,
    pub pentagon: std::result::Result<Option<usize>, String>,
    /// Only for the graded group: the special-derivation relation.
    pub linear: Option<usize>,
}

impl TorsorReport {
    pub fn passes(&self) -> bool {
        self.duality.is_none() && self.hexagon.is_none() && matches!(self.pentagon, Ok(None)) && self.linear.is_none()
    }

    pub fn to_json(&self) -> Value {
        let p = match &self.pentagon {
            Ok(d) => json!(d),
            Err(e) => json!({ "error": e }),
        };
        json!({ "duality": self.duality, "hexagon": self.hexagon, "pentagon": p, "linear": self.linear })
    }
}

pub fn check_gt1(f: &GTElement) -> TorsorReport {
    let log = &f.log;
    let cap = log.cap();
    let x = LieElement::generator(2, cap, 0);
    let y = LieElement::generator(2, cap, 1);
    let z = cbh_lie(&[y.neg(), x.neg()]);
    let at = |p: &LieElement, q: &LieElement| log.substitute(&[p.clone(), q.clone()]).expect("two letters");
    TorsorReport {
        duality: first_nonzero_lie(&cbh_lie(&[swap(log), log.clone()])),
        hexagon: first_nonzero_lie(&cbh_lie(&[at(&x, &y), at(&z, &x), at(&y, &z)])),
        pentagon: crate::braids::gt_pentagon(log).map_err(|e| e.to_string()),
        linear: None,
    }
}

pub fn check_grt1(g: &GRTElement) -> TorsorReport {
    let log = &g.log;
    let cap = log.cap();
    let x = LieElement::generator(2, cap, 0);
    let y = LieElement::generator(2, cap, 1);
    let c = x.add(&y).neg();
    let at = |p: &LieElement, q: &LieElement| log.substitute(&[p.clone(), q.clone()]).expect("two letters");
    let lin = conjugate(&at(&x, &c), &x).add(&conjugate(&at(&y, &c), &y)).add(&c);
    let hex = group_mul_all(&[instantiate(log, 3, B123), instantiate(log, 3, B312), instantiate(log, 3, B231)]);
    TorsorReport {
        duality: first_nonzero(&duality_residual(log)),
        hexagon: first_nonzero(&hex),
        pentagon: Ok(first_nonzero(&pentagon_residual(log))),
        linear: first_nonzero_lie(&lin),
    }
}

fn solve_between(start: &LieElement, target: &LieElement, act: impl Fn(&LieElement) -> LieElement) -> Result<LieElement> {
    let cap = start.cap().min(target.cap());
    let target = target.with_cap(cap);
    let mut g = LieElement::zero(2, cap);
    for d in 2..=cap {
        let cur = act(&g);
        g = g.add(&target.sub(&cur).degree_part(d));
    }
    let diff = target.sub(&act(&g));
    match first_nonzero_lie(&diff) {
        None => Ok(g),
        Some(d) => Err(Error::Inconsistent(d, "torsor element does not reproduce the target".into())),
    }
}

/// The unique `g` with `Φ * g = Φ'`.
pub fn element_between_grt(phi: &Associator, target: &Associator) -> Result<GRTElement> {
    let log = phi.log.clone();
    let g = solve_between(&phi.log, &target.log, |g| twisted_product(&log.with_cap(g.cap()), g))?;
    GRTElement::new(g)
}

/// The unique `f` with `f * Φ = Φ'`.
pub fn element_between_gt(phi: &Associator, target: &Associator) -> Result<GTElement> {
    let log = phi.log.clone();
    let f = solve_between(&phi.log, &target.log, |f| twisted_product(f, &log.with_cap(f.cap())))?;
    GTElement::new(f)
}

/// Class of a Lie series in `f'_2 / f''_2`, as a series in `ā, b̄` with
/// `(ad a)^k (ad b)^l [a, b] -> ā^{k+1} b̄^{l+1}`.
pub fn abelian_class(psi: &LieElement) -> Result<CommSeries> {
    let cap = psi.cap();
    let a = LieElement::generator(2, cap, 0);
    let b = LieElement::generator(2, cap, 1);
    let ab = a.bracket(&b);
    let mut out = CommSeries::zero(2, cap);
    for d in 2..=cap {
        let target = psi.degree_coords(d);
        if target.iter().all(Rational::is_zero) {
            continue;
        }
        let mut cols = Vec::new();
        let mut labels = Vec::new();
        for k in 0..=d - 2 {
            let l = d - 2 - k;
            let mut e = ab.clone();
            for _ in 0..l {
                e = b.bracket(&e);
            }
            for _ in 0..k {
                e = a.bracket(&e);
            }
            cols.push(e.degree_coords(d));
            labels.push(vec![k as u32 + 1, l as u32 + 1]);
        }
        for d1 in 2..=d / 2 {
            let d2 = d - d1;
            if d2 < 2 {
                continue;
            }
            for u in lyndon_basis(2, d1) {
                for v in lyndon_basis(2, d2) {
                    let pu = LieElement::from_coords(2, cap, [(u, Rational::one())])?;
                    let pv = LieElement::from_coords(2, cap, [(v, Rational::one())])?;
                    cols.push(pu.bracket(&pv).degree_coords(d));
                }
            }
        }
        let m = Matrix::from_columns(target.len(), &cols);
        let sol = solve(&m, &target, &Rational::zero())
            .ok_or_else(|| Error::Inconsistent(d, "series not in the commutator subalgebra".into()))?;
        for (i, lab) in labels.into_iter().enumerate() {
            out.add_term(lab, &sol.x[i]);
        }
    }
    Ok(out)
}

/// `log Γ_f` from `[log f] = Γ_f(-ā) Γ_f(-b̄) / Γ_f(-ā - b̄) - 1`.
pub fn gamma_of_f(f: &GTElement) -> Result<Gamma> {
    let cap = f.log.cap();
    let w = abelian_class(&f.log)?.add(&CommSeries::one(2, cap)).log()?;
    let mut lg = UniSeries::zero(cap);
    for n in 2..=cap {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        lg.set(n, &w.coeff(&[n as u32 - 1, 1]) * &Rational::new(sign, n as i64));
    }
    let e = two_var_log_ratio(&lg, &[-1, 0], &[0, -1], cap).scale(&Rational::from_int(-1));
    if e != w {
        return Err(Error::Inconsistent(cap, "two-variable Γ identity for a GT element".into()));
    }
    Ok(Gamma::from_log_gamma(lg))
}

/// First degree at which `[log Φ] = Γ_Φ(-ā) Γ_Φ(-b̄) / Γ_Φ(-ā - b̄) - 1` fails,
/// with `Γ_Φ` taken from [`gamma_of_phi`].
pub fn abelian_class_check(phi: &Associator) -> Result<Option<usize>> {
    let cap = phi.cap();
    let class = abelian_class(&phi.log)?;
    let lg = gamma_of_phi(phi)?.log_gamma;
    let e = two_var_log_ratio(&lg, &[-1, 0], &[0, -1], cap).scale(&Rational::from_int(-1)).exp()?.sub(&CommSeries::one(2, cap));
    let d = class.sub(&e);
    Ok(d.terms().keys().map(|k| k.iter().sum::<u32>() as usize).min())
}
