//! Tangential derivations and automorphisms of free Lie algebras.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::drinfeld_kohno::StrandMap;
use crate::error::{Error, Result};
use crate::free_lie::{cbh_lie, eval_lie, lyndon_basis, GradedLie, GradedLieOracle, LieElement};
use crate::rational::Rational;
use crate::series::NCSeries;
use crate::word::Word;

/// Coboundary variant of a coface map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CofaceKind {
    Additive,
    Cbh,
}

fn strip_letter_term(u: &LieElement, k: usize) -> LieElement {
    let mut u = u.clone();
    let c = u.coeff(&Word::letter(k));
    if !c.is_zero() {
        u.add_term(Word::letter(k), &-c);
    }
    u
}

/// Solve `[c, x_k] = r` for `c` homogeneous of degree `deg(r) - 1` with no
/// `x_k`-linear term, using `c = sum_m x_k^m R^{m+1}(r)` where `R` strips a
/// trailing `x_k`.
pub(crate) fn invert_ad_letter(r: &NCSeries, k: usize) -> NCSeries {
    let mut out = NCSeries::zero(r.letters(), r.cap());
    let mut cur: BTreeMap<Word, Rational> = r.terms().clone();
    let mut m = 0;
    loop {
        let next: BTreeMap<Word, Rational> = cur
            .iter()
            .filter(|(w, _)| !w.is_empty() && w.last() == k)
            .map(|(w, c)| (w.prefix(w.len() - 1), c.clone()))
            .collect();
        if next.is_empty() {
            break;
        }
        let lead = Word::from_letters(&vec![k; m]);
        for (w, c) in &next {
            if !w.is_empty() {
                out.add_term(lead.concat(w), c);
            }
        }
        cur = next;
        m += 1;
    }
    out
}

fn conj_letter(a: &NCSeries, k: usize) -> NCSeries {
    let e = a.exp().expect("valuation >= 1");
    let ei = a.scale(&Rational::from_int(-1)).exp().unwrap();
    let x = NCSeries::letter(a.letters(), a.cap(), k);
    &(&e * &x) * &ei
}

/// Normalized `a` (degrees `1..=cap`) with `e^a x_k e^{-a} = target` through
/// degree `cap + 1`.
pub fn solve_conjugator(target: &NCSeries, k: usize, cap: usize) -> Result<LieElement> {
    let n = target.letters();
    let mut a = LieElement::zero(n, cap);
    for d in 1..=cap {
        let cur = conj_letter(&a.with_cap(d + 1).to_assoc(), k);
        let r = (&target.truncate(d + 1) - &cur).degree_part(d + 1);
        if r.is_zero() {
            continue;
        }
        let c = invert_ad_letter(&r, k);
        let x = NCSeries::letter(n, d + 1, k);
        if c.with_cap(d + 1).bracket(&x) != r.with_cap(d + 1) {
            return Err(Error::NotTangential(d));
        }
        let c = LieElement::from_assoc(&c.with_cap(cap)).map_err(|_| Error::NotTangential(d))?;
        a = a.add(&strip_letter_term(&c, k));
    }
    Ok(a)
}

/// Derivation `x_k -> [u_k, x_k]`, stored with `p_k(u_k) = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangDer {
    letters: usize,
    cap: usize,
    parts: Vec<LieElement>,
}

impl TangDer {
    pub fn zero(letters: usize, cap: usize) -> Self {
        TangDer { letters, cap, parts: vec![LieElement::zero(letters, cap); letters] }
    }

    /// Normalizing constructor.
    pub fn new(parts: Vec<LieElement>) -> Result<Self> {
        let n = parts.len();
        if n == 0 {
            return Err(Error::Index("empty derivation".into()));
        }
        for p in &parts {
            if p.letters() != n {
                return Err(Error::LetterMismatch(n, p.letters()));
            }
        }
        let cap = parts.iter().map(LieElement::cap).min().unwrap();
        let parts = parts.iter().enumerate().map(|(k, p)| strip_letter_term(&p.truncate(cap), k)).collect();
        Ok(TangDer { letters: n, cap, parts })
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn parts(&self) -> &[LieElement] {
        &self.parts
    }

    pub fn part(&self, k: usize) -> &LieElement {
        &self.parts[k]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(LieElement::is_zero)
    }

    pub fn valuation(&self) -> usize {
        self.parts.iter().map(LieElement::valuation).min().unwrap_or(self.cap + 1)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        TangDer { letters: self.letters, cap: cap.min(self.cap), parts: self.parts.iter().map(|p| p.truncate(cap)).collect() }
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        TangDer { letters: self.letters, cap, parts: self.parts.iter().map(|p| p.with_cap(cap)).collect() }
    }

    pub fn degree_part(&self, d: usize) -> Self {
        TangDer { letters: self.letters, cap: self.cap, parts: self.parts.iter().map(|p| p.degree_part(d)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.letters, o.letters);
        TangDer {
            letters: self.letters,
            cap: self.cap.min(o.cap),
            parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TangDer { letters: self.letters, cap: self.cap, parts: self.parts.iter().map(|p| p.scale(c)).collect() }
    }

    /// Images `[u_k, x_k]` of the generators, at series cap `cap`.
    pub fn generator_images(&self, cap: usize) -> Vec<NCSeries> {
        (0..self.letters)
            .map(|k| {
                let u = self.parts[k].with_cap(cap).to_assoc();
                u.bracket(&NCSeries::letter(self.letters, cap, k))
            })
            .collect()
    }

    /// Leibniz extension to the associative algebra; result cap is
    /// `min(z.cap, self.cap + 1)`.
    pub fn act(&self, z: &NCSeries) -> NCSeries {
        assert_eq!(z.letters(), self.letters, "letter count mismatch");
        let cap = z.cap().min(self.cap + 1);
        let imgs = self.generator_images(cap);
        let mut out = NCSeries::zero(self.letters, cap);
        for (w, c) in z.terms() {
            if w.len() >= cap || w.is_empty() {
                continue;
            }
            let room = cap - (w.len() - 1);
            for i in 0..w.len() {
                let pre = w.prefix(i);
                let suf = w.suffix_from(i + 1);
                for (v, cv) in imgs[w.get(i)].terms().range(..Word::first_of_len(room + 1)) {
                    out.add_term(pre.concat(v).concat(&suf), &(c * cv));
                }
            }
        }
        out
    }

    pub fn act_lie(&self, z: &LieElement) -> LieElement {
        LieElement::from_assoc(&self.act(&z.to_assoc())).expect("derivations preserve Lie elements")
    }

    pub fn bracket(&self, o: &Self) -> Self {
        assert_eq!(self.letters, o.letters);
        let cap = self.cap.min(o.cap);
        let parts = (0..self.letters)
            .map(|k| {
                let a = self.act_lie(&o.parts[k].truncate(cap));
                let b = o.act_lie(&self.parts[k].truncate(cap));
                let c = self.parts[k].truncate(cap).bracket(&o.parts[k].truncate(cap));
                a.sub(&b).sub(&c).with_cap(cap)
            })
            .collect();
        TangDer::new(parts).unwrap()
    }

    /// `e^u` applied to a series: `sum_m u^m(z)/m!`.
    pub fn exp_act(&self, z: &NCSeries) -> NCSeries {
        let mut acc = z.truncate(self.cap + 1);
        let mut term = acc.clone();
        let mut m = 1;
        loop {
            term = self.act(&term).scale(&Rational::new(1, m));
            if term.is_zero() {
                return acc;
            }
            acc = &acc + &term;
            m += 1;
        }
    }

    pub fn coface(&self, phi: &StrandMap, kind: CofaceKind) -> Result<TangDer> {
        if phi.target() != self.letters {
            return Err(Error::StrandMap(format!("target {} vs {} letters", phi.target(), self.letters)));
        }
        let imgs = coface_images(phi, kind, self.cap)?;
        let m = phi.source();
        let mut parts = vec![LieElement::zero(m, self.cap); m];
        for (l, part) in parts.iter_mut().enumerate() {
            if let Some(k) = phi.apply(l) {
                *part = self.parts[k].substitute(&imgs)?;
            }
        }
        TangDer::new(parts)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "letters": self.letters,
            "cap": self.cap,
            "normalized": true,
            "parts": self.parts.iter().map(LieElement::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<TangDer> {
        let parts = v.get("parts").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing parts".into()))?;
        TangDer::new(parts.iter().map(LieElement::from_json).collect::<Result<Vec<_>>>()?)
    }
}

/// Images `x_k^phi` (sums or cbh of fibers) in the free Lie algebra on `phi.source()` letters.
pub fn coface_images(phi: &StrandMap, kind: CofaceKind, cap: usize) -> Result<Vec<LieElement>> {
    let m = phi.source();
    (0..phi.target())
        .map(|k| {
            let fiber = phi.fiber(k);
            let gens: Vec<LieElement> = fiber.iter().map(|&l| LieElement::generator(m, cap, l)).collect();
            Ok(match (kind, gens.len()) {
                (_, 0) => LieElement::zero(m, cap),
                (CofaceKind::Additive, _) | (_, 1) => gens.iter().skip(1).fold(gens[0].clone(), |a, b| a.add(b)),
                (CofaceKind::Cbh, _) => cbh_lie(&gens),
            })
        })
        .collect()
}

impl GradedLie for TangDer {
    fn lie_zero(&self) -> Self {
        TangDer::zero(self.letters, self.cap)
    }
    fn lie_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn lie_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn lie_bracket(&self, o: &Self) -> Self {
        self.bracket(o)
    }
    fn lie_valuation(&self) -> usize {
        self.valuation()
    }
    fn lie_cap(&self) -> usize {
        self.cap
    }
    fn lie_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl GradedLieOracle for TangDer {
    fn basis(&self, d: usize) -> Vec<Self> {
        let n = self.letters;
        let mut out = Vec::new();
        for k in 0..n {
            for w in lyndon_basis(n, d) {
                if d == 1 && w.first() == k {
                    continue;
                }
                let mut parts = vec![LieElement::zero(n, self.cap); n];
                parts[k] = LieElement::from_coords(n, self.cap, [(w, Rational::one())]).unwrap();
                out.push(TangDer { letters: n, cap: self.cap, parts });
            }
        }
        out
    }

    fn coordinates(&self, d: usize) -> Vec<Rational> {
        let n = self.letters;
        let mut out = Vec::new();
        for k in 0..n {
            for w in lyndon_basis(n, d) {
                if d == 1 && w.first() == k {
                    continue;
                }
                out.push(self.parts[k].coeff(&w));
            }
        }
        out
    }
}

/// Automorphism `x_k -> e^{a_k} x_k e^{-a_k}`, stored by its exponents.
#[derive(Clone, Debug)]
pub struct TangAut {
    letters: usize,
    cap: usize,
    exps: Vec<LieElement>,
}

impl TangAut {
    pub fn identity(letters: usize, cap: usize) -> Self {
        TangAut { letters, cap, exps: vec![LieElement::zero(letters, cap); letters] }
    }

    pub fn from_exponents(exps: Vec<LieElement>) -> Result<Self> {
        let n = exps.len();
        if n == 0 {
            return Err(Error::Index("empty automorphism".into()));
        }
        for e in &exps {
            if e.letters() != n {
                return Err(Error::LetterMismatch(n, e.letters()));
            }
        }
        let cap = exps.iter().map(LieElement::cap).min().unwrap();
        Ok(TangAut { letters: n, cap, exps: exps.iter().map(|e| e.truncate(cap)).collect() })
    }

    /// Conjugation by `e^w` on every generator.
    pub fn inner(w: &LieElement) -> Self {
        TangAut { letters: w.letters(), cap: w.cap(), exps: vec![w.clone(); w.letters()] }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn exponents(&self) -> &[LieElement] {
        &self.exps
    }

    pub fn truncate(&self, cap: usize) -> Self {
        TangAut { letters: self.letters, cap: cap.min(self.cap), exps: self.exps.iter().map(|e| e.truncate(cap)).collect() }
    }

    /// Generator images at series cap `cap` (at most `self.cap + 1`).
    pub fn generator_images(&self, cap: usize) -> Vec<NCSeries> {
        let cap = cap.min(self.cap + 1);
        (0..self.letters).map(|k| conj_letter(&self.exps[k].with_cap(cap).to_assoc(), k)).collect()
    }

    /// Algebra automorphism applied to a series; result cap `min(z.cap, self.cap + 1)`.
    pub fn apply(&self, z: &NCSeries) -> NCSeries {
        assert_eq!(z.letters(), self.letters, "letter count mismatch");
        let cap = z.cap().min(self.cap + 1);
        z.truncate(cap).substitute(&self.generator_images(cap)).unwrap()
    }

    pub fn apply_lie(&self, z: &LieElement) -> LieElement {
        let cap = z.cap().min(self.cap + 1);
        let imgs: Vec<LieElement> =
            self.generator_images(cap).iter().map(|s| LieElement::from_assoc(s).expect("conjugate of a letter is Lie")).collect();
        z.truncate(cap).substitute(&imgs).unwrap()
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &TangAut) -> TangAut {
        assert_eq!(self.letters, o.letters, "letter count mismatch");
        let cap = self.cap.min(o.cap);
        let g = self.truncate(cap);
        let exps = (0..self.letters)
            .map(|k| {
                let v = g.apply_lie(&o.exps[k].truncate(cap));
                cbh_lie(&[v, g.exps[k].clone()])
            })
            .collect();
        TangAut { letters: self.letters, cap, exps }
    }

    pub fn compose_all(gs: &[TangAut]) -> TangAut {
        let mut it = gs.iter();
        let first = it.next().expect("nonempty").clone();
        it.fold(first, |acc, g| acc.compose(g))
    }

    /// Tuple inverse: `self.compose(&inv)` has zero exponents.
    pub fn inverse(&self) -> TangAut {
        let act = taut_exp(&taut_log(self).scale(&Rational::from_int(-1)));
        let exps = self.exps.iter().map(|a| act.apply_lie(a).with_cap(self.cap).neg()).collect();
        TangAut { letters: self.letters, cap: self.cap, exps }
    }

    /// Same action on all generators through degree `cap + 1`.
    pub fn same_action(&self, o: &TangAut) -> bool {
        self.first_difference(o).is_none()
    }

    /// Lowest degree (of exponents) at which the actions differ.
    pub fn first_difference(&self, o: &TangAut) -> Option<usize> {
        let cap = self.cap.min(o.cap) + 1;
        let a = self.generator_images(cap);
        let b = o.generator_images(cap);
        a.iter().zip(&b).filter_map(|(x, y)| (x - y).terms().keys().next().map(|w| w.len() - 1)).min()
    }

    /// Exponents with `p_k(a_k) = 0`, same action.
    pub fn normalized(&self) -> TangAut {
        let exps = (0..self.letters)
            .map(|k| {
                let l = self.exps[k].coeff(&Word::letter(k));
                if l.is_zero() {
                    self.exps[k].clone()
                } else {
                    let corr = LieElement::generator(self.letters, self.cap, k).scale(&-l);
                    strip_letter_term(&cbh_lie(&[self.exps[k].clone(), corr]), k)
                }
            })
            .collect();
        TangAut { letters: self.letters, cap: self.cap, exps }
    }

    pub fn coface(&self, phi: &StrandMap, kind: CofaceKind) -> Result<TangAut> {
        if phi.target() != self.letters {
            return Err(Error::StrandMap(format!("target {} vs {} letters", phi.target(), self.letters)));
        }
        let normalized;
        let g = match kind {
            CofaceKind::Additive => {
                normalized = self.normalized();
                &normalized
            }
            CofaceKind::Cbh => self,
        };
        let imgs = coface_images(phi, kind, self.cap)?;
        let m = phi.source();
        let mut exps = vec![LieElement::zero(m, self.cap); m];
        for (l, e) in exps.iter_mut().enumerate() {
            if let Some(k) = phi.apply(l) {
                *e = g.exps[k].substitute(&imgs)?;
            }
        }
        TangAut::from_exponents(exps)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "letters": self.letters,
            "cap": self.cap,
            "normalized": false,
            "exponents": self.exps.iter().map(LieElement::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<TangAut> {
        let e = v.get("exponents").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing exponents".into()))?;
        TangAut::from_exponents(e.iter().map(LieElement::from_json).collect::<Result<Vec<_>>>()?)
    }
}

pub fn taut_exp(u: &TangDer) -> TangAut {
    let n = u.letters();
    let exps = (0..n)
        .map(|k| {
            let t = u.exp_act(&NCSeries::letter(n, u.cap() + 1, k));
            solve_conjugator(&t, k, u.cap()).expect("exponential of a tangential derivation is tangential")
        })
        .collect();
    TangAut { letters: n, cap: u.cap(), exps }
}

/// Degree-by-degree solve of `exp(u) = g` on generator images.
pub fn taut_log(g: &TangAut) -> TangDer {
    let n = g.letters();
    let cap = g.cap();
    let target = g.generator_images(cap + 1);
    let mut u = TangDer::zero(n, cap);
    for d in 1..=cap {
        let ud = u.with_cap(d);
        let mut parts = vec![LieElement::zero(n, cap); n];
        for k in 0..n {
            let cur = ud.exp_act(&NCSeries::letter(n, d + 1, k));
            let r = (&target[k].truncate(d + 1) - &cur).degree_part(d + 1);
            if r.is_zero() {
                continue;
            }
            let c = invert_ad_letter(&r, k).with_cap(cap);
            parts[k] = LieElement::from_assoc(&c).expect("tangential residual");
        }
        u = u.add(&TangDer::new(parts).unwrap());
    }
    u
}

/// `exp(w(log g, log h))` for a Lie word `w` in two letters.
pub fn group_word_eval(word_log: &LieElement, g: &TangAut, h: &TangAut) -> Result<TangAut> {
    let u = eval_lie(word_log, &[taut_log(g), taut_log(h)])?;
    Ok(taut_exp(&u))
}
