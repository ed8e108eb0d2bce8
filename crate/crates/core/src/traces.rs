//! Cyclic words, the divergence and Jacobian cocycles, and the coboundary
//! complexes on trace spaces.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::drinfeld_kohno::StrandMap;
use crate::error::{Error, Result};
use crate::free_lie::cbh_lie;
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::series::{add_into, parse_terms, NCSeries, UniSeries};
use crate::tangential::{taut_log, CofaceKind, TangAut, TangDer};
use crate::word::Word;

/// Element of the space of cyclic words, keyed by least rotations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceElement {
    letters: usize,
    cap: usize,
    terms: BTreeMap<Word, Rational>,
}

impl TraceElement {
    pub fn zero(letters: usize, cap: usize) -> Self {
        TraceElement { letters, cap, terms: BTreeMap::new() }
    }

    /// `<z>`.
    pub fn project(z: &NCSeries) -> Self {
        let mut t = Self::zero(z.letters(), z.cap());
        for (w, c) in z.terms() {
            add_into(&mut t.terms, w.least_rotation(), c);
        }
        t
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(letters: usize, cap: usize, it: I) -> Self {
        let mut t = Self::zero(letters, cap);
        for (w, c) in it {
            if w.len() <= cap {
                add_into(&mut t.terms, w.least_rotation(), &c);
            }
        }
        t
    }

    /// `sum_n r_n <x_1^n>` from a one-variable series.
    pub fn from_univariate(r: &UniSeries, letters: usize, cap: usize) -> Self {
        Self::from_terms(letters, cap, (0..=r.cap().min(cap)).map(|n| (Word::from_letters(&vec![0; n]), r.coeff(n))))
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(&w.least_rotation()).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest degree present, `cap + 1` if zero.
    pub fn valuation(&self) -> usize {
        self.terms.keys().next().map(Word::len).unwrap_or(self.cap + 1)
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        TraceElement {
            letters: self.letters,
            cap,
            terms: self.terms.range(..Word::first_of_len(cap + 1)).map(|(w, c)| (*w, c.clone())).collect(),
        }
    }

    pub fn degree_part(&self, d: usize) -> Self {
        TraceElement {
            letters: self.letters,
            cap: self.cap,
            terms: self.terms.iter().filter(|(w, _)| w.len() == d).map(|(w, c)| (*w, c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.letters, o.letters, "letter count mismatch");
        let cap = self.cap.min(o.cap);
        let mut t = self.truncate(cap);
        for (w, c) in o.terms.range(..Word::first_of_len(cap + 1)) {
            add_into(&mut t.terms, *w, c);
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.letters, self.cap);
        }
        TraceElement { letters: self.letters, cap: self.cap, terms: self.terms.iter().map(|(w, v)| (*w, v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// The canonical representative as a series.
    pub fn representative(&self) -> NCSeries {
        NCSeries::from_terms(self.letters, self.cap, self.terms.iter().map(|(w, c)| (*w, c.clone())))
    }

    /// Image under the algebra morphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[NCSeries]) -> Result<Self> {
        Ok(Self::project(&self.representative().substitute(images)?))
    }

    pub fn coface(&self, phi: &StrandMap, kind: CofaceKind) -> Result<Self> {
        if phi.target() != self.letters {
            return Err(Error::StrandMap(format!("target {} vs {} letters", phi.target(), self.letters)));
        }
        let m = phi.source();
        let imgs: Vec<NCSeries> = (0..self.letters)
            .map(|k| {
                let f = phi.fiber(k);
                let gens: Vec<NCSeries> = f.iter().map(|&l| NCSeries::letter(m, self.cap, l)).collect();
                match (kind, gens.len()) {
                    (_, 0) => NCSeries::zero(m, self.cap),
                    (CofaceKind::Cbh, p) if p > 1 => {
                        let lie: Vec<_> = f.iter().map(|&l| crate::free_lie::LieElement::generator(m, self.cap, l)).collect();
                        cbh_lie(&lie).to_assoc()
                    }
                    _ => gens.iter().skip(1).fold(gens[0].clone(), |a, b| &a + b),
                }
            })
            .collect();
        self.substitute(&imgs)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(w, c)| json!([w.letters().map(|l| l + 1).collect::<Vec<_>>(), c.to_string()])).collect();
        json!({ "letters": self.letters, "cap": self.cap, "cyclic": true, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let (letters, cap, terms) = parse_terms(v)?;
        let mut t = Self::zero(letters, cap);
        for (w, c) in terms {
            if w.len() > cap || w.least_rotation() != w {
                return Err(Error::Parse(format!("{:?} is not a canonical cyclic word", w)));
            }
            add_into(&mut t.terms, w, &c);
        }
        Ok(t)
    }
}

/// Least-rotation words of length `d`: a basis of the degree-`d` trace space.
pub fn cyclic_basis(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let total = n.pow(d as u32);
    for mut idx in 0..total {
        let mut ls = vec![0; d];
        for l in ls.iter_mut().rev() {
            *l = idx % n;
            idx /= n;
        }
        let w = Word::from_letters(&ls);
        if w.least_rotation() == w {
            out.push(w);
        }
    }
    out
}

/// `j(u) = <sum_k x_k ∂_k(u_k)>`.
pub fn divergence(u: &TangDer) -> TraceElement {
    let n = u.letters();
    let mut acc = NCSeries::zero(n, u.cap());
    for k in 0..n {
        let d = u.part(k).to_assoc().partial(k);
        acc = &acc + &(&NCSeries::letter(n, u.cap(), k) * &d);
    }
    TraceElement::project(&acc)
}

pub fn act_der(u: &TangDer, t: &TraceElement) -> TraceElement {
    TraceElement::project(&u.act(&t.representative()))
}

pub fn act_aut(g: &TangAut, t: &TraceElement) -> TraceElement {
    TraceElement::project(&g.apply(&t.representative()))
}

/// `J(exp u) = sum_m u^m j(u) / (m+1)!` with `u = log g`.
pub fn jacobian(g: &TangAut) -> TraceElement {
    let u = taut_log(g);
    let mut term = divergence(&u);
    let mut acc = term.clone();
    let mut m = 1i64;
    loop {
        term = act_der(&u, &term).scale(&Rational::new(1, m + 1));
        if term.is_zero() {
            return acc.truncate(g.cap());
        }
        acc = acc.add(&term);
        m += 1;
    }
}

/// The face map `[k+1] -> [k]` number `i` (`0 <= i <= k+1`).
pub fn face_map(k: usize, i: usize) -> StrandMap {
    let map = (0..=k)
        .map(|l| {
            if i == 0 {
                (l > 0).then(|| l - 1)
            } else if i == k + 1 {
                (l < k).then_some(l)
            } else if l < i {
                Some(l)
            } else {
                Some(l - 1)
            }
        })
        .collect();
    StrandMap::new(k, map).unwrap()
}

fn coboundary(f: &TraceElement, kind: CofaceKind) -> TraceElement {
    let k = f.letters();
    let mut acc = TraceElement::zero(k + 1, f.cap());
    for i in 0..=k + 1 {
        let img = f.coface(&face_map(k, i), kind).unwrap();
        acc = if i % 2 == 1 { acc.add(&img) } else { acc.sub(&img) };
    }
    acc
}

/// `δ f = sum_i (-1)^{i+1} f^{d_i}`.
pub fn delta(f: &TraceElement) -> TraceElement {
    coboundary(f, CofaceKind::Additive)
}

/// The cbh-twisted coboundary.
pub fn delta_tilde(f: &TraceElement) -> TraceElement {
    coboundary(f, CofaceKind::Cbh)
}

/// `r(x + y) - r(x) - r(y)` style image of a one-variable series.
pub fn delta_of_series(r: &UniSeries, cap: usize, kind: CofaceKind) -> TraceElement {
    let f = TraceElement::from_univariate(r, 1, cap);
    match kind {
        CofaceKind::Additive => delta(&f),
        CofaceKind::Cbh => delta_tilde(&f),
    }
}

/// Solve `δ r = c` (or the twisted variant) for `r` in `u^2 k[[u]]`.
pub fn solve_coboundary(c: &TraceElement, kind: CofaceKind) -> Result<UniSeries> {
    if c.letters() != 2 {
        return Err(Error::Shape("coboundary target must have two letters".into()));
    }
    let cap = c.cap();
    let dc = match kind {
        CofaceKind::Additive => delta(c),
        CofaceKind::Cbh => delta_tilde(c),
    };
    if let Some(w) = dc.terms().keys().next() {
        return Err(Error::NotCocycle(w.len()));
    }
    let mut r = UniSeries::zero(cap);
    for d in 2..=cap {
        let res = c.sub(&delta_of_series(&r, cap, kind));
        let key = Word::from_letters(&[vec![0; d - 1], vec![1]].concat());
        let v = res.coeff(&key);
        r.set(d, &v / &Rational::from_int(d as i64));
    }
    let res = c.sub(&delta_of_series(&r, cap, kind));
    if let Some(w) = res.terms().keys().next() {
        return Err(Error::Obstruction(w.len()));
    }
    Ok(r)
}

/// Matrix of `δ` from degree-`d` cyclic words on `k` letters to `k+1` letters.
pub fn delta_matrix(k: usize, d: usize) -> Matrix {
    let src = cyclic_basis(k, d);
    let dst = cyclic_basis(k + 1, d);
    let index: BTreeMap<Word, usize> = dst.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let cols: Vec<Vec<Rational>> = src
        .iter()
        .map(|w| {
            let img = delta(&TraceElement::from_terms(k, d, [(*w, Rational::one())]));
            let mut v = vec![Rational::zero(); dst.len()];
            for (u, c) in img.terms() {
                v[index[u]] = c.clone();
            }
            v
        })
        .collect();
    Matrix::from_columns(dst.len(), &cols)
}

/// Per-degree exactness data at the two-letter term of the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub degree: usize,
    pub kernel_at_two: usize,
    pub image_from_one: usize,
    pub kernel_at_one: usize,
}

pub fn exactness(d: usize) -> Exactness {
    let m2 = delta_matrix(2, d);
    let m1 = delta_matrix(1, d);
    let r1 = m1.rank();
    Exactness { degree: d, kernel_at_two: m2.cols - m2.rank(), image_from_one: r1, kernel_at_one: m1.cols - r1 }
}
