//! Free Lie algebras in the Lyndon basis, the universal BCH element, and
//! evaluation of Lie words inside arbitrary graded Lie algebras.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::{add_into, parse_terms, NCSeries};
use crate::word::{Word, MAX_LEN, MAX_LETTERS};

/// Lyndon words of length exactly `d` over `n` letters, in lexicographic order.
pub fn lyndon_basis(n: usize, d: usize) -> Vec<Word> {
    lyndon_words_upto(n, d).into_iter().filter(|w| w.len() == d).collect()
}

/// All Lyndon words of length at most `d` (Duval's generation order).
pub fn lyndon_words_upto(n: usize, d: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    loop {
        out.push(Word::from_letters(&w));
        let m = w.len();
        while w.len() < d {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&l) = w.last() {
            if l == n - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &Word) -> (Word, Word) {
    debug_assert!(w.len() >= 2);
    for k in 1..w.len() {
        let v = w.suffix_from(k);
        if v.is_lyndon() {
            return (w.prefix(k), v);
        }
    }
    unreachable!("single letters are Lyndon")
}

type Expansion = Arc<Vec<(Word, Rational)>>;

fn expansion_cache() -> &'static RwLock<HashMap<Word, Expansion>> {
    static CACHE: OnceLock<RwLock<HashMap<Word, Expansion>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The bracketed polynomial `P_w` of a Lyndon word as a list of words.
pub fn lyndon_expansion(w: &Word) -> Expansion {
    if let Some(e) = expansion_cache().read().unwrap().get(w) {
        return e.clone();
    }
    let e: Expansion = if w.len() == 1 {
        Arc::new(vec![(*w, Rational::one())])
    } else {
        let (u, v) = standard_factorization(w);
        let pu = lyndon_expansion(&u);
        let pv = lyndon_expansion(&v);
        let mut m: BTreeMap<Word, Rational> = BTreeMap::new();
        for (a, ca) in pu.iter() {
            for (b, cb) in pv.iter() {
                let c = ca * cb;
                add_into(&mut m, a.concat(b), &c);
                add_into(&mut m, b.concat(a), &-c);
            }
        }
        Arc::new(m.into_iter().collect())
    };
    expansion_cache().write().unwrap().insert(*w, e.clone());
    e
}

/// Element of the free Lie algebra on `letters` generators, truncated at `cap`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieElement {
    letters: usize,
    cap: usize,
    coords: BTreeMap<Word, Rational>,
}

impl LieElement {
    pub fn zero(letters: usize, cap: usize) -> Self {
        assert!((1..=MAX_LETTERS).contains(&letters) && cap <= MAX_LEN);
        LieElement { letters, cap, coords: BTreeMap::new() }
    }

    pub fn generator(letters: usize, cap: usize, i: usize) -> Self {
        assert!(i < letters);
        let mut e = Self::zero(letters, cap);
        if cap >= 1 {
            e.coords.insert(Word::letter(i), Rational::one());
        }
        e
    }

    pub fn from_coords<I: IntoIterator<Item = (Word, Rational)>>(letters: usize, cap: usize, it: I) -> Result<Self> {
        let mut e = Self::zero(letters, cap);
        for (w, c) in it {
            if !w.is_lyndon() || w.letters().any(|l| l >= letters) {
                return Err(Error::Parse(format!("{:?} is not a Lyndon word on {} letters", w, letters)));
            }
            if w.len() <= cap {
                add_into(&mut e.coords, w, &c);
            }
        }
        Ok(e)
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coords(&self) -> &BTreeMap<Word, Rational> {
        &self.coords
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.coords.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn valuation(&self) -> usize {
        self.coords.keys().next().map(|w| w.len()).unwrap_or(self.cap + 1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coords.keys().next_back().map(|w| w.len())
    }

    pub fn degree_part(&self, d: usize) -> LieElement {
        let mut e = Self::zero(self.letters, self.cap);
        e.coords = self.coords.range(Word::first_of_len(d)..Word::first_of_len(d + 1)).map(|(w, c)| (*w, c.clone())).collect();
        e
    }

    /// Coordinates of the degree-`d` part in the order of `lyndon_basis`.
    pub fn degree_coords(&self, d: usize) -> Vec<Rational> {
        lyndon_basis(self.letters, d).iter().map(|w| self.coeff(w)).collect()
    }

    pub fn from_degree_coords(letters: usize, cap: usize, d: usize, v: &[Rational]) -> Self {
        let mut e = Self::zero(letters, cap);
        for (w, c) in lyndon_basis(letters, d).into_iter().zip(v) {
            if w.len() <= cap {
                add_into(&mut e.coords, w, c);
            }
        }
        e
    }

    pub fn truncate(&self, cap: usize) -> LieElement {
        let cap = cap.min(self.cap);
        let mut e = Self::zero(self.letters, cap);
        e.coords = self.coords.range(..Word::first_of_len(cap + 1)).map(|(w, c)| (*w, c.clone())).collect();
        e
    }

    pub fn with_cap(&self, cap: usize) -> LieElement {
        let mut e = self.truncate(cap);
        e.cap = cap;
        e
    }

    pub fn widen(&self, letters: usize) -> LieElement {
        assert!(letters >= self.letters);
        LieElement { letters, cap: self.cap, coords: self.coords.clone() }
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        assert_eq!(self.letters, o.letters, "letter count mismatch");
        let mut e = self.truncate(o.cap);
        for (w, c) in o.coords.range(..Word::first_of_len(e.cap + 1)) {
            add_into(&mut e.coords, *w, c);
        }
        e
    }

    pub fn sub(&self, o: &LieElement) -> LieElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, l: &Rational) -> LieElement {
        let mut e = Self::zero(self.letters, self.cap);
        if !l.is_zero() {
            e.coords = self.coords.iter().map(|(w, c)| (*w, c * l)).collect();
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: &Rational) {
        debug_assert!(w.is_lyndon());
        if w.len() <= self.cap {
            add_into(&mut self.coords, w, c);
        }
    }

    pub fn to_assoc(&self) -> NCSeries {
        let mut s = NCSeries::zero(self.letters, self.cap);
        for (w, c) in &self.coords {
            for (v, cv) in lyndon_expansion(w).iter() {
                s.add_term(*v, &(c * cv));
            }
        }
        s
    }

    /// Lyndon coordinates of a primitive series; fails at the first degree
    /// where the input is not a Lie element.
    pub fn from_assoc(z: &NCSeries) -> Result<LieElement> {
        if !z.constant_term().is_zero() {
            return Err(Error::NotPrimitive(0));
        }
        let mut e = Self::zero(z.letters(), z.cap());
        let Some(top) = z.degree() else { return Ok(e) };
        for d in 1..=top {
            let mut part: BTreeMap<Word, Rational> = z.iter_degree(d).map(|(w, c)| (*w, c.clone())).collect();
            while let Some((w, c)) = part.iter().next().map(|(w, c)| (*w, c.clone())) {
                if !w.is_lyndon() {
                    return Err(Error::NotPrimitive(d));
                }
                for (v, cv) in lyndon_expansion(&w).iter() {
                    add_into(&mut part, *v, &-(&c * cv));
                }
                e.coords.insert(w, c);
            }
        }
        Ok(e)
    }

    pub fn bracket(&self, o: &LieElement) -> LieElement {
        let z = self.to_assoc().bracket(&o.to_assoc());
        LieElement::from_assoc(&z).expect("bracket of Lie elements is primitive")
    }

    /// Lie-morphism image under `x_i -> images[i]`.
    pub fn substitute(&self, images: &[LieElement]) -> Result<LieElement> {
        let tgt: Vec<NCSeries> = images.iter().map(LieElement::to_assoc).collect();
        let z = eval_lie(self, &tgt)?;
        LieElement::from_assoc(&z)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.coords.iter().map(|(w, c)| json!([w.letters().map(|l| l + 1).collect::<Vec<_>>(), c.to_string()])).collect();
        json!({ "letters": self.letters, "cap": self.cap, "basis": "lyndon", "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<LieElement> {
        if v.get("basis").and_then(Value::as_str) != Some("lyndon") {
            return Err(Error::Parse("expected \"basis\": \"lyndon\"".into()));
        }
        let (letters, cap, terms) = parse_terms(v)?;
        let mut e = Self::zero(letters, cap);
        for (w, c) in terms {
            if !w.is_lyndon() {
                return Err(Error::Parse(format!("{:?} is not a Lyndon word", w)));
            }
            if w.len() > cap {
                return Err(Error::Parse("word longer than cap".into()));
            }
            add_into(&mut e.coords, w, &c);
        }
        Ok(e)
    }
}

/// A graded Lie algebra whose elements carry their own truncation cap.
pub trait GradedLie: Clone {
    fn lie_zero(&self) -> Self;
    fn lie_add(&self, o: &Self) -> Self;
    fn lie_scale(&self, c: &Rational) -> Self;
    fn lie_bracket(&self, o: &Self) -> Self;
    fn lie_valuation(&self) -> usize;
    fn lie_cap(&self) -> usize;
    fn lie_is_zero(&self) -> bool;
}

/// A graded Lie algebra with an explicit basis in each degree.
pub trait GradedLieOracle: GradedLie {
    /// Basis of the degree-`d` part, shaped like `self`.
    fn basis(&self, d: usize) -> Vec<Self>;
    /// Coordinates of the degree-`d` part of `self` in that basis.
    fn coordinates(&self, d: usize) -> Vec<Rational>;
}

impl GradedLie for NCSeries {
    fn lie_zero(&self) -> Self {
        NCSeries::zero(self.letters(), self.cap())
    }
    fn lie_add(&self, o: &Self) -> Self {
        self + o
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
        self.cap()
    }
    fn lie_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl GradedLie for LieElement {
    fn lie_zero(&self) -> Self {
        LieElement::zero(self.letters, self.cap)
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

impl GradedLieOracle for LieElement {
    fn basis(&self, d: usize) -> Vec<Self> {
        lyndon_basis(self.letters, d)
            .into_iter()
            .map(|w| LieElement::from_coords(self.letters, self.cap, [(w, Rational::one())]).unwrap())
            .collect()
    }
    fn coordinates(&self, d: usize) -> Vec<Rational> {
        self.degree_coords(d)
    }
}

/// Image of `expr` under the Lie morphism sending generator `i` to `targets[i]`.
pub fn eval_lie<T: GradedLie>(expr: &LieElement, targets: &[T]) -> Result<T> {
    if targets.len() != expr.letters() {
        return Err(Error::ImageCount { expected: expr.letters(), got: targets.len() });
    }
    let vals: Vec<usize> = targets.iter().map(GradedLie::lie_valuation).collect();
    if vals.contains(&0) {
        return Err(Error::ZeroValuation);
    }
    let cap = targets.iter().map(GradedLie::lie_cap).min().expect("at least one target");
    let mut memo: HashMap<Word, T> = HashMap::new();
    let mut acc = targets[0].lie_zero();
    for (w, c) in expr.coords() {
        let v: usize = w.letters().map(|l| vals[l]).sum();
        if v > cap {
            continue;
        }
        let img = eval_word(w, targets, &mut memo);
        acc = acc.lie_add(&img.lie_scale(c));
    }
    Ok(acc)
}

fn eval_word<T: GradedLie>(w: &Word, targets: &[T], memo: &mut HashMap<Word, T>) -> T {
    if w.len() == 1 {
        return targets[w.first()].clone();
    }
    if let Some(t) = memo.get(w) {
        return t.clone();
    }
    let (u, v) = standard_factorization(w);
    let a = eval_word(&u, targets, memo);
    let b = eval_word(&v, targets, memo);
    let r = if a.lie_is_zero() || b.lie_is_zero() { a.lie_zero() } else { a.lie_bracket(&b) };
    memo.insert(*w, r.clone());
    r
}

fn cbh_cache() -> &'static Mutex<HashMap<(usize, usize), Arc<LieElement>>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<LieElement>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `log(e^{x_1} ... e^{x_p})` in the free Lie algebra on `p` letters.
pub fn universal_cbh(p: usize, cap: usize) -> Arc<LieElement> {
    assert!(p >= 1);
    if let Some(e) = cbh_cache().lock().unwrap().get(&(p, cap)) {
        return e.clone();
    }
    let mut g = NCSeries::one(p, cap);
    for i in 0..p {
        g = &g * &NCSeries::letter(p, cap, i).exp().unwrap();
    }
    let e = Arc::new(LieElement::from_assoc(&g.log().unwrap()).expect("log of group-like is primitive"));
    cbh_cache().lock().unwrap().insert((p, cap), e.clone());
    e
}

/// Logarithm of `e^g e^h` in any graded Lie algebra.
pub fn group_mul<T: GradedLie>(g: &T, h: &T) -> T {
    if g.lie_is_zero() {
        return h.clone();
    }
    if h.lie_is_zero() {
        return g.clone();
    }
    let cap = g.lie_cap().min(h.lie_cap());
    eval_lie(&universal_cbh(2, cap), &[g.clone(), h.clone()]).expect("valuation checked by caller")
}

/// Logarithm of the ordered product `e^{g_1} ... e^{g_k}`.
pub fn group_mul_all<T: GradedLie>(gs: &[T]) -> T {
    let mut it = gs.iter();
    let first = it.next().expect("nonempty product").clone();
    it.fold(first, |acc, g| group_mul(&acc, g))
}

/// `cbh` evaluated on Lie elements of the free algebra, via series.
pub fn cbh_lie(parts: &[LieElement]) -> LieElement {
    let first = parts.first().expect("nonempty");
    let mut g = NCSeries::one(first.letters(), parts.iter().map(|p| p.cap()).min().unwrap());
    for p in parts {
        g = &g * &p.to_assoc().exp().expect("valuation >= 1");
    }
    LieElement::from_assoc(&g.log().unwrap()).expect("log of group-like is primitive")
}
