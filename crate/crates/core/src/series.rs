//! Degree-truncated power series over the rationals: noncommutative (`NCSeries`),
//! commutative multivariate (`CommSeries`) and univariate (`UniSeries`).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::word::{Word, MAX_LEN, MAX_LETTERS};

pub(crate) fn add_into(map: &mut BTreeMap<Word, Rational>, w: Word, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&w) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(&w);
            }
        }
        None => {
            map.insert(w, c.clone());
        }
    }
}

/// Truncated element of the free associative algebra on `letters` letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NCSeries {
    letters: usize,
    cap: usize,
    terms: BTreeMap<Word, Rational>,
}

impl NCSeries {
    pub fn zero(letters: usize, cap: usize) -> Self {
        assert!((1..=MAX_LETTERS).contains(&letters), "unsupported letter count {}", letters);
        assert!(cap <= MAX_LEN, "unsupported cap {}", cap);
        NCSeries { letters, cap, terms: BTreeMap::new() }
    }

    pub fn checked_zero(letters: usize, cap: usize) -> Result<Self> {
        if cap > MAX_LEN {
            return Err(Error::CapTooLarge(cap, MAX_LEN));
        }
        if letters == 0 || letters > MAX_LETTERS {
            return Err(Error::Index(format!("letter count {}", letters)));
        }
        Ok(Self::zero(letters, cap))
    }

    pub fn one(letters: usize, cap: usize) -> Self {
        Self::constant(letters, cap, Rational::one())
    }

    pub fn constant(letters: usize, cap: usize, c: Rational) -> Self {
        let mut s = Self::zero(letters, cap);
        add_into(&mut s.terms, Word::EMPTY, &c);
        s
    }

    /// The letter `x_{i+1}` (0-based index `i`).
    pub fn letter(letters: usize, cap: usize, i: usize) -> Self {
        assert!(i < letters);
        Self::monomial(letters, cap, Word::letter(i), Rational::one())
    }

    pub fn monomial(letters: usize, cap: usize, w: Word, c: Rational) -> Self {
        let mut s = Self::zero(letters, cap);
        if w.len() <= cap {
            add_into(&mut s.terms, w, &c);
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(letters: usize, cap: usize, it: I) -> Self {
        let mut s = Self::zero(letters, cap);
        for (w, c) in it {
            assert!(w.letters().all(|l| l < letters), "letter out of range");
            if w.len() <= cap {
                add_into(&mut s.terms, w, &c);
            }
        }
        s
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

    pub fn into_terms(self) -> BTreeMap<Word, Rational> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Word::EMPTY)
    }

    /// Smallest length of a stored word, or `cap + 1` for zero.
    pub fn valuation(&self) -> usize {
        self.terms.keys().next().map(|w| w.len()).unwrap_or(self.cap + 1)
    }

    /// Largest length of a stored word.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    pub fn degree_part(&self, d: usize) -> NCSeries {
        let mut s = Self::zero(self.letters, self.cap);
        s.terms = self.terms.range(Word::first_of_len(d)..Word::first_of_len(d + 1)).map(|(w, c)| (*w, c.clone())).collect();
        s
    }

    pub fn iter_degree(&self, d: usize) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.range(Word::first_of_len(d)..Word::first_of_len(d + 1))
    }

    /// Lower the cap to `cap` (never raises it).
    pub fn truncate(&self, cap: usize) -> NCSeries {
        let cap = cap.min(self.cap);
        let mut s = Self::zero(self.letters, cap);
        s.terms = self.terms.range(..Word::first_of_len(cap + 1)).map(|(w, c)| (*w, c.clone())).collect();
        s
    }

    /// Reinterpret with a different cap; words beyond the new cap are dropped.
    /// Raising the cap is only meaningful for exact polynomials.
    pub fn with_cap(&self, cap: usize) -> NCSeries {
        assert!(cap <= MAX_LEN);
        let mut s = self.truncate(cap);
        s.cap = cap;
        s
    }

    /// Same terms viewed in a larger alphabet.
    pub fn widen(&self, letters: usize) -> NCSeries {
        assert!(letters >= self.letters);
        NCSeries { letters, cap: self.cap, terms: self.terms.clone() }
    }

    fn check_letters(&self, o: &NCSeries) -> Result<()> {
        if self.letters != o.letters {
            return Err(Error::LetterMismatch(self.letters, o.letters));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &NCSeries) -> Result<NCSeries> {
        self.check_letters(o)?;
        let cap = self.cap.min(o.cap);
        let mut s = self.truncate(cap);
        for (w, c) in o.terms.range(..Word::first_of_len(cap + 1)) {
            add_into(&mut s.terms, *w, c);
        }
        Ok(s)
    }

    pub fn checked_mul(&self, o: &NCSeries) -> Result<NCSeries> {
        self.check_letters(o)?;
        let cap = self.cap.min(o.cap);
        let mut out: BTreeMap<Word, Rational> = BTreeMap::new();
        for (u, cu) in &self.terms {
            if u.len() > cap {
                break;
            }
            let room = cap - u.len();
            for (v, cv) in o.terms.range(..Word::first_of_len(room + 1)) {
                let p = cu * cv;
                match out.get_mut(&u.concat(v)) {
                    Some(x) => *x += p,
                    None => {
                        out.insert(u.concat(v), p);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(NCSeries { letters: self.letters, cap, terms: out })
    }

    pub fn scale(&self, l: &Rational) -> NCSeries {
        if l.is_zero() {
            return Self::zero(self.letters, self.cap);
        }
        NCSeries { letters: self.letters, cap: self.cap, terms: self.terms.iter().map(|(w, c)| (*w, c * l)).collect() }
    }

    pub fn add_scaled(&mut self, o: &NCSeries, l: &Rational) {
        assert_eq!(self.letters, o.letters, "letter count mismatch");
        if o.cap < self.cap {
            *self = self.truncate(o.cap);
        }
        for (w, c) in o.terms.range(..Word::first_of_len(self.cap + 1)) {
            add_into(&mut self.terms, *w, &(c * l));
        }
    }

    pub fn add_term(&mut self, w: Word, c: &Rational) {
        if w.len() <= self.cap {
            add_into(&mut self.terms, w, c);
        }
    }

    /// Commutator `ab - ba`.
    pub fn bracket(&self, o: &NCSeries) -> NCSeries {
        &(self * o) - &(o * self)
    }

    pub fn pow(&self, k: usize) -> NCSeries {
        let mut acc = Self::one(self.letters, self.cap);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn exp(&self) -> Result<NCSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut acc = Self::one(self.letters, self.cap);
        let mut term = acc.clone();
        let v = self.valuation().max(1);
        for k in 1..=(self.cap / v) {
            term = (&term * self).scale(&Rational::new(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn log(&self) -> Result<NCSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::NotUnipotent);
        }
        let h = self - &Self::one(self.letters, self.cap);
        let mut acc = Self::zero(self.letters, self.cap);
        let mut pw = Self::one(self.letters, self.cap);
        let v = h.valuation().max(1);
        for k in 1..=(self.cap / v) {
            pw = &pw * &h;
            if pw.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc.add_scaled(&pw, &Rational::new(sign, k as i64));
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inverse(&self) -> Result<NCSeries> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotUnipotent);
        }
        let ci = c.recip();
        let h = &Self::one(self.letters, self.cap) - &self.scale(&ci);
        let mut acc = Self::one(self.letters, self.cap);
        let mut pw = acc.clone();
        for _ in 1..=self.cap {
            pw = &pw * &h;
            if pw.is_zero() {
                break;
            }
            acc = &acc + &pw;
        }
        Ok(acc.scale(&ci))
    }

    /// Algebra-morphism image with `x_i -> images[i]`.
    pub fn substitute(&self, images: &[NCSeries]) -> Result<NCSeries> {
        if images.len() != self.letters {
            return Err(Error::ImageCount { expected: self.letters, got: images.len() });
        }
        let tl = images.first().map(|s| s.letters).unwrap_or(1);
        for im in images {
            if im.letters != tl {
                return Err(Error::LetterMismatch(tl, im.letters));
            }
        }
        let cap = images.iter().map(|s| s.cap).min().unwrap_or(self.cap).min(self.cap);
        let vals: Vec<usize> = images.iter().map(|s| if s.constant_term().is_zero() { s.valuation() } else { 0 }).collect();
        let items: Vec<(Word, Rational)> = self.terms.iter().map(|(w, c)| (*w, c.clone())).collect();
        Ok(horner(&items, 0, images, &vals, tl, cap))
    }

    /// Left derivative: the part of the series beginning with letter `k`, with
    /// that letter stripped.
    pub fn partial(&self, k: usize) -> NCSeries {
        let mut s = Self::zero(self.letters, self.cap);
        for (w, c) in &self.terms {
            if !w.is_empty() && w.first() == k {
                s.terms.insert(w.suffix_from(1), c.clone());
            }
        }
        s
    }

    /// Coefficient sums by letter content.
    pub fn abelianize(&self) -> CommSeries {
        let mut out = CommSeries::zero(self.letters, self.cap);
        for (w, c) in &self.terms {
            let mut m = vec![0u32; self.letters];
            for l in w.letters() {
                m[l] += 1;
            }
            out.add_term(m, c);
        }
        out
    }

    /// Dynkin-Specht-Wever test: each homogeneous part `z_d` (d >= 1) is a Lie
    /// element iff its left-normed bracketing equals `d z_d`; constants are not.
    pub fn is_primitive(&self) -> bool {
        if !self.constant_term().is_zero() {
            return false;
        }
        let Some(top) = self.degree() else { return true };
        for d in 1..=top {
            let part = self.degree_part(d);
            if part.is_zero() {
                continue;
            }
            let mut img = NCSeries::zero(self.letters, self.cap);
            for (w, c) in part.terms() {
                img.add_scaled(&left_normed(w, self.letters, self.cap), c);
            }
            if img != part.scale(&Rational::from_int(d as i64)) {
                return false;
            }
        }
        true
    }

    pub fn is_grouplike(&self) -> bool {
        match self.log() {
            Ok(l) => l.is_primitive(),
            Err(_) => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(w, c)| json!([w.letters().map(|l| l + 1).collect::<Vec<_>>(), c.to_string()])).collect();
        json!({ "letters": self.letters, "cap": self.cap, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<NCSeries> {
        let (letters, cap, terms) = parse_terms(v)?;
        let mut s = Self::checked_zero(letters, cap)?;
        for (w, c) in terms {
            if w.len() > cap {
                return Err(Error::Parse("word longer than cap".into()));
            }
            add_into(&mut s.terms, w, &c);
        }
        Ok(s)
    }
}

pub(crate) fn parse_terms(v: &Value) -> Result<(usize, usize, Vec<(Word, Rational)>)> {
    let bad = |m: &str| Error::Parse(m.to_string());
    let letters = v.get("letters").and_then(Value::as_u64).ok_or_else(|| bad("missing letters"))? as usize;
    let cap = v.get("cap").and_then(Value::as_u64).ok_or_else(|| bad("missing cap"))? as usize;
    if letters == 0 || letters > MAX_LETTERS || cap > MAX_LEN {
        return Err(bad("letters/cap out of range"));
    }
    let arr = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
    let mut out = Vec::with_capacity(arr.len());
    for t in arr {
        let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term must be a pair"))?;
        let ws = pair[0].as_array().ok_or_else(|| bad("word must be an array"))?;
        if ws.len() > MAX_LEN {
            return Err(bad("word too long"));
        }
        let mut ls = Vec::with_capacity(ws.len());
        for l in ws {
            let l = l.as_u64().ok_or_else(|| bad("letter must be an integer"))? as usize;
            if l == 0 || l > letters {
                return Err(bad("letter out of range"));
            }
            ls.push(l - 1);
        }
        let c: Rational = pair[1].as_str().ok_or_else(|| bad("coefficient must be a string"))?.parse()?;
        out.push((Word::from_letters(&ls), c));
    }
    Ok((letters, cap, out))
}

fn left_normed(w: &Word, letters: usize, cap: usize) -> NCSeries {
    let mut acc = NCSeries::letter(letters, cap, w.get(0));
    for i in 1..w.len() {
        let x = NCSeries::letter(letters, cap, w.get(i));
        acc = acc.bracket(&x);
    }
    acc
}

// sub(f) = eps(f) + sum_k img_k * sub(d_k f), with d_k stripping a leading k.
fn horner(items: &[(Word, Rational)], depth: usize, images: &[NCSeries], vals: &[usize], letters: usize, cap: usize) -> NCSeries {
    let mut out = NCSeries::zero(letters, cap);
    let mut groups: Vec<Vec<(Word, Rational)>> = vec![Vec::new(); images.len()];
    for (w, c) in items {
        if w.len() == depth {
            out.add_term(Word::EMPTY, c);
        } else {
            groups[w.get(depth)].push((*w, c.clone()));
        }
    }
    for (k, g) in groups.iter().enumerate() {
        if g.is_empty() || vals[k] > cap {
            continue;
        }
        let sub = horner(g, depth + 1, images, vals, letters, cap - vals[k]).with_cap(cap);
        out = &out + &(&images[k] * &sub);
    }
    out
}

impl Add for &NCSeries {
    type Output = NCSeries;
    fn add(self, o: &NCSeries) -> NCSeries {
        self.checked_add(o).expect("letter count mismatch")
    }
}

impl Sub for &NCSeries {
    type Output = NCSeries;
    fn sub(self, o: &NCSeries) -> NCSeries {
        self.checked_add(&-o).expect("letter count mismatch")
    }
}

impl Mul for &NCSeries {
    type Output = NCSeries;
    fn mul(self, o: &NCSeries) -> NCSeries {
        self.checked_mul(o).expect("letter count mismatch")
    }
}

impl Neg for &NCSeries {
    type Output = NCSeries;
    fn neg(self) -> NCSeries {
        NCSeries { letters: self.letters, cap: self.cap, terms: self.terms.iter().map(|(w, c)| (*w, -c)).collect() }
    }
}

/// Truncated commutative power series; keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommSeries {
    vars: usize,
    cap: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CommSeries {
    pub fn zero(vars: usize, cap: usize) -> Self {
        CommSeries { vars, cap, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize, cap: usize) -> Self {
        let mut s = Self::zero(vars, cap);
        s.add_term(vec![0; vars], &Rational::one());
        s
    }

    pub fn var(vars: usize, cap: usize, i: usize) -> Self {
        let mut m = vec![0; vars];
        m[i] = 1;
        let mut s = Self::zero(vars, cap);
        s.add_term(m, &Rational::one());
        s
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Vec<u32>, c: &Rational) {
        if c.is_zero() || m.iter().sum::<u32>() as usize > self.cap {
            return;
        }
        let vanished = {
            let e = self.terms.entry(m.clone()).or_default();
            *e += c;
            e.is_zero()
        };
        if vanished {
            self.terms.remove(&m);
        }
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        let mut s = Self::zero(self.vars, cap);
        for (m, c) in &self.terms {
            s.add_term(m.clone(), c);
        }
        s
    }

    pub fn scale(&self, l: &Rational) -> Self {
        let mut s = Self::zero(self.vars, self.cap);
        for (m, c) in &self.terms {
            s.add_term(m.clone(), &(c * l));
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars);
        let mut s = self.truncate(o.cap);
        for (m, c) in &o.terms {
            s.add_term(m.clone(), c);
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.vars, o.vars);
        let cap = self.cap.min(o.cap);
        let mut s = Self::zero(self.vars, cap);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let m: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                s.add_term(m, &(ca * cb));
            }
        }
        s
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars])
    }

    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::NotUnipotent);
        }
        let h = self.sub(&Self::one(self.vars, self.cap));
        let mut acc = Self::zero(self.vars, self.cap);
        let mut pw = Self::one(self.vars, self.cap);
        for k in 1..=self.cap {
            pw = pw.mul(&h);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&pw.scale(&Rational::new(sign, k as i64)));
        }
        Ok(acc)
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        let mut acc = Self::one(self.vars, self.cap);
        let mut term = acc.clone();
        for k in 1..=self.cap {
            term = term.mul(self).scale(&Rational::new(1, k as i64));
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `f(sum_i lambda_i x_i)` for a univariate `f`.
    pub fn from_univariate(f: &UniSeries, lambda: &[Rational], cap: usize) -> Self {
        let vars = lambda.len();
        let cap = cap.min(f.cap());
        let mut lin = Self::zero(vars, cap);
        for (i, l) in lambda.iter().enumerate() {
            lin = lin.add(&Self::var(vars, cap, i).scale(l));
        }
        let mut acc = Self::zero(vars, cap);
        let mut pw = Self::one(vars, cap);
        for n in 0..=cap {
            acc = acc.add(&pw.scale(&f.coeff(n)));
            pw = pw.mul(&lin);
        }
        acc
    }
}

/// Truncated univariate power series `sum_{n <= cap} c_n u^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniSeries {
    coeffs: Vec<Rational>,
}

impl UniSeries {
    pub fn zero(cap: usize) -> Self {
        UniSeries { coeffs: vec![Rational::zero(); cap + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        UniSeries { coeffs }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: usize, c: Rational) {
        self.coeffs[n] = c;
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, cap: usize) -> Self {
        UniSeries { coeffs: self.coeffs[..=cap.min(self.cap())].to_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let cap = self.cap().min(o.cap());
        UniSeries { coeffs: (0..=cap).map(|n| &self.coeffs[n] + &o.coeffs[n]).collect() }
    }

    pub fn scale(&self, l: &Rational) -> Self {
        UniSeries { coeffs: self.coeffs.iter().map(|c| c * l).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let cap = self.cap().min(o.cap());
        let mut out = Self::zero(cap);
        for i in 0..=cap {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(cap - i) {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroValuation);
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.cap());
        out.coeffs[0] = inv0.clone();
        for n in 1..=self.cap() {
            let s: Rational = (1..=n).map(|k| &self.coeffs[k] * &out.coeffs[n - k]).sum();
            out.coeffs[n] = -(&s * &inv0);
        }
        Ok(out)
    }

    /// `f(-u)`.
    pub fn reflect(&self) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() }).collect(),
        }
    }

    /// `u f'(u)`.
    pub fn euler(&self) -> Self {
        UniSeries { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| c * &Rational::from_int(n as i64)).collect() }
    }

    /// `f(z)` for a series `z` with zero constant term.
    pub fn eval_nc(&self, z: &NCSeries) -> NCSeries {
        let cap = z.cap();
        let mut acc = NCSeries::zero(z.letters(), cap);
        let mut pw = NCSeries::one(z.letters(), cap);
        for n in 0..=self.cap().min(cap) {
            acc.add_scaled(&pw, &self.coeffs[n]);
            pw = &pw * z;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}
