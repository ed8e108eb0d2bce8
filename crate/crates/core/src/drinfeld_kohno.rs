//! Infinitesimal braid Lie algebras in the recursive semidirect-product basis.
//!
//! An element of `t_n` is stored level by level: level `L` (for `1 <= L < n`)
//! is a free Lie element on the generators `t_{0L}, ..., t_{L-1,L}`, which span
//! a free ideal of `t_{L+1}`. Strands are 0-based internally.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::free_lie::{group_mul, lyndon_basis, standard_factorization, GradedLie, GradedLieOracle, LieElement};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::tangential::TangDer;
use crate::word::Word;

/// Partially defined map `[m] ⊇ D -> [n]` with ordered fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandMap {
    target: usize,
    map: Vec<Option<usize>>,
    fibers: Vec<Vec<usize>>,
    explicit: bool,
}

impl StrandMap {
    /// Fibers ordered increasingly.
    pub fn new(target: usize, map: Vec<Option<usize>>) -> Result<Self> {
        let mut fibers = vec![Vec::new(); target];
        for (l, k) in map.iter().enumerate() {
            if let Some(k) = *k {
                if k >= target {
                    return Err(Error::StrandMap(format!("{} maps outside [{}]", l + 1, target)));
                }
                fibers[k].push(l);
            }
        }
        Ok(StrandMap { target, map, fibers, explicit: false })
    }

    /// From ordered fibers; `fibers[k]` lists the sources mapping to `k`.
    pub fn from_fibers(source: usize, fibers: Vec<Vec<usize>>) -> Result<Self> {
        let mut map = vec![None; source];
        for (k, f) in fibers.iter().enumerate() {
            for &l in f {
                if l >= source || map[l].is_some() {
                    return Err(Error::StrandMap(format!("bad fiber entry {}", l + 1)));
                }
                map[l] = Some(k);
            }
        }
        let explicit = fibers.iter().any(|f| f.windows(2).any(|p| p[0] > p[1]));
        Ok(StrandMap { target: fibers.len(), map, fibers, explicit })
    }

    /// Consecutive blocks of the given sizes: block `k` is the fiber of `k`.
    pub fn blocks(sizes: &[usize]) -> Self {
        let mut next = 0;
        let fibers = sizes
            .iter()
            .map(|&s| {
                let f: Vec<usize> = (next..next + s).collect();
                next += s;
                f
            })
            .collect();
        Self::from_fibers(next, fibers).unwrap()
    }

    pub fn identity(n: usize) -> Self {
        Self::blocks(&vec![1; n])
    }

    pub fn source(&self) -> usize {
        self.map.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn apply(&self, l: usize) -> Option<usize> {
        self.map[l]
    }

    pub fn fiber(&self, k: usize) -> &[usize] {
        &self.fibers[k]
    }

    pub fn has_orders(&self) -> bool {
        self.explicit
    }

    /// `self ∘ psi`, with fiber orders concatenated along `self`'s fibers.
    pub fn after(&self, psi: &StrandMap) -> Result<StrandMap> {
        if psi.target() != self.source() {
            return Err(Error::StrandMap("composition shape".into()));
        }
        let fibers = self.fibers.iter().map(|f| f.iter().flat_map(|&l| psi.fiber(l).iter().copied()).collect()).collect();
        StrandMap::from_fibers(psi.source(), fibers)
    }
}

/// Generator `t_{ij}` as a (level, letter) pair.
fn gen_slot(i: usize, j: usize) -> (usize, usize) {
    (i.max(j), i.min(j))
}

/// Element of `t_n` truncated at `cap`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TnElement {
    strands: usize,
    cap: usize,
    levels: Vec<LieElement>,
}

impl TnElement {
    pub fn zero(strands: usize, cap: usize) -> Self {
        assert!(strands >= 2, "t_n needs at least two strands");
        TnElement { strands, cap, levels: (1..strands).map(|l| LieElement::zero(l, cap)).collect() }
    }

    /// `t_{ij}` (0-based strands).
    pub fn generator(strands: usize, cap: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i >= strands || j >= strands {
            return Err(Error::Index(format!("t_{{{},{}}} in t_{}", i + 1, j + 1, strands)));
        }
        let mut e = Self::zero(strands, cap);
        let (l, k) = gen_slot(i, j);
        e.levels[l - 1] = LieElement::generator(l, cap, k);
        Ok(e)
    }

    /// Sum of all generators.
    pub fn casimir(strands: usize, cap: usize) -> Self {
        let mut e = Self::zero(strands, cap);
        for l in 1..strands {
            let mut lv = LieElement::zero(l, cap);
            for k in 0..l {
                lv = lv.add(&LieElement::generator(l, cap, k));
            }
            e.levels[l - 1] = lv;
        }
        e
    }

    pub fn from_levels(strands: usize, levels: Vec<LieElement>) -> Result<Self> {
        if levels.len() + 1 != strands {
            return Err(Error::Shape("level count".into()));
        }
        for (i, l) in levels.iter().enumerate() {
            if l.letters() != i + 1 {
                return Err(Error::LetterMismatch(i + 1, l.letters()));
            }
        }
        let cap = levels.iter().map(LieElement::cap).min().unwrap();
        Ok(TnElement { strands, cap, levels: levels.iter().map(|l| l.truncate(cap)).collect() })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Free component on `t_{0L}, ..., t_{L-1,L}`.
    pub fn level(&self, l: usize) -> &LieElement {
        &self.levels[l - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(LieElement::is_zero)
    }

    pub fn valuation(&self) -> usize {
        self.levels.iter().map(LieElement::valuation).min().unwrap_or(self.cap + 1)
    }

    fn map_levels(&self, f: impl Fn(&LieElement) -> LieElement) -> Self {
        let levels: Vec<LieElement> = self.levels.iter().map(f).collect();
        let cap = levels.iter().map(LieElement::cap).min().unwrap_or(self.cap);
        TnElement { strands: self.strands, cap, levels }
    }

    pub fn degree_part(&self, d: usize) -> Self {
        self.map_levels(|l| l.degree_part(d))
    }

    pub fn truncate(&self, cap: usize) -> Self {
        self.map_levels(|l| l.truncate(cap))
    }

    pub fn with_cap(&self, cap: usize) -> Self {
        self.map_levels(|l| l.with_cap(cap))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.strands, o.strands, "strand mismatch");
        let cap = self.cap.min(o.cap);
        TnElement { strands: self.strands, cap, levels: self.levels.iter().zip(&o.levels).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_levels(LieElement::neg)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_levels(|l| l.scale(c))
    }

    pub fn checked_bracket(&self, o: &Self) -> Result<Self> {
        if self.strands != o.strands {
            return Err(Error::StrandMismatch(self.strands, o.strands));
        }
        Ok(self.bracket(o))
    }

    pub fn bracket(&self, o: &Self) -> Self {
        assert_eq!(self.strands, o.strands, "strand mismatch");
        let n = self.strands;
        let cap = self.cap.min(o.cap);
        let mut levels: Vec<LieElement> = self.levels.iter().zip(&o.levels).map(|(a, b)| a.bracket(b).with_cap(cap)).collect();
        for k in 1..n {
            for l in k + 1..n {
                let (ak, bl) = (&self.levels[k - 1], &o.levels[l - 1]);
                if let Some(v) = level_act(ak, k, bl, l, cap) {
                    levels[l - 1] = levels[l - 1].add(&v);
                }
                let (bk, al) = (&o.levels[k - 1], &self.levels[l - 1]);
                if let Some(v) = level_act(bk, k, al, l, cap) {
                    levels[l - 1] = levels[l - 1].sub(&v);
                }
            }
        }
        TnElement { strands: n, cap, levels }
    }

    /// Image under the Lie morphism `t_{ij} -> sum over fibers of t_{i'j'}`.
    pub fn coface(&self, phi: &StrandMap) -> Result<TnElement> {
        if phi.target() != self.strands {
            return Err(Error::StrandMap(format!("target {} vs {} strands", phi.target(), self.strands)));
        }
        let m = phi.source();
        if m < 2 {
            return Err(Error::StrandMap("source needs two strands".into()));
        }
        let img = |i: usize, j: usize| -> TnElement {
            let mut e = TnElement::zero(m, self.cap);
            for &a in phi.fiber(i) {
                for &b in phi.fiber(j) {
                    e = e.add(&TnElement::generator(m, self.cap, a, b).unwrap());
                }
            }
            e
        };
        self.eval_generators(m, img)
    }

    /// Relabelling `t_{ij} -> t_{σ(i)σ(j)}`.
    pub fn permute(&self, sigma: &[usize]) -> Result<TnElement> {
        let n = self.strands;
        let mut seen = vec![false; n];
        if sigma.len() != n || sigma.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::Shape("not a permutation of the strands".into()));
        }
        self.eval_generators(n, |i, j| TnElement::generator(n, self.cap, sigma[i], sigma[j]).unwrap())
    }

    fn eval_generators(&self, m: usize, img: impl Fn(usize, usize) -> TnElement) -> Result<TnElement> {
        let mut out = TnElement::zero(m, self.cap);
        for l in 1..self.strands {
            let lv = &self.levels[l - 1];
            if lv.is_zero() {
                continue;
            }
            let targets: Vec<TnElement> = (0..l).map(|k| img(k, l)).collect();
            out = out.add(&eval_nonzero(lv, &targets, m, self.cap));
        }
        Ok(out)
    }

    /// `t_n -> t_m` for `m >= n`, `t_{ij} -> t_{ij}`.
    pub fn embed(&self, m: usize) -> TnElement {
        assert!(m >= self.strands);
        let mut levels = self.levels.clone();
        for l in self.strands..m {
            levels.push(LieElement::zero(l, self.cap));
        }
        TnElement { strands: m, cap: self.cap, levels }
    }

    pub fn dim(strands: usize, d: usize) -> usize {
        (1..strands).map(|l| lyndon_basis(l, d).len()).sum()
    }

    /// Basis of the degree-`d` part, levels in increasing order.
    pub fn basis(strands: usize, cap: usize, d: usize) -> Vec<TnElement> {
        let mut out = Vec::new();
        for l in 1..strands {
            for w in lyndon_basis(l, d) {
                let mut e = TnElement::zero(strands, cap);
                e.levels[l - 1] = LieElement::from_coords(l, cap, [(w, Rational::one())]).unwrap();
                out.push(e);
            }
        }
        out
    }

    pub fn coords(&self, d: usize) -> Vec<Rational> {
        self.levels.iter().flat_map(|l| l.degree_coords(d)).collect()
    }

    pub fn from_coords(strands: usize, cap: usize, d: usize, v: &[Rational]) -> TnElement {
        let mut e = TnElement::zero(strands, cap);
        let mut off = 0;
        for l in 1..strands {
            let k = lyndon_basis(l, d).len();
            e.levels[l - 1] = LieElement::from_degree_coords(l, cap, d, &v[off..off + k]);
            off += k;
        }
        e
    }

    pub fn to_json(&self) -> Value {
        if self.strands == 2 {
            return json!({ "strands": 2, "cap": self.cap, "t12": self.levels[0].coeff(&Word::letter(0)).to_string() });
        }
        json!({
            "strands": self.strands,
            "cap": self.cap,
            "tail": self.levels[self.strands - 2].to_json(),
            "rest": self.truncate_strands().to_json(),
        })
    }

    fn truncate_strands(&self) -> TnElement {
        TnElement { strands: self.strands - 1, cap: self.cap, levels: self.levels[..self.strands - 2].to_vec() }
    }

    pub fn from_json(v: &Value) -> Result<TnElement> {
        let bad = |s: &str| Error::Parse(s.into());
        let n = v.get("strands").and_then(Value::as_u64).ok_or_else(|| bad("missing strands"))? as usize;
        let cap = v.get("cap").and_then(Value::as_u64).ok_or_else(|| bad("missing cap"))? as usize;
        if n == 2 {
            let c: Rational = v.get("t12").and_then(Value::as_str).ok_or_else(|| bad("missing t12"))?.parse()?;
            return Ok(TnElement::generator(2, cap, 0, 1)?.scale(&c));
        }
        if n < 2 {
            return Err(bad("strands"));
        }
        let rest = TnElement::from_json(v.get("rest").ok_or_else(|| bad("missing rest"))?)?;
        let tail = LieElement::from_json(v.get("tail").ok_or_else(|| bad("missing tail"))?)?;
        if rest.strands + 1 != n || tail.letters() != n - 1 || rest.cap != cap || tail.cap() != cap {
            return Err(bad("inconsistent nesting"));
        }
        let mut levels = rest.levels;
        levels.push(tail);
        Ok(TnElement { strands: n, cap, levels })
    }
}

fn eval_nonzero(lv: &LieElement, targets: &[TnElement], m: usize, cap: usize) -> TnElement {
    if targets.iter().all(TnElement::is_zero) {
        return TnElement::zero(m, cap);
    }
    crate::free_lie::eval_lie(lv, targets).expect("generator images have valuation 1")
}

/// Action of a level-`k` element on a level-`l` element (`k < l`).
fn level_act(a: &LieElement, k: usize, b: &LieElement, l: usize, cap: usize) -> Option<LieElement> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let vb = b.valuation();
    let mut der: Option<TangDer> = None;
    for (w, c) in a.coords() {
        if w.len() + vb > cap {
            continue;
        }
        let d = ad_basis(l + 1, l, k, w).with_cap(cap).scale(c);
        der = Some(match der {
            None => d,
            Some(acc) => acc.add(&d),
        });
    }
    der.map(|d| d.act_lie(&b.with_cap(cap)))
}

/// Letter index of strand `s` once `base` is removed.
fn letter_of(s: usize, base: usize) -> usize {
    if s < base {
        s
    } else {
        s - 1
    }
}

/// Image of `t_{st}` in `tder_{m-1}` with `base` playing the free-ideal strand.
fn generator_der(m: usize, base: usize, s: usize, t: usize, cap: usize) -> TangDer {
    let n = m - 1;
    let mut parts = vec![LieElement::zero(n, cap); n];
    if s == base || t == base {
        let o = letter_of(if s == base { t } else { s }, base);
        let x = LieElement::generator(n, cap, o);
        for p in parts.iter_mut() {
            *p = x.clone();
        }
    } else {
        let (i, j) = (letter_of(s, base), letter_of(t, base));
        parts[i] = LieElement::generator(n, cap, j).neg();
        parts[j] = LieElement::generator(n, cap, i).neg();
    }
    TangDer::new(parts).unwrap()
}

type AdKey = (usize, usize, usize, Word);

fn ad_cache() -> &'static Mutex<HashMap<AdKey, Arc<TangDer>>> {
    static CACHE: OnceLock<Mutex<HashMap<AdKey, Arc<TangDer>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Homogeneous image in `tder_{m-1}` of the level-`level` basis element `P_w`
/// of `t_m`, for the given base strand.
fn ad_basis(m: usize, base: usize, level: usize, w: &Word) -> Arc<TangDer> {
    let key = (m, base, level, *w);
    if let Some(d) = ad_cache().lock().unwrap().get(&key) {
        return d.clone();
    }
    let d = w.len();
    let der = if d == 1 {
        generator_der(m, base, w.first(), level, 1)
    } else {
        let (u, v) = standard_factorization(w);
        let a = ad_basis(m, base, level, &u).with_cap(d);
        let b = ad_basis(m, base, level, &v).with_cap(d);
        a.bracket(&b)
    };
    let der = Arc::new(der);
    ad_cache().lock().unwrap().insert(key, der.clone());
    der
}

/// The morphism `t_{n+1} -> tder_n` with `base` as the distinguished strand.
pub fn ad_tn(a: &TnElement, base: usize) -> TangDer {
    let m = a.strands();
    assert!(base < m, "base strand out of range");
    let mut out = TangDer::zero(m - 1, a.cap());
    for l in 1..m {
        for (w, c) in a.level(l).coords() {
            out = out.add(&ad_basis(m, base, l, w).with_cap(a.cap()).scale(c));
        }
    }
    out
}

fn guard_cache() -> &'static Mutex<HashMap<(usize, usize), usize>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), usize>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Dimension of the kernel of `ad_tn` (base 0) on `t_m[d]`.
pub fn ad_kernel_dim(m: usize, d: usize) -> usize {
    if let Some(k) = guard_cache().lock().unwrap().get(&(m, d)) {
        return *k;
    }
    let basis = TnElement::basis(m, d, d);
    let probe = TangDer::zero(m - 1, d);
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| ad_tn(b, 0).coordinates(d)).collect();
    let rows = probe.coordinates(d).len();
    let k = basis.len() - Matrix::from_columns(rows, &cols).rank();
    guard_cache().lock().unwrap().insert((m, d), k);
    k
}

/// Checks that the kernel of `ad_tn` on `t_m` is the line of the Casimir in
/// degree 1 and zero above, for all degrees up to `cap`.
pub fn kernel_guard(m: usize, cap: usize) -> Result<()> {
    for d in 1..=cap {
        let k = ad_kernel_dim(m, d);
        let expected = usize::from(d == 1);
        if k != expected {
            return Err(Error::KernelGuard(m, d, k));
        }
    }
    Ok(())
}

/// Kernel of `ad t_{ij}` on `t_n[d]` next to the predicted space.
#[derive(Clone, Debug)]
pub struct Centralizer {
    pub kernel: Vec<TnElement>,
    pub predicted: Vec<TnElement>,
    pub equal: bool,
}

pub fn centralizer_t(n: usize, i: usize, j: usize, d: usize) -> Result<Centralizer> {
    let t = TnElement::generator(n, d + 1, i, j)?;
    let basis = TnElement::basis(n, d + 1, d);
    let rows = TnElement::dim(n, d + 1);
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.bracket(&t).coords(d + 1)).collect();
    let kernel: Vec<TnElement> = Matrix::from_columns(rows, &cols)
        .nullspace()
        .iter()
        .map(|v| TnElement::from_coords(n, d, d, v))
        .collect();
    let mut predicted = Vec::new();
    if d == 1 {
        predicted.push(TnElement::generator(n, d, i, j)?);
    }
    if n > 2 {
        let mut map = vec![None; n];
        map[i] = Some(0);
        map[j] = Some(0);
        let mut next = 1;
        for (s, slot) in map.iter_mut().enumerate() {
            if s != i && s != j {
                *slot = Some(next);
                next += 1;
            }
        }
        let phi = StrandMap::new(n - 1, map)?;
        for b in TnElement::basis(n - 1, d, d) {
            predicted.push(b.coface(&phi)?);
        }
    }
    let kv: Vec<Vec<Rational>> = kernel.iter().map(|e| e.coords(d)).collect();
    let pv: Vec<Vec<Rational>> = predicted.iter().map(|e| e.coords(d)).collect();
    let equal = crate::linalg::same_span(TnElement::dim(n, d), &kv, &pv);
    Ok(Centralizer { kernel, predicted, equal })
}

impl GradedLie for TnElement {
    fn lie_zero(&self) -> Self {
        TnElement::zero(self.strands, self.cap)
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

impl GradedLieOracle for TnElement {
    fn basis(&self, d: usize) -> Vec<Self> {
        TnElement::basis(self.strands, self.cap, d)
    }
    fn coordinates(&self, d: usize) -> Vec<Rational> {
        self.coords(d)
    }
}

/// Element of `exp(t_n)`, stored by its logarithm.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TnGroupElement {
    log: TnElement,
}

impl TnGroupElement {
    pub fn identity(strands: usize, cap: usize) -> Self {
        TnGroupElement { log: TnElement::zero(strands, cap) }
    }

    pub fn from_log(log: TnElement) -> Result<Self> {
        if !log.is_zero() && log.valuation() == 0 {
            return Err(Error::ZeroValuation);
        }
        Ok(TnGroupElement { log })
    }

    pub fn log(&self) -> &TnElement {
        &self.log
    }

    pub fn mul(&self, o: &Self) -> Self {
        TnGroupElement { log: group_mul(&self.log, &o.log) }
    }

    pub fn product(gs: &[TnGroupElement]) -> Self {
        let logs: Vec<TnElement> = gs.iter().map(|g| g.log.clone()).collect();
        TnGroupElement { log: crate::free_lie::group_mul_all(&logs) }
    }

    pub fn inv(&self) -> Self {
        TnGroupElement { log: self.log.neg() }
    }

    pub fn coface(&self, phi: &StrandMap) -> Result<Self> {
        Ok(TnGroupElement { log: self.log.coface(phi)? })
    }

    pub fn permute(&self, sigma: &[usize]) -> Result<Self> {
        Ok(TnGroupElement { log: self.log.permute(sigma)? })
    }
}
