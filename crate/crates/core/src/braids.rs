//! Braid and free-group words, their holonomy images, parenthesized words and
//! the automorphisms `μ_O`.

use std::fmt;

use rand::Rng;

use crate::associators::{instantiate, Associator, GTElement};
use crate::drinfeld_kohno::{ad_tn, centralizer_t, kernel_guard, StrandMap, TnElement, TnGroupElement};
use crate::error::{Error, Result};
use crate::free_lie::{cbh_lie, LieElement};
use crate::kv::{alpha_of_f, mu_automorphism};
use crate::series::NCSeries;
use crate::tangential::{group_word_eval, taut_exp, CofaceKind, TangAut};
use crate::traces::{jacobian, TraceElement};

/// Reduced word in the free group `F_rank`; letter `g + 1` is `X_g`, `-(g + 1)` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// `X_g`, 0-based.
    pub fn generator(rank: usize, g: usize) -> Self {
        assert!(g < rank, "generator out of range");
        FreeWord { rank, letters: vec![g as i32 + 1] }
    }

    pub fn from_letters(rank: usize, letters: &[i32]) -> Result<Self> {
        let mut w = FreeWord::identity(rank);
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::Index(format!("free letter {l} in rank {rank}")));
            }
            w.push(l);
        }
        Ok(w)
    }

    fn push(&mut self, l: i32) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, o: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &o.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `self o self^{-1}`.
    pub fn conj(&self, o: &FreeWord) -> FreeWord {
        self.mul(o).mul(&self.inverse())
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank];
        for &l in &self.letters {
            s[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
        }
        s
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("X{l}") } else { format!("X{}^-1", -l) })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Endomorphism of a free group given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeAuto {
    images: Vec<FreeWord>,
}

impl FreeAuto {
    pub fn identity(rank: usize) -> Self {
        FreeAuto { images: (0..rank).map(|g| FreeWord::generator(rank, g)).collect() }
    }

    pub fn new(images: Vec<FreeWord>) -> Result<Self> {
        let n = images.len();
        if let Some(w) = images.iter().find(|w| w.rank != n) {
            return Err(Error::LetterMismatch(n, w.rank));
        }
        Ok(FreeAuto { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::identity(self.rank());
        for &l in &w.letters {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            out = if l > 0 { out.mul(img) } else { out.mul(&img.inverse()) };
        }
        out
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &FreeAuto) -> FreeAuto {
        FreeAuto { images: o.images.iter().map(|w| self.apply(w)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == FreeAuto::identity(self.rank())
    }

    /// Conjugation by `u`.
    pub fn inner(u: &FreeWord) -> FreeAuto {
        FreeAuto { images: (0..u.rank).map(|g| u.conj(&FreeWord::generator(u.rank, g))).collect() }
    }
}

/// Word in the Artin generators `σ_i` (1-based) of `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    gens: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, gens: Vec::new() }
    }

    pub fn new(strands: usize, gens: Vec<(usize, i8)>) -> Result<Self> {
        for &(i, e) in &gens {
            if i == 0 || i >= strands || e.abs() != 1 {
                return Err(Error::Index(format!("σ_{i}^{e} in B_{strands}")));
            }
        }
        Ok(BraidWord { strands, gens })
    }

    pub fn sigma(strands: usize, i: usize, e: i8) -> Result<Self> {
        BraidWord::new(strands, vec![(i, e)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn gens(&self) -> &[(usize, i8)] {
        &self.gens
    }

    pub fn mul(&self, o: &BraidWord) -> BraidWord {
        BraidWord { strands: self.strands, gens: self.gens.iter().chain(&o.gens).copied().collect() }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, gens: self.gens.iter().rev().map(|&(i, e)| (i, -e)).collect() }
    }

    /// `perm[p]` is the starting position of the strand that ends at position `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.gens {
            perm.swap(i - 1, i);
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(p, &s)| p == s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> =
            self.gens.iter().map(|&(i, e)| if e > 0 { format!("s{i}") } else { format!("s{i}^-1") }).collect();
        write!(f, "strands: {}\n{}", self.strands, toks.join(" "))
    }
}

/// Word in the pure braid generators `x_{ij}`, labels 1-based with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbWord {
    strands: usize,
    gens: Vec<(usize, usize, i8)>,
}

impl PbWord {
    pub fn identity(strands: usize) -> Self {
        PbWord { strands, gens: Vec::new() }
    }

    pub fn new(strands: usize, gens: Vec<(usize, usize, i8)>) -> Result<Self> {
        for &(i, j, e) in &gens {
            if i == 0 || i >= j || j > strands || e.abs() != 1 {
                return Err(Error::Index(format!("x_{i}{j}^{e} in PB_{strands}")));
            }
        }
        Ok(PbWord { strands, gens })
    }

    pub fn generator(strands: usize, i: usize, j: usize) -> Result<Self> {
        PbWord::new(strands, vec![(i, j, 1)])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn gens(&self) -> &[(usize, usize, i8)] {
        &self.gens
    }

    pub fn mul(&self, o: &PbWord) -> PbWord {
        PbWord { strands: self.strands, gens: self.gens.iter().chain(&o.gens).copied().collect() }
    }

    pub fn inverse(&self) -> PbWord {
        PbWord { strands: self.strands, gens: self.gens.iter().rev().map(|&(i, j, e)| (i, j, -e)).collect() }
    }

    pub fn pow(&self, k: i32) -> PbWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(PbWord::identity(self.strands), |acc, _| acc.mul(&base))
    }

    /// `(a, b) = a b a^{-1} b^{-1}`.
    pub fn commutator(a: &PbWord, b: &PbWord) -> PbWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn to_braid(&self) -> BraidWord {
        self.gens.iter().fold(BraidWord::identity(self.strands), |acc, &(i, j, e)| {
            let g = pb_gen(self.strands, i, j).expect("validated labels");
            acc.mul(&if e > 0 { g } else { g.inverse() })
        })
    }

    pub fn random<R: Rng>(strands: usize, len: usize, rng: &mut R) -> PbWord {
        let pairs: Vec<(usize, usize)> = (1..=strands).flat_map(|i| (i + 1..=strands).map(move |j| (i, j))).collect();
        let gens = (0..len)
            .map(|_| {
                let (i, j) = pairs[rng.gen_range(0..pairs.len())];
                (i, j, if rng.gen_bool(0.5) { 1 } else { -1 })
            })
            .collect();
        PbWord { strands, gens }
    }
}

impl fmt::Display for PbWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .gens
            .iter()
            .map(|&(i, j, e)| if e > 0 { format!("x{i}{j}") } else { format!("x{i}{j}^-1") })
            .collect();
        write!(f, "strands: {}\n{}", self.strands, toks.join(" "))
    }
}

/// A parsed braid file: either Artin or pure braid generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraidText {
    Artin(BraidWord),
    Pure(PbWord),
}

fn parse_token(tok: &str) -> Result<(char, String, i8)> {
    let (body, e) = match tok.split_once('^') {
        Some((b, "-1")) => (b, -1),
        Some((b, "1")) => (b, 1),
        Some(_) => return Err(Error::Parse(format!("bad exponent in {tok}"))),
        None => (tok, 1),
    };
    let mut ch = body.chars();
    let kind = ch.next().ok_or_else(|| Error::Parse("empty token".into()))?;
    Ok((kind, ch.as_str().to_string(), e))
}

/// Parses `strands: n` followed by tokens `s3`, `s3^-1`, `x13`, `x13^-1`.
/// Pure labels are two digits, or `i,j` for labels above 9.
pub fn parse_braid(text: &str) -> Result<BraidText> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header
        .strip_prefix("strands:")
        .ok_or_else(|| Error::Parse("missing 'strands:' header".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("bad strand count".into()))?;
    let mut artin = Vec::new();
    let mut pure = Vec::new();
    for tok in lines.flat_map(str::split_whitespace) {
        let (kind, rest, e) = parse_token(tok)?;
        let bad = || Error::Parse(format!("bad token {tok}"));
        match kind {
            's' => artin.push((rest.parse().map_err(|_| bad())?, e)),
            'x' => {
                let (i, j) = match rest.split_once(',') {
                    Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
                    None if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) => {
                        let d: Vec<usize> = rest.chars().map(|c| c as usize - '0' as usize).collect();
                        (d[0], d[1])
                    }
                    None => return Err(bad()),
                };
                pure.push((i, j, e));
            }
            _ => return Err(bad()),
        }
    }
    match (artin.is_empty(), pure.is_empty()) {
        (_, true) => Ok(BraidText::Artin(BraidWord::new(n, artin)?)),
        (true, false) => Ok(BraidText::Pure(PbWord::new(n, pure)?)),
        (false, false) => Err(Error::Parse("mixed σ and x tokens".into())),
    }
}

fn x(rank: usize, g: usize) -> FreeWord {
    FreeWord::generator(rank, g)
}

fn artin_gen(n: usize, i: usize, e: i8) -> FreeAuto {
    let mut auto = FreeAuto::identity(n);
    let (a, b) = (x(n, i - 1), x(n, i));
    if e > 0 {
        auto.images[i - 1] = a.conj(&b);
        auto.images[i] = a;
    } else {
        auto.images[i - 1] = b.clone();
        auto.images[i] = b.inverse().conj(&a);
    }
    auto
}

/// Artin representation `B_n -> Aut(F_n)`, `σ_i: X_i -> X_i X_{i+1} X_i^{-1}, X_{i+1} -> X_i`;
/// a word acts as the composite of its letters in reading order.
pub fn artin_action(b: &BraidWord) -> FreeAuto {
    b.gens.iter().fold(FreeAuto::identity(b.strands), |acc, &(i, e)| acc.compose(&artin_gen(b.strands, i, e)))
}

pub fn braid_eq(a: &BraidWord, b: &BraidWord) -> bool {
    a.strands == b.strands && artin_action(a) == artin_action(b)
}

/// `x_{ij} = (σ_{j-2} ... σ_i)^{-1} σ_{j-1}^2 (σ_{j-2} ... σ_i)`.
pub fn pb_gen(n: usize, i: usize, j: usize) -> Result<BraidWord> {
    if i == 0 || i >= j || j > n {
        return Err(Error::Index(format!("x_{i}{j} in PB_{n}")));
    }
    let c = BraidWord::new(n, (i..=j - 2).rev().map(|k| (k, 1)).collect())?;
    Ok(c.inverse().mul(&BraidWord::new(n, vec![(j - 1, 1), (j - 1, 1)])?).mul(&c))
}

fn g(n: usize, i: usize, j: usize) -> PbWord {
    PbWord::generator(n, i, j).expect("labels in range")
}

/// The defining relators of `PB_n`, with names.
pub fn pb_relators(n: usize) -> Vec<(String, PbWord)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let p = g(n, i, j).mul(&g(n, i, k)).mul(&g(n, j, k));
                for (name, h) in [("ij", g(n, i, j)), ("ik", g(n, i, k)), ("jk", g(n, j, k))] {
                    out.push((format!("(x{i}{j}x{i}{k}x{j}{k}, x{name}) {i}{j}{k}"), PbWord::commutator(&p, &h)));
                }
                for l in k + 1..=n {
                    out.push((format!("(x{i}{j}, x{k}{l})"), PbWord::commutator(&g(n, i, j), &g(n, k, l))));
                    out.push((format!("(x{i}{l}, x{j}{k})"), PbWord::commutator(&g(n, i, l), &g(n, j, k))));
                    let r = g(n, j, k).mul(&g(n, j, l)).mul(&g(n, j, k).inverse());
                    out.push((format!("(x{i}{k}, x{j}{k}x{j}{l}x{j}{k}^-1)"), PbWord::commutator(&g(n, i, k), &r)));
                }
            }
        }
    }
    out
}

/// Corrupted relators that must not hold.
pub fn pb_negative_controls(n: usize) -> Vec<(String, PbWord)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push((format!("(x{i}{j}, x{i}{k})"), PbWord::commutator(&g(n, i, j), &g(n, i, k))));
                out.push((format!("(x{i}{j}, x{j}{k})"), PbWord::commutator(&g(n, i, j), &g(n, j, k))));
                for l in k + 1..=n {
                    let r = g(n, j, l).mul(&g(n, j, k).inverse());
                    out.push((format!("(x{i}{k}, x{j}{l}x{j}{k}^-1)"), PbWord::commutator(&g(n, i, k), &r)));
                }
            }
        }
    }
    out
}

/// One relator under both exact actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorCheck {
    pub name: String,
    pub artin_trivial: bool,
    pub ad_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbRelationReport {
    pub strands: usize,
    pub relators: Vec<RelatorCheck>,
    pub controls: Vec<RelatorCheck>,
}

impl PbRelationReport {
    /// Relators trivial under both actions, every control nontrivial under both.
    pub fn passes(&self) -> bool {
        self.relators.iter().all(|r| r.artin_trivial && r.ad_trivial)
            && self.controls.iter().all(|r| !r.artin_trivial && !r.ad_trivial)
    }
}

fn relator_check(name: String, w: &PbWord) -> RelatorCheck {
    RelatorCheck { name, artin_trivial: artin_action(&w.to_braid()).is_identity(), ad_trivial: ad_pb(w).is_identity() }
}

pub fn check_pb_relations(n: usize) -> PbRelationReport {
    PbRelationReport {
        strands: n,
        relators: pb_relators(n).into_iter().map(|(s, w)| relator_check(s, &w)).collect(),
        controls: pb_negative_controls(n).into_iter().map(|(s, w)| relator_check(s, &w)).collect(),
    }
}

fn fibers(mult: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 1;
    mult.iter()
        .map(|&k| {
            let f: Vec<usize> = (next..next + k).collect();
            next += k;
            f
        })
        .collect()
}

/// Strand cabling `PB_n -> PB_{k_1 + ... + k_n}`:
/// `x_{ij} -> prod_{i' in φ^{-1}(i)} prod_{j' in φ^{-1}(j)} x_{i'j'}`, both products increasing.
pub fn cabling(w: &PbWord, mult: &[usize]) -> Result<PbWord> {
    if mult.len() != w.strands {
        return Err(Error::Shape(format!("{} multiplicities for {} strands", mult.len(), w.strands)));
    }
    let m: usize = mult.iter().sum();
    let fib = fibers(mult);
    let mut out = PbWord::identity(m);
    for &(i, j, e) in &w.gens {
        let mut img = Vec::new();
        for &a in &fib[i - 1] {
            for &b in &fib[j - 1] {
                img.push((a, b, 1));
            }
        }
        let img = PbWord { strands: m, gens: img };
        out = out.mul(&if e > 0 { img } else { img.inverse() });
    }
    Ok(out)
}

fn bundle_crossing(s: usize, p: usize, q: usize) -> Vec<(usize, i8)> {
    let mut out = Vec::new();
    for a in (0..p).rev() {
        for b in 0..q {
            out.push((s + a + b, 1));
        }
    }
    out
}

/// Cable of an Artin word, each strand replaced by a parallel bundle.
pub fn geometric_cable(b: &BraidWord, mult: &[usize]) -> Result<BraidWord> {
    if mult.len() != b.strands {
        return Err(Error::Shape(format!("{} multiplicities for {} strands", mult.len(), b.strands)));
    }
    let mut sizes = mult.to_vec();
    let mut gens = Vec::new();
    for &(i, e) in &b.gens {
        let s = 1 + sizes[..i - 1].iter().sum::<usize>();
        let (p, q) = (sizes[i - 1], sizes[i]);
        if e > 0 {
            gens.extend(bundle_crossing(s, p, q));
        } else {
            gens.extend(bundle_crossing(s, q, p).into_iter().rev().map(|(k, _)| (k, -1)));
        }
        sizes.swap(i - 1, i);
    }
    BraidWord::new(mult.iter().sum(), gens)
}

/// The generator formula for cabling agrees with the geometric cable on `w`.
pub fn cabling_matches_geometry(w: &PbWord, mult: &[usize]) -> Result<bool> {
    let formula = cabling(w, mult)?.to_braid();
    let geometric = geometric_cable(&w.to_braid(), mult)?;
    Ok(braid_eq(&formula, &geometric))
}

fn pb_letter(label: usize) -> usize {
    label - 2
}

fn ad_generator(n: usize, i: usize, j: usize, e: i8) -> FreeAuto {
    if i == 1 {
        let u = x(n, pb_letter(j));
        return FreeAuto::inner(&if e > 0 { u } else { u.inverse() });
    }
    let (a, b) = (pb_letter(i), pb_letter(j));
    let (xa, xb) = (x(n, a), x(n, b));
    let mut auto = FreeAuto::identity(n);
    if e > 0 {
        let c = xb.inverse().mul(&xa.inverse()).mul(&xb).mul(&xa);
        auto.images[a] = xb.inverse().conj(&xa);
        auto.images[b] = xa.mul(&xb).inverse().conj(&xb);
        for k in a + 1..b {
            auto.images[k] = c.conj(&x(n, k));
        }
    } else {
        let p = xa.conj(&xb);
        auto.images[a] = p.conj(&xa);
        auto.images[b] = p.clone();
        for k in a + 1..b {
            auto.images[k] = p.mul(&xb.inverse()).conj(&x(n, k));
        }
    }
    auto
}

/// The action `PB_{n+1} -> Aut(F_n)`; label 1 is the base strand and label
/// `k + 1` carries `X_k`.
pub fn ad_pb(w: &PbWord) -> FreeAuto {
    let n = w.strands - 1;
    w.gens.iter().fold(FreeAuto::identity(n), |acc, &(i, j, e)| acc.compose(&ad_generator(n, i, j, e)))
}

fn lie_x(n: usize, cap: usize, k: usize) -> LieElement {
    LieElement::generator(n, cap, k)
}

fn malcev_generator(n: usize, cap: usize, i: usize, j: usize) -> TangAut {
    if i == 1 {
        return TangAut::inner(&lie_x(n, cap, pb_letter(j)));
    }
    let (a, b) = (pb_letter(i), pb_letter(j));
    let (xa, xb) = (lie_x(n, cap, a), lie_x(n, cap, b));
    let mut exps = vec![LieElement::zero(n, cap); n];
    exps[a] = xb.neg();
    exps[b] = cbh_lie(&[xb.neg(), xa.neg(), xb.clone()]);
    let c = cbh_lie(&[xb.neg(), xa.neg(), xb, xa]);
    for e in &mut exps[a + 1..b] {
        *e = c.clone();
    }
    TangAut::from_exponents(exps).expect("consistent letters")
}

/// `Ad: PB_{n+1} -> TAut_n` through `X_k -> e^{x_k}`.
pub fn malcev_taut(w: &PbWord, cap: usize) -> TangAut {
    let n = w.strands - 1;
    let mut acc = TangAut::identity(n, cap);
    for &(i, j, e) in &w.gens {
        let gen = malcev_generator(n, cap, i, j);
        acc = acc.compose(&if e > 0 { gen } else { gen.inverse() });
    }
    acc
}

/// Image of a free word under `X_k -> e^{x_k}`.
pub fn malcev_free(w: &FreeWord, cap: usize) -> NCSeries {
    let n = w.rank;
    let mut acc = NCSeries::one(n, cap);
    for &l in &w.letters {
        let g = lie_x(n, cap, l.unsigned_abs() as usize - 1).to_assoc();
        let g = if l > 0 { g } else { -&g };
        acc = &acc * &g.exp().expect("valuation 1");
    }
    acc
}

/// Both sides of the pentagon of `GT_1` in `PB_4(k)`, realized in `TAut_3`:
/// `f(x23, x34) f(x12 x13, x24 x34) f(x12, x23)` and `f(x12, x23 x24) f(x13 x23, x34)`.
pub fn gt_pentagon_sides(log: &LieElement) -> Result<(TangAut, TangAut)> {
    let cap = log.cap();
    kernel_guard(4, cap)?;
    let m = |gens: &[(usize, usize)]| {
        malcev_taut(&PbWord::new(4, gens.iter().map(|&(i, j)| (i, j, 1)).collect()).expect("labels"), cap)
    };
    let f = |p: &[(usize, usize)], q: &[(usize, usize)]| group_word_eval(log, &m(p), &m(q));
    let lhs = TangAut::compose_all(&[f(&[(2, 3)], &[(3, 4)])?, f(&[(1, 2), (1, 3)], &[(2, 4), (3, 4)])?, f(&[(1, 2)], &[(2, 3)])?]);
    let rhs = f(&[(1, 2)], &[(2, 3), (2, 4)])?.compose(&f(&[(1, 3), (2, 3)], &[(3, 4)])?);
    Ok((lhs, rhs))
}

/// First failing degree of the `GT_1` pentagon.
pub fn gt_pentagon(log: &LieElement) -> Result<Option<usize>> {
    let (l, r) = gt_pentagon_sides(log)?;
    Ok(l.first_difference(&r))
}

/// A planar binary tree with leaves numbered `0..n` from left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParenWord {
    Leaf(usize),
    Pair(Box<ParenWord>, Box<ParenWord>),
}

/// Elementary move `(A B) C -> A (B C)` (forward) or its inverse, as leaf sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub forward: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombRoute {
    /// Rotate at the first rotatable node in preorder.
    Outermost,
    /// Rotate at the last rotatable node in preorder.
    Innermost,
}

impl ParenWord {
    pub fn leaf() -> Self {
        ParenWord::Leaf(0)
    }

    fn shifted(&self, by: usize) -> Self {
        match self {
            ParenWord::Leaf(i) => ParenWord::Leaf(i + by),
            ParenWord::Pair(l, r) => ParenWord::Pair(Box::new(l.shifted(by)), Box::new(r.shifted(by))),
        }
    }

    /// `self ⊗ o`.
    pub fn tensor(&self, o: &ParenWord) -> ParenWord {
        ParenWord::Pair(Box::new(self.clone()), Box::new(o.shifted(self.len())))
    }

    pub fn len(&self) -> usize {
        match self {
            ParenWord::Leaf(_) => 1,
            ParenWord::Pair(l, r) => l.len() + r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            ParenWord::Leaf(i) => vec![*i],
            ParenWord::Pair(l, r) => [l.leaves(), r.leaves()].concat(),
        }
    }

    /// `•(•(...(••)))` with `n` leaves.
    pub fn right_comb(n: usize) -> Self {
        assert!(n >= 1, "empty word");
        let mut t = ParenWord::Leaf(n - 1);
        for i in (0..n - 1).rev() {
            t = ParenWord::Pair(Box::new(ParenWord::Leaf(i)), Box::new(t));
        }
        t
    }

    /// Replace leaf `i` by `(••)`.
    pub fn double(&self, i: usize) -> Result<Self> {
        if i >= self.len() {
            return Err(Error::Index(format!("leaf {i} of {}", self.len())));
        }
        fn go(t: &ParenWord, i: usize) -> ParenWord {
            match t {
                ParenWord::Leaf(k) if *k == i => {
                    ParenWord::Pair(Box::new(ParenWord::Leaf(i)), Box::new(ParenWord::Leaf(i + 1)))
                }
                ParenWord::Leaf(k) => ParenWord::Leaf(if *k > i { k + 1 } else { *k }),
                ParenWord::Pair(l, r) => ParenWord::Pair(Box::new(go(l, i)), Box::new(go(r, i))),
            }
        }
        Ok(go(self, i))
    }

    /// All trees with `n` leaves.
    pub fn all(n: usize) -> Vec<ParenWord> {
        fn shapes(n: usize) -> Vec<ParenWord> {
            if n == 1 {
                return vec![ParenWord::leaf()];
            }
            let mut out = Vec::new();
            for k in 1..n {
                for l in shapes(k) {
                    for r in shapes(n - k) {
                        out.push(l.tensor(&r));
                    }
                }
            }
            out
        }
        shapes(n)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut next_leaf = 0;
        let t = parse_seq(&toks, &mut pos, &mut next_leaf)?;
        if pos != toks.len() {
            return Err(Error::Parse(format!("trailing input in {s}")));
        }
        Ok(t)
    }

    /// Node leaf sets `(depth, L(ν), R(ν))`, by depth then left to right.
    pub fn nodes_by_depth(&self) -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        fn go(t: &ParenWord, d: usize, out: &mut Vec<(usize, Vec<usize>, Vec<usize>)>) {
            if let ParenWord::Pair(l, r) = t {
                out.push((d, l.leaves(), r.leaves()));
                go(l, d + 1, out);
                go(r, d + 1, out);
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out.sort_by_key(|(d, l, _)| (*d, l[0]));
        out
    }

    fn rotatable(&self) -> Vec<Vec<bool>> {
        fn go(t: &ParenWord, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            if let ParenWord::Pair(l, r) = t {
                if matches!(**l, ParenWord::Pair(..)) {
                    out.push(path.clone());
                }
                path.push(false);
                go(l, path, out);
                path.pop();
                path.push(true);
                go(r, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    fn rotate_at(&self, path: &[bool]) -> (ParenWord, Rotation) {
        match (self, path.split_first()) {
            (ParenWord::Pair(l, r), None) => match &**l {
                ParenWord::Pair(a, b) => {
                    let rot = Rotation { a: a.leaves(), b: b.leaves(), c: r.leaves(), forward: true };
                    (ParenWord::Pair(a.clone(), Box::new(ParenWord::Pair(b.clone(), r.clone()))), rot)
                }
                ParenWord::Leaf(_) => unreachable!("not rotatable"),
            },
            (ParenWord::Pair(l, r), Some((&right, rest))) => {
                if right {
                    let (t, rot) = r.rotate_at(rest);
                    (ParenWord::Pair(l.clone(), Box::new(t)), rot)
                } else {
                    let (t, rot) = l.rotate_at(rest);
                    (ParenWord::Pair(Box::new(t), r.clone()), rot)
                }
            }
            (ParenWord::Leaf(_), _) => unreachable!("path into a leaf"),
        }
    }

    /// Forward rotations taking `self` to the right comb.
    pub fn path_to_comb(&self, route: CombRoute) -> Vec<Rotation> {
        let mut t = self.clone();
        let mut out = Vec::new();
        loop {
            let spots = t.rotatable();
            let spot = match route {
                CombRoute::Outermost => spots.first(),
                CombRoute::Innermost => spots.last(),
            };
            let Some(spot) = spot else { return out };
            let (next, rot) = t.rotate_at(spot);
            out.push(rot);
            t = next;
        }
    }
}

fn parse_seq(toks: &[char], pos: &mut usize, next_leaf: &mut usize) -> Result<ParenWord> {
    let mut items = Vec::new();
    while *pos < toks.len() && toks[*pos] != ')' {
        match toks[*pos] {
            '•' | '.' | '*' => {
                items.push(ParenWord::Leaf(*next_leaf));
                *next_leaf += 1;
                *pos += 1;
            }
            '(' => {
                *pos += 1;
                let t = parse_seq(toks, pos, next_leaf)?;
                if toks.get(*pos) != Some(&')') {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
                *pos += 1;
                items.push(t);
            }
            c => return Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
    match items.len() {
        1 => Ok(items.pop().unwrap()),
        2 => {
            let r = items.pop().unwrap();
            let l = items.pop().unwrap();
            Ok(ParenWord::Pair(Box::new(l), Box::new(r)))
        }
        k => Err(Error::Parse(format!("group of {k} items is not binary"))),
    }
}

impl fmt::Display for ParenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &ParenWord, top: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                ParenWord::Leaf(_) => write!(f, "•"),
                ParenWord::Pair(l, r) => {
                    if !top {
                        write!(f, "(")?;
                    }
                    go(l, false, f)?;
                    go(r, false, f)?;
                    if !top {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, true, f)
    }
}

/// Rotations from `o` to `o2`: `o` to the right comb, then back along the
/// inverse of `o2`'s route.
pub fn move_path(o: &ParenWord, o2: &ParenWord) -> Result<Vec<Rotation>> {
    move_path_via(o, o2, CombRoute::Outermost)
}

pub fn move_path_via(o: &ParenWord, o2: &ParenWord, route: CombRoute) -> Result<Vec<Rotation>> {
    if o.len() != o2.len() {
        return Err(Error::Shape(format!("{} leaves vs {}", o.len(), o2.len())));
    }
    if o == o2 {
        return Ok(Vec::new());
    }
    let mut path = o.path_to_comb(route);
    path.extend(o2.path_to_comb(route).into_iter().rev().map(|r| Rotation { forward: false, ..r }));
    Ok(path)
}

fn rotation_factor(phi: &Associator, n: usize, r: &Rotation) -> TnGroupElement {
    let t = instantiate(phi.log(), n, (&r.a, &r.b, &r.c));
    TnGroupElement::from_log(if r.forward { t } else { t.neg() }).expect("valuation >= 1")
}

/// `Φ_{O,O'}` in `exp(t_n)`, later moves on the left.
pub fn phi_oo(phi: &Associator, o: &ParenWord, o2: &ParenWord) -> Result<TnGroupElement> {
    phi_oo_via(phi, o, o2, CombRoute::Outermost)
}

pub fn phi_oo_via(phi: &Associator, o: &ParenWord, o2: &ParenWord, route: CombRoute) -> Result<TnGroupElement> {
    let n = o.len();
    let path = move_path_via(o, o2, route)?;
    let mut factors: Vec<TnGroupElement> = path.iter().map(|r| rotation_factor(phi, n, r)).collect();
    if factors.is_empty() {
        return Ok(TnGroupElement::identity(n, phi.cap()));
    }
    factors.reverse();
    Ok(TnGroupElement::product(&factors))
}

/// `Ad g = exp(ad log g)` with strand 0 as base.
pub fn ad_group(g: &TnGroupElement) -> TangAut {
    taut_exp(&ad_tn(g.log(), 0))
}

fn letter_map(n: usize, f: impl Fn(usize) -> Option<usize>, target: usize) -> StrandMap {
    StrandMap::new(target, (0..n).map(f).collect()).expect("valid strand map")
}

/// `μ_Φ^{L,R}` on `n` letters.
fn mu_factor(mu: &TangAut, n: usize, l: &[usize], r: &[usize], kind: CofaceKind) -> TangAut {
    let m = letter_map(n, |k| if l.contains(&k) { Some(0) } else if r.contains(&k) { Some(1) } else { None }, 2);
    mu.coface(&m, kind).expect("two-letter target")
}

/// `μ_n = μ^{1,2..n} ∘ μ^{2,3..n} ∘ ... ∘ μ^{n-1,n}` on `n` letters.
pub fn mu_right_comb(phi: &Associator, n: usize) -> TangAut {
    let mu = mu_automorphism(phi);
    if n == 1 {
        return TangAut::identity(1, phi.cap());
    }
    let factors: Vec<TangAut> =
        (0..n - 1).map(|k| mu_factor(&mu, n, &[k], &(k + 1..n).collect::<Vec<_>>(), CofaceKind::Additive)).collect();
    TangAut::compose_all(&factors)
}

/// `μ_O = Ad(Φ_{O_n, O}) ∘ μ_n` on `|O| - 1` letters.
pub fn mu_o(phi: &Associator, o: &ParenWord) -> Result<TangAut> {
    let len = o.len();
    if len < 2 {
        return Err(Error::Shape("μ_O needs at least two leaves".into()));
    }
    let comb = ParenWord::right_comb(len);
    let base = mu_right_comb(phi, len - 1);
    if *o == comb {
        return Ok(base);
    }
    Ok(ad_group(&phi_oo(phi, &comb, o)?).compose(&base))
}

/// Both sides of `μ_{O^{(i)}} = μ_O^{1,..,ii+1,..,n} ∘ μ_Φ^{i,i+1}` for leaf `i >= 1`.
pub fn identity4_sides(phi: &Associator, o: &ParenWord, i: usize) -> Result<(TangAut, TangAut)> {
    let len = o.len();
    if i == 0 || i >= len {
        return Err(Error::Index(format!("leaf {i} of {len} is not admissible")));
    }
    let n = len;
    let lhs = mu_o(phi, &o.double(i)?)?;
    let m = letter_map(n, |k| Some(if k < i { k } else { k - 1 }), n - 1);
    let outer = if n - 1 == 1 { TangAut::identity(n, phi.cap()) } else { mu_o(phi, o)?.coface(&m, CofaceKind::Additive)? };
    let inner = mu_factor(&mu_automorphism(phi), n, &[i - 1], &[i], CofaceKind::Additive);
    Ok((lhs, outer.compose(&inner)))
}

pub fn identity4_check(phi: &Associator, o: &ParenWord, i: usize) -> Result<Option<usize>> {
    let (l, r) = identity4_sides(phi, o, i)?;
    Ok(l.first_difference(&r))
}

/// Factors `(L(ν), R(ν))` of the telescopic product for `•⊗O'`, outermost first.
pub fn telescopic_factors(o_prime: &ParenWord) -> Vec<(Vec<usize>, Vec<usize>)> {
    o_prime.nodes_by_depth().into_iter().map(|(_, l, r)| (l, r)).collect()
}

fn telescopic(base: &TangAut, o_prime: &ParenWord, kind: CofaceKind) -> TangAut {
    let n = o_prime.len();
    let factors: Vec<TangAut> =
        telescopic_factors(o_prime).iter().map(|(l, r)| mu_factor(base, n, l, r, kind)).collect();
    if factors.is_empty() {
        return TangAut::identity(1, base.cap());
    }
    TangAut::compose_all(&factors)
}

/// `μ_{•⊗O'}` as the depth-ordered product of `μ_Φ^{L(ν),R(ν)}`.
pub fn telescopic_mu(phi: &Associator, o_prime: &ParenWord) -> TangAut {
    telescopic(&mu_automorphism(phi), o_prime, CofaceKind::Additive)
}

/// `α_f^{•⊗O'}` as the depth-ordered product of `α_f^{L̃(ν),R̃(ν)}`.
pub fn alpha_f_o(f: &GTElement, o_prime: &ParenWord) -> TangAut {
    telescopic(&alpha_of_f(f), o_prime, CofaceKind::Cbh)
}

/// Factors at equal depth commute.
pub fn telescopic_levels_commute(phi: &Associator, o_prime: &ParenWord) -> bool {
    let mu = mu_automorphism(phi);
    let n = o_prime.len();
    let nodes = o_prime.nodes_by_depth();
    nodes.iter().enumerate().all(|(a, (da, la, ra))| {
        nodes[a + 1..].iter().filter(|(db, ..)| db == da).all(|(_, lb, rb)| {
            let p = mu_factor(&mu, n, la, ra, CofaceKind::Additive);
            let q = mu_factor(&mu, n, lb, rb, CofaceKind::Additive);
            p.compose(&q).same_action(&q.compose(&p))
        })
    })
}

/// `<sum_i l(x_i) - l(s)>` on `n` letters.
fn gamma_trace(l: &crate::series::UniSeries, n: usize, cap: usize, s: &NCSeries) -> TraceElement {
    let mut acc = TraceElement::project(&l.eval_nc(s)).neg();
    for i in 0..n {
        acc = acc.add(&TraceElement::project(&l.eval_nc(&NCSeries::letter(n, cap, i))));
    }
    acc
}

fn first_trace_diff(a: &TraceElement, b: &TraceElement) -> Option<usize> {
    let d = a.sub(b);
    (!d.is_zero()).then(|| d.valuation())
}

/// `J(μ_O)` against `<sum_i log Γ_Φ(x_i) - log Γ_Φ(x_1 + ... + x_n)>`.
pub fn jacobian_mu_o_check(phi: &Associator, o: &ParenWord) -> Result<Option<usize>> {
    let mu = mu_o(phi, o)?;
    let (n, cap) = (mu.letters(), mu.cap() + 1);
    let lg = crate::associators::gamma_of_phi(phi)?.log_gamma;
    let sum = (0..n).fold(NCSeries::zero(n, cap), |acc, i| &acc + &NCSeries::letter(n, cap, i));
    let j = jacobian(&mu);
    Ok(first_trace_diff(&j, &gamma_trace(&lg, n, j.cap(), &sum.with_cap(j.cap()))))
}

/// `J(α_f^{•⊗O'})` against `<sum_i log Γ_f(x_i) - log Γ_f(log(e^{x_1} ... e^{x_n}))>`.
pub fn jacobian_alpha_check(f: &GTElement, o_prime: &ParenWord) -> Result<Option<usize>> {
    let alpha = alpha_f_o(f, o_prime);
    let n = alpha.letters();
    let lg = crate::associators::gamma_of_f(f)?.log_gamma;
    let j = jacobian(&alpha);
    let cap = j.cap();
    let z = cbh_lie(&(0..n).map(|i| lie_x(n, cap, i)).collect::<Vec<_>>()).to_assoc();
    Ok(first_trace_diff(&j, &gamma_trace(&lg, n, cap, &z)))
}

/// Both sides of `Ad f(x12, x23) ∘ α_f^{1̃2,3} ∘ α_f^{1,2} = α_f^{1,2̃3} ∘ α_f^{2,3}`.
pub fn identity22_sides(f: &GTElement) -> Result<(TangAut, TangAut)> {
    let cap = f.log.cap();
    let alpha = alpha_of_f(f);
    let c = |m: &[Option<usize>]| alpha.coface(&StrandMap::new(2, m.to_vec()).expect("map"), CofaceKind::Cbh);
    let ad = group_word_eval(&f.log, &malcev_taut(&g(4, 2, 3), cap), &malcev_taut(&g(4, 3, 4), cap))?;
    let lhs = TangAut::compose_all(&[ad, c(&[Some(0), Some(0), Some(1)])?, c(&[Some(0), Some(1), None])?]);
    let rhs = c(&[Some(0), Some(1), Some(1)])?.compose(&c(&[None, Some(0), Some(1)])?);
    Ok((lhs, rhs))
}

pub fn identity22_check(f: &GTElement) -> Result<Option<usize>> {
    let (l, r) = identity22_sides(f)?;
    Ok(l.first_difference(&r))
}

/// Graded centralizer of `t_12` in `t_n[d]` next to its prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerRow {
    pub degree: usize,
    pub kernel: usize,
    pub predicted: usize,
    pub equal: bool,
}

pub fn centralizer_rows(n: usize, cap: usize) -> Result<Vec<CentralizerRow>> {
    (1..=cap)
        .map(|d| {
            let c = centralizer_t(n, 0, 1, d)?;
            Ok(CentralizerRow { degree: d, kernel: c.kernel.len(), predicted: c.predicted.len(), equal: c.equal })
        })
        .collect()
}

/// `x12^λ h^{1̃2,3,...}` for `h` in `PB_{n-1}`.
pub fn centralizer_element(h: &PbWord, lambda: i32) -> Result<PbWord> {
    let mut mult = vec![1; h.strands];
    mult[0] = 2;
    Ok(g(h.strands + 1, 1, 2).pow(lambda).mul(&cabling(h, &mult)?))
}

/// First degree at which `malcev_taut(w)` fails to commute with `malcev_taut(x12)`.
pub fn commutes_with_x12(w: &PbWord, cap: usize) -> Option<usize> {
    let a = malcev_taut(w, cap);
    let b = malcev_taut(&g(w.strands, 1, 2), cap);
    a.compose(&b).first_difference(&b.compose(&a))
}

/// `Ad(e^w)` on `t_{n+1}` elements, for callers outside this module.
pub fn ad_lie(w: &TnElement) -> TangAut {
    taut_exp(&ad_tn(w, 0))
}
