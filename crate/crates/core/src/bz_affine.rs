//! σ-invariant affine e-BZ data of type `A_{l-1}^{(1)}`.
//!
//! An element is stored as its generating word together with a finite
//! window of the underlying σ-periodic Lusztig datum. The hatted operators
//! act on the window as the product over `q ≡ p (mod l)` of the finite
//! operators; those factors commute because `l >= 3`. Components are read
//! through `Ψ` on a local truncation of the window, and every element is
//! certified against a second window that is `2l` wider on each side.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::lusztig::LusztigDatum;
use crate::roots_maya::{AffineRootData, Interval, MayaFin, MayaZ};
use crate::tableaux_psi::m_component;

/// Environment variable overriding the window radius cap.
pub const MAX_WINDOW_ENV: &str = "BZCRYSTAL_MAX_WINDOW";

/// Nonzero entries `(i, j, a_{i,j})` with `0 <= i < l`. Since the datum is
/// σ-periodic these rows determine it, and `Ψ` is injective, so equal keys
/// mean equal elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineKey(pub Vec<(i64, i64, i64)>);

#[derive(Clone, Debug)]
pub struct AffineBz {
    l: usize,
    word: Vec<(Kind, usize)>,
    radius: i64,
    win: LusztigDatum,
    wide: LusztigDatum,
}

impl PartialEq for AffineBz {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l && self.key() == other.key()
    }
}

impl Eq for AffineBz {}

#[derive(Serialize, Deserialize)]
struct AffineJson {
    l: usize,
    word: Vec<(Kind, usize)>,
}

fn window(l: usize, radius: i64) -> Interval {
    Interval::new(-radius - 1, (2 * radius) as usize + l).expect("positive width")
}

fn initial_radius(l: usize, len: usize) -> i64 {
    (2 * l).max(len + l) as i64
}

/// Largest admissible radius for a word of the given length.
pub fn radius_cap(l: usize, len: usize) -> i64 {
    if let Ok(v) = std::env::var(MAX_WINDOW_ENV) {
        if let Ok(cap) = v.trim().parse::<i64>() {
            return cap;
        }
    }
    (l * (len + 4)) as i64
}

/// Applies `x̂_p` to a window datum. Raising operators return `None` when
/// the central `ε` vanishes; off-centre factors with vanishing local `ε`
/// sit at the window boundary and are skipped.
fn window_apply(a: &LusztigDatum, l: usize, p: usize, kind: Kind) -> Option<LusztigDatum> {
    let iv = a.interval();
    let centre = p as i64;
    if kind.is_raising() {
        let e = if kind.is_star() { a.eps_star(centre) } else { a.eps(centre) }.expect("centre in window");
        if e == 0 {
            return None;
        }
    }
    let mut out = a.clone();
    let start = iv.first() + (centre - iv.first()).rem_euclid(l as i64);
    let mut q = start;
    while q <= iv.last() {
        let next = out.kashiwara_unchecked(q, kind);
        match next {
            Some(b) => out = b,
            None => debug_assert!(q != centre),
        }
        q += l as i64;
    }
    Some(out)
}

fn replay(l: usize, word: &[(Kind, usize)], radius: i64) -> Option<LusztigDatum> {
    let mut a = LusztigDatum::zero(window(l, radius));
    for &(kind, p) in word {
        a = window_apply(&a, l, p, kind)?;
    }
    Some(a)
}

fn central_key(a: &LusztigDatum, l: usize) -> AffineKey {
    let top = a.interval().top();
    let mut out = Vec::new();
    for i in 0..l as i64 {
        for j in (i + 1)..=top {
            let v = a.get(i, j);
            if v != 0 {
                out.push((i, j, v));
            }
        }
    }
    AffineKey(out)
}

fn central_scalars(a: &LusztigDatum, l: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(3 * l);
    for p in 0..l as i64 {
        out.push(a.r(p));
        out.push(a.eps(p).expect("centre in window"));
        out.push(a.eps_star(p).expect("centre in window"));
    }
    out
}

fn key_band(key: &AffineKey) -> i64 {
    key.0.iter().map(|&(i, j, _)| j - i).max().unwrap_or(0)
}

// Compares the two windows and checks periodicity of the narrow one.
fn certify_pair(l: usize, radius: i64, win: &LusztigDatum, wide: &LusztigDatum) -> std::result::Result<(), String> {
    let key = central_key(win, l);
    if key != central_key(wide, l) {
        return Err(format!("central rows differ between radius {} and {}", radius, radius + 2 * l as i64));
    }
    if central_scalars(win, l) != central_scalars(wide, l) {
        return Err(format!("weights or eps differ between radius {} and {}", radius, radius + 2 * l as i64));
    }
    let li = l as i64;
    let band = key_band(&key) + 1;
    let top = win.interval().top();
    for i in -li..li {
        for d in 1..=band {
            if i + li + d <= top && win.get(i, i + d) != win.get(i + li, i + li + d) {
                return Err(format!("entry ({},{}) is not periodic at radius {}", i, i + d, radius));
            }
        }
    }
    Ok(())
}

impl AffineBz {
    /// The highest element `O*`, all of whose components vanish.
    pub fn o_star(l: usize) -> Result<AffineBz> {
        AffineRootData::new(l)?;
        let radius = initial_radius(l, 0);
        Ok(AffineBz {
            l,
            word: Vec::new(),
            radius,
            win: LusztigDatum::zero(window(l, radius)),
            wide: LusztigDatum::zero(window(l, radius + 2 * l as i64)),
        })
    }

    /// Replays `word` from `O*`; `None` when some raising step vanishes.
    pub fn from_word(l: usize, word: &[(Kind, usize)]) -> Result<Option<AffineBz>> {
        AffineRootData::new(l)?;
        for &(_, p) in word {
            if p >= l {
                return Err(Error::BadResidue { p: p as i64, l });
            }
        }
        Self::build(l, word.to_vec(), initial_radius(l, word.len()))
    }

    fn build(l: usize, word: Vec<(Kind, usize)>, start: i64) -> Result<Option<AffineBz>> {
        let cap = radius_cap(l, word.len());
        let mut radius = start;
        let mut last = String::new();
        while radius <= cap {
            let win = replay(l, &word, radius);
            let wide = replay(l, &word, radius + 2 * l as i64);
            match (win, wide) {
                (None, None) => return Ok(None),
                (Some(win), Some(wide)) => match certify_pair(l, radius, &win, &wide) {
                    Ok(()) => return Ok(Some(AffineBz { l, word, radius, win, wide })),
                    Err(msg) => last = msg,
                },
                _ => last = format!("raising step vanishes at only one of the radii {}", radius),
            }
            radius += l as i64;
        }
        if last.is_empty() {
            return Err(Error::WindowCap { radius: start, cap });
        }
        Err(Error::Unstable(format!("{} (cap {})", last, cap)))
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn word(&self) -> &[(Kind, usize)] {
        &self.word
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// The window `[-R, R+l-1]` carrying the Lusztig datum.
    pub fn window(&self) -> Interval {
        self.win.interval()
    }

    pub fn window_datum(&self) -> &LusztigDatum {
        &self.win
    }

    pub fn key(&self) -> AffineKey {
        central_key(&self.win, self.l)
    }

    pub fn is_o_star(&self) -> bool {
        self.key().0.is_empty()
    }

    /// Re-runs the comparison with the `+2l` window.
    pub fn certify(&self) -> Result<()> {
        certify_pair(self.l, self.radius, &self.win, &self.wide).map_err(Error::Unstable)
    }

    fn check_residue(&self, p: usize) -> Result<()> {
        if p >= self.l {
            return Err(Error::BadResidue { p: p as i64, l: self.l });
        }
        Ok(())
    }

    /// `ê_p`, `f̂_p`, `ê*_p` or `f̂*_p`; raising operators give `None`
    /// when the corresponding `ε̂` vanishes.
    pub fn apply_hat(&self, p: usize, kind: Kind) -> Result<Option<AffineBz>> {
        self.check_residue(p)?;
        let mut word = self.word.clone();
        word.push((kind, p));
        let need = initial_radius(self.l, word.len());
        if self.radius >= need {
            let win = window_apply(&self.win, self.l, p, kind);
            let wide = window_apply(&self.wide, self.l, p, kind);
            match (win, wide) {
                (None, None) => return Ok(None),
                (Some(win), Some(wide)) => {
                    if certify_pair(self.l, self.radius, &win, &wide).is_ok() {
                        return Ok(Some(AffineBz { l: self.l, word, radius: self.radius, win, wide }));
                    }
                }
                _ => {}
            }
            return Self::build(self.l, word, self.radius + self.l as i64);
        }
        if kind.is_raising() && self.eps_hat(p, kind.is_star())? == 0 {
            return Ok(None);
        }
        Self::build(self.l, word, need)
    }

    /// Applies a word of operators in order, stopping at the first `None`.
    pub fn apply_word(&self, word: &[(Kind, usize)]) -> Result<Option<AffineBz>> {
        let mut cur = self.clone();
        for &(kind, p) in word {
            match cur.apply_hat(p, kind)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Coefficients of `wt` over `α̂_0, …, α̂_{l-1}`.
    pub fn weight_hat(&self) -> Vec<i64> {
        (0..self.l as i64).map(|p| -self.win.r(p)).collect()
    }

    /// `ε̂_p` (`starred = false`) or `ε̂*_p`.
    pub fn eps_hat(&self, p: usize, starred: bool) -> Result<i64> {
        self.check_residue(p)?;
        let q = p as i64;
        if starred {
            self.win.eps_star(q)
        } else {
            self.win.eps(q)
        }
    }

    /// `⟨ĥ_p, wt⟩`.
    pub fn pair_hat(&self, p: usize) -> i64 {
        AffineRootData { l: self.l }.pair(p, &self.weight_hat())
    }

    pub fn phi_hat(&self, p: usize, starred: bool) -> Result<i64> {
        Ok(self.eps_hat(p, starred)? + self.pair_hat(p))
    }

    /// The component `M_k` for a Maya diagram `k ⊇ Z_{<=r}`.
    pub fn component(&self, k: &MayaZ) -> Result<i64> {
        component_on(&self.win, self.l, &self.word, k)
    }

    /// `component` evaluated on both windows; disagreement is an error.
    pub fn component_certified(&self, k: &MayaZ) -> Result<i64> {
        let a = component_on(&self.win, self.l, &self.word, k)?;
        let b = component_on(&self.wide, self.l, &self.word, k)?;
        if a != b {
            return Err(Error::Unstable(format!("component at {} is {} at radius {} but {} at radius {}", k, a, self.radius, b, self.radius + 2 * self.l as i64)));
        }
        Ok(a)
    }

    /// `ε̂_p = -M_{k(σ_p Λ_p)}`, read from components.
    pub fn eps_hat_from_component(&self, p: usize) -> Result<i64> {
        self.check_residue(p)?;
        Ok(-self.component(&MayaZ::sigma_lambda(p as i64))?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AffineJson { l: self.l, word: self.word.clone() }).expect("serializable")
    }

    /// Parses `{"l": l, "word": [["f*", 0], …]}`; a word whose raising step
    /// vanishes is rejected.
    pub fn from_json(v: &serde_json::Value) -> Result<AffineBz> {
        let raw: AffineJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        AffineBz::from_word(raw.l, &raw.word)?
            .ok_or_else(|| Error::Invalid("word applies a raising operator where eps vanishes".into()))
    }
}

// The component on a σ-shift of k placed next to the central rows. Only
// entries a_{i,j} with j > base are read, and those with i <= base - band - 1
// vanish, so Ψ of the truncation to [base - band, top] gives the value.
fn component_on(a: &LusztigDatum, l: usize, word: &[(Kind, usize)], k: &MayaZ) -> Result<i64> {
    if k.co {
        return Err(Error::Invalid(format!("{} is a complement diagram; e-side components need k ⊇ Z_<=r", k)));
    }
    let li = l as i64;
    let shift = k.base.div_euclid(li) * li;
    let k = k.shift(-shift);
    let band = key_band(&central_key(a, l)).max(1);
    let n_loc = k.base - band - 1;
    let top_loc = k.upper.last().copied().unwrap_or(k.base + 1).max(k.base + 1);
    let iv = a.interval();
    if n_loc < iv.n || top_loc > iv.top() {
        let radius = (-n_loc - 1).max(top_loc - li).max(initial_radius(l, word.len()));
        let big = replay(l, word, radius).ok_or_else(|| Error::Unstable("replay vanished on a wider window".into()))?;
        return component_on(&big, l, word, &k);
    }
    let local = Interval::new(n_loc, (top_loc - n_loc - 1) as usize)?;
    let mut elems: Vec<i64> = (local.first()..=k.base).collect();
    elems.extend(k.upper.iter().copied());
    let key = MayaFin::new(local, &elems)?;
    m_component(&a.truncate(local), &key)
}

impl fmt::Display for AffineBz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "O*");
        }
        let parts: Vec<String> = self.word.iter().map(|(k, p)| format!("{}{}", k, p)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Maya diagrams `Z_{<=b} ∪ U` with `0 <= b < l` and
/// `U ⊆ [b+2, b+1+width]`: a σ-fundamental fingerprint set.
pub fn fingerprint_diagrams(l: usize, width: usize) -> Vec<MayaZ> {
    let mut out = Vec::new();
    for b in 0..l as i64 {
        for mask in 0u64..(1u64 << width) {
            let upper: Vec<i64> = (0..width).filter(|t| mask >> t & 1 == 1).map(|t| b + 2 + t as i64).collect();
            out.push(MayaZ::new(b, &upper));
        }
    }
    out
}

/// An integer or `-∞`; arithmetic with `-∞` is absorbing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
}

impl ExtInt {
    pub fn sub(self, x: i64) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::NegInf,
            ExtInt::Fin(v) => ExtInt::Fin(v - x),
        }
    }

    pub fn add(self, x: i64) -> ExtInt {
        self.sub(-x)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::NegInf => None,
            ExtInt::Fin(v) => Some(v),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{}", v),
        }
    }
}

/// `b*_p(n)`: weight `n α̂_p`, `ε̂*_p = -n`, `φ̂*_p = n`, and `-∞` for the
/// other residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementaryB {
    pub l: usize,
    pub p: usize,
    pub n: i64,
}

impl ElementaryB {
    pub fn weight(&self) -> Vec<i64> {
        let mut w = vec![0; self.l];
        w[self.p] = self.n;
        w
    }

    pub fn eps_star(&self, q: usize) -> ExtInt {
        if q == self.p {
            ExtInt::Fin(-self.n)
        } else {
            ExtInt::NegInf
        }
    }

    pub fn phi_star(&self, q: usize) -> ExtInt {
        if q == self.p {
            ExtInt::Fin(self.n)
        } else {
            ExtInt::NegInf
        }
    }

    pub fn f_star(&self, q: usize) -> Option<ElementaryB> {
        (q == self.p).then(|| ElementaryB { n: self.n - 1, ..*self })
    }

    pub fn e_star(&self, q: usize) -> Option<ElementaryB> {
        (q == self.p).then(|| ElementaryB { n: self.n + 1, ..*self })
    }
}

/// `M' ⊗ b*_p(n)` with the starred structure on the left factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPair {
    pub left: AffineBz,
    pub right: ElementaryB,
}

impl TensorPair {
    pub fn weight(&self) -> Vec<i64> {
        self.left.weight_hat().iter().zip(self.right.weight()).map(|(a, b)| a + b).collect()
    }

    /// `max(ε(b1), ε(b2) - ⟨h, wt b1⟩)`.
    pub fn eps_star(&self, q: usize) -> Result<i64> {
        let e1 = self.left.eps_hat(q, true)?;
        let e2 = self.right.eps_star(q).sub(self.left.pair_hat(q));
        Ok(ExtInt::Fin(e1).max(e2).finite().expect("left factor is finite"))
    }

    /// `max(φ(b1) + ⟨h, wt b2⟩, φ(b2))`.
    pub fn phi_star(&self, q: usize) -> Result<i64> {
        let h2 = AffineRootData { l: self.left.l() }.pair(q, &self.right.weight());
        let p1 = ExtInt::Fin(self.left.phi_hat(q, true)? + h2);
        Ok(p1.max(self.right.phi_star(q)).finite().expect("left factor is finite"))
    }

    /// `f̃` acts on the left factor when `φ(b1) > ε(b2)`, else on the right.
    pub fn f_star(&self, q: usize) -> Result<Option<TensorPair>> {
        if ExtInt::Fin(self.left.phi_hat(q, true)?) > self.right.eps_star(q) {
            Ok(self.left.apply_hat(q, Kind::FStar)?.map(|left| TensorPair { left, right: self.right }))
        } else {
            Ok(self.right.f_star(q).map(|right| TensorPair { left: self.left.clone(), right }))
        }
    }

    /// `ẽ` acts on the left factor when `φ(b1) >= ε(b2)`, else on the right.
    pub fn e_star(&self, q: usize) -> Result<Option<TensorPair>> {
        if ExtInt::Fin(self.left.phi_hat(q, true)?) >= self.right.eps_star(q) {
            Ok(self.left.apply_hat(q, Kind::EStar)?.map(|left| TensorPair { left, right: self.right }))
        } else {
            Ok(self.right.e_star(q).map(|right| TensorPair { left: self.left.clone(), right }))
        }
    }
}

/// `Ψ*_p(M) = ê_p^c M ⊗ (f̂*_p)^c b*_p` with `c = ε̂_p(M)`.
pub fn psi_star_embed(m: &AffineBz, p: usize) -> Result<TensorPair> {
    let c = m.eps_hat(p, false)?;
    let mut cur = m.clone();
    for _ in 0..c {
        cur = cur
            .apply_hat(p, Kind::E)?
            .ok_or_else(|| Error::Unstable(format!("e_{} vanished before eps was exhausted", p)))?;
    }
    Ok(TensorPair { left: cur, right: ElementaryB { l: m.l(), p, n: -c } })
}

/// One checked condition of the characterization of `B(∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub index: usize,
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    /// Generating word of the first failing element.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SevenReport {
    pub l: usize,
    pub depth: usize,
    pub nodes: usize,
    pub conditions: Vec<ConditionResult>,
}

impl SevenReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

struct Tally {
    checked: usize,
    fail: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, fail: None }
    }

    fn check(&mut self, ok: bool, who: &AffineBz, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.fail.is_none() {
            self.fail = Some(format!("{}: {}", who, what()));
        }
    }
}

/// Checks the seven conditions on all elements reachable from `O*` by at
/// most `depth` starred lowering operators.
pub fn seven_conditions_report(l: usize, depth: usize) -> Result<SevenReport> {
    let graph = crate::crystal_graph::bfs(&AffineBz::o_star(l)?, true, depth, None, false)?;
    let elems: Vec<&AffineBz> = graph.nodes.values().map(|n| &n.element).collect();
    let mut t: Vec<Tally> = (0..7).map(|_| Tally::new()).collect();
    let zero = vec![0; l];
    for m in &elems {
        let wt = m.weight_hat();
        t[0].check(wt.iter().all(|&c| c <= 0), m, || format!("weight {:?} not in Q^-", wt));
        t[1].check((wt == zero) == m.is_o_star(), m, || "weight zero away from O*".into());
        if m.is_o_star() {
            for p in 0..l {
                let e = m.eps_hat(p, true)?;
                t[2].check(e == 0, m, || format!("eps*_{} = {}", p, e));
            }
        }
        for p in 0..l {
            let e = m.eps_hat(p, true)?;
            t[3].check(e >= 0, m, || format!("eps*_{} = {}", p, e));
        }
        let mut some_positive = false;
        for p in 0..l {
            let image = psi_star_embed(m, p)?;
            t[5].check(image.right.n <= 0, m, || format!("second factor b*_{}({})", p, image.right.n));
            some_positive |= image.right.n < 0;
            check_strict(&mut t[4], m, p, &image)?;
        }
        if !m.is_o_star() {
            t[6].check(some_positive, m, || "every embedding has trivial second factor".into());
        }
    }
    // Injectivity of each Ψ*_p on the sample.
    for p in 0..l {
        let mut seen: HashMap<(AffineKey, i64), AffineKey> = HashMap::new();
        for m in &elems {
            let image = psi_star_embed(m, p)?;
            let slot = (image.left.key(), image.right.n);
            let prev = seen.insert(slot, m.key());
            t[4].check(prev.map_or(true, |k| k == m.key()), m, || format!("Psi*_{} is not injective", p));
        }
    }
    let names = [
        "wt in Q^-",
        "unique element of weight 0",
        "eps* of O* vanishes",
        "eps* finite",
        "Psi*_p strict embedding",
        "image in B x {f*^n b*_p}",
        "some p with n > 0",
    ];
    let conditions = t
        .into_iter()
        .enumerate()
        .map(|(idx, tally)| ConditionResult {
            index: idx + 1,
            name: names[idx].to_string(),
            checked: tally.checked,
            passed: tally.fail.is_none(),
            counterexample: tally.fail,
        })
        .collect();
    Ok(SevenReport { l, depth, nodes: elems.len(), conditions })
}

fn check_strict(t: &mut Tally, m: &AffineBz, p: usize, image: &TensorPair) -> Result<()> {
    let l = m.l();
    t.check(image.weight() == m.weight_hat(), m, || format!("Psi*_{} changes the weight", p));
    for q in 0..l {
        let e = image.eps_star(q)?;
        let want = m.eps_hat(q, true)?;
        t.check(e == want, m, || format!("eps*_{} of Psi*_{} is {} not {}", q, p, e, want));
        let ph = image.phi_star(q)?;
        let want = m.phi_hat(q, true)?;
        t.check(ph == want, m, || format!("phi*_{} of Psi*_{} is {} not {}", q, p, ph, want));

        let lhs = m.apply_hat(q, Kind::FStar)?.map(|x| psi_star_embed(&x, p)).transpose()?;
        let rhs = image.f_star(q)?;
        t.check(same_pair(&lhs, &rhs), m, || format!("Psi*_{} does not commute with f*_{}", p, q));
        let lhs = m.apply_hat(q, Kind::EStar)?.map(|x| psi_star_embed(&x, p)).transpose()?;
        let rhs = image.e_star(q)?;
        t.check(same_pair(&lhs, &rhs), m, || format!("Psi*_{} does not commute with e*_{}", p, q));
    }
    Ok(())
}

fn same_pair(a: &Option<TensorPair>, b: &Option<TensorPair>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => x.left.key() == y.left.key() && x.right == y.right,
        _ => false,
    }
}

/// Result of the greedy `ê*` ascent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ascent {
    pub steps: usize,
    pub height: i64,
    pub reached_o_star: bool,
}

/// Applies `ê*_p` with the smallest `p` having `ε̂*_p > 0` until none is left.
pub fn greedy_ascent(m: &AffineBz) -> Result<Ascent> {
    let height = -m.weight_hat().iter().sum::<i64>();
    let mut cur = m.clone();
    let mut steps = 0;
    'outer: loop {
        for p in 0..m.l() {
            if cur.eps_hat(p, true)? > 0 {
                cur = cur.apply_hat(p, Kind::EStar)?.expect("eps* > 0");
                steps += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(Ascent { steps, height, reached_o_star: cur.is_o_star() })
}

/// The affine analogue of the three `ε*`/`ẽ^c`/`ẽ*` identities for residues
/// `p` and `q`; returns a description of the first failure.
pub fn string_interaction_hat(m: &AffineBz, p: usize, q: usize) -> Result<Option<String>> {
    let c = m.eps_hat(p, false)?;
    let mut mp = m.clone();
    for _ in 0..c {
        mp = mp.apply_hat(p, Kind::E)?.expect("eps > 0");
    }
    let bound = c - mp.pair_hat(p);
    let lhs = m.eps_hat(p, true)?;
    let rhs = mp.eps_hat(p, true)?.max(bound);
    if lhs != rhs {
        return Ok(Some(format!("part 1 at p={}: {} vs {}", p, lhs, rhs)));
    }
    let e_pow = |x: &AffineBz, n: i64| -> Result<AffineBz> {
        let mut cur = x.clone();
        for _ in 0..n {
            cur = cur.apply_hat(p, Kind::E)?.ok_or_else(|| Error::Invalid("e applied past eps".into()))?;
        }
        Ok(cur)
    };
    if p != q && m.eps_hat(q, true)? > 0 {
        let x = m.apply_hat(q, Kind::EStar)?.expect("eps* > 0");
        if x.eps_hat(p, false)? != c {
            return Ok(Some(format!("part 2 at p={}, q={}: eps changes", p, q)));
        }
        let y = mp.apply_hat(q, Kind::EStar)?;
        if Some(e_pow(&x, c)?) != y {
            return Ok(Some(format!("part 2 at p={}, q={}: e^c e*_q M differs", p, q)));
        }
    }
    if m.eps_hat(p, true)? > 0 {
        let x = m.apply_hat(p, Kind::EStar)?.expect("eps* > 0");
        let cp = x.eps_hat(p, false)?;
        let upper = mp.eps_hat(p, true)? >= bound;
        let want_c = if upper { c } else { c - 1 };
        let want = if upper { mp.apply_hat(p, Kind::EStar)?.expect("eps*(M') > 0") } else { mp.clone() };
        if cp != want_c || e_pow(&x, cp)? != want {
            return Ok(Some(format!("part 3 at p={}", p)));
        }
    }
    Ok(None)
}

impl PartialOrd for AffineBz {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffineBz {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.l, self.key()).cmp(&(other.l, other.key()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn o_star_examples() {
        let o = AffineBz::o_star(3).unwrap();
        assert_eq!(o.weight_hat(), vec![0, 0, 0]);
        for p in 0..3 {
            assert_eq!(o.eps_hat(p, false).unwrap(), 0);
            assert_eq!(o.eps_hat(p, true).unwrap(), 0);
        }
        for k in fingerprint_diagrams(3, 3) {
            assert_eq!(o.component(&k).unwrap(), 0);
        }
        assert!(AffineBz::o_star(2).is_err());
    }

    #[test]
    fn f0_examples() {
        let o = AffineBz::o_star(3).unwrap();
        let m = o.apply_hat(0, Kind::F).unwrap().unwrap();
        let k = MayaZ::new(-1, &[1]);
        assert_eq!(m.component(&k).unwrap(), -1);
        assert_eq!(m.component(&k.shift(3)).unwrap(), -1);
        assert_eq!(m.component(&k.shift(-6)).unwrap(), -1);
        for q in -4..5 {
            assert_eq!(m.component(&MayaZ::lambda(q)).unwrap(), 0);
        }
        assert_eq!(m.eps_hat(0, false).unwrap(), 1);
        assert_eq!(m.eps_hat_from_component(0).unwrap(), 1);
        assert_eq!(m.eps_hat(1, false).unwrap(), 0);
        assert_eq!(m.eps_hat(2, false).unwrap(), 0);
        assert_eq!(m.weight_hat(), vec![-1, 0, 0]);
        let back = m.apply_hat(0, Kind::E).unwrap().unwrap();
        assert!(back.is_o_star());
        let m2 = m.apply_hat(1, Kind::F).unwrap().unwrap();
        assert_eq!(m2.weight_hat(), vec![-1, -1, 0]);
    }

    #[test]
    fn embedding_examples() {
        let o = AffineBz::o_star(3).unwrap();
        let e = psi_star_embed(&o, 1).unwrap();
        assert!(e.left.is_o_star());
        assert_eq!(e.right.n, 0);
        let m = o.apply_hat(0, Kind::F).unwrap().unwrap();
        let e = psi_star_embed(&m, 0).unwrap();
        assert!(e.left.is_o_star());
        assert_eq!(e.right, ElementaryB { l: 3, p: 0, n: -1 });
    }

    #[test]
    fn ext_int_order() {
        assert!(ExtInt::NegInf < ExtInt::Fin(i64::MIN));
        assert_eq!(ExtInt::NegInf.sub(5), ExtInt::NegInf);
        assert_eq!(ExtInt::Fin(2).sub(5), ExtInt::Fin(-3));
    }

    #[test]
    fn json_round_trip() {
        let m = AffineBz::from_word(4, &[(Kind::FStar, 0), (Kind::F, 3)]).unwrap().unwrap();
        let back = AffineBz::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.word(), m.word());
        assert!(AffineBz::from_json(&serde_json::json!({"l": 3, "word": [["e", 0]]})).is_err());
    }
}
