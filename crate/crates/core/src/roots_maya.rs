//! Intervals, finite and infinite Maya diagrams, and the affine root datum.
//!
//! A finite Maya diagram is a subset of the augmented interval
//! `Ĩ = [n+1, n+m+1]`, stored as a bitmask whose bit `j` stands for the
//! element `n+1+j`. An infinite Maya diagram is `Z_{<=b} ∪ upper`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `m` for which Maya diagrams of `[n+1, n+m]` fit a `u64` mask.
pub const MAX_MASK_M: usize = 62;

/// The interval `I = [n+1, n+m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub n: i64,
    pub m: usize,
}

impl Interval {
    pub fn new(n: i64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyInterval(m));
        }
        Ok(Interval { n, m })
    }

    /// First element of `I`.
    pub fn first(&self) -> i64 {
        self.n + 1
    }

    /// Last element of `I`.
    pub fn last(&self) -> i64 {
        self.n + self.m as i64
    }

    /// Last element of the augmented interval.
    pub fn top(&self) -> i64 {
        self.n + self.m as i64 + 1
    }

    /// Cardinality of the augmented interval.
    pub fn width(&self) -> usize {
        self.m + 1
    }

    pub fn contains(&self, i: i64) -> bool {
        i >= self.first() && i <= self.last()
    }

    pub fn contains_aug(&self, x: i64) -> bool {
        x >= self.first() && x <= self.top()
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.first()..=self.last()
    }

    pub fn aug_indices(&self) -> std::ops::RangeInclusive<i64> {
        self.first()..=self.top()
    }

    /// Whether `other` is a subinterval of `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        other.first() >= self.first() && other.last() <= self.last()
    }

    pub fn check_index(&self, i: i64) -> Result<()> {
        if self.contains(i) {
            Ok(())
        } else {
            Err(Error::OutOfRange { index: i, what: self.to_string() })
        }
    }

    pub(crate) fn check_mask_width(&self) -> Result<()> {
        if self.m > MAX_MASK_M {
            Err(Error::TooWide { m: self.m, max: MAX_MASK_M })
        } else {
            Ok(())
        }
    }

    /// Mask of the full augmented interval.
    pub fn full_mask(&self) -> u64 {
        if self.width() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.width()) - 1
        }
    }

    /// Mask of `{x}`, or 0 when `x` is outside `Ĩ`.
    pub fn bit(&self, x: i64) -> u64 {
        if self.contains_aug(x) {
            1u64 << (x - self.first())
        } else {
            0
        }
    }

    /// Mask of `[a, b] ∩ Ĩ`.
    pub fn range_mask(&self, a: i64, b: i64) -> u64 {
        let a = a.max(self.first());
        let b = b.min(self.top());
        if a > b {
            return 0;
        }
        let len = (b - a + 1) as u32;
        let low = if len >= 64 { u64::MAX } else { (1u64 << len) - 1 };
        low << (a - self.first())
    }

    /// Mask of the prefix `[n+1, b]`.
    pub fn prefix(&self, b: i64) -> u64 {
        self.range_mask(self.first(), b)
    }

    /// Mask of the suffix `[a, n+m+1]`.
    pub fn suffix(&self, a: i64) -> u64 {
        self.range_mask(a, self.top())
    }

    /// Elements of a mask, increasing.
    pub fn elems(&self, mask: u64) -> Vec<i64> {
        let mut out = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            let j = rest.trailing_zeros() as i64;
            out.push(self.first() + j);
            rest &= rest - 1;
        }
        out
    }

    pub fn mask_of(&self, elems: &[i64]) -> Result<u64> {
        self.check_mask_width()?;
        let mut mask = 0u64;
        for w in elems.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotIncreasing(elems.to_vec()));
            }
        }
        for &x in elems {
            if !self.contains_aug(x) {
                return Err(Error::OutOfRange { index: x, what: format!("augmented {}", self) });
            }
            mask |= self.bit(x);
        }
        Ok(mask)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.first(), self.last())
    }
}

/// A subset of the augmented interval `Ĩ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MayaFin {
    pub interval: Interval,
    pub bits: u64,
}

impl MayaFin {
    pub fn new(interval: Interval, elems: &[i64]) -> Result<Self> {
        let bits = interval.mask_of(elems)?;
        Ok(MayaFin { interval, bits })
    }

    pub fn from_mask(interval: Interval, bits: u64) -> Self {
        debug_assert_eq!(bits & !interval.full_mask(), 0);
        MayaFin { interval, bits }
    }

    pub fn elems(&self) -> Vec<i64> {
        self.interval.elems(self.bits)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: i64) -> bool {
        self.bits & self.interval.bit(x) != 0
    }

    /// Empty and full diagrams carry the value 0 by convention.
    pub fn is_degenerate(&self) -> bool {
        self.bits == 0 || self.bits == self.interval.full_mask()
    }

    /// The diagram with `q` and `q+1` exchanged.
    pub fn transpose(&self, q: i64) -> Result<MayaFin> {
        if !self.interval.contains(q) {
            return Err(Error::OutOfRange { index: q, what: self.interval.to_string() });
        }
        Ok(MayaFin { interval: self.interval, bits: transpose_mask(&self.interval, self.bits, q) })
    }

    pub fn complement(&self) -> MayaFin {
        MayaFin { interval: self.interval, bits: self.interval.full_mask() & !self.bits }
    }
}

impl fmt::Display for MayaFin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, x) in self.elems().iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, "}}")
    }
}

/// `σ_q` on a mask: exchange membership of `q` and `q+1`.
pub fn transpose_mask(interval: &Interval, mask: u64, q: i64) -> u64 {
    let a = interval.bit(q);
    let b = interval.bit(q + 1);
    let has_a = mask & a != 0;
    let has_b = mask & b != 0;
    if has_a == has_b {
        mask
    } else {
        mask ^ (a | b)
    }
}

/// `⟨h_i, k⟩` for a finite diagram given as a mask.
pub fn pairing_mask(interval: &Interval, mask: u64, i: i64) -> i64 {
    let a = mask & interval.bit(i) != 0;
    let b = mask & interval.bit(i + 1) != 0;
    match (a, b) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// `⟨h_i, k⟩ ∈ {-1, 0, 1}` for `i ∈ I`.
pub fn pairing_fin(i: i64, k: &MayaFin) -> Result<i64> {
    k.interval.check_index(i)?;
    Ok(pairing_mask(&k.interval, k.bits, i))
}

/// A Maya diagram `Z_{<=base} ∪ upper` of the integers, or its complement
/// when `co` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MayaZ {
    pub base: i64,
    pub upper: Vec<i64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub co: bool,
}

impl MayaZ {
    /// Builds `Z_{<=base} ∪ upper` in canonical form. Elements of `upper`
    /// may be in any order; those `<= base` are absorbed.
    pub fn new(base: i64, upper: &[i64]) -> MayaZ {
        let mut up: Vec<i64> = upper.iter().copied().filter(|&x| x > base).collect();
        up.sort_unstable();
        up.dedup();
        let mut k = MayaZ { base, upper: up, co: false };
        k.canonicalize();
        k
    }

    /// `k(Λ_r) = Z_{<=r}`.
    pub fn lambda(r: i64) -> MayaZ {
        MayaZ { base: r, upper: Vec::new(), co: false }
    }

    /// `k(σ_p Λ_p) = Z_{<=p-1} ∪ {p+1}`.
    pub fn sigma_lambda(p: i64) -> MayaZ {
        MayaZ { base: p - 1, upper: vec![p + 1], co: false }
    }

    fn canonicalize(&mut self) {
        let mut drop = 0;
        while drop < self.upper.len() && self.upper[drop] == self.base + 1 {
            self.base += 1;
            drop += 1;
        }
        self.upper.drain(..drop);
    }

    /// Membership in the underlying set (taking `co` into account).
    pub fn contains(&self, x: i64) -> bool {
        let inside = x <= self.base || self.upper.binary_search(&x).is_ok();
        inside != self.co
    }

    /// `base + |upper|`; for a co-diagram, the charge of its complement.
    pub fn charge(&self) -> i64 {
        self.base + self.upper.len() as i64
    }

    /// `⟨h_q, k⟩` with the same case split as the finite pairing.
    pub fn pairing(&self, q: i64) -> i64 {
        match (self.contains(q), self.contains(q + 1)) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }

    /// `σ_q k`: exchange membership of `q` and `q+1`.
    pub fn transpose(&self, q: i64) -> MayaZ {
        let a = self.contains(q) != self.co;
        let b = self.contains(q + 1) != self.co;
        if a == b {
            return self.clone();
        }
        // Work on the underlying (non-co) set.
        let mut set = self.clone();
        set.co = false;
        let (add, remove) = if a { (q + 1, q) } else { (q, q + 1) };
        let mut out = if remove <= set.base {
            // remove lies in the base half-line: base must be exactly q here
            debug_assert_eq!(remove, set.base);
            let mut up = set.upper.clone();
            up.push(add);
            MayaZ::new(set.base - 1, &up)
        } else {
            let up: Vec<i64> =
                set.upper.iter().copied().filter(|&x| x != remove).chain(std::iter::once(add)).collect();
            MayaZ::new(set.base, &up)
        };
        out.co = self.co;
        out
    }

    pub fn complement(&self) -> MayaZ {
        MayaZ { base: self.base, upper: self.upper.clone(), co: !self.co }
    }

    /// Shift every element by `t`.
    pub fn shift(&self, t: i64) -> MayaZ {
        MayaZ { base: self.base + t, upper: self.upper.iter().map(|x| x + t).collect(), co: self.co }
    }

    /// Whether `k ∈ M_Z(I)`: `k = Z_{<=n} ∪ k_I` with `k_I` nonempty proper in `Ĩ`.
    pub fn in_window(&self, interval: &Interval) -> bool {
        if self.co || self.base < interval.n {
            return false;
        }
        let top = self.upper.last().copied().unwrap_or(self.base);
        // base + 1 is missing from k, so k ∩ Ĩ is proper iff base < top(Ĩ).
        let nonempty = self.base > interval.n || !self.upper.is_empty();
        top <= interval.top() && self.base < interval.top() && nonempty
    }
}

impl fmt::Display for MayaZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.co {
            write!(f, "co(")?;
        }
        write!(f, "Z<={}", self.base)?;
        if !self.upper.is_empty() {
            write!(f, "∪{:?}", self.upper)?;
        }
        if self.co {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `(res_I(k), Ω_I(k))` for `k ∈ M_Z(I)`.
pub fn res_and_omega(interval: &Interval, k: &MayaZ) -> Result<(MayaFin, MayaZ)> {
    interval.check_mask_width()?;
    if !k.in_window(interval) {
        return Err(Error::NotInWindow { n: interval.n });
    }
    let res = restrict_to(interval, k);
    let omega_mask = interval.full_mask() & !res.bits;
    Ok((res, lift(interval, omega_mask)))
}

/// `k ∩ Ĩ` as a finite diagram; `k` must satisfy `k ⊇ Z_{<=n}`.
pub fn restrict_to(interval: &Interval, k: &MayaZ) -> MayaFin {
    let mut bits = interval.prefix(k.base);
    for &x in &k.upper {
        bits |= interval.bit(x);
    }
    MayaFin::from_mask(*interval, bits)
}

/// `Z_{<=n} ∪ y` for a mask `y` of `Ĩ`.
pub fn lift(interval: &Interval, mask: u64) -> MayaZ {
    MayaZ::new(interval.n, &interval.elems(mask))
}

/// Affine Cartan datum of type `A_{l-1}^{(1)}`; weights are coefficient
/// vectors over the simple roots `α̂_0, …, α̂_{l-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineRootData {
    pub l: usize,
}

impl AffineRootData {
    pub fn new(l: usize) -> Result<Self> {
        if l < 3 {
            return Err(Error::RankTooSmall(l));
        }
        Ok(AffineRootData { l })
    }

    pub fn residue(&self, q: i64) -> usize {
        q.rem_euclid(self.l as i64) as usize
    }

    pub fn cartan(&self, p: usize, q: usize) -> i64 {
        let d = (p as i64 - q as i64).rem_euclid(self.l as i64);
        if d == 0 {
            2
        } else if d == 1 || d == self.l as i64 - 1 {
            -1
        } else {
            0
        }
    }

    /// `⟨ĥ_p, wt⟩`.
    pub fn pair(&self, p: usize, wt: &[i64]) -> i64 {
        (0..self.l).map(|q| self.cartan(p, q) * wt[q]).sum()
    }

    /// `α̂_p` as a coefficient vector.
    pub fn simple_root(&self, p: usize) -> Vec<i64> {
        let mut v = vec![0; self.l];
        v[p] = 1;
        v
    }

    /// `δ = Σ α̂_p`.
    pub fn delta(&self) -> Vec<i64> {
        vec![1; self.l]
    }

    pub fn in_negative_cone(&self, wt: &[i64]) -> bool {
        wt.iter().all(|&c| c <= 0)
    }
}

/// Height of an element of `Q^-` (or `Q^+`): sum of absolute coefficients.
pub fn height(wt: &[i64]) -> i64 {
    wt.iter().map(|c| c.abs()).sum()
}

/// `⟨h_i, wt⟩_I` for a finite weight given as coefficients over `α_i`,
/// indexed by `i - n - 1`.
pub fn finite_pair(wt: &[i64], idx: usize) -> i64 {
    let left = if idx > 0 { wt[idx - 1] } else { 0 };
    let right = wt.get(idx + 1).copied().unwrap_or(0);
    2 * wt[idx] - left - right
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i12() -> Interval {
        Interval::new(0, 2).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let k = MayaFin::new(i12(), &[1, 3]).unwrap();
        assert_eq!(pairing_fin(1, &k).unwrap(), 1);
        assert_eq!(pairing_fin(2, &k).unwrap(), -1);
        let k = MayaFin::new(i12(), &[1, 2]).unwrap();
        assert_eq!(pairing_fin(1, &k).unwrap(), 0);
        assert!(pairing_fin(3, &k).is_err());
    }

    #[test]
    fn transpose_examples() {
        let k = MayaFin::new(i12(), &[1, 3]).unwrap();
        assert_eq!(k.transpose(1).unwrap().elems(), vec![2, 3]);
        let k = MayaFin::new(i12(), &[1, 2]).unwrap();
        assert_eq!(k.transpose(1).unwrap(), k);
        let z = MayaZ::new(0, &[2]);
        assert_eq!(z.transpose(1), MayaZ::lambda(1));
        assert_eq!(MayaZ::lambda(1).transpose(1), z);
    }

    #[test]
    fn complement_examples() {
        let k = MayaFin::new(i12(), &[2]).unwrap();
        assert_eq!(k.complement().elems(), vec![1, 3]);
        let z = MayaZ::lambda(4);
        let c = z.complement();
        assert!(!c.contains(4) && c.contains(5) && c.contains(100));
        assert_eq!(c.complement(), z);
    }

    #[test]
    fn res_omega_examples() {
        let (res, om) = res_and_omega(&i12(), &MayaZ::new(0, &[2])).unwrap();
        assert_eq!(res.elems(), vec![2]);
        assert_eq!(om, MayaZ::new(0, &[1, 3]));
        let (res, om) = res_and_omega(&i12(), &MayaZ::lambda(1)).unwrap();
        assert_eq!(res.elems(), vec![1]);
        assert_eq!(om, MayaZ::new(0, &[2, 3]));
        assert!(res_and_omega(&i12(), &MayaZ::lambda(-1)).is_err());
        assert!(res_and_omega(&i12(), &MayaZ::lambda(0)).is_err());
        assert!(res_and_omega(&i12(), &MayaZ::lambda(3)).is_err());
    }

    #[test]
    fn charge_examples() {
        assert_eq!(MayaZ::lambda(5).charge(), 5);
        assert_eq!(MayaZ::new(0, &[2, 4]).charge(), 2);
        assert_eq!(MayaZ::new(0, &[1, 4]), MayaZ::new(1, &[4]));
    }

    #[test]
    fn cartan_entries() {
        let r = AffineRootData::new(3).unwrap();
        assert_eq!(r.cartan(0, 0), 2);
        assert_eq!(r.cartan(0, 2), -1);
        assert_eq!(r.cartan(1, 2), -1);
        let r = AffineRootData::new(5).unwrap();
        assert_eq!(r.cartan(0, 2), 0);
        assert_eq!(r.cartan(0, 4), -1);
        assert!(AffineRootData::new(2).is_err());
    }
}
