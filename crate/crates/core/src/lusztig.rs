//! Lusztig data: nonnegative integers `a_{i,j}` indexed by pairs
//! `n+1 <= i < j <= n+m+1`, with the ordinary and the star crystal
//! structures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::roots_maya::Interval;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LusztigDatum {
    interval: Interval,
    // Row-major over the strict upper triangle of Ĩ × Ĩ, see `slot`.
    a: Vec<i64>,
}

/// Scalars of a Lusztig datum for one index `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMeta {
    pub i: i64,
    pub eps: i64,
    pub phi: i64,
    pub eps_star: i64,
    pub phi_star: i64,
}

/// Weight and per-index scalars.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalMeta {
    /// Coefficients of `α_i` for `i ∈ I`, increasing `i`.
    pub wt: Vec<i64>,
    pub per_index: Vec<IndexMeta>,
}

#[derive(Serialize, Deserialize)]
struct LusztigJson {
    interval: Interval,
    a: Vec<(i64, i64, i64)>,
}

fn slot(interval: &Interval, i: i64, j: i64) -> usize {
    let x = (i - interval.first()) as usize;
    let y = (j - interval.first()) as usize;
    y * (y - 1) / 2 + x
}

impl LusztigDatum {
    pub fn zero(interval: Interval) -> Self {
        let w = interval.width();
        LusztigDatum { interval, a: vec![0; w * (w - 1) / 2] }
    }

    /// Builds a datum from `(i, j, value)` triples; absent pairs are 0.
    pub fn from_entries(interval: Interval, entries: &[(i64, i64, i64)]) -> Result<Self> {
        let mut out = LusztigDatum::zero(interval);
        for &(i, j, v) in entries {
            if !(interval.contains_aug(i) && interval.contains_aug(j) && i < j) {
                return Err(Error::OutOfRange {
                    index: if interval.contains_aug(i) { j } else { i },
                    what: format!("positive roots of {}", interval),
                });
            }
            if v < 0 {
                return Err(Error::NegativeEntry { i, j, value: v });
            }
            let s = slot(&interval, i, j);
            out.a[s] = v;
        }
        Ok(out)
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// `a_{i,j}`, or 0 outside the positive roots (the boundary conventions).
    pub fn get(&self, i: i64, j: i64) -> i64 {
        if i < j && i >= self.interval.first() && j <= self.interval.top() {
            self.a[slot(&self.interval, i, j)]
        } else {
            0
        }
    }

    fn bump(&mut self, i: i64, j: i64, d: i64) {
        let s = slot(&self.interval, i, j);
        self.a[s] += d;
        assert!(self.a[s] >= 0, "Kashiwara operator produced a negative entry at ({},{})", i, j);
    }

    /// Nonzero entries as `(i, j, value)`, lexicographic in `(i, j)`.
    pub fn entries(&self) -> Vec<(i64, i64, i64)> {
        let mut out = Vec::new();
        for i in self.interval.aug_indices() {
            for j in (i + 1)..=self.interval.top() {
                let v = self.get(i, j);
                if v != 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&v| v == 0)
    }

    /// `r_i = Σ_{k<=i} Σ_{l>=i+1} a_{k,l}`.
    pub fn r(&self, i: i64) -> i64 {
        let mut s = 0;
        for k in self.interval.first()..=i {
            for l in (i + 1)..=self.interval.top() {
                s += self.get(k, l);
            }
        }
        s
    }

    /// Coefficients of `wt(a) = -Σ r_i α_i`.
    pub fn weight(&self) -> Vec<i64> {
        self.interval.indices().map(|i| -self.r(i)).collect()
    }

    /// `⟨h_i, wt(a)⟩`.
    pub fn pair_h(&self, i: i64) -> i64 {
        let r = |x: i64| if self.interval.contains(x) { self.r(x) } else { 0 };
        -(2 * r(i) - r(i - 1) - r(i + 1))
    }

    /// Partial sums `A^{(i)}_k` for `k = n+1, …, i`.
    pub fn a_sums(&self, i: i64) -> Vec<i64> {
        let mut acc = 0;
        let mut out = Vec::with_capacity((i - self.interval.n) as usize);
        for k in self.interval.first()..=i {
            acc += self.get(k, i + 1) - self.get(k - 1, i);
            out.push(acc);
        }
        out
    }

    /// Partial sums `A*^{(i)}_l` for `l = i, …, n+m`.
    pub fn a_star_sums(&self, i: i64) -> Vec<i64> {
        let top = self.interval.top();
        let len = (top - i) as usize;
        let mut out = vec![0; len];
        // Suffix sums from t = top downwards.
        let mut acc = 0;
        for l in (i..top).rev() {
            let t = l + 1;
            acc += self.get(i, t) - self.get(i + 1, t + 1);
            out[(l - i) as usize] = acc;
        }
        out
    }

    pub fn eps(&self, i: i64) -> Result<i64> {
        self.interval.check_index(i)?;
        Ok(*self.a_sums(i).iter().max().expect("nonempty range"))
    }

    pub fn eps_star(&self, i: i64) -> Result<i64> {
        self.interval.check_index(i)?;
        Ok(*self.a_star_sums(i).iter().max().expect("nonempty range"))
    }

    pub fn phi(&self, i: i64) -> Result<i64> {
        Ok(self.eps(i)? + self.pair_h(i))
    }

    pub fn phi_star(&self, i: i64) -> Result<i64> {
        Ok(self.eps_star(i)? + self.pair_h(i))
    }

    pub fn meta(&self) -> CrystalMeta {
        let per_index = self
            .interval
            .indices()
            .map(|i| {
                let h = self.pair_h(i);
                let eps = self.eps(i).unwrap();
                let eps_star = self.eps_star(i).unwrap();
                IndexMeta { i, eps, phi: eps + h, eps_star, phi_star: eps_star + h }
            })
            .collect();
        CrystalMeta { wt: self.weight(), per_index }
    }

    /// Applies `ẽ_i`, `f̃_i`, `ẽ*_i` or `f̃*_i`; raising operators return
    /// `None` when the corresponding `ε` vanishes.
    pub fn kashiwara(&self, i: i64, kind: Kind) -> Result<Option<LusztigDatum>> {
        self.interval.check_index(i)?;
        Ok(self.kashiwara_unchecked(i, kind))
    }

    pub(crate) fn kashiwara_unchecked(&self, i: i64, kind: Kind) -> Option<LusztigDatum> {
        let n1 = self.interval.first();
        match kind {
            Kind::E | Kind::F => {
                let sums = self.a_sums(i);
                let best = *sums.iter().max().unwrap();
                let mut out = self.clone();
                if kind == Kind::E {
                    if best <= 0 {
                        return None;
                    }
                    let ke = n1 + sums.iter().position(|&v| v == best).unwrap() as i64;
                    if ke < i {
                        out.bump(ke, i, 1);
                    }
                    out.bump(ke, i + 1, -1);
                } else {
                    let kf = n1 + sums.iter().rposition(|&v| v == best).unwrap() as i64;
                    if kf < i {
                        out.bump(kf, i, -1);
                    }
                    out.bump(kf, i + 1, 1);
                }
                Some(out)
            }
            Kind::EStar | Kind::FStar => {
                let sums = self.a_star_sums(i);
                let best = *sums.iter().max().unwrap();
                let mut out = self.clone();
                if kind == Kind::EStar {
                    if best <= 0 {
                        return None;
                    }
                    let le = i + sums.iter().rposition(|&v| v == best).unwrap() as i64;
                    out.bump(i, le + 1, -1);
                    if le > i {
                        out.bump(i + 1, le + 1, 1);
                    }
                } else {
                    let lf = i + sums.iter().position(|&v| v == best).unwrap() as i64;
                    out.bump(i, lf + 1, 1);
                    if lf > i {
                        out.bump(i + 1, lf + 1, -1);
                    }
                }
                Some(out)
            }
        }
    }

    /// The datum restricted to the pairs inside `sub`, whose augmented
    /// interval must lie inside this one.
    pub fn truncate(&self, sub: Interval) -> LusztigDatum {
        debug_assert!(sub.first() >= self.interval.first() && sub.top() <= self.interval.top());
        let mut out = LusztigDatum::zero(sub);
        for j in sub.aug_indices() {
            for i in sub.first()..j {
                let v = self.get(i, j);
                if v != 0 {
                    let s = slot(&sub, i, j);
                    out.a[s] = v;
                }
            }
        }
        out
    }

    /// `{"interval": {"n", "m"}, "a": [[i, j, value], …]}` with the nonzero entries.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LusztigJson { interval: self.interval, a: self.entries() }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: LusztigJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let interval = Interval::new(raw.interval.n, raw.interval.m)?;
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j, _) in &raw.a {
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("entry ({},{}) given twice", i, j)));
            }
        }
        LusztigDatum::from_entries(interval, &raw.a)
    }

    /// Largest `j - i` over nonzero entries, 0 for the zero datum.
    pub fn band(&self) -> i64 {
        self.entries().iter().map(|&(i, j, _)| j - i).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i12() -> Interval {
        Interval::new(0, 2).unwrap()
    }

    fn sample() -> LusztigDatum {
        LusztigDatum::from_entries(i12(), &[(1, 2, 1), (1, 3, 0), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(sample().weight(), vec![-1, -1]);
        assert_eq!(LusztigDatum::zero(i12()).weight(), vec![0, 0]);
        let a = LusztigDatum::from_entries(i12(), &[(1, 3, 1)]).unwrap();
        assert_eq!(a.weight(), vec![-1, -1]);
    }

    #[test]
    fn eps_examples() {
        let a = sample();
        assert_eq!(a.a_sums(2), vec![0, 0]);
        assert_eq!(a.eps(2).unwrap(), 0);
        assert_eq!(a.a_star_sums(2), vec![1]);
        assert_eq!(a.eps_star(2).unwrap(), 1);
        let z = LusztigDatum::zero(i12());
        for i in 1..=2 {
            assert_eq!(z.eps(i).unwrap(), 0);
            assert_eq!(z.eps_star(i).unwrap(), 0);
        }
        assert!(a.eps(3).is_err());
    }

    #[test]
    fn kashiwara_examples() {
        let a = sample();
        let f = a.kashiwara(2, Kind::FStar).unwrap().unwrap();
        assert_eq!(f.entries(), vec![(1, 2, 1), (2, 3, 2)]);
        let e = a.kashiwara(2, Kind::EStar).unwrap().unwrap();
        assert_eq!(e.entries(), vec![(1, 2, 1)]);
        assert_eq!(e.kashiwara(2, Kind::FStar).unwrap().unwrap(), a);
        let z = LusztigDatum::zero(i12());
        assert_eq!(z.kashiwara(1, Kind::E).unwrap(), None);
        assert_eq!(z.kashiwara(1, Kind::EStar).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let a = sample();
        assert_eq!(LusztigDatum::from_json(&a.to_json()).unwrap(), a);
        let bad = serde_json::json!({"interval": {"n": 0, "m": 2}, "a": [[1, 2, -1]]});
        assert!(LusztigDatum::from_json(&bad).is_err());
    }

    #[test]
    fn phi_identity() {
        let a = sample();
        for m in a.meta().per_index {
            assert_eq!(m.phi - m.eps, m.phi_star - m.eps_star);
        }
    }
}
