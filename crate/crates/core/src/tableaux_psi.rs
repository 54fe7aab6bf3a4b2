//! k-tableaux and the map `Ψ_I` from Lusztig data to e-BZ data.
//!
//! `m_component` evaluates the tropical minimum column by column; the naive
//! enumeration and the two reduced forms are kept as independent routes.

use std::collections::HashMap;

use crate::bz_fin::{BzDatum, Norm};
use crate::error::{Error, Result};
use crate::lusztig::LusztigDatum;
use crate::roots_maya::{Interval, MayaFin};

/// An upper-triangular matrix `(c_{p,q})` with `c_{p,p} = k_p`, weakly
/// increasing rows and strictly increasing columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KTableau {
    pub k: MayaFin,
    // rows[p][q - p] = c_{p,q}, both indices counted from 0.
    rows: Vec<Vec<i64>>,
}

impl KTableau {
    /// Number of elements `u` of `k`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// `c_{p,q}` indexed by `n+1 <= p <= q <= n+u`.
    pub fn entry(&self, p: i64, q: i64) -> i64 {
        let n1 = self.k.interval.first();
        let (p, q) = ((p - n1) as usize, (q - n1) as usize);
        self.rows[p][q - p]
    }

    fn at0(&self, p: usize, q: usize) -> i64 {
        self.rows[p][q - p]
    }

    /// Checks the diagonal and monotonicity conditions.
    pub fn is_valid(&self) -> bool {
        let ks = self.k.elems();
        let u = ks.len();
        if self.rows.len() != u {
            return false;
        }
        for p in 0..u {
            if self.rows[p].len() != u - p || self.at0(p, p) != ks[p] {
                return false;
            }
            for q in p..u {
                if q + 1 < u && self.at0(p, q) > self.at0(p, q + 1) {
                    return false;
                }
                if p + 1 <= q && self.at0(p, q) >= self.at0(p + 1, q) {
                    return false;
                }
            }
        }
        true
    }

    /// `Σ_{p<q} a_{c_{p,q}, c_{p,q}+(q-p)}`.
    pub fn weight_sum(&self, a: &LusztigDatum) -> i64 {
        let u = self.size();
        let mut s = 0;
        for p in 0..u {
            for q in (p + 1)..u {
                let c = self.at0(p, q);
                s += a.get(c, c + (q - p) as i64);
            }
        }
        s
    }
}

/// Calls `f` on every k-tableau, columns filled left to right and each
/// column in lexicographic order.
pub fn for_each_tableau(k: &MayaFin, mut f: impl FnMut(&KTableau)) {
    let ks = k.elems();
    let u = ks.len();
    if u == 0 {
        return;
    }
    let mut t = KTableau { k: *k, rows: (0..u).map(|p| vec![0; u - p]).collect() };
    for p in 0..u {
        t.rows[p][0] = ks[p];
    }
    fill_column(&ks, &mut t, 1, 0, &mut f);
}

// Fills column q from row p downward; column q-1 is complete.
fn fill_column(ks: &[i64], t: &mut KTableau, q: usize, p: usize, f: &mut impl FnMut(&KTableau)) {
    let u = ks.len();
    if q == u {
        f(t);
        return;
    }
    if p == q {
        fill_column(ks, t, q + 1, 0, f);
        return;
    }
    let lo = if p > 0 { t.at0(p - 1, q) + 1 } else { i64::MIN }.max(t.at0(p, q - 1));
    let hi = ks[q] - (q - p) as i64;
    for v in lo..=hi {
        t.rows[p][q - p] = v;
        fill_column(ks, t, q, p + 1, f);
    }
}

pub fn enumerate_tableaux(k: &MayaFin) -> Vec<KTableau> {
    let mut out = Vec::new();
    for_each_tableau(k, |t| out.push(t.clone()));
    out
}

/// `-Σ_j Σ_{i<k_j} a_{i,k_j}` over the elements `k_j` of `k`.
fn column_penalty(a: &LusztigDatum, ks: &[i64]) -> i64 {
    let n1 = a.interval().first();
    ks.iter().map(|&kj| -(n1..kj).map(|i| a.get(i, kj)).sum::<i64>()).sum()
}

fn check_key(a: &LusztigDatum, k: &MayaFin) -> Result<()> {
    if k.interval != a.interval() {
        return Err(Error::Invalid(format!("diagram over {} used with datum over {}", k.interval, a.interval())));
    }
    if k.is_degenerate() {
        return Err(Error::Invalid("degenerate diagram has no tableau formula".into()));
    }
    Ok(())
}

/// `M_k(a)` by enumerating every k-tableau.
pub fn m_component_naive(a: &LusztigDatum, k: &MayaFin) -> Result<i64> {
    check_key(a, k)?;
    let mut best = i64::MAX;
    for_each_tableau(k, |t| best = best.min(t.weight_sum(a)));
    Ok(column_penalty(a, &k.elems()) + best)
}

/// `M_k(a)` by dynamic programming over tableau columns.
///
/// The state of column `q` is `(c_{0,q}, …, c_{q-1,q})`. Given column
/// `q`, the admissible previous columns are exactly the valid states
/// dominated by it, so the recursion only needs the dominance-closed
/// minimum `G` of the previous column.
pub fn m_component(a: &LusztigDatum, k: &MayaFin) -> Result<i64> {
    check_key(a, k)?;
    let ks = k.elems();
    Ok(column_penalty(a, &ks) + tableau_min(a, &ks))
}

fn tableau_min(a: &LusztigDatum, ks: &[i64]) -> i64 {
    let u = ks.len();
    if u <= 1 {
        return 0;
    }
    // G of column 0 (no free entries) is 0 on the empty state.
    let mut prev: HashMap<Vec<i64>, i64> = HashMap::new();
    prev.insert(Vec::new(), 0);
    for q in 1..u {
        let lower: Vec<i64> = ks[..q].to_vec();
        let upper: Vec<i64> = (0..q).map(|p| ks[q] - (q - p) as i64).collect();
        let prev_upper: Vec<i64> = (0..q - 1).map(|p| ks[q - 1] - (q - 1 - p) as i64).collect();
        let mut g: HashMap<Vec<i64>, i64> = HashMap::new();
        let mut state = Vec::with_capacity(q);
        walk_states(&lower, &upper, &mut state, &mut |v: &[i64]| {
            let cost: i64 = (0..q).map(|p| a.get(v[p], v[p] + (q - p) as i64)).sum();
            let clipped: Vec<i64> = (0..q - 1).map(|p| v[p].min(prev_upper[p])).collect();
            let mut best = cost + prev[&clipped];
            let mut x = v.to_vec();
            for p in 0..q {
                let down = x[p] - 1;
                if down >= lower[p] && (p == 0 || down > x[p - 1]) {
                    x[p] = down;
                    best = best.min(g[&x]);
                    x[p] = down + 1;
                }
            }
            g.insert(v.to_vec(), best);
        });
        prev = g;
    }
    prev[&(0..u - 1).map(|p| ks[u - 1] - (u - 1 - p) as i64).collect::<Vec<_>>()]
}

// Strictly increasing vectors with lower[p] <= v[p] <= upper[p], lex order.
fn walk_states(lower: &[i64], upper: &[i64], state: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    let p = state.len();
    if p == lower.len() {
        f(state);
        return;
    }
    let lo = if p > 0 { lower[p].max(state[p - 1] + 1) } else { lower[p] };
    for v in lo..=upper[p] {
        state.push(v);
        walk_states(lower, upper, state, f);
        state.pop();
    }
}

/// The reduced form for diagrams starting with `[n+1, s]`; `None` when
/// `k` does not start that way. Only entries `a_{i,j}` with `j >= s+1`
/// are read.
pub fn m_component_prefix_form(a: &LusztigDatum, k: &MayaFin, s: i64) -> Result<Option<i64>> {
    check_key(a, k)?;
    let iv = a.interval();
    let ks = k.elems();
    let n1 = iv.first();
    let lead = (s - iv.n).max(0) as usize;
    if lead > ks.len() || (0..lead).any(|x| ks[x] != n1 + x as i64) {
        return Ok(None);
    }
    let read = |i: i64, j: i64| if j >= s + 1 { a.get(i, j) } else { 0 };
    let penalty: i64 = ks[lead..].iter().map(|&kj| -(n1..kj).map(|i| read(i, kj)).sum::<i64>()).sum();
    let mut best = i64::MAX;
    for_each_tableau(k, |t| {
        let mut sum = 0;
        for q in lead..ks.len() {
            for p in 0..q {
                let c = t.at0(p, q);
                sum += read(c, c + (q - p) as i64);
            }
        }
        best = best.min(sum);
    });
    Ok(Some(penalty + best))
}

/// The reduced form for diagrams ending with `[t+1, n+m+1]`; `None` when
/// `k` does not end that way. Only entries `a_{i,j}` with `i <= t` are read.
pub fn m_component_suffix_form(a: &LusztigDatum, k: &MayaFin, t: i64) -> Result<Option<i64>> {
    check_key(a, k)?;
    let iv = a.interval();
    let ks = k.elems();
    let u = ks.len();
    let n1 = iv.first();
    let tail = (iv.top() - t).max(0) as usize;
    if tail > u || (0..tail).any(|x| ks[u - 1 - x] != iv.top() - x as i64) {
        return Ok(None);
    }
    let head = u - tail;
    let read = |i: i64, j: i64| if i <= t { a.get(i, j) } else { 0 };
    let mut penalty: i64 = ks[..head].iter().map(|&kj| -(n1..kj).map(|i| read(i, kj)).sum::<i64>()).sum();
    for &kj in &ks[head..] {
        penalty -= (n1..=t).map(|i| read(i, kj)).sum::<i64>();
    }
    let mut best = i64::MAX;
    for_each_tableau(k, |tab| {
        let mut sum = 0;
        for p in 0..head {
            for q in (p + 1)..u {
                let c = tab.at0(p, q);
                sum += read(c, c + (q - p) as i64);
            }
        }
        best = best.min(sum);
    });
    Ok(Some(penalty + best))
}

/// `Ψ_I(a)`.
pub fn psi(a: &LusztigDatum) -> Result<BzDatum> {
    let iv = a.interval();
    BzDatum::from_fn(iv, Norm::E, |mask| tableau_value(a, iv, mask))
}

/// `Ψ_I(a)` through `m_component_naive`.
pub fn psi_naive(a: &LusztigDatum) -> Result<BzDatum> {
    let iv = a.interval();
    BzDatum::from_fn(iv, Norm::E, |mask| {
        m_component_naive(a, &MayaFin::from_mask(iv, mask)).expect("proper diagram")
    })
}

fn tableau_value(a: &LusztigDatum, iv: Interval, mask: u64) -> i64 {
    let ks = iv.elems(mask);
    column_penalty(a, &ks) + tableau_min(a, &ks)
}

/// `N_{[i,j]} + N_{[i+1,j-1]} - N_{[i+1,j]} - N_{[i,j-1]}`, with empty and
/// full intervals read as 0.
pub fn chamber(d: &BzDatum, i: i64, j: i64) -> i64 {
    let iv = d.interval();
    let at = |x: i64, y: i64| if x > y { 0 } else { d.at(iv.range_mask(x, y)) };
    at(i, j) + at(i + 1, j - 1) - at(i + 1, j) - at(i, j - 1)
}

fn chamber_datum(d: &BzDatum) -> std::result::Result<LusztigDatum, (i64, i64, i64)> {
    let iv = d.interval();
    let mut entries = Vec::new();
    for i in iv.aug_indices() {
        for j in (i + 1)..=iv.top() {
            let v = chamber(d, i, j);
            if v < 0 {
                return Err((i, j, v));
            }
            entries.push((i, j, v));
        }
    }
    Ok(LusztigDatum::from_entries(iv, &entries).expect("entries in range and nonnegative"))
}

/// Inverse of `Ψ_I`: the chamber ansatz applied to the interval components
/// of `M`. The input must be a valid e-BZ datum.
pub fn psi_inverse(m: &BzDatum) -> Result<LusztigDatum> {
    if m.norm() != Norm::E {
        return Err(Error::WrongNormalization { expected: "e" });
    }
    let report = m.verify();
    if let Some(v) = report.violations.first() {
        return Err(Error::Invalid(format!(
            "{} fails at indices {:?} over {:?} ({} vs {})",
            v.condition, v.indices, v.base, v.lhs, v.rhs
        )));
    }
    let a = chamber_datum(m).map_err(|(i, j, value)| Error::NegativeEntry { i, j, value })?;
    debug_assert_eq!(psi(&a).as_ref(), Ok(m), "chamber ansatz did not invert psi");
    Ok(a)
}

/// The chamber ansatz applied to `M♯`: the coordinates of `M` read through
/// the star crystal structure.
pub fn star_coordinates(m: &BzDatum) -> Result<LusztigDatum> {
    let sh = m.sharp()?;
    chamber_datum(&sh).map_err(|(i, j, value)| Error::NegativeEntry { i, j, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i12() -> Interval {
        Interval::new(0, 2).unwrap()
    }

    fn sample() -> LusztigDatum {
        LusztigDatum::from_entries(i12(), &[(1, 2, 1), (2, 3, 1)]).unwrap()
    }

    #[test]
    fn tableau_listing() {
        let k13 = MayaFin::new(i12(), &[1, 3]).unwrap();
        let ts = enumerate_tableaux(&k13);
        let tops: Vec<i64> = ts.iter().map(|t| t.entry(1, 2)).collect();
        assert_eq!(tops, vec![1, 2]);
        assert!(ts.iter().all(|t| t.is_valid()));
        let k23 = MayaFin::new(i12(), &[2, 3]).unwrap();
        let ts = enumerate_tableaux(&k23);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].entry(1, 2), 2);
        for x in 1..=3 {
            assert_eq!(enumerate_tableaux(&MayaFin::new(i12(), &[x]).unwrap()).len(), 1);
        }
    }

    #[test]
    fn components_of_sample() {
        let a = sample();
        let want = [(vec![1], 0), (vec![2], -1), (vec![3], -1), (vec![1, 2], 0), (vec![1, 3], 0), (vec![2, 3], -1)];
        for (k, v) in want {
            let k = MayaFin::new(i12(), &k).unwrap();
            assert_eq!(m_component_naive(&a, &k).unwrap(), v);
            assert_eq!(m_component(&a, &k).unwrap(), v);
        }
    }

    #[test]
    fn zero_datum_gives_zero() {
        let iv = Interval::new(0, 4).unwrap();
        let m = psi(&LusztigDatum::zero(iv)).unwrap();
        assert!(m.raw().iter().all(|&v| v == 0));
        assert_eq!(psi_inverse(&m).unwrap(), LusztigDatum::zero(iv));
    }

    #[test]
    fn round_trip_sample() {
        let m = psi(&sample()).unwrap();
        assert!(m.verify().is_valid());
        assert_eq!(psi_inverse(&m).unwrap(), sample());
        let star = star_coordinates(&m).unwrap();
        assert_eq!(star.entries(), vec![(1, 3, 1)]);
    }

    #[test]
    fn reduced_forms_on_sample() {
        let a = sample();
        let k = MayaFin::new(i12(), &[1, 3]).unwrap();
        assert_eq!(m_component_prefix_form(&a, &k, 1).unwrap(), Some(0));
        assert_eq!(m_component_prefix_form(&a, &k, 2).unwrap(), None);
        assert_eq!(m_component_suffix_form(&a, &k, 2).unwrap(), Some(0));
        assert_eq!(m_component_suffix_form(&a, &k, 1).unwrap(), None);
    }
}
