//! Crystal graphs: breadth-first construction, weight census, the Kostant
//! count for affine type A, isomorphism checks along given maps, and export.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bz_affine::{AffineBz, AffineKey};
use crate::bz_fin::BzDatum;
use crate::error::{Error, Result};
use crate::kind::Kind;
use crate::lusztig::LusztigDatum;
use crate::roots_maya::{finite_pair, AffineRootData, Interval};

/// An element of a crystal carrying an ordinary and a starred structure.
pub trait CrystalElement: Clone + Send + Sync {
    type Key: Ord + Clone + Hash + Debug + Send + Sync + Serialize;

    fn key(&self) -> Self::Key;
    fn colors(&self) -> Vec<i64>;
    /// Weight coefficients over the simple roots, ordered as `colors`.
    fn weight(&self) -> Vec<i64>;
    fn apply(&self, color: i64, kind: Kind) -> Result<Option<Self>>;
    fn eps(&self, color: i64, starred: bool) -> Result<i64>;
    /// `⟨h, wt⟩` for the given color.
    fn pair(&self, color: i64) -> i64;

    fn phi(&self, color: i64, starred: bool) -> Result<i64> {
        Ok(self.eps(color, starred)? + self.pair(color))
    }
}

impl CrystalElement for LusztigDatum {
    type Key = Vec<(i64, i64, i64)>;

    fn key(&self) -> Self::Key {
        self.entries()
    }
    fn colors(&self) -> Vec<i64> {
        self.interval().indices().collect()
    }
    fn weight(&self) -> Vec<i64> {
        LusztigDatum::weight(self)
    }
    fn apply(&self, color: i64, kind: Kind) -> Result<Option<Self>> {
        self.kashiwara(color, kind)
    }
    fn eps(&self, color: i64, starred: bool) -> Result<i64> {
        if starred {
            self.eps_star(color)
        } else {
            LusztigDatum::eps(self, color)
        }
    }
    fn pair(&self, color: i64) -> i64 {
        self.pair_h(color)
    }
}

impl CrystalElement for BzDatum {
    type Key = Vec<i64>;

    fn key(&self) -> Self::Key {
        self.raw().to_vec()
    }
    fn colors(&self) -> Vec<i64> {
        self.interval().indices().collect()
    }
    fn weight(&self) -> Vec<i64> {
        BzDatum::weight(self)
    }
    fn apply(&self, color: i64, kind: Kind) -> Result<Option<Self>> {
        self.kashiwara(color, kind)
    }
    fn eps(&self, color: i64, starred: bool) -> Result<i64> {
        if starred {
            self.eps_star(color)
        } else {
            BzDatum::eps(self, color)
        }
    }
    fn pair(&self, color: i64) -> i64 {
        let idx = (color - self.interval().first()) as usize;
        finite_pair(&BzDatum::weight(self), idx)
    }
}

impl CrystalElement for AffineBz {
    type Key = AffineKey;

    fn key(&self) -> Self::Key {
        AffineBz::key(self)
    }
    fn colors(&self) -> Vec<i64> {
        (0..self.l() as i64).collect()
    }
    fn weight(&self) -> Vec<i64> {
        self.weight_hat()
    }
    fn apply(&self, color: i64, kind: Kind) -> Result<Option<Self>> {
        self.apply_hat(color as usize, kind)
    }
    fn eps(&self, color: i64, starred: bool) -> Result<i64> {
        self.eps_hat(color as usize, starred)
    }
    fn pair(&self, color: i64) -> i64 {
        self.pair_hat(color as usize)
    }
}

#[derive(Clone, Debug)]
pub struct GraphNode<E> {
    pub element: E,
    pub depth: usize,
    pub weight: Vec<i64>,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
}

/// Closure of a root under the lowering operators of one structure.
#[derive(Clone, Debug)]
pub struct CrystalGraph<E: CrystalElement> {
    pub starred: bool,
    pub colors: Vec<i64>,
    pub root: E::Key,
    pub nodes: BTreeMap<E::Key, GraphNode<E>>,
    /// `(source, color, target)` for each lowering edge.
    pub edges: BTreeSet<(E::Key, i64, E::Key)>,
    pub depth: usize,
    /// False when the node budget stopped the search early.
    pub complete: bool,
}

fn node_of<E: CrystalElement>(e: E, depth: usize, starred: bool) -> Result<GraphNode<E>> {
    let colors = e.colors();
    let mut eps = Vec::with_capacity(colors.len());
    let mut phi = Vec::with_capacity(colors.len());
    for &c in &colors {
        eps.push(e.eps(c, starred)?);
        phi.push(e.phi(c, starred)?);
    }
    Ok(GraphNode { weight: e.weight(), element: e, depth, eps, phi })
}

/// Breadth-first closure of `root` under `f̃_i` (or `f̃*_i` when `starred`)
/// up to `depth` steps. Children of one level may be computed in parallel;
/// they are merged in key order, so the result does not depend on it.
pub fn bfs<E: CrystalElement>(
    root: &E,
    starred: bool,
    depth: usize,
    budget: Option<usize>,
    parallel: bool,
) -> Result<CrystalGraph<E>> {
    let lower = if starred { Kind::FStar } else { Kind::F };
    let colors = root.colors();
    let mut g = CrystalGraph {
        starred,
        colors: colors.clone(),
        root: root.key(),
        nodes: BTreeMap::new(),
        edges: BTreeSet::new(),
        depth,
        complete: true,
    };
    g.nodes.insert(root.key(), node_of(root.clone(), 0, starred)?);
    let mut frontier: Vec<E::Key> = vec![root.key()];
    for level in 1..=depth {
        let parents: Vec<&E> = frontier.iter().map(|k| &g.nodes[k].element).collect();
        let expand = |e: &&E| -> Result<Vec<(i64, E)>> {
            let mut out = Vec::new();
            for &c in &colors {
                if let Some(child) = e.apply(c, lower)? {
                    out.push((c, child));
                }
            }
            Ok(out)
        };
        let children: Vec<Result<Vec<(i64, E)>>> =
            if parallel { parents.par_iter().map(expand).collect() } else { parents.iter().map(expand).collect() };
        let mut next = Vec::new();
        let mut fresh: BTreeMap<E::Key, E> = BTreeMap::new();
        let mut new_edges = Vec::new();
        for (src, kids) in frontier.iter().zip(children) {
            for (c, child) in kids? {
                let key = child.key();
                new_edges.push((src.clone(), c, key.clone()));
                if !g.nodes.contains_key(&key) {
                    fresh.entry(key).or_insert(child);
                }
            }
        }
        g.edges.extend(new_edges);
        for (key, child) in fresh {
            if let Some(b) = budget {
                if g.nodes.len() >= b {
                    g.complete = false;
                    g.edges.retain(|(_, _, t)| g.nodes.contains_key(t));
                    return Ok(g);
                }
            }
            g.nodes.insert(key.clone(), node_of(child, level, starred)?);
            next.push(key);
        }
        frontier = next;
    }
    Ok(g)
}

impl<E: CrystalElement> CrystalGraph<E> {
    /// Structural checks: every node is reached, `ε` grows by one along
    /// each edge, and an edge leaves each non-frontier node exactly for the
    /// colors whose operator is defined.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut incoming: HashMap<&E::Key, usize> = HashMap::new();
        for (s, c, t) in &self.edges {
            *incoming.entry(t).or_default() += 1;
            let idx = self.colors.iter().position(|x| x == c).expect("known color");
            let (src, tgt) = (&self.nodes[s], &self.nodes[t]);
            if tgt.eps[idx] != src.eps[idx] + 1 {
                out.push(format!("eps_{} does not grow along edge {:?} -> {:?}", c, s, t));
            }
            if tgt.phi[idx] != src.phi[idx] - 1 {
                out.push(format!("phi_{} does not drop along edge {:?} -> {:?}", c, s, t));
            }
        }
        for (k, n) in &self.nodes {
            if *k != self.root && incoming.get(k).copied().unwrap_or(0) == 0 {
                out.push(format!("node {:?} has no incoming edge", k));
            }
            if n.depth < self.depth {
                let outs = self.edges.range((k.clone(), i64::MIN, k.clone())..).take_while(|(s, _, _)| s == k).count();
                if outs != self.colors.len() {
                    out.push(format!("node {:?} has {} outgoing edges, expected {}", k, outs, self.colors.len()));
                }
            }
        }
        out
    }

    pub fn census(&self) -> WeightCensus {
        let mut out = WeightCensus::new();
        for n in self.nodes.values() {
            *out.entry(n.weight.clone()).or_default() += 1;
        }
        out
    }
}

/// Number of nodes at each weight.
pub type WeightCensus = BTreeMap<Vec<i64>, u64>;

/// Positive roots of `A_{l-1}^{(1)}` of height at most `max_height`, each
/// imaginary root `kδ` repeated `l-1` times.
pub fn affine_positive_roots(l: usize, max_height: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for len in 1..=max_height {
        if len % l == 0 {
            for _ in 0..l - 1 {
                out.push(vec![(len / l) as i64; l]);
            }
            continue;
        }
        for start in 0..l {
            let mut v = vec![0i64; l];
            for t in 0..len {
                v[(start + t) % l] += 1;
            }
            out.push(v);
        }
    }
    out
}

/// Largest height accepted by the Kostant count.
pub const KOSTANT_MAX_HEIGHT: usize = 12;

/// Counts of multisets of positive roots summing to each `β` of height at
/// most `max_height`, keyed by the weight `-β`.
pub fn kostant_table(l: usize, max_height: usize) -> Result<WeightCensus> {
    AffineRootData::new(l)?;
    if max_height > KOSTANT_MAX_HEIGHT {
        return Err(Error::OutOfRange { index: max_height as i64, what: format!("heights up to {}", KOSTANT_MAX_HEIGHT) });
    }
    // All vectors of height <= max_height, by increasing height.
    let mut vecs: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..l {
        vecs = vecs
            .into_iter()
            .flat_map(|v| {
                let used: i64 = v.iter().sum();
                (0..=(max_height as i64 - used)).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    vecs.sort_by_key(|v| v.iter().sum::<i64>());
    let mut table: HashMap<Vec<i64>, u64> = vecs.iter().map(|v| (v.clone(), 0)).collect();
    table.insert(vec![0; l], 1);
    // Unbounded knapsack: each root may be used any number of times.
    for root in affine_positive_roots(l, max_height) {
        for v in &vecs {
            let rest: Vec<i64> = v.iter().zip(&root).map(|(a, b)| a - b).collect();
            if rest.iter().all(|&x| x >= 0) {
                let add = table[&rest];
                *table.get_mut(v).expect("present") += add;
            }
        }
    }
    Ok(table.into_iter().map(|(k, v)| (k.iter().map(|x| -x).collect(), v)).collect())
}

/// Kostant count at one weight of `Q^-`.
pub fn kostant_affine(l: usize, weight: &[i64]) -> Result<u64> {
    if weight.len() != l || weight.iter().any(|&c| c > 0) {
        return Err(Error::Invalid(format!("{:?} is not an element of Q^- for l = {}", weight, l)));
    }
    let h = -weight.iter().sum::<i64>() as usize;
    Ok(kostant_table(l, h)?.get(weight).copied().unwrap_or(0))
}

/// Number of Lusztig data of each weight up to the given height, by direct
/// enumeration of the entries.
pub fn lusztig_count_table(interval: Interval, max_height: i64) -> WeightCensus {
    let roots: Vec<(i64, i64)> =
        interval.aug_indices().flat_map(|i| ((i + 1)..=interval.top()).map(move |j| (i, j))).collect();
    let mut out = WeightCensus::new();
    let mut wt = vec![0i64; interval.m];
    fn go(roots: &[(i64, i64)], idx: usize, left: i64, wt: &mut Vec<i64>, first: i64, out: &mut WeightCensus) {
        if idx == roots.len() {
            *out.entry(wt.clone()).or_default() += 1;
            return;
        }
        let (i, j) = roots[idx];
        let h = j - i;
        let mut mult = 0;
        while mult * h <= left {
            for x in i..j {
                wt[(x - first) as usize] -= mult;
            }
            go(roots, idx + 1, left - mult * h, wt, first, out);
            for x in i..j {
                wt[(x - first) as usize] += mult;
            }
            mult += 1;
        }
    }
    go(&roots, 0, max_height, &mut wt, interval.first(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub weight: Vec<i64>,
    pub found: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub max_height: i64,
    pub rows: Vec<CensusRow>,
    pub mismatches: Vec<CensusRow>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares counts at every weight of height at most `max_height`.
pub fn census_compare(found: &WeightCensus, expected: &WeightCensus, max_height: i64) -> CensusReport {
    let weights: BTreeSet<&Vec<i64>> = found.keys().chain(expected.keys()).collect();
    let mut rows = Vec::new();
    for w in weights {
        if -w.iter().sum::<i64>() > max_height {
            continue;
        }
        rows.push(CensusRow {
            weight: w.clone(),
            found: found.get(w).copied().unwrap_or(0),
            expected: expected.get(w).copied().unwrap_or(0),
        });
    }
    let mismatches = rows.iter().filter(|r| r.found != r.expected).cloned().collect();
    CensusReport { max_height, rows, mismatches }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub nodes_checked: usize,
    pub edges_checked: usize,
    pub failure: Option<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `map` sends the nodes of `a` onto the nodes of `b`,
/// preserves weights, `ε` and `φ`, and carries every colored edge of `a` to
/// an edge of `b`, with equal edge counts.
pub fn iso_check<A: CrystalElement, B: CrystalElement>(
    a: &CrystalGraph<A>,
    b: &CrystalGraph<B>,
    map: impl Fn(&A) -> Result<B>,
) -> Result<IsoReport> {
    let mut rep = IsoReport { nodes_checked: 0, edges_checked: 0, failure: None };
    if a.colors != b.colors {
        rep.failure = Some(format!("color sets differ: {:?} vs {:?}", a.colors, b.colors));
        return Ok(rep);
    }
    if a.nodes.len() != b.nodes.len() || a.edges.len() != b.edges.len() {
        rep.failure = Some(format!(
            "sizes differ: {} nodes / {} edges vs {} nodes / {} edges",
            a.nodes.len(),
            a.edges.len(),
            b.nodes.len(),
            b.edges.len()
        ));
        return Ok(rep);
    }
    let mut image: BTreeMap<&A::Key, B::Key> = BTreeMap::new();
    for (k, n) in &a.nodes {
        let mapped = map(&n.element)?;
        let mk = mapped.key();
        rep.nodes_checked += 1;
        let Some(target) = b.nodes.get(&mk) else {
            rep.failure = Some(format!("image of {:?} is not a node", k));
            return Ok(rep);
        };
        if target.weight != n.weight || target.eps != n.eps || target.phi != n.phi {
            rep.failure = Some(format!("node {:?}: weight or eps/phi not preserved", k));
            return Ok(rep);
        }
        image.insert(k, mk);
    }
    if image[&a.root] != b.root {
        rep.failure = Some("root is not sent to root".into());
        return Ok(rep);
    }
    for (s, c, t) in &a.edges {
        rep.edges_checked += 1;
        let e = (image[s].clone(), *c, image[t].clone());
        if !b.edges.contains(&e) {
            rep.failure = Some(format!("edge {:?} -{}-> {:?} is not carried over", s, c, t));
            return Ok(rep);
        }
    }
    Ok(rep)
}

/// Serialized graph; node ids follow key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub starred: bool,
    pub depth: usize,
    pub complete: bool,
    pub colors: Vec<i64>,
    pub root: usize,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<(usize, i64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: usize,
    pub key: serde_json::Value,
    pub weight: Vec<i64>,
    pub depth: usize,
}

impl<E: CrystalElement> CrystalGraph<E> {
    fn ids(&self) -> BTreeMap<&E::Key, usize> {
        self.nodes.keys().enumerate().map(|(i, k)| (k, i)).collect()
    }

    pub fn to_json_value(&self) -> GraphJson {
        let ids = self.ids();
        GraphJson {
            starred: self.starred,
            depth: self.depth,
            complete: self.complete,
            colors: self.colors.clone(),
            root: ids[&self.root],
            nodes: self
                .nodes
                .iter()
                .map(|(k, n)| NodeJson {
                    id: ids[k],
                    key: serde_json::to_value(k).expect("serializable key"),
                    weight: n.weight.clone(),
                    depth: n.depth,
                })
                .collect(),
            edges: self.edges.iter().map(|(s, c, t)| (ids[s], *c, ids[t])).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        graph_json_to_string(&self.to_json_value())
    }

    pub fn to_dot(&self) -> String {
        graph_json_to_dot(&self.to_json_value())
    }
}

pub fn graph_json_to_string(g: &GraphJson) -> String {
    let mut s = serde_json::to_string_pretty(g).expect("serializable graph");
    s.push('\n');
    s
}

pub fn parse_graph_json(text: &str) -> Result<GraphJson> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn graph_json_to_dot(g: &GraphJson) -> String {
    let mut s = String::from("digraph crystal {\n");
    for n in &g.nodes {
        let label: Vec<String> = n.weight.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("  n{} [label=\"{}\"];\n", n.id, label.join(",")));
    }
    for (a, c, b) in &g.edges {
        s.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", a, b, c));
    }
    s.push_str("}\n");
    s
}
