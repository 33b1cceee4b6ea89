//! Stage 1: spanning trees.
//!
//! [`prim_mst`] and [`kruskal_mst`] solve the single-criterion problem for an
//! arbitrary per-edge weight. [`multicriteria_prim`] grows a tree by the
//! smallest quadratic utility of the frontier edges, where the utility of an
//! edge is `sum_k w_k * g_k^2` over its min-max normalized attributes (QoS
//! flipped when maximized). [`weight_sweep`] enumerates the weight vectors
//! for which multicriteria trees are built.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Criterion, DisjointSets, EdgeAttr, EdgeKey, Network, Sense, SenseVector};

/// Nonnegative weights over `(L, C, Q, Delta)` summing to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct WeightVector([f64; 4]);

impl WeightVector {
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(w: [f64; 4]) -> Result<Self> {
        if w.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::domain(format!("weights must be finite and >= 0: {w:?}")));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::domain(format!("weights sum to {sum}, expected 1")));
        }
        Ok(WeightVector(w))
    }

    /// All weight on one criterion.
    pub fn corner(c: Criterion) -> Self {
        let mut w = [0.0; 4];
        w[c.index()] = 1.0;
        WeightVector(w)
    }

    pub fn uniform() -> Self {
        WeightVector([0.25; 4])
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    pub fn get(&self, c: Criterion) -> f64 {
        self.0[c.index()]
    }
}

impl TryFrom<[f64; 4]> for WeightVector {
    type Error = Error;

    fn try_from(w: [f64; 4]) -> Result<Self> {
        WeightVector::new(w)
    }
}

impl From<WeightVector> for [f64; 4] {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

/// All simplex points `(a, b, c, d) / g` with integer `a + b + c + d = g`,
/// `C(g + 3, 3)` vectors in total. `g = 0` is treated as `g = 1`.
///
/// Order is lexicographically descending in `(a, b, c)`, so `g = 1` yields
/// the corners for L, C, Q, Delta in that order.
pub fn weight_sweep(granularity: usize) -> Vec<WeightVector> {
    let g = granularity.max(1);
    let gf = g as f64;
    let mut out = Vec::with_capacity((g + 1) * (g + 2) * (g + 3) / 6);
    for a in (0..=g).rev() {
        for b in (0..=g - a).rev() {
            for c in (0..=g - a - b).rev() {
                let d = g - a - b - c;
                out.push(WeightVector([
                    a as f64 / gf,
                    b as f64 / gf,
                    c as f64 / gf,
                    d as f64 / gf,
                ]));
            }
        }
    }
    out
}

/// Per-attribute `[min, max]` over the candidate edges of a network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub min: [f64; 4],
    pub max: [f64; 4],
}

impl NormalizationBounds {
    pub fn over(net: &Network) -> Self {
        Self::over_attrs(net.edges().iter().map(|e| e.attr))
    }

    pub fn over_attrs(attrs: impl IntoIterator<Item = EdgeAttr>) -> Self {
        let mut min = [f64::INFINITY; 4];
        let mut max = [f64::NEG_INFINITY; 4];
        let mut any = false;
        for a in attrs {
            any = true;
            for c in Criterion::ALL {
                let v = a.get(c);
                min[c.index()] = min[c.index()].min(v);
                max[c.index()] = max[c.index()].max(v);
            }
        }
        if !any {
            return NormalizationBounds {
                min: [0.0; 4],
                max: [0.0; 4],
            };
        }
        NormalizationBounds { min, max }
    }

    /// `(v - min) / (max - min)`, or 0 when the range is degenerate.
    pub fn normalize(&self, c: Criterion, v: f64) -> f64 {
        let (lo, hi) = (self.min[c.index()], self.max[c.index()]);
        if hi > lo {
            (v - lo) / (hi - lo)
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarizationConfig {
    pub weights: WeightVector,
    pub senses: SenseVector,
    pub bounds: NormalizationBounds,
}

impl ScalarizationConfig {
    pub fn for_network(net: &Network, weights: WeightVector, senses: SenseVector) -> Self {
        ScalarizationConfig {
            weights,
            senses,
            bounds: NormalizationBounds::over(net),
        }
    }
}

/// `sum_k w_k * g_k^2` where `g_k` is the normalized attribute, flipped to
/// `1 - g_k` for maximized criteria. Lies in `[0, 1]`; 0 is the ideal edge.
pub fn quadratic_utility(attr: &EdgeAttr, cfg: &ScalarizationConfig) -> f64 {
    Criterion::ALL
        .iter()
        .map(|&c| {
            let w = cfg.weights.get(c);
            if w == 0.0 {
                return 0.0;
            }
            let lo = cfg.bounds.min[c.index()];
            let hi = cfg.bounds.max[c.index()];
            if hi <= lo {
                return 0.0;
            }
            let n = cfg.bounds.normalize(c, attr.get(c));
            let g = match cfg.senses.get(c) {
                Sense::Minimize => n,
                Sense::Maximize => 1.0 - n,
            };
            w * g * g
        })
        .sum()
}

/// Weight function for the single-criterion tree of `c`: the raw attribute,
/// negated when the criterion is maximized.
pub fn criterion_weight(c: Criterion, sense: Sense) -> impl Fn(&EdgeAttr) -> f64 {
    move |a| sense.oriented(a.get(c))
}

/// Where multicriteria Prim starts growing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootStrategy {
    /// Grow one tree from the lowest node id.
    #[default]
    Single,
    /// Grow a forest from this many roots spread evenly over the sorted
    /// ids, then join the trees by the cheapest connecting edges.
    Multi(usize),
}

// Heap entry ordered by (weight, lo, hi); wrapped in Reverse for a min-heap.
#[derive(Debug, Clone, Copy)]
struct Frontier {
    weight: f64,
    key: EdgeKey,
    to: usize,
}

impl PartialEq for Frontier {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for Frontier {}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Frontier {
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight
            .total_cmp(&o.weight)
            .then(self.key.cmp(&o.key))
            .then(self.to.cmp(&o.to))
    }
}

fn check_weights(weights: &[f64], net: &Network) -> Result<()> {
    if let Some(i) = weights.iter().position(|w| w.is_nan()) {
        return Err(Error::domain(format!(
            "edge {} has a NaN weight",
            net.edges()[i].key
        )));
    }
    Ok(())
}

/// Prim from `roots`, returning the tree edges of the grown forest.
fn grow_forest(net: &Network, weights: &[f64], roots: &[usize]) -> Vec<EdgeKey> {
    let n = net.node_count();
    let mut in_tree = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut out = Vec::with_capacity(n.saturating_sub(1));

    let push_frontier = |v: usize, heap: &mut BinaryHeap<Reverse<Frontier>>, in_tree: &[bool]| {
        for &(w, e) in net.neighbors(v) {
            if !in_tree[w] {
                heap.push(Reverse(Frontier {
                    weight: weights[e],
                    key: net.edges()[e].key,
                    to: w,
                }));
            }
        }
    };

    for &r in roots {
        if !in_tree[r] {
            in_tree[r] = true;
            push_frontier(r, &mut heap, &in_tree);
        }
    }
    while let Some(Reverse(f)) = heap.pop() {
        if in_tree[f.to] {
            continue;
        }
        in_tree[f.to] = true;
        out.push(f.key);
        push_frontier(f.to, &mut heap, &in_tree);
    }
    out
}

fn lowest_id_index(net: &Network) -> Option<usize> {
    net.nodes()
        .iter()
        .enumerate()
        .min_by_key(|(_, n)| n.id)
        .map(|(i, _)| i)
}

fn prim_with_weights(net: &Network, weights: &[f64], roots: RootStrategy) -> Result<Vec<EdgeKey>> {
    check_weights(weights, net)?;
    net.ensure_connected()?;
    let Some(first) = lowest_id_index(net) else {
        return Ok(Vec::new());
    };
    let mut tree = match roots {
        RootStrategy::Single | RootStrategy::Multi(0 | 1) => grow_forest(net, weights, &[first]),
        RootStrategy::Multi(r) => {
            let mut ids = net.terminal_ids();
            if ids.is_empty() {
                ids = net.nodes().iter().map(|n| n.id).collect();
                ids.sort_unstable();
            }
            let r = r.min(ids.len());
            let starts: Vec<usize> = (0..r)
                .map(|i| net.index_of(ids[i * ids.len() / r]).expect("id exists"))
                .collect();
            let forest = grow_forest(net, weights, &starts);
            join_forest(net, weights, forest)
        }
    };
    tree.sort_unstable();
    Ok(tree)
}

/// Completes a forest into a spanning tree with the cheapest joining edges.
fn join_forest(net: &Network, weights: &[f64], forest: Vec<EdgeKey>) -> Vec<EdgeKey> {
    let mut dsu = DisjointSets::new(net.node_count());
    for k in &forest {
        dsu.union(net.index_of(k.lo).unwrap(), net.index_of(k.hi).unwrap());
    }
    let mut order: Vec<usize> = (0..net.edges().len()).collect();
    order.sort_by(|&a, &b| {
        weights[a]
            .total_cmp(&weights[b])
            .then(net.edges()[a].key.cmp(&net.edges()[b].key))
    });
    let mut tree = forest;
    for e in order {
        let k = net.edges()[e].key;
        if dsu.union(net.index_of(k.lo).unwrap(), net.index_of(k.hi).unwrap()) {
            tree.push(k);
        }
    }
    tree
}

/// Minimum spanning tree under `weight` by Prim's algorithm, rooted at the
/// lowest node id. Ties are broken by edge key. Returned edges are sorted.
pub fn prim_mst<F: Fn(&EdgeAttr) -> f64>(net: &Network, weight: F) -> Result<Vec<EdgeKey>> {
    let weights: Vec<f64> = net.edges().iter().map(|e| weight(&e.attr)).collect();
    prim_with_weights(net, &weights, RootStrategy::Single)
}

/// Minimum spanning tree under `weight` by Kruskal's algorithm.
pub fn kruskal_mst<F: Fn(&EdgeAttr) -> f64>(net: &Network, weight: F) -> Result<Vec<EdgeKey>> {
    let weights: Vec<f64> = net.edges().iter().map(|e| weight(&e.attr)).collect();
    check_weights(&weights, net)?;
    net.ensure_connected()?;
    let mut tree = join_forest(net, &weights, Vec::new());
    tree.sort_unstable();
    Ok(tree)
}

/// Multicriteria spanning tree: Prim's growth ordered by
/// [`quadratic_utility`], ties broken by edge key.
pub fn multicriteria_prim(net: &Network, cfg: &ScalarizationConfig) -> Result<Vec<EdgeKey>> {
    multicriteria_prim_with(net, cfg, RootStrategy::Single)
}

pub fn multicriteria_prim_with(
    net: &Network,
    cfg: &ScalarizationConfig,
    roots: RootStrategy,
) -> Result<Vec<EdgeKey>> {
    let weights: Vec<f64> = net
        .edges()
        .iter()
        .map(|e| quadratic_utility(&e.attr, cfg))
        .collect();
    prim_with_weights(net, &weights, roots)
}

/// Sum of per-edge utilities over a tree.
pub fn scalarized_total(net: &Network, tree: &[EdgeKey], cfg: &ScalarizationConfig) -> Result<f64> {
    tree.iter().try_fold(0.0, |acc, k| {
        let e = net
            .edge(*k)
            .ok_or_else(|| Error::domain(format!("edge {k} is not in the network")))?;
        Ok(acc + quadratic_utility(&e.attr, cfg))
    })
}

/// Total of one weight function over a tree.
pub fn tree_weight<F: Fn(&EdgeAttr) -> f64>(net: &Network, tree: &[EdgeKey], weight: F) -> f64 {
    tree.iter()
        .filter_map(|k| net.edge(*k))
        .map(|e| weight(&e.attr))
        .sum()
}
