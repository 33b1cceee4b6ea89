//! Stations, links and the objective vector of a topology.
//!
//! Every link carries four attributes derived from its endpoints: planar
//! length, QoS (mean of the endpoint ratings), altitude gap and cost
//! `alpha * gap^3 + beta * qos`. A topology is scored by summing each
//! attribute over its edges.

mod instance;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use instance::{Instance, InstanceNode};

/// Relative tolerance for stored-vs-recomputed attribute checks.
pub const ATTR_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Terminal,
    Steiner,
}

/// A station. `z` is its altitude in meters, `s` its QoS rating.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub s: f64,
    pub kind: NodeKind,
}

impl Node {
    pub fn terminal(id: usize, x: f64, y: f64, z: f64, s: f64) -> Self {
        Node {
            id,
            x,
            y,
            z,
            s,
            kind: NodeKind::Terminal,
        }
    }

    pub fn steiner(id: usize, at: Point, z: f64, s: f64) -> Self {
        Node {
            id,
            x: at.x,
            y: at.y,
            z,
            s,
            kind: NodeKind::Steiner,
        }
    }

    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }

    pub fn is_terminal(&self) -> bool {
        self.kind == NodeKind::Terminal
    }
}

/// Planar (xy) distance between two stations.
pub fn edge_length(a: &Node, b: &Node) -> f64 {
    a.point().dist(b.point())
}

pub fn edge_altitude_gap(a: &Node, b: &Node) -> f64 {
    (a.z - b.z).abs()
}

pub fn edge_qos(a: &Node, b: &Node) -> f64 {
    (a.s + b.s) / 2.0
}

/// Link cost `alpha * delta^3 + beta * q`.
pub fn edge_cost(delta: f64, q: f64, alpha: f64, beta: f64) -> Result<f64> {
    for (name, v) in [("delta", delta), ("q", q), ("alpha", alpha), ("beta", beta)] {
        if v.is_nan() || v < 0.0 {
            return Err(Error::domain(format!("edge_cost: {name} = {v} must be >= 0")));
        }
    }
    Ok(alpha * delta.powi(3) + beta * q)
}

/// Coefficients of the link cost function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            alpha: 0.001,
            beta: 1.0,
        }
    }
}

impl CostModel {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite() && beta >= 0.0 && beta.is_finite()) {
            return Err(Error::domain(format!(
                "cost coefficients must be finite and >= 0 (alpha = {alpha}, beta = {beta})"
            )));
        }
        Ok(CostModel { alpha, beta })
    }
}

/// The attribute bundle of one link.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeAttr {
    pub length: f64,
    pub qos: f64,
    pub altitude_gap: f64,
    pub cost: f64,
}

impl EdgeAttr {
    pub fn between(a: &Node, b: &Node, cost: CostModel) -> Self {
        let length = edge_length(a, b);
        let qos = edge_qos(a, b);
        let altitude_gap = edge_altitude_gap(a, b);
        let cost = cost.alpha * altitude_gap.powi(3) + cost.beta * qos;
        EdgeAttr {
            length,
            qos,
            altitude_gap,
            cost,
        }
    }

    pub fn get(&self, c: Criterion) -> f64 {
        match c {
            Criterion::Length => self.length,
            Criterion::Cost => self.cost,
            Criterion::Qos => self.qos,
            Criterion::Altitude => self.altitude_gap,
        }
    }
}

/// One of the four objectives, in canonical order `(L, C, Q, Delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    Length,
    Cost,
    Qos,
    Altitude,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Length,
        Criterion::Cost,
        Criterion::Qos,
        Criterion::Altitude,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// Maps a value so that smaller is always better.
    pub fn oriented(self, v: f64) -> f64 {
        match self {
            Sense::Minimize => v,
            Sense::Maximize => -v,
        }
    }
}

/// Optimization sense per criterion, indexed like [`Criterion::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SenseVector(pub [Sense; 4]);

impl Default for SenseVector {
    /// Minimize length, cost and altitude gap; maximize QoS.
    fn default() -> Self {
        SenseVector([
            Sense::Minimize,
            Sense::Minimize,
            Sense::Maximize,
            Sense::Minimize,
        ])
    }
}

impl SenseVector {
    pub fn all_minimize() -> Self {
        SenseVector([Sense::Minimize; 4])
    }

    pub fn with_qos(qos: Sense) -> Self {
        let mut s = SenseVector::default();
        s.0[Criterion::Qos.index()] = qos;
        s
    }

    pub fn get(&self, c: Criterion) -> Sense {
        self.0[c.index()]
    }
}

/// Totals `(L, C, Q, Delta)` of a topology.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub length: f64,
    pub cost: f64,
    pub qos: f64,
    pub altitude: f64,
}

impl ObjectiveVector {
    pub fn new(length: f64, cost: f64, qos: f64, altitude: f64) -> Self {
        ObjectiveVector {
            length,
            cost,
            qos,
            altitude,
        }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.length, self.cost, self.qos, self.altitude]
    }

    pub fn get(&self, c: Criterion) -> f64 {
        self.to_array()[c.index()]
    }

    /// Largest component-wise relative difference, with absolute fallback
    /// near zero.
    pub fn max_rel_diff(&self, other: &ObjectiveVector) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
            .fold(0.0, f64::max)
    }
}

impl From<EdgeAttr> for ObjectiveVector {
    fn from(a: EdgeAttr) -> Self {
        ObjectiveVector::new(a.length, a.cost, a.qos, a.altitude_gap)
    }
}

impl Add for ObjectiveVector {
    type Output = ObjectiveVector;

    fn add(self, o: ObjectiveVector) -> ObjectiveVector {
        ObjectiveVector::new(
            self.length + o.length,
            self.cost + o.cost,
            self.qos + o.qos,
            self.altitude + o.altitude,
        )
    }
}

impl AddAssign for ObjectiveVector {
    fn add_assign(&mut self, o: ObjectiveVector) {
        *self = *self + o;
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(L={:.4}, C={:.4}, Q={:.4}, Delta={:.4})",
            self.length, self.cost, self.qos, self.altitude
        )
    }
}

/// An unordered node pair, stored as `(lo, hi)` ids. Ordering is by
/// `(lo, hi)`, which is the tie-break order used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct EdgeKey {
    pub lo: usize,
    pub hi: usize,
}

impl EdgeKey {
    pub fn new(a: usize, b: usize) -> Self {
        EdgeKey {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn other(&self, id: usize) -> usize {
        if id == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl From<EdgeKey> for [usize; 2] {
    fn from(k: EdgeKey) -> Self {
        [k.lo, k.hi]
    }
}

impl From<[usize; 2]> for EdgeKey {
    fn from([a, b]: [usize; 2]) -> Self {
        EdgeKey::new(a, b)
    }
}

impl fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub key: EdgeKey,
    pub attr: EdgeAttr,
}

/// An undirected, simple, attributed graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct Network {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    cost: CostModel,
    node_pos: HashMap<usize, usize>,
    edge_pos: HashMap<EdgeKey, usize>,
    // node index -> (neighbor node index, edge index)
    adj: Vec<Vec<(usize, usize)>>,
}

impl Network {
    /// Builds a network. `candidates = None` means the complete geometric
    /// graph on `nodes`.
    pub fn new(nodes: Vec<Node>, candidates: Option<&[EdgeKey]>, cost: CostModel) -> Result<Self> {
        let mut node_pos = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if node_pos.insert(n.id, i).is_some() {
                return Err(Error::invalid(format!("duplicate node id {}", n.id)));
            }
            if ![n.x, n.y, n.z, n.s].iter().all(|v| v.is_finite()) {
                return Err(Error::invalid(format!("node {} has a non-finite field", n.id)));
            }
            if n.s < 0.0 {
                return Err(Error::invalid(format!("node {} has negative rating s = {}", n.id, n.s)));
            }
        }

        let keys: Vec<EdgeKey> = match candidates {
            Some(c) => {
                let mut keys = c.to_vec();
                keys.sort_unstable();
                for w in keys.windows(2) {
                    if w[0] == w[1] {
                        return Err(Error::invalid(format!("parallel edge {}", w[0])));
                    }
                }
                for k in &keys {
                    if k.lo == k.hi {
                        return Err(Error::invalid(format!("self-loop at node {}", k.lo)));
                    }
                    for end in [k.lo, k.hi] {
                        if !node_pos.contains_key(&end) {
                            return Err(Error::invalid(format!(
                                "edge {k} references unknown node {end}"
                            )));
                        }
                    }
                }
                keys
            }
            None => {
                let mut ids: Vec<usize> = nodes.iter().map(|n| n.id).collect();
                ids.sort_unstable();
                let mut keys = Vec::with_capacity(ids.len() * ids.len().saturating_sub(1) / 2);
                for (i, &a) in ids.iter().enumerate() {
                    for &b in &ids[i + 1..] {
                        keys.push(EdgeKey::new(a, b));
                    }
                }
                keys
            }
        };

        let mut adj = vec![Vec::new(); nodes.len()];
        let mut edges = Vec::with_capacity(keys.len());
        let mut edge_pos = HashMap::with_capacity(keys.len());
        for key in keys {
            let (ia, ib) = (node_pos[&key.lo], node_pos[&key.hi]);
            let attr = EdgeAttr::between(&nodes[ia], &nodes[ib], cost);
            let e = edges.len();
            adj[ia].push((ib, e));
            adj[ib].push((ia, e));
            edge_pos.insert(key, e);
            edges.push(Edge { key, attr });
        }

        Ok(Network {
            nodes,
            edges,
            cost,
            node_pos,
            edge_pos,
            adj,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Candidate edges, sorted by key.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cost_model(&self) -> CostModel {
        self.cost
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, id: usize) -> Option<&Node> {
        self.node_pos.get(&id).map(|&i| &self.nodes[i])
    }

    pub fn edge(&self, key: EdgeKey) -> Option<&Edge> {
        self.edge_pos.get(&key).map(|&i| &self.edges[i])
    }

    pub fn terminal_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .nodes
            .iter()
            .filter(|n| n.is_terminal())
            .map(|n| n.id)
            .collect();
        ids.sort_unstable();
        ids
    }

    pub(crate) fn index_of(&self, id: usize) -> Option<usize> {
        self.node_pos.get(&id).copied()
    }

    pub(crate) fn neighbors(&self, index: usize) -> &[(usize, usize)] {
        &self.adj[index]
    }

    /// Connected components of the candidate graph as sorted id lists,
    /// ordered by smallest id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(self.nodes[v].id);
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps.sort();
        comps
    }

    pub fn ensure_connected(&self) -> Result<()> {
        let comps = self.components();
        if comps.len() > 1 {
            return Err(Error::Disconnected { components: comps });
        }
        Ok(())
    }

    /// Component-wise sums of the edge attributes over `subset`.
    pub fn tree_objectives(&self, subset: &[EdgeKey]) -> Result<ObjectiveVector> {
        subset.iter().try_fold(ObjectiveVector::default(), |acc, k| {
            let e = self
                .edge(*k)
                .ok_or_else(|| Error::domain(format!("edge {k} is not in the network")))?;
            Ok(acc + ObjectiveVector::from(e.attr))
        })
    }

    /// Checks that every stored attribute matches recomputation from its
    /// endpoints within [`ATTR_REL_TOL`].
    pub fn verify_attributes(&self) -> Result<()> {
        for e in &self.edges {
            let a = &self.nodes[self.node_pos[&e.key.lo]];
            let b = &self.nodes[self.node_pos[&e.key.hi]];
            let fresh = EdgeAttr::between(a, b, self.cost);
            let stored = ObjectiveVector::from(e.attr);
            if stored.max_rel_diff(&fresh.into()) > ATTR_REL_TOL {
                return Err(Error::invalid(format!(
                    "edge {} attributes {stored} differ from recomputed {}",
                    e.key,
                    ObjectiveVector::from(fresh)
                )));
            }
        }
        Ok(())
    }

    /// Checks that `tree` is a spanning tree over all nodes of the network.
    pub fn check_spanning_tree(&self, tree: &[EdgeKey]) -> Result<()> {
        let n = self.nodes.len();
        if tree.len() + 1 != n.max(1) {
            return Err(Error::domain(format!(
                "expected {} tree edges for {n} nodes, got {}",
                n.saturating_sub(1),
                tree.len()
            )));
        }
        let mut dsu = DisjointSets::new(n);
        for k in tree {
            if self.edge(*k).is_none() {
                return Err(Error::domain(format!("tree edge {k} is not in the network")));
            }
            let (a, b) = (self.node_pos[&k.lo], self.node_pos[&k.hi]);
            if !dsu.union(a, b) {
                return Err(Error::domain(format!("tree edge {k} closes a cycle")));
            }
        }
        Ok(())
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}
