//! Stage 3: Euclidean Steiner trees per cluster.
//!
//! A cluster tree starts as the cluster's length MST. While some terminal
//! has two incident edges meeting at less than 120 degrees, the worst such
//! corner is replaced by a star around the Fermat point of the three
//! endpoints, and then every Steiner point is relaxed to the Fermat point of
//! its three neighbors until the positions settle. A step is kept only if
//! the total length went down.
//!
//! [`steinerize`] applies this to every cluster of a partition and splices
//! the results back into the spanning tree, keeping inter-cluster edges.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::clustering::Partition;
use crate::error::{Error, Result};
use crate::model::{DisjointSets, EdgeKey, Network, Node, ObjectiveVector, Point};

/// Angle tolerance (radians) for the 120-degree condition at Steiner nodes.
pub const ANGLE_TOL: f64 = 1e-3;
/// Refinement stops once no Steiner point moves more than this fraction of
/// the cluster diameter.
pub const REFINE_REL_TOL: f64 = 1e-9;
pub const REFINE_MAX_ITER: usize = 10_000;

const STEINER_ANGLE: f64 = 2.0 * PI / 3.0;
const DIST_FLOOR: f64 = 1e-12;
const WEISZFELD_MAX_ITER: usize = 100_000;

/// Weiszfeld iteration for the point minimizing the summed distance to
/// `points`, with distances floored at `1e-12`.
pub fn geometric_median(points: &[Point], start: Point) -> Point {
    let scale = points
        .iter()
        .map(|p| p.dist(start))
        .fold(0.0, f64::max)
        .max(DIST_FLOOR);
    let mut cur = start;
    for _ in 0..WEISZFELD_MAX_ITER {
        let (mut sx, mut sy, mut sw) = (0.0, 0.0, 0.0);
        for p in points {
            let w = 1.0 / p.dist(cur).max(DIST_FLOOR);
            sx += w * p.x;
            sy += w * p.y;
            sw += w;
        }
        let next = Point::new(sx / sw, sy / sw);
        let step = next.dist(cur);
        cur = next;
        if step <= 1e-15 * scale {
            break;
        }
    }
    cur
}

fn angle_at(v: Point, a: Point, b: Point) -> f64 {
    let (ax, ay) = (a.x - v.x, a.y - v.y);
    let (bx, by) = (b.x - v.x, b.y - v.y);
    let cross = ax * by - ay * bx;
    let dot = ax * bx + ay * by;
    cross.abs().atan2(dot)
}

/// The Fermat point of a triangle: the vertex itself when its interior
/// angle is at least 120 degrees, otherwise the geometric median of the
/// three vertices.
pub fn fermat_point(p1: Point, p2: Point, p3: Point) -> Result<Point> {
    if p1 == p2 || p1 == p3 || p2 == p3 {
        return Err(Error::domain(format!(
            "fermat_point needs three distinct points, got {p1:?}, {p2:?}, {p3:?}"
        )));
    }
    for (v, a, b) in [(p1, p2, p3), (p2, p1, p3), (p3, p1, p2)] {
        // cos(angle) <= -1/2  <=>  angle >= 120 degrees
        let (ax, ay) = (a.x - v.x, a.y - v.y);
        let (bx, by) = (b.x - v.x, b.y - v.y);
        let dot = ax * bx + ay * by;
        if dot <= -0.5 * ax.hypot(ay) * bx.hypot(by) {
            return Ok(v);
        }
    }
    let centroid = Point::new((p1.x + p2.x + p3.x) / 3.0, (p1.y + p2.y + p3.y) / 3.0);
    Ok(geometric_median(&[p1, p2, p3], centroid))
}

/// Fermat point that tolerates coincident inputs (a doubled point is the
/// median).
fn star_center(a: Point, b: Point, c: Point) -> Point {
    if a == b || a == c {
        a
    } else if b == c {
        b
    } else {
        fermat_point(a, b, c).expect("distinct points")
    }
}

/// A Steiner tree over one cluster, in local indices: terminals first (in
/// input order), Steiner points after.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSteinerTree {
    pub points: Vec<Point>,
    pub terminal_count: usize,
    /// Sorted `(lo, hi)` local index pairs.
    pub edges: Vec<(usize, usize)>,
    /// Length of the cluster MST the construction started from.
    pub mst_length: f64,
}

impl LocalSteinerTree {
    pub fn length(&self) -> f64 {
        self.edges
            .iter()
            .map(|&(a, b)| self.points[a].dist(self.points[b]))
            .sum()
    }

    pub fn steiner_points(&self) -> &[Point] {
        &self.points[self.terminal_count..]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }

    /// Largest shortfall below 120 degrees over the angles at Steiner
    /// points (0 when every angle is at least 120 degrees).
    pub fn max_angle_deficit(&self) -> f64 {
        let mut worst = 0.0f64;
        for s in self.terminal_count..self.points.len() {
            let nb: Vec<usize> = self
                .edges
                .iter()
                .filter_map(|&(a, b)| match () {
                    _ if a == s => Some(b),
                    _ if b == s => Some(a),
                    _ => None,
                })
                .collect();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    let ang = angle_at(self.points[s], self.points[nb[i]], self.points[nb[j]]);
                    worst = worst.max(STEINER_ANGLE - ang);
                }
            }
        }
        worst
    }
}

struct Work {
    points: Vec<Point>,
    adj: Vec<Vec<usize>>,
    terminals: usize,
    diameter: f64,
}

impl Work {
    fn length(&self) -> f64 {
        let mut total = 0.0;
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb {
                if a < b {
                    total += self.points[a].dist(self.points[b]);
                }
            }
        }
        total
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
        self.adj[b].retain(|&x| x != a);
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    /// Worst corner below 120 degrees at a terminal, as `(v, u, w)`.
    fn worst_corner(&self, rejected: &HashSet<(usize, usize, usize)>) -> Option<(usize, usize, usize)> {
        let mut best: Option<(f64, (usize, usize, usize))> = None;
        for v in 0..self.terminals {
            let mut nb = self.adj[v].clone();
            nb.sort_unstable();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    let (u, w) = (nb[i], nb[j]);
                    let (pv, pu, pw) = (self.points[v], self.points[u], self.points[w]);
                    if pv == pu || pv == pw || pu == pw || rejected.contains(&(v, u, w)) {
                        continue;
                    }
                    let ang = angle_at(pv, pu, pw);
                    if ang >= STEINER_ANGLE - 1e-9 {
                        continue;
                    }
                    let cand = (ang, (v, u, w));
                    if best.is_none_or(|b| ang < b.0 || (ang == b.0 && cand.1 < b.1)) {
                        best = Some(cand);
                    }
                }
            }
        }
        best.map(|b| b.1)
    }

    /// Gauss-Seidel relaxation of Steiner points onto the Fermat points of
    /// their neighbors.
    fn refine(&mut self) {
        let tol = REFINE_REL_TOL * self.diameter;
        for _ in 0..REFINE_MAX_ITER {
            let mut moved = 0.0f64;
            for s in self.terminals..self.points.len() {
                let nb = &self.adj[s];
                debug_assert_eq!(nb.len(), 3);
                let next = star_center(self.points[nb[0]], self.points[nb[1]], self.points[nb[2]]);
                moved = moved.max(next.dist(self.points[s]));
                self.points[s] = next;
            }
            if moved < tol {
                break;
            }
        }
    }

    /// Removes Steiner points that landed on a neighbor. Returns false if a
    /// Steiner point collapsed onto another Steiner point.
    fn contract_collapsed(&mut self) -> bool {
        let tol = REFINE_REL_TOL * self.diameter;
        'outer: loop {
            for s in self.terminals..self.points.len() {
                let hit = self.adj[s]
                    .iter()
                    .copied()
                    .find(|&t| self.points[t].dist(self.points[s]) <= tol);
                let Some(t) = hit else { continue };
                if t >= self.terminals {
                    return false;
                }
                for x in self.adj[s].clone() {
                    self.unlink(s, x);
                    if x != t {
                        self.link(t, x);
                    }
                }
                self.points.remove(s);
                self.adj.remove(s);
                for nb in &mut self.adj {
                    for x in nb.iter_mut() {
                        if *x > s {
                            *x -= 1;
                        }
                    }
                }
                self.refine();
                continue 'outer;
            }
            return true;
        }
    }
}

/// Length MST over points by Prim on the complete graph, ties by index.
fn local_mst(points: &[Point]) -> Vec<(usize, usize)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, usize::MAX); n];
    in_tree[0] = true;
    for j in 1..n {
        best[j] = (points[0].dist(points[j]), 0);
    }
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut pick: Option<(f64, usize, usize)> = None;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            let (d, from) = best[j];
            let cand = (d, from.min(j), from.max(j));
            if pick.is_none_or(|p| {
                cand.0 < p.0 || (cand.0 == p.0 && (cand.1, cand.2) < (p.1, p.2))
            }) {
                pick = Some(cand);
            }
        }
        let (_, a, b) = pick.unwrap();
        let j = if in_tree[a] { b } else { a };
        in_tree[j] = true;
        edges.push((a, b));
        for k in 0..n {
            if !in_tree[k] {
                let d = points[j].dist(points[k]);
                if d < best[k].0 || (d == best[k].0 && j < best[k].1) {
                    best[k] = (d, j);
                }
            }
        }
    }
    edges
}

/// Builds a Steiner tree over the xy positions of `terminals`.
pub fn steiner_tree_cluster(terminals: &[Node]) -> LocalSteinerTree {
    let pts: Vec<Point> = terminals.iter().map(Node::point).collect();
    let n = pts.len();
    let mst = local_mst(&pts);
    let mst_length = mst.iter().map(|&(a, b)| pts[a].dist(pts[b])).sum();

    let mut diameter = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max(pts[i].dist(pts[j]));
        }
    }
    let mut work = Work {
        points: pts,
        adj: vec![Vec::new(); n],
        terminals: n,
        diameter,
    };
    for &(a, b) in &mst {
        work.link(a, b);
    }

    if n >= 3 && diameter > 0.0 {
        let mut rejected = HashSet::new();
        let mut current = work.length();
        while let Some((v, u, w)) = work.worst_corner(&rejected) {
            let snapshot = (work.points.clone(), work.adj.clone());
            let at = star_center(work.points[v], work.points[u], work.points[w]);
            let s = work.points.len();
            work.points.push(at);
            work.adj.push(Vec::new());
            work.unlink(v, u);
            work.unlink(v, w);
            work.link(s, v);
            work.link(s, u);
            work.link(s, w);
            work.refine();
            let ok = work.contract_collapsed();
            let after = work.length();
            if ok && after < current - 1e-12 * diameter {
                current = after;
                rejected.clear();
            } else {
                (work.points, work.adj) = snapshot;
                rejected.insert((v, u, w));
            }
        }
    }

    let mut edges = Vec::new();
    for (a, nb) in work.adj.iter().enumerate() {
        for &b in nb {
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    LocalSteinerTree {
        points: work.points,
        terminal_count: n,
        edges,
        mst_length,
    }
}

/// Altitude and rating for a Steiner point: inverse-distance-weighted means
/// over `terminals` (weights `1 / max(d, 1e-9)`), or a copy of a terminal's
/// fields when the point lies on it.
pub fn derive_steiner_node_fields(at: Point, terminals: &[Node]) -> (f64, f64) {
    assert!(!terminals.is_empty(), "need at least one terminal");
    if let Some(t) = terminals.iter().find(|t| t.point().dist(at) < 1e-9) {
        return (t.z, t.s);
    }
    let (mut z, mut s, mut wsum) = (0.0, 0.0, 0.0);
    for t in terminals {
        let w = 1.0 / t.point().dist(at).max(1e-9);
        z += w * t.z;
        s += w * t.s;
        wsum += w;
    }
    (z / wsum, s / wsum)
}

/// Per-component bookkeeping of one steinerized piece of a cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub cluster: usize,
    pub terminals: Vec<usize>,
    pub mst_length: f64,
    pub steiner_length: f64,
    /// Length of the input-tree edges this piece replaced.
    pub replaced_length: f64,
    pub steiner_points: usize,
}

#[derive(Debug, Clone)]
pub struct SteinerSolution {
    /// Original terminals plus the added Steiner nodes.
    pub network: Network,
    pub tree: Vec<EdgeKey>,
    /// Steiner node id -> index of the cluster that produced it.
    pub provenance: BTreeMap<usize, usize>,
    pub clusters: Vec<ClusterReport>,
}

impl SteinerSolution {
    pub fn objectives(&self) -> ObjectiveVector {
        self.network
            .tree_objectives(&self.tree)
            .expect("tree edges belong to the augmented network")
    }

    pub fn steiner_nodes(&self) -> Vec<Node> {
        self.network
            .nodes()
            .iter()
            .filter(|n| !n.is_terminal())
            .cloned()
            .collect()
    }
}

/// Replaces each cluster's part of `tree` by a Steiner tree.
///
/// The input tree is restricted to each cluster; every connected piece
/// with at least three terminals is rebuilt with [`steiner_tree_cluster`]
/// and its edges swapped in. All edges between clusters are kept. Added
/// Steiner nodes get fresh ids above the largest existing id and fields
/// from [`derive_steiner_node_fields`].
pub fn steinerize(net: &Network, tree: &[EdgeKey], partition: &Partition) -> Result<SteinerSolution> {
    if net.nodes().iter().any(|n| !n.is_terminal()) {
        return Err(Error::domain("steinerize expects a terminal-only network"));
    }
    net.check_spanning_tree(tree)?;
    partition.validate(&net.terminal_ids())?;

    let mut next_id = net.nodes().iter().map(|n| n.id).max().map_or(0, |m| m + 1);
    let mut tree_set: BTreeSet<EdgeKey> = tree.iter().copied().collect();
    let mut extra_nodes = Vec::new();
    let mut provenance = BTreeMap::new();
    let mut reports = Vec::new();

    for (ci, cluster) in partition.clusters.iter().enumerate() {
        if cluster.len() < 3 {
            continue;
        }
        let slot = |id: usize| cluster.binary_search(&id).ok();
        let induced: Vec<EdgeKey> = tree
            .iter()
            .copied()
            .filter(|k| slot(k.lo).is_some() && slot(k.hi).is_some())
            .collect();
        let mut dsu = DisjointSets::new(cluster.len());
        for k in &induced {
            dsu.union(slot(k.lo).unwrap(), slot(k.hi).unwrap());
        }
        let mut pieces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &id) in cluster.iter().enumerate() {
            pieces.entry(dsu.find(i)).or_default().push(id);
        }
        let mut pieces: Vec<Vec<usize>> = pieces.into_values().collect();
        pieces.sort();

        for piece in pieces.into_iter().filter(|p| p.len() >= 3) {
            let terms: Vec<Node> = piece.iter().map(|&id| net.node(id).unwrap().clone()).collect();
            let local = steiner_tree_cluster(&terms);

            let mut replaced_length = 0.0;
            for k in induced.iter().filter(|k| piece.contains(&k.lo)) {
                tree_set.remove(k);
                replaced_length += net.edge(*k).unwrap().attr.length;
            }

            let mut ids: Vec<usize> = piece.clone();
            for &p in local.steiner_points() {
                let (z, s) = derive_steiner_node_fields(p, &terms);
                extra_nodes.push(Node::steiner(next_id, p, z, s));
                provenance.insert(next_id, ci);
                ids.push(next_id);
                next_id += 1;
            }
            for &(a, b) in &local.edges {
                tree_set.insert(EdgeKey::new(ids[a], ids[b]));
            }
            reports.push(ClusterReport {
                cluster: ci,
                terminals: piece,
                mst_length: local.mst_length,
                steiner_length: local.length(),
                replaced_length,
                steiner_points: local.steiner_points().len(),
            });
        }
    }

    let mut nodes = net.nodes().to_vec();
    nodes.extend(extra_nodes);
    let mut keys: BTreeSet<EdgeKey> = net.edges().iter().map(|e| e.key).collect();
    keys.extend(tree_set.iter().copied());
    let keys: Vec<EdgeKey> = keys.into_iter().collect();
    let network = Network::new(nodes, Some(&keys), net.cost_model())?;
    let tree: Vec<EdgeKey> = tree_set.into_iter().collect();
    network.check_spanning_tree(&tree)?;

    Ok(SteinerSolution {
        network,
        tree,
        provenance,
        clusters: reports,
    })
}
