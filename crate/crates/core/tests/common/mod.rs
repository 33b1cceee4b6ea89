//! Independent reference computations used by the integration tests. None
//! of these call into the code paths they are used to check.

#![allow(dead_code)]

use meshtopo::model::DisjointSets;
use meshtopo::pipeline::{generate_instance, Terrain};
use meshtopo::{EdgeKey, Network, ObjectiveVector, Point, SenseVector};

pub fn star_sum(pts: &[Point], at: Point) -> f64 {
    pts.iter().map(|p| ((p.x - at.x).powi(2) + (p.y - at.y).powi(2)).sqrt()).sum()
}

/// Minimizes the summed distance to `pts` by nested grid search over the
/// bounding box down to a 1e-4 step, then compass-search descent.
pub fn grid_descent_min(pts: &[Point]) -> (Point, f64) {
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let mut step = ((x1 - x0).max(y1 - y0) / 200.0).max(1e-4);
    let mut best = (Point::new(x0, y0), f64::INFINITY);
    let (mut cx0, mut cx1, mut cy0, mut cy1) = (x0, x1, y0, y1);
    loop {
        let nx = ((cx1 - cx0) / step).ceil() as usize;
        let ny = ((cy1 - cy0) / step).ceil() as usize;
        for i in 0..=nx {
            for j in 0..=ny {
                let q = Point::new(cx0 + i as f64 * step, cy0 + j as f64 * step);
                let f = star_sum(pts, q);
                if f < best.1 {
                    best = (q, f);
                }
            }
        }
        if step <= 1e-4 {
            break;
        }
        cx0 = best.0.x - 2.0 * step;
        cx1 = best.0.x + 2.0 * step;
        cy0 = best.0.y - 2.0 * step;
        cy1 = best.0.y + 2.0 * step;
        step = (step / 10.0).max(1e-4);
    }
    let mut h = 1e-4;
    while h > 1e-13 {
        let mut improved = false;
        for (dx, dy) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let q = Point::new(best.0.x + dx, best.0.y + dy);
            let f = star_sum(pts, q);
            if f < best.1 {
                best = (q, f);
                improved = true;
            }
        }
        if !improved {
            h /= 2.0;
        }
    }
    best
}

/// Length of the best full Steiner tree on four terminals with the given
/// pairing `((a, b), (c, d))`: `s1` joins a, b; `s2` joins c, d; `s1-s2`.
/// Minimized by compass search in the 4-d position space.
pub fn full_topology_length(t: &[Point; 4], pairing: [[usize; 2]; 2]) -> f64 {
    let len = |v: [f64; 4]| {
        let s1 = Point::new(v[0], v[1]);
        let s2 = Point::new(v[2], v[3]);
        star_sum(&[t[pairing[0][0]], t[pairing[0][1]], s2], s1)
            + star_sum(&[t[pairing[1][0]], t[pairing[1][1]]], s2)
    };
    let mid = |a: Point, b: Point| [(a.x + b.x) / 2.0, (a.y + b.y) / 2.0];
    let m1 = mid(t[pairing[0][0]], t[pairing[0][1]]);
    let m2 = mid(t[pairing[1][0]], t[pairing[1][1]]);
    let mut v = [m1[0], m1[1], m2[0], m2[1]];
    let mut f = len(v);
    let mut h = 0.25;
    while h > 1e-12 {
        let mut improved = false;
        for k in 0..4 {
            for sign in [1.0, -1.0] {
                let mut w = v;
                w[k] += sign * h;
                let g = len(w);
                if g < f {
                    v = w;
                    f = g;
                    improved = true;
                }
            }
        }
        if !improved {
            h /= 2.0;
        }
    }
    f
}

/// Minimum of `weight` summed over every spanning tree, by enumerating all
/// `(n-1)`-edge subsets. Only for tiny graphs.
pub fn exhaustive_min_tree(net: &Network, weight: impl Fn(EdgeKey) -> f64) -> (f64, usize) {
    let n = net.node_count();
    let keys: Vec<EdgeKey> = net.edges().iter().map(|e| e.key).collect();
    let index = |id: usize| net.nodes().iter().position(|x| x.id == id).unwrap();
    let k = n - 1;
    let m = keys.len();
    let mut best = f64::INFINITY;
    let mut trees = 0;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let mut dsu = DisjointSets::new(n);
        if pick
            .iter()
            .all(|&e| dsu.union(index(keys[e].lo), index(keys[e].hi)))
        {
            trees += 1;
            best = best.min(pick.iter().map(|&e| weight(keys[e])).sum());
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return (best, trees);
            }
            i -= 1;
            if pick[i] < m - k + i {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

fn dominates_naive(u: &ObjectiveVector, v: &ObjectiveVector, s: &SenseVector) -> bool {
    let (a, b) = (u.to_array(), v.to_array());
    let better = |i: usize, x: f64, y: f64| match s.0[i] {
        meshtopo::Sense::Minimize => x < y,
        meshtopo::Sense::Maximize => x > y,
    };
    (0..4).all(|i| !better(i, b[i], a[i])) && (0..4).any(|i| better(i, a[i], b[i]))
}

/// Iterated peeling: strip the non-dominated subset, repeat.
pub fn naive_layers(vs: &[ObjectiveVector], s: &SenseVector) -> Vec<usize> {
    let mut layer = vec![0; vs.len()];
    let mut k = 1;
    while layer.contains(&0) {
        let live: Vec<usize> = (0..vs.len()).filter(|&i| layer[i] == 0).collect();
        let front: Vec<usize> = live
            .iter()
            .copied()
            .filter(|&i| !live.iter().any(|&j| dominates_naive(&vs[j], &vs[i], s)))
            .collect();
        for i in front {
            layer[i] = k;
        }
        k += 1;
    }
    layer
}

pub fn naive_dominates(u: &ObjectiveVector, v: &ObjectiveVector, s: &SenseVector) -> bool {
    dominates_naive(u, v, s)
}

pub fn seeded_network(n: usize, seed: u64) -> Network {
    generate_instance(n, seed, Terrain::default())
        .unwrap()
        .to_network()
        .unwrap()
}

/// Published comparison rows as `(L, C, Delta, Q)`, in table order, with the published
/// layer column.
pub const TABLE2: [([f64; 4], usize); 10] = [
    ([69.98, 3.83, 222.50, 43.56], 2),
    ([76.35, 3.45, 265.75, 41.26], 1),
    ([69.19, 4.29, 202.09, 43.56], 2),
    ([69.24, 4.56, 195.92, 44.38], 1),
    ([69.5, 4.17, 197.26, 44.0], 2),
    ([70.16, 3.77, 217.26, 42.13], 1),
    ([69.5, 4.17, 197.26, 43.76], 1),
    ([69.19, 4.29, 202.09, 42.31], 1),
    ([69.24, 4.57, 195.92, 43.13], 1),
    ([69.92, 3.83, 209.76, 42.4], 1),
];

pub fn table2_vectors() -> Vec<ObjectiveVector> {
    TABLE2
        .iter()
        .map(|([l, c, d, q], _)| ObjectiveVector::new(*l, *c, *q, *d))
        .collect()
}
