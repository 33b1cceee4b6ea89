//! Stage 2: size-capped single-linkage agglomeration of terminals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Network;

pub const DEFAULT_MAX_CLUSTER: usize = 6;

/// Disjoint clusters of terminal ids. Each cluster is sorted; clusters are
/// ordered by their smallest id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub clusters: Vec<Vec<usize>>,
    pub max_size: usize,
}

impl Partition {
    /// Every terminal in its own cluster.
    pub fn singletons(net: &Network, max_size: usize) -> Self {
        Partition {
            clusters: net.terminal_ids().into_iter().map(|id| vec![id]).collect(),
            max_size,
        }
    }

    /// Checks disjointness, the size cap and exact coverage of `terminals`.
    pub fn validate(&self, terminals: &[usize]) -> Result<()> {
        let mut seen: Vec<usize> = Vec::with_capacity(terminals.len());
        for c in &self.clusters {
            if c.is_empty() || c.len() > self.max_size {
                return Err(Error::domain(format!(
                    "cluster {c:?} has size {} outside [1, {}]",
                    c.len(),
                    self.max_size
                )));
            }
            seen.extend_from_slice(c);
        }
        seen.sort_unstable();
        let mut want = terminals.to_vec();
        want.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain("clusters are not disjoint"));
        }
        if seen != want {
            return Err(Error::domain("clusters do not cover exactly the terminal set"));
        }
        Ok(())
    }

    pub fn cluster_of(&self, id: usize) -> Option<usize> {
        self.clusters.iter().position(|c| c.contains(&id))
    }
}

/// One accepted merge, in acceptance order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub distance: f64,
    /// Smallest id of the cluster with the lower smallest id.
    pub first: usize,
    pub second: usize,
    pub merged_size: usize,
}

pub fn agglomerate(net: &Network, max_size: usize) -> Result<Partition> {
    agglomerate_with_log(net, max_size).map(|(p, _)| p)
}

/// Starts from singletons and repeatedly merges the admissible pair (merged
/// size at most `max_size`) with the smallest single-linkage xy-distance,
/// ties broken by the smaller ids of the two clusters. Stops when no
/// admissible pair remains.
pub fn agglomerate_with_log(net: &Network, max_size: usize) -> Result<(Partition, Vec<Merge>)> {
    if max_size == 0 {
        return Err(Error::domain("max cluster size must be >= 1"));
    }
    let ids = net.terminal_ids();
    let pts: Vec<_> = ids.iter().map(|&id| net.node(id).unwrap().point()).collect();
    let n = ids.len();

    // linkage[i][j]: single-linkage distance between live clusters i and j,
    // each cluster indexed by the slot of its first member.
    let mut linkage = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = pts[i].dist(pts[j]);
            linkage[i][j] = d;
            linkage[j][i] = d;
        }
    }
    let mut members: Vec<Option<Vec<usize>>> = ids.iter().map(|&id| Some(vec![id])).collect();
    let mut log = Vec::new();

    loop {
        let mut best: Option<(f64, usize, usize, usize, usize)> = None;
        for i in 0..n {
            let Some(mi) = &members[i] else { continue };
            for j in i + 1..n {
                let Some(mj) = &members[j] else { continue };
                if mi.len() + mj.len() > max_size {
                    continue;
                }
                let (a, b) = (mi[0].min(mj[0]), mi[0].max(mj[0]));
                let cand = (linkage[i][j], a, b, i, j);
                let better = match best {
                    None => true,
                    Some(cur) => {
                        cand.0
                            .total_cmp(&cur.0)
                            .then(cand.1.cmp(&cur.1))
                            .then(cand.2.cmp(&cur.2))
                            .is_lt()
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
        }
        let Some((d, first, second, i, j)) = best else { break };

        let mut merged = members[i].take().unwrap();
        merged.extend(members[j].take().unwrap());
        merged.sort_unstable();
        for k in 0..n {
            if k != i && k != j && members[k].is_some() {
                let l = linkage[i][k].min(linkage[j][k]);
                linkage[i][k] = l;
                linkage[k][i] = l;
            }
        }
        log.push(Merge {
            distance: d,
            first,
            second,
            merged_size: merged.len(),
        });
        members[i] = Some(merged);
    }

    let mut clusters: Vec<Vec<usize>> = members.into_iter().flatten().collect();
    clusters.sort();
    Ok((Partition { clusters, max_size }, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CostModel, Node};
    use proptest::prelude::*;

    fn net_of(points: &[(f64, f64)]) -> Network {
        let nodes = points
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Node::terminal(i, x, y, 0.0, 0.5))
            .collect();
        Network::new(nodes, Some(&[]), CostModel::default()).unwrap()
    }

    fn two_groups() -> Network {
        net_of(&[
            (0.0, 0.0),
            (0.5, 0.0),
            (0.0, 0.6),
            (200.0, 0.0),
            (200.4, 0.3),
            (200.0, 0.7),
        ])
    }

    #[test]
    fn single_node_is_one_cluster() {
        let p = agglomerate(&net_of(&[(1.0, 1.0)]), 6).unwrap();
        assert_eq!(p.clusters, vec![vec![0]]);
    }

    #[test]
    fn zero_cap_is_rejected() {
        assert!(agglomerate(&net_of(&[(1.0, 1.0)]), 0).is_err());
    }

    /// Independent replay: at each step scan all pairs of current clusters
    /// with the brute-force single-linkage distance over member points.
    fn brute_force(points: &[(f64, f64)], cap: usize) -> Vec<Vec<usize>> {
        let dist = |a: usize, b: usize| {
            let (p, q) = (points[a], points[b]);
            ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
        };
        let mut clusters: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
        loop {
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    if clusters[i].len() + clusters[j].len() > cap {
                        continue;
                    }
                    let mut d = f64::INFINITY;
                    for &a in &clusters[i] {
                        for &b in &clusters[j] {
                            d = d.min(dist(a, b));
                        }
                    }
                    let key = |(d, i, j): (f64, usize, usize)| {
                        let (a, b) = (clusters[i][0], clusters[j][0]);
                        (d, a.min(b), a.max(b))
                    };
                    let cand = (d, i, j);
                    if best.is_none_or(|b| {
                        let (x, y) = (key(cand), key(b));
                        x.0 < y.0 || (x.0 == y.0 && (x.1, x.2) < (y.1, y.2))
                    }) {
                        best = Some(cand);
                    }
                }
            }
            let Some((_, i, j)) = best else { break };
            let moved = clusters.remove(j);
            clusters[i].extend(moved);
            clusters[i].sort_unstable();
        }
        clusters.sort();
        clusters
    }

    #[test]
    fn separated_groups() {
        let net = two_groups();
        let p6 = agglomerate(&net, 6).unwrap();
        assert_eq!(p6.clusters, vec![vec![0, 1, 2, 3, 4, 5]]);
        let p3 = agglomerate(&net, 3).unwrap();
        assert_eq!(p3.clusters, vec![vec![0, 1, 2], vec![3, 4, 5]]);

        let pts: Vec<(f64, f64)> = net.nodes().iter().map(|n| (n.x, n.y)).collect();
        assert_eq!(brute_force(&pts, 6), p6.clusters);
        assert_eq!(brute_force(&pts, 3), p3.clusters);
    }

    proptest! {
        #[test]
        fn partition_invariants_and_merge_order(
            pts in proptest::collection::vec((0.0..100.0f64, 0.0..100.0f64), 1..25),
            cap in 1usize..8,
        ) {
            let net = net_of(&pts);
            let (p, log) = agglomerate_with_log(&net, cap).unwrap();
            p.validate(&net.terminal_ids()).unwrap();
            for w in log.windows(2) {
                prop_assert!(w[1].distance >= w[0].distance);
            }
            prop_assert_eq!(&p.clusters, &brute_force(&pts, cap));
            prop_assert_eq!(agglomerate(&net, cap).unwrap(), p);
        }
    }

    #[test]
    fn twelve_random_nodes_respect_cap() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let pts: Vec<(f64, f64)> = (0..12)
                .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
                .collect();
            let net = net_of(&pts);
            let p = agglomerate(&net, 6).unwrap();
            p.validate(&net.terminal_ids()).unwrap();
            assert!(p.clusters.iter().all(|c| c.len() <= 6));
        }
    }

    #[test]
    fn validate_catches_bad_partitions() {
        let terms = [0, 1, 2];
        let p = |clusters: Vec<Vec<usize>>, max_size| Partition { clusters, max_size };
        assert!(p(vec![vec![0, 1], vec![2]], 2).validate(&terms).is_ok());
        assert!(p(vec![vec![0, 1, 2]], 2).validate(&terms).is_err());
        assert!(p(vec![vec![0, 1], vec![1, 2]], 2).validate(&terms).is_err());
        assert!(p(vec![vec![0, 1]], 2).validate(&terms).is_err());
        assert!(p(vec![vec![0], vec![], vec![1, 2]], 2).validate(&terms).is_err());
    }
}
