//! End-to-end scheme: length MST, one multicriteria tree per swept weight
//! vector, one Steiner-augmented tree per multicriteria tree, and Pareto
//! layers over all of their objective vectors.

mod generate;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use serde::{Deserialize, Serialize};

use crate::clustering::{agglomerate, Partition, DEFAULT_MAX_CLUSTER};
use crate::error::{Error, Result};
use crate::model::{CostModel, EdgeKey, Instance, Network, Node, ObjectiveVector, SenseVector};
use crate::pareto::pareto_layers;
use crate::spanning::{
    multicriteria_prim_with, prim_mst, weight_sweep, RootStrategy, ScalarizationConfig,
    WeightVector,
};
use crate::steiner::steinerize;
use crate::svg;

pub use generate::{generate_instance, Terrain, FIELD_SIZE};
pub use report::{
    format_sig, parse_vectors, read_vectors, report_csv, write_report, VectorRow, REPORT_HEADER,
};

/// Relative tolerance for stored-vs-recomputed objective vectors.
pub const RECOMPUTE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    /// Weight sweep granularity `g` (`C(g + 3, 3)` weight vectors).
    pub granularity: usize,
    pub max_cluster: usize,
    pub senses: SenseVector,
    pub alpha: f64,
    pub beta: f64,
    /// Seed of the generated instance, kept for provenance.
    pub seed: u64,
    pub roots: RootStrategy,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        let cost = CostModel::default();
        SchemeConfig {
            granularity: 3,
            max_cluster: DEFAULT_MAX_CLUSTER,
            senses: SenseVector::default(),
            alpha: cost.alpha,
            beta: cost.beta,
            seed: 0,
            roots: RootStrategy::Single,
        }
    }
}

impl SchemeConfig {
    pub fn cost_model(&self) -> Result<CostModel> {
        CostModel::new(self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Approach {
    #[serde(rename = "MST")]
    Mst,
    #[serde(rename = "MMST")]
    Mmst,
    #[serde(rename = "MSTP")]
    Mstp,
}

impl Approach {
    pub fn as_str(self) -> &'static str {
        match self {
            Approach::Mst => "MST",
            Approach::Mmst => "MMST",
            Approach::Mstp => "MSTP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeEntry {
    /// `MST`, `MMST-<i>` or `MSTP-<i>` with `i` the sweep index.
    pub label: String,
    pub approach: Approach,
    pub weights: Option<WeightVector>,
    pub edges: Vec<EdgeKey>,
    /// Steiner nodes added by this entry (MSTP only).
    pub steiner_nodes: Vec<Node>,
    pub objectives: ObjectiveVector,
    pub layer: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeResult {
    pub config: SchemeConfig,
    pub instance: Instance,
    pub partition: Partition,
    pub entries: Vec<SchemeEntry>,
}

impl SchemeResult {
    pub fn base_network(&self) -> Result<Network> {
        self.instance.to_network_with(self.config.cost_model()?)
    }

    /// The network an entry's edges live in: the instance plus the entry's
    /// Steiner nodes, with the entry's edges as the only candidates.
    pub fn entry_network(&self, entry: &SchemeEntry) -> Result<Network> {
        let mut nodes = self.instance.terminals();
        nodes.extend(entry.steiner_nodes.iter().cloned());
        Network::new(nodes, Some(&entry.edges), self.config.cost_model()?)
    }

    pub fn entry(&self, label: &str) -> Option<&SchemeEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    /// Recomputes every entry's objective vector from its edges and checks
    /// it against the stored one, and that every entry is a spanning tree.
    pub fn verify(&self) -> Result<()> {
        for e in &self.entries {
            let net = self.entry_network(e)?;
            net.check_spanning_tree(&e.edges)
                .map_err(|err| Error::invalid(format!("entry {}: {err}", e.label)))?;
            let fresh = net.tree_objectives(&e.edges)?;
            let diff = fresh.max_rel_diff(&e.objectives);
            if diff > RECOMPUTE_TOL {
                return Err(Error::invalid(format!(
                    "entry {}: stored objectives {} differ from recomputed {fresh} (rel {diff:e})",
                    e.label, e.objectives
                )));
            }
        }
        let vectors: Vec<ObjectiveVector> = self.entries.iter().map(|e| e.objectives).collect();
        if !vectors.is_empty() {
            let layers = pareto_layers(&vectors, &self.config.senses)?;
            for (e, l) in self.entries.iter().zip(layers) {
                if e.layer != l {
                    return Err(Error::invalid(format!(
                        "entry {}: stored layer {} but recomputed {l}",
                        e.label, e.layer
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn first_layer(&self) -> impl Iterator<Item = &SchemeEntry> {
        self.entries.iter().filter(|e| e.layer == 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes") + "\n"
    }

    /// Parses a stored result and verifies it (see [`SchemeResult::verify`]).
    pub fn from_json(text: &str) -> Result<Self> {
        let r: SchemeResult =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("result JSON: {e}")))?;
        r.verify()?;
        Ok(r)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn render_entry(&self, label: &str, path: impl AsRef<Path>) -> Result<()> {
        let entry = self
            .entry(label)
            .ok_or_else(|| Error::invalid(format!("no entry labeled `{label}`")))?;
        svg::render_svg(&self.entry_network(entry)?, &entry.edges, path)
    }

    /// Writes `report.csv`, `result.json` and `<label>.svg` for every
    /// layer-1 entry into `dir`, creating it if needed.
    pub fn write_outputs(&self, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let mut written = Vec::new();
        let report = dir.join("report.csv");
        write_report(self, &report)?;
        written.push(report);
        let json = dir.join("result.json");
        self.save(&json)?;
        written.push(json);
        for e in self.first_layer() {
            let p = dir.join(format!("{}.svg", e.label));
            self.render_entry(&e.label, &p)?;
            written.push(p);
        }
        Ok(written)
    }
}

/// Maps `f` over `items` on scoped worker threads; output keeps input order.
fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(items.len());
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(f).collect::<Vec<R>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Runs the four stages on `instance`. The cost coefficients of `cfg`
/// override those stored in the instance.
pub fn run_scheme(instance: &Instance, cfg: &SchemeConfig) -> Result<SchemeResult> {
    let net = instance.to_network_with(cfg.cost_model()?)?;
    net.ensure_connected()?;

    let mst = prim_mst(&net, |a| a.length)?;
    let partition = agglomerate(&net, cfg.max_cluster)?;
    let sweep = weight_sweep(cfg.granularity);

    let solved: Vec<Result<(Vec<EdgeKey>, crate::steiner::SteinerSolution)>> =
        ordered_map(&sweep, |w| {
            let sc = ScalarizationConfig::for_network(&net, *w, cfg.senses);
            let tree = multicriteria_prim_with(&net, &sc, cfg.roots)?;
            let steiner = steinerize(&net, &tree, &partition)?;
            Ok((tree, steiner))
        });

    let width = (sweep.len().saturating_sub(1)).to_string().len().max(2);
    let mut entries = vec![SchemeEntry {
        label: "MST".into(),
        approach: Approach::Mst,
        weights: None,
        objectives: net.tree_objectives(&mst)?,
        edges: mst,
        steiner_nodes: Vec::new(),
        layer: 0,
    }];
    let mut mstp = Vec::with_capacity(sweep.len());
    for (i, (w, r)) in sweep.iter().zip(solved).enumerate() {
        let (tree, steiner) = r?;
        entries.push(SchemeEntry {
            label: format!("MMST-{i:0width$}"),
            approach: Approach::Mmst,
            weights: Some(*w),
            objectives: net.tree_objectives(&tree)?,
            edges: tree,
            steiner_nodes: Vec::new(),
            layer: 0,
        });
        mstp.push(SchemeEntry {
            label: format!("MSTP-{i:0width$}"),
            approach: Approach::Mstp,
            weights: Some(*w),
            objectives: steiner.objectives(),
            steiner_nodes: steiner.steiner_nodes(),
            edges: steiner.tree,
            layer: 0,
        });
    }
    entries.extend(mstp);

    let vectors: Vec<ObjectiveVector> = entries.iter().map(|e| e.objectives).collect();
    for (e, l) in entries.iter_mut().zip(pareto_layers(&vectors, &cfg.senses)?) {
        e.layer = l;
    }

    Ok(SchemeResult {
        config: *cfg,
        instance: instance.clone(),
        partition,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::dominates;

    #[test]
    fn three_node_bookkeeping() {
        let inst = generate_instance(3, 5, Terrain::default()).unwrap();
        let cfg = SchemeConfig {
            granularity: 1,
            ..SchemeConfig::default()
        };
        let r = run_scheme(&inst, &cfg).unwrap();
        assert_eq!(r.entries.len(), 9);
        let count = |a| r.entries.iter().filter(|e| e.approach == a).count();
        assert_eq!(count(Approach::Mst), 1);
        assert_eq!(count(Approach::Mmst), 4);
        assert_eq!(count(Approach::Mstp), 4);
        assert!(r.entries.iter().all(|e| e.layer >= 1));
        r.verify().unwrap();
    }

    #[test]
    fn mstp_never_longer_than_its_mmst() {
        let inst = generate_instance(30, 11, Terrain::default()).unwrap();
        let r = run_scheme(&inst, &SchemeConfig::default()).unwrap();
        for e in r.entries.iter().filter(|e| e.approach == Approach::Mstp) {
            let src = r.entry(&e.label.replace("MSTP", "MMST")).unwrap();
            assert!(e.objectives.length <= src.objectives.length + 1e-9);
        }
        let first: Vec<_> = r.first_layer().collect();
        for a in &first {
            for b in &first {
                assert!(!dominates(&a.objectives, &b.objectives, &r.config.senses).unwrap());
            }
        }
    }

    #[test]
    fn disconnected_instance_is_infeasible() {
        let mut inst = generate_instance(4, 1, Terrain::default()).unwrap();
        inst.edges = Some(vec![[0, 1], [2, 3]]);
        assert!(matches!(
            run_scheme(&inst, &SchemeConfig::default()),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn tampered_result_fails_verification() {
        let inst = generate_instance(8, 2, Terrain::default()).unwrap();
        let mut r = run_scheme(&inst, &SchemeConfig::default()).unwrap();
        r.entries[1].objectives.cost += 1e-3;
        assert!(SchemeResult::from_json(&r.to_json()).is_err());
    }

    #[test]
    fn ordered_map_keeps_order() {
        let items: Vec<usize> = (0..103).collect();
        assert_eq!(ordered_map(&items, |x| x * 2), items.iter().map(|x| x * 2).collect::<Vec<_>>());
    }
}
