use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CostModel, EdgeKey, Network, Node};
use crate::error::{Error, Result};

/// A station as stored in an instance file (always a terminal).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceNode {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub s: f64,
}

/// The on-disk problem instance.
///
/// ```json
/// { "alpha": 0.001, "beta": 1.0,
///   "nodes": [{"id": 0, "x": 1.0, "y": 2.0, "z": 3.0, "s": 0.5}],
///   "edges": null }
/// ```
///
/// `edges: null` selects the complete geometric graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub alpha: f64,
    pub beta: f64,
    pub nodes: Vec<InstanceNode>,
    pub edges: Option<Vec<[usize; 2]>>,
}

impl Instance {
    pub fn cost_model(&self) -> Result<CostModel> {
        CostModel::new(self.alpha, self.beta)
    }

    pub fn terminals(&self) -> Vec<Node> {
        self.nodes
            .iter()
            .map(|n| Node::terminal(n.id, n.x, n.y, n.z, n.s))
            .collect()
    }

    pub fn candidate_keys(&self) -> Option<Vec<EdgeKey>> {
        self.edges
            .as_ref()
            .map(|es| es.iter().map(|&e| EdgeKey::from(e)).collect())
    }

    /// Builds the network with the instance's own cost coefficients.
    pub fn to_network(&self) -> Result<Network> {
        self.to_network_with(self.cost_model()?)
    }

    pub fn to_network_with(&self, cost: CostModel) -> Result<Network> {
        if self.nodes.is_empty() {
            return Err(Error::invalid("instance has no nodes"));
        }
        Network::new(self.terminals(), self.candidate_keys().as_deref(), cost)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("instance JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|e| Error::io(path, e))
    }
}
