//! Topology design for communication networks as a multicriteria Steiner
//! tree problem.
//!
//! The solving scheme runs in four stages:
//!
//! 1. [`spanning`]: a length MST plus one multicriteria spanning tree per
//!    weight vector of a swept simplex (quadratic-utility scalarization).
//! 2. [`clustering`]: size-capped single-linkage agglomeration of the
//!    terminals into small groups.
//! 3. [`steiner`]: a Euclidean Steiner tree per cluster (Fermat-point
//!    insertion with geometric-median refinement), reassembled into one tree.
//! 4. [`pareto`]: Pareto layer peeling over the objective vectors
//!    `(L, C, Q, Delta)` of every candidate topology.
//!
//! [`pipeline`] wires the stages together, generates seeded instances and
//! writes CSV reports, JSON results and SVG renderings.

pub mod clustering;
pub mod error;
pub mod model;
pub mod pareto;
pub mod pipeline;
pub mod spanning;
pub mod steiner;
pub mod svg;

pub use error::{Error, Result};
pub use model::{
    CostModel, Criterion, EdgeAttr, EdgeKey, Instance, Network, Node, NodeKind, ObjectiveVector,
    Point, Sense, SenseVector,
};
