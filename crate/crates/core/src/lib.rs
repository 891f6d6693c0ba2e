//! Exact solvers for balanced graph partitioning problems.
//!
//! * [`vbp`]: vertex bisection through separator-preserving graph trimming
//!   and a dynamic program over nice tree decompositions.
//! * [`cwcut`]: edge bisection over a labelled-graph expression of the graph
//!   minus a small deletion set.
//! * [`vcpart`]: balanced `d`-way partitioning parameterized by vertex cover.
//! * [`reductions`]: instance generators for the related hardness gadgets.
//! * [`oracle`]: exhaustive reference solvers.

pub mod cwcut;
pub mod decomp;
pub mod graph;
pub mod oracle;
pub mod qexpr;
pub mod reductions;
pub mod torso;
pub mod vbp;
pub mod vcpart;

pub use graph::{
    Bipartition, DPartition, Graph, GraphBuilder, GraphError, Separation, Vertex, VertexSet,
};
