//! Information flow graph of a surviving sequence and its exact max-flow.
//!
//! The graph replays the sequence as single failures: the node at position `j`
//! fails and is rebuilt as a fresh `In'_j -> Out'_j` pair fed by `beta`-weighted
//! edges from the current incarnation of each helper. The data collector `t`
//! reads from the `k` rebuilt nodes. The max-flow from `s` to `t` is an
//! independent route to the per-sequence cut value computed in [`crate::capacity`].

mod graph;
mod maxflow;

pub use graph::{build_flow_graph, Edge, FlowGraph, Vertex, Weight};
pub use maxflow::{max_flow, CutCertificate, CutEdge};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{enumerate_sequences, DssSpec};
use crate::rational::Rational;

/// Minimum over every surviving sequence of the max-flow of its flow graph.
/// Enumerates the full sequence space, so it is meant for small systems.
pub fn capacity_via_flow(spec: &DssSpec) -> Result<Rational> {
    crate::ensure_valid(spec)?;
    let mut best: Option<Rational> = None;
    for seq in enumerate_sequences(spec) {
        let flow = max_flow(&build_flow_graph(spec, &seq)?)?.flow_value;
        if best.as_ref().is_none_or(|b| flow < *b) {
            best = Some(flow);
        }
        if best.as_ref().is_some_and(Zero::is_zero) {
            break;
        }
    }
    best.ok_or_else(|| Error::Precondition("no surviving sequence exists".into()))
}
