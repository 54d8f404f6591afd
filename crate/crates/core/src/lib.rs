//! Exact capacity analysis for heterogeneous distributed storage systems.
//!
//! A system of `n` nodes stores a file so that any `k` nodes can rebuild it.
//! Node `U_i` stores `alpha_i` packets and, when it fails, is rebuilt by
//! downloading `beta` packets from each member of one of its surviving sets.
//!
//! * [`model`] describes and validates systems and enumerates surviving sequences.
//! * [`capacity`] minimises the per-sequence cut value to obtain the capacity.
//! * [`floworacle`] builds the information flow graph of a sequence and solves
//!   its max-flow exactly, as an independent check of the cut formula.
//! * [`tradeoff`] derives MSR/MBR operating points and storage/bandwidth curves.
//!
//! All quantities are exact rationals ([`Rational`]).

pub mod capacity;
pub mod error;
pub mod fixtures;
pub mod floworacle;
pub mod model;
mod prepared;
pub mod rational;
pub mod tradeoff;

pub use capacity::{
    capacity, capacity_with, feasibility, homogeneous_capacity, sequence_value, CapacityOptions,
    CapacityResult, CutTerm, CutTerms, Feasibility, Strategy,
};
pub use error::{Error, Result};
pub use floworacle::{
    build_flow_graph, capacity_via_flow, max_flow, CutCertificate, FlowGraph, Vertex, Weight,
};
pub use model::{
    count_sequences, enumerate_sequences, validate_spec, DssSpec, NodeSpec, Rule, SequenceEntry,
    SurvivingSequence, ValidationReport, Violation,
};
pub use rational::Rational;
pub use tradeoff::{
    mbr_point, msr_point, reconstruction_bounds, repair_feasible, star_sequence, tradeoff_curve,
    MbrPoint, MsrPoint, StarSequence, TradeoffPoint,
};

/// Fails with [`Error::InvalidSpec`] unless the spec validates.
pub fn ensure_valid(spec: &DssSpec) -> Result<()> {
    let report = spec.validate();
    if report.ok {
        Ok(())
    } else {
        Err(Error::InvalidSpec(report))
    }
}

/// Runs `op` on a dedicated pool of `threads` workers, or on the global pool.
pub(crate) fn with_threads<T: Send>(
    threads: Option<usize>,
    op: impl FnOnce() -> T + Send,
) -> Result<T> {
    match threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()?;
            Ok(pool.install(op))
        }
        None => Ok(op()),
    }
}
