//! MSR/MBR operating points, the repair and reconstruction inequalities, and
//! storage versus repair-bandwidth curves.

mod bounds;
mod curve;
mod points;
mod star;

pub use bounds::{
    reconstruction_bounds, repair_feasible, NodeRepairCheck, ReconstructionReport,
    RepairFeasibility, SubsetBound,
};
pub use curve::{
    curve_csv, homogeneous_curve, tradeoff_curve, tradeoff_curve_for_spec, TradeoffPoint,
    CSV_HEADER,
};
pub use points::{mbr_point, msr_point, AllocationRule, MbrPoint, MsrPoint};
pub use star::{star_sequence, StarSequence};
