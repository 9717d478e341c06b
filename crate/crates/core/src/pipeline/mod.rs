//! Degree 9 to 15: gms caps, order bounds and group elimination.

pub mod caps;
pub mod eliminate;
pub mod report;

pub use caps::{
    compare_modes, evaluate, evaluate_scenario, gms_caps_for_degree, gms_caps_with_table,
    order_bounds_for_degree, paper_scenarios, Bucket, CapComparison, CapEntry, ComponentSpec,
    DegreeClass, Evaluation, GmsCaps, Mode, Scenario,
};
pub use eliminate::{
    eliminate, eliminate_all, two_part, EliminationError, EliminationTrace, EliminationVerdict,
    Stage,
};
pub use report::{report, Report, Status, SIMPLE_GROUPS};
