//! Evaluation, energy, firing patterns and function-level measures.

mod analysis;
mod dt_depth;
mod eval;

pub use analysis::{is_monotone, psens, psens_at, psens_capped, PsensReport};
pub use dt_depth::{dt_depth, dt_depth_capped, DtDepth, DT_CAP};
pub use eval::{
    block_count, constant_gates, energy_at, energy_exhaustive, energy_exhaustive_capped,
    energy_weighted_capped, equivalent, equivalent_to_table, eval_block, evaluate, firing_patterns,
    firing_patterns_capped, gate_values, truth_table, truth_table_capped, EnergyReport, EvalTrace,
    FiringPattern, SWEEP_CAP,
};
