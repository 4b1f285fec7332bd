//! Witnesses for the energy lower bounds: positive paths, the positive
//! sensitivity bound and decision trees read off firing patterns.

mod paths;
mod patterns_dt;
mod psens_bound;

pub use paths::{find_positive_path, PositivePath, Terminal};
pub use patterns_dt::{dt_from_patterns, dt_from_patterns_capped, TradeoffReport};
pub use psens_bound::{check_psens_bound, check_psens_bound_capped, PsensBound};
