use crate::error::Result;
use crate::ir::Circuit;
use crate::semantics::{energy_exhaustive_capped, psens_capped, truth_table_capped, SWEEP_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsensBound {
    pub ec: usize,
    pub psens: usize,
    /// `c + 1` where `c` is the AND/OR fan-in bound, at least 3.
    pub divisor: usize,
    /// `divisor * ec >= psens`.
    pub holds: bool,
    pub ec_argmax: Vec<bool>,
    pub psens_witness: Vec<bool>,
}

pub fn check_psens_bound(c: &Circuit) -> Result<PsensBound> {
    check_psens_bound_capped(c, SWEEP_CAP)
}

pub fn check_psens_bound_capped(c: &Circuit, cap: usize) -> Result<PsensBound> {
    let e = energy_exhaustive_capped(c, cap)?;
    let p = psens_capped(&truth_table_capped(c, cap)?, cap)?;
    let limit = c.fanin().limit().unwrap_or(c.max_fanin());
    let divisor = limit.max(2) + 1;
    Ok(PsensBound {
        ec: e.ec,
        psens: p.value,
        divisor,
        holds: divisor * e.ec >= p.value,
        ec_argmax: e.argmax,
        psens_witness: p.witness,
    })
}
