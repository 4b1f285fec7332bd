use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ir::{index_of, input_of, TruthTable};
use crate::semantics::eval::SWEEP_CAP;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsensReport {
    pub value: usize,
    pub witness: Vec<bool>,
    /// Indices `i` with `witness[i] = 1` whose flip changes the value.
    pub indices: Vec<usize>,
}

fn check_cap(what: &'static str, f: &TruthTable, cap: usize) -> Result<()> {
    if f.num_vars() > cap {
        Err(Error::CapExceeded {
            what,
            num_vars: f.num_vars(),
            cap,
        })
    } else {
        Ok(())
    }
}

fn sensitive_ones(f: &TruthTable, idx: usize) -> impl Iterator<Item = usize> + '_ {
    let v = f.get(idx);
    (0..f.num_vars()).filter(move |&i| idx >> i & 1 == 1 && f.get(idx ^ (1 << i)) != v)
}

/// Indices set to 1 in `a` whose flip changes `f(a)`.
pub fn psens_at(f: &TruthTable, a: &[bool]) -> Result<Vec<usize>> {
    if a.len() != f.num_vars() {
        return Err(Error::LengthMismatch {
            expected: f.num_vars(),
            got: a.len(),
        });
    }
    Ok(sensitive_ones(f, index_of(a)).collect())
}

pub fn psens(f: &TruthTable) -> Result<PsensReport> {
    psens_capped(f, SWEEP_CAP)
}

pub fn psens_capped(f: &TruthTable, cap: usize) -> Result<PsensReport> {
    check_cap("positive sensitivity", f, cap)?;
    let (value, idx) = (0..f.len())
        .into_par_iter()
        .map(|idx| (sensitive_ones(f, idx).count(), idx))
        .reduce(
            || (0, 0),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(PsensReport {
        value,
        witness: input_of(idx, f.num_vars()),
        indices: sensitive_ones(f, idx).collect(),
    })
}

pub fn is_monotone(f: &TruthTable) -> Result<bool> {
    check_cap("monotonicity", f, SWEEP_CAP)?;
    let n = f.num_vars();
    Ok((0..f.len())
        .into_par_iter()
        .all(|idx| !f.get(idx) || (0..n).all(|i| idx >> i & 1 == 1 || f.get(idx | 1 << i))))
}
