use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ir::{input_of, word_mask, Circuit, GateKind, TruthTable, VAR_MASKS};

/// Default enumeration cap for sweeps over all inputs.
pub const SWEEP_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalTrace {
    pub input: Vec<bool>,
    pub values: Vec<bool>,
    pub energy: usize,
}

impl EvalTrace {
    pub fn output(&self, c: &Circuit) -> bool {
        self.values[c.output()]
    }
}

pub fn evaluate(c: &Circuit, input: &[bool]) -> Result<EvalTrace> {
    if input.len() != c.num_vars() {
        return Err(Error::LengthMismatch {
            expected: c.num_vars(),
            got: input.len(),
        });
    }
    let values = gate_values(c, input);
    let energy = c.logic_gates().filter(|&g| values[g]).count();
    Ok(EvalTrace {
        input: input.to_vec(),
        values,
        energy,
    })
}

/// Gate values on one input; `input` must have `c.num_vars()` entries.
pub fn gate_values(c: &Circuit, input: &[bool]) -> Vec<bool> {
    let mut v: Vec<bool> = Vec::with_capacity(c.len());
    for g in c.gates() {
        let x = match g.kind {
            GateKind::Input(i) => input[i],
            GateKind::Const(b) => b,
            GateKind::Not => !v[g.children[0]],
            GateKind::And => g.children.iter().all(|&ch| v[ch]),
            GateKind::Or => g.children.iter().any(|&ch| v[ch]),
        };
        v.push(x);
    }
    v
}

pub fn energy_at(c: &Circuit, input: &[bool]) -> Result<usize> {
    evaluate(c, input).map(|t| t.energy)
}

/// Number of 64-input blocks covering all inputs of an `n`-variable circuit.
pub fn block_count(num_vars: usize) -> usize {
    if num_vars >= 6 {
        1 << (num_vars - 6)
    } else {
        1
    }
}

/// Evaluates lanes `64*block .. 64*block+63` at once; lane `j` holds input
/// index `64*block + j`. Lanes past 2^n (for n < 6) hold garbage; mask them
/// with [`word_mask`].
pub fn eval_block(c: &Circuit, block: usize, out: &mut Vec<u64>) {
    out.clear();
    for g in c.gates() {
        let w = match g.kind {
            GateKind::Input(i) if i < 6 => VAR_MASKS[i],
            GateKind::Input(i) => {
                if (block >> (i - 6)) & 1 == 1 {
                    !0
                } else {
                    0
                }
            }
            GateKind::Const(b) => {
                if b {
                    !0
                } else {
                    0
                }
            }
            GateKind::Not => !out[g.children[0]],
            GateKind::And => g.children.iter().fold(!0, |acc, &ch| acc & out[ch]),
            GateKind::Or => g.children.iter().fold(0, |acc, &ch| acc | out[ch]),
        };
        out.push(w);
    }
}

fn check_cap(what: &'static str, c: &Circuit, cap: usize) -> Result<()> {
    if c.num_vars() > cap {
        Err(Error::CapExceeded {
            what,
            num_vars: c.num_vars(),
            cap,
        })
    } else {
        Ok(())
    }
}

/// Per-lane popcount over selected words, as bit planes (plane k = bit k of the count).
fn lane_counts<'a>(words: impl Iterator<Item = &'a u64>, planes: &mut Vec<u64>) {
    planes.clear();
    for &w in words {
        let mut carry = w;
        for p in planes.iter_mut() {
            if carry == 0 {
                break;
            }
            let next = *p & carry;
            *p ^= carry;
            carry = next;
        }
        if carry != 0 {
            planes.push(carry);
        }
    }
}

fn lane_value(planes: &[u64], lane: usize) -> usize {
    planes
        .iter()
        .enumerate()
        .map(|(k, p)| ((p >> lane & 1) as usize) << k)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyReport {
    /// Maximum energy over all inputs.
    pub ec: usize,
    /// Smallest-index input reaching `ec`.
    pub argmax: Vec<bool>,
    /// Sum of the energies over all 2^n inputs.
    pub total: u64,
}

impl EnergyReport {
    pub fn mean(&self, num_vars: usize) -> f64 {
        self.total as f64 / (1u64 << num_vars) as f64
    }
}

pub fn energy_exhaustive(c: &Circuit) -> Result<EnergyReport> {
    energy_exhaustive_capped(c, SWEEP_CAP)
}

pub fn energy_exhaustive_capped(c: &Circuit, cap: usize) -> Result<EnergyReport> {
    let counted: Vec<bool> = c.gates().iter().map(|g| g.kind.is_logic()).collect();
    energy_weighted_capped(c, &counted, cap)
}

/// Like [`energy_exhaustive`] but counting only the gates with `counted[id]`.
pub fn energy_weighted_capped(c: &Circuit, counted: &[bool], cap: usize) -> Result<EnergyReport> {
    check_cap("energy sweep", c, cap)?;
    let n = c.num_vars();
    let mask = word_mask(n);
    let ids: Vec<usize> = (0..c.len()).filter(|&g| counted[g]).collect();
    let (ec, arg, total) = (0..block_count(n))
        .into_par_iter()
        .map_init(
            || (Vec::new(), Vec::new(), Vec::new()),
            |(vals, planes, sel): &mut (Vec<u64>, Vec<u64>, Vec<u64>), block| {
                eval_block(c, block, vals);
                sel.clear();
                sel.extend(ids.iter().map(|&g| vals[g] & mask));
                let total: u64 = sel.iter().map(|w| w.count_ones() as u64).sum();
                lane_counts(sel.iter(), planes);
                let mut best = (0usize, block * 64);
                for lane in 0..64 {
                    if mask >> lane & 1 == 0 {
                        break;
                    }
                    let e = lane_value(planes, lane);
                    if e > best.0 {
                        best = (e, block * 64 + lane);
                    }
                }
                (best.0, best.1, total)
            },
        )
        .reduce(
            || (0, usize::MAX, 0),
            |a, b| {
                let pick = if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                    (a.0, a.1)
                } else {
                    (b.0, b.1)
                };
                (pick.0, pick.1, a.2 + b.2)
            },
        );
    Ok(EnergyReport {
        ec,
        argmax: input_of(arg, n),
        total,
    })
}

/// Values of the NOT/AND/OR gates in canonical order, packed 64 per word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiringPattern {
    pub len: usize,
    pub bits: Vec<u64>,
}

impl FiringPattern {
    pub fn get(&self, k: usize) -> bool {
        self.bits[k >> 6] >> (k & 63) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}

pub fn firing_patterns(c: &Circuit) -> Result<BTreeSet<FiringPattern>> {
    firing_patterns_capped(c, SWEEP_CAP)
}

pub fn firing_patterns_capped(c: &Circuit, cap: usize) -> Result<BTreeSet<FiringPattern>> {
    check_cap("firing patterns", c, cap)?;
    let n = c.num_vars();
    let mask = word_mask(n);
    let ids: Vec<usize> = c.logic_gates().collect();
    let words = ids.len().div_ceil(64).max(1);
    Ok((0..block_count(n))
        .into_par_iter()
        .fold(
            || (BTreeSet::new(), Vec::new()),
            |(mut set, mut vals), block| {
                eval_block(c, block, &mut vals);
                for lane in (0..64).take_while(|&l| mask >> l & 1 == 1) {
                    let mut bits = vec![0u64; words];
                    for (k, &g) in ids.iter().enumerate() {
                        bits[k >> 6] |= (vals[g] >> lane & 1) << (k & 63);
                    }
                    set.insert(FiringPattern {
                        len: ids.len(),
                        bits,
                    });
                }
                (set, vals)
            },
        )
        .map(|(set, _)| set)
        .reduce(BTreeSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            a
        }))
}

/// For each gate, `Some(b)` when it outputs `b` on every input.
pub fn constant_gates(c: &Circuit) -> Result<Vec<Option<bool>>> {
    check_cap("constant gates", c, SWEEP_CAP)?;
    let n = c.num_vars();
    let mask = word_mask(n);
    let (any, all) = (0..block_count(n))
        .into_par_iter()
        .map_init(Vec::new, |vals, block| {
            eval_block(c, block, vals);
            let any: Vec<u64> = vals.iter().map(|w| w & mask).collect();
            let all: Vec<u64> = vals.iter().map(|w| w | !mask).collect();
            (any, all)
        })
        .reduce(
            || (vec![0; c.len()], vec![!0; c.len()]),
            |(a1, l1), (a2, l2)| {
                (
                    a1.iter().zip(&a2).map(|(x, y)| x | y).collect(),
                    l1.iter().zip(&l2).map(|(x, y)| x & y).collect(),
                )
            },
        );
    Ok((0..c.len())
        .map(|g| {
            if any[g] == 0 {
                Some(false)
            } else if all[g] == !0 {
                Some(true)
            } else {
                None
            }
        })
        .collect())
}

pub fn truth_table(c: &Circuit) -> Result<TruthTable> {
    truth_table_capped(c, SWEEP_CAP)
}

pub fn truth_table_capped(c: &Circuit, cap: usize) -> Result<TruthTable> {
    check_cap("truth table", c, cap)?;
    let out = c.output();
    let words: Vec<u64> = (0..block_count(c.num_vars()))
        .into_par_iter()
        .map_init(Vec::new, |vals, block| {
            eval_block(c, block, vals);
            vals[out]
        })
        .collect();
    Ok(TruthTable::from_words(c.num_vars(), words))
}

/// Compares the functions of two circuits over the larger variable set.
pub fn equivalent(a: &Circuit, b: &Circuit) -> Result<bool> {
    let n = a.num_vars().max(b.num_vars());
    Ok(truth_table(a)?.padded(n) == truth_table(b)?.padded(n))
}

/// Compares the function of `c` with `f` over the larger variable set.
pub fn equivalent_to_table(c: &Circuit, f: &TruthTable) -> Result<bool> {
    let n = c.num_vars().max(f.num_vars());
    Ok(truth_table(c)?.padded(n) == f.padded(n))
}
