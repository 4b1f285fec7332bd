use crate::error::{Error, Result};
use crate::ir::{Circuit, FaninMode, Gate, GateId, TruthTable};
use crate::semantics::SWEEP_CAP;

/// A circuit computing every minterm in `n` variables. `taps[m]` is the gate
/// that outputs 1 exactly on the input with index `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MintermCascade {
    pub circuit: Circuit,
    pub taps: Vec<GateId>,
    pub n: usize,
}

pub fn minterm_cascade(n: usize) -> Result<MintermCascade> {
    minterm_cascade_capped(n, SWEEP_CAP)
}

/// Builds the minterms level by level: the taps over `x0..x(k-1)` each split
/// into an AND with `¬xk` and an AND with `xk`. One NOT per variable.
pub fn minterm_cascade_capped(n: usize, cap: usize) -> Result<MintermCascade> {
    if n == 0 {
        return Err(Error::Malformed {
            what: "minterm cascade",
            detail: "needs at least one variable".into(),
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "minterm cascade",
            num_vars: n,
            cap,
        });
    }
    let (gates, taps) = cascade_gates(n);
    let output = *taps.last().expect("at least two taps");
    let circuit = Circuit::new(n, gates, output, FaninMode::Fanin2)?;
    Ok(MintermCascade { circuit, taps, n })
}

fn cascade_gates(n: usize) -> (Vec<Gate>, Vec<GateId>) {
    let mut gates: Vec<Gate> = (0..n).map(Gate::input).collect();
    gates.push(Gate::not(0));
    let mut taps = vec![n, 0];
    for k in 1..n {
        let neg = gates.len();
        gates.push(Gate::not(k));
        let mut next = vec![0; taps.len() * 2];
        for (m, &t) in taps.iter().enumerate() {
            next[m] = gates.len();
            gates.push(Gate::and(vec![t, neg]));
        }
        for (m, &t) in taps.iter().enumerate() {
            next[m + taps.len()] = gates.len();
            gates.push(Gate::and(vec![t, k]));
        }
        taps = next;
    }
    (gates, taps)
}

/// Cascade plus a balanced OR tree over the taps of `f^-1(1)`, with a shared
/// CONST 0 in place of the other taps.
pub fn compile_truth_table(f: &TruthTable) -> Result<Circuit> {
    compile_truth_table_capped(f, SWEEP_CAP)
}

pub fn compile_truth_table_capped(f: &TruthTable, cap: usize) -> Result<Circuit> {
    let n = f.num_vars();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "truth-table compiler",
            num_vars: n,
            cap,
        });
    }
    if n == 0 {
        return Circuit::new(0, vec![Gate::constant(f.get(0))], 0, FaninMode::Fanin2);
    }
    let (mut gates, taps) = cascade_gates(n);
    let zero = gates.len();
    gates.push(Gate::constant(false));
    let mut layer: Vec<GateId> = taps
        .iter()
        .enumerate()
        .map(|(m, &t)| if f.get(m) { t } else { zero })
        .collect();
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for pair in layer.chunks(2) {
            match pair {
                [a, b] => {
                    next.push(gates.len());
                    gates.push(Gate::or(vec![*a, *b]));
                }
                [a] => next.push(*a),
                _ => unreachable!(),
            }
        }
        layer = next;
    }
    let output = layer[0];
    Circuit::new(n, gates, output, FaninMode::Fanin2)
}
