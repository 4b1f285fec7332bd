use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ir::{Circuit, GateId, GateKind};
use crate::semantics::gate_values;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Terminal {
    Root,
    FeedsNot(GateId),
}

/// A child-to-parent chain of gates that all output 1 on `input`, starting at
/// an INPUT gate of `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivePath {
    pub gates: Vec<GateId>,
    pub terminal: Terminal,
    pub input: Vec<bool>,
    pub var: usize,
}

impl PositivePath {
    /// Re-checks wiring, firing and the terminal condition against `c`.
    pub fn verify(&self, c: &Circuit) -> bool {
        let v = gate_values(c, &self.input);
        let Some(&first) = self.gates.first() else {
            return false;
        };
        let Some(&last) = self.gates.last() else {
            return false;
        };
        c.kind(first) == GateKind::Input(self.var)
            && self.gates.iter().all(|&g| v[g])
            && self
                .gates
                .windows(2)
                .all(|w| c.gate(w[1]).children.contains(&w[0]))
            && match self.terminal {
                Terminal::Root => last == c.output(),
                Terminal::FeedsNot(n) => {
                    c.kind(n) == GateKind::Not && c.gate(n).children[0] == last
                }
            }
    }
}

/// Breadth-first search from the INPUT gate(s) of `var` through firing parents,
/// lowest ids first, stopping at the output or at a gate feeding a NOT.
pub fn find_positive_path(c: &Circuit, input: &[bool], var: usize) -> Result<PositivePath> {
    if input.len() != c.num_vars() {
        return Err(Error::LengthMismatch {
            expected: c.num_vars(),
            got: input.len(),
        });
    }
    if var >= c.num_vars() {
        return Err(Error::VarOutOfRange {
            var,
            num_vars: c.num_vars(),
        });
    }
    let values = gate_values(c, input);
    if !input[var] {
        return Err(Error::NotPositivelySensitive { var });
    }
    let mut flipped = input.to_vec();
    flipped[var] = false;
    if gate_values(c, &flipped)[c.output()] == values[c.output()] {
        return Err(Error::NotPositivelySensitive { var });
    }
    let parents = c.parents();
    let mut prev = vec![usize::MAX; c.len()];
    let mut seen = vec![false; c.len()];
    let mut queue: VecDeque<GateId> = c.input_gates(var).into();
    for &g in &queue {
        seen[g] = true;
    }
    while let Some(g) = queue.pop_front() {
        let terminal = if g == c.output() {
            Some(Terminal::Root)
        } else {
            parents[g]
                .iter()
                .copied()
                .filter(|&p| c.kind(p) == GateKind::Not)
                .min()
                .map(Terminal::FeedsNot)
        };
        if let Some(terminal) = terminal {
            let mut gates = vec![g];
            while prev[*gates.last().unwrap()] != usize::MAX {
                gates.push(prev[*gates.last().unwrap()]);
            }
            gates.reverse();
            return Ok(PositivePath {
                gates,
                terminal,
                input: input.to_vec(),
                var,
            });
        }
        let mut next: Vec<GateId> = parents[g]
            .iter()
            .copied()
            .filter(|&p| values[p] && !seen[p])
            .collect();
        next.sort_unstable();
        next.dedup();
        for p in next {
            seen[p] = true;
            prev[p] = g;
            queue.push_back(p);
        }
    }
    Err(Error::NoPathFound { var })
}
