use crate::error::{Error, Result};
use crate::ir::gate::{FaninMode, Gate, GateId, GateKind};

/// A single-output DAG over `num_vars` inputs. Gates are stored in topological
/// order and that order is the canonical one used for firing patterns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_vars: usize,
    gates: Vec<Gate>,
    output: GateId,
    fanin: FaninMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stats {
    pub size: usize,
    pub depth: usize,
    pub negs: usize,
    pub leaves: Option<usize>,
}

impl Circuit {
    /// Validates and builds a circuit. Each variable may label at most one INPUT gate.
    pub fn new(
        num_vars: usize,
        gates: Vec<Gate>,
        output: GateId,
        fanin: FaninMode,
    ) -> Result<Self> {
        Self::build(num_vars, gates, output, fanin, false)
    }

    /// Like [`Circuit::new`] but allows several INPUT gates per variable, as
    /// formulas need one per leaf occurrence.
    pub(crate) fn build(
        num_vars: usize,
        gates: Vec<Gate>,
        output: GateId,
        fanin: FaninMode,
        allow_dup_inputs: bool,
    ) -> Result<Self> {
        let mut seen = vec![false; num_vars];
        for (id, g) in gates.iter().enumerate() {
            let arity = g.children.len();
            let bad = |detail: String| Err(Error::ArityViolation { gate: id, detail });
            match g.kind {
                GateKind::Input(v) => {
                    if v >= num_vars {
                        return Err(Error::VarOutOfRange { var: v, num_vars });
                    }
                    if seen[v] && !allow_dup_inputs {
                        return Err(Error::DuplicateInputVar { var: v });
                    }
                    seen[v] = true;
                    if arity != 0 {
                        return bad(format!("INPUT takes no children, got {arity}"));
                    }
                }
                GateKind::Const(_) if arity != 0 => {
                    return bad(format!("CONST takes no children, got {arity}"));
                }
                GateKind::Not if arity != 1 => {
                    return bad(format!("NOT takes one child, got {arity}"));
                }
                GateKind::And | GateKind::Or if !fanin.allows(arity) => {
                    return bad(format!(
                        "{} with {arity} children under fan-in {fanin}",
                        g.kind.mnemonic()
                    ));
                }
                _ => {}
            }
            if let Some(&c) = g.children.iter().find(|&&c| c >= id) {
                return bad(format!("child {c} does not precede the gate"));
            }
        }
        if output >= gates.len() {
            return Err(Error::NoSuchGate(output));
        }
        Ok(Circuit {
            num_vars,
            gates,
            output,
            fanin,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> &Gate {
        &self.gates[id]
    }

    pub fn kind(&self, id: GateId) -> GateKind {
        self.gates[id].kind
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn fanin(&self) -> FaninMode {
        self.fanin
    }

    /// Re-validates under another fan-in mode.
    pub fn with_fanin(self, fanin: FaninMode) -> Result<Self> {
        let dup = self.has_duplicate_inputs();
        Self::build(self.num_vars, self.gates, self.output, fanin, dup)
    }

    /// Re-validates over a larger variable set.
    pub fn with_num_vars(self, num_vars: usize) -> Result<Self> {
        let dup = self.has_duplicate_inputs();
        Self::build(num_vars, self.gates, self.output, self.fanin, dup)
    }

    pub fn has_duplicate_inputs(&self) -> bool {
        let mut seen = vec![false; self.num_vars];
        for g in &self.gates {
            if let GateKind::Input(v) = g.kind {
                if std::mem::replace(&mut seen[v], true) {
                    return true;
                }
            }
        }
        false
    }

    /// Largest AND/OR fan-in, 0 when there is none.
    pub fn max_fanin(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::And | GateKind::Or))
            .map(|g| g.children.len())
            .max()
            .unwrap_or(0)
    }

    pub fn parents(&self) -> Vec<Vec<GateId>> {
        let mut parents = vec![Vec::new(); self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            for &c in &g.children {
                parents[c].push(id);
            }
        }
        parents
    }

    /// Gate ids with at least one NOT, AND or OR gate.
    pub fn logic_gates(&self) -> impl Iterator<Item = GateId> + '_ {
        (0..self.gates.len()).filter(|&id| self.gates[id].kind.is_logic())
    }

    pub fn size(&self) -> usize {
        self.logic_gates().count()
    }

    pub fn negs(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| g.kind == GateKind::Not)
            .count()
    }

    /// Longest path, in edges, from the output down to a leaf.
    pub fn depth(&self) -> usize {
        let mut d = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            d[id] = g.children.iter().map(|&c| d[c] + 1).max().unwrap_or(0);
        }
        d[self.output]
    }

    pub fn input_gates(&self, var: usize) -> Vec<GateId> {
        (0..self.gates.len())
            .filter(|&id| self.gates[id].kind == GateKind::Input(var))
            .collect()
    }

    /// True when every gate but the output has exactly one parent and the
    /// output has none.
    pub fn is_formula_shaped(&self) -> bool {
        let mut outdeg = vec![0usize; self.gates.len()];
        for g in &self.gates {
            for &c in &g.children {
                outdeg[c] += 1;
            }
        }
        outdeg
            .iter()
            .enumerate()
            .all(|(id, &d)| if id == self.output { d == 0 } else { d == 1 })
    }

    pub fn stats(&self) -> Stats {
        let leaves = self.is_formula_shaped().then(|| {
            self.gates
                .iter()
                .filter(|g| matches!(g.kind, GateKind::Input(_)))
                .count()
        });
        Stats {
            size: self.size(),
            depth: self.depth(),
            negs: self.negs(),
            leaves,
        }
    }

    /// No NOT sits above another NOT or a constant, and no gate feeds two NOTs.
    pub fn is_negation_distinct(&self) -> bool {
        let mut fed = vec![false; self.gates.len()];
        for g in &self.gates {
            if g.kind == GateKind::Not {
                let c = g.children[0];
                if matches!(self.gates[c].kind, GateKind::Not | GateKind::Const(_)) {
                    return false;
                }
                if std::mem::replace(&mut fed[c], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Fixes the listed variables and propagates constants.
    pub fn restrict(&self, assignment: &[(usize, bool)]) -> Result<Circuit> {
        let mut fixed = vec![None; self.gates.len()];
        for &(var, bit) in assignment {
            if var >= self.num_vars {
                return Err(Error::VarOutOfRange {
                    var,
                    num_vars: self.num_vars,
                });
            }
            for id in self.input_gates(var) {
                fixed[id] = Some(bit);
            }
        }
        Ok(self.hardwire(&fixed))
    }

    /// Replaces each gate with `fixed[id] = Some(b)` by CONST b, then turns every
    /// gate whose value is forced by its constant children into a CONST and drops
    /// gates no longer reachable from the output. Other gates keep their children.
    pub fn hardwire(&self, fixed: &[Option<bool>]) -> Circuit {
        let mut val: Vec<Option<bool>> = Vec::with_capacity(self.gates.len());
        for (id, g) in self.gates.iter().enumerate() {
            let v = fixed[id].or_else(|| {
                let mut kids = g.children.iter().map(|&c| val[c]);
                match g.kind {
                    GateKind::Const(b) => Some(b),
                    GateKind::Input(_) => None,
                    GateKind::Not => val[g.children[0]].map(|b| !b),
                    GateKind::And => {
                        if kids.clone().any(|v| v == Some(false)) {
                            Some(false)
                        } else if kids.all(|v| v == Some(true)) {
                            Some(true)
                        } else {
                            None
                        }
                    }
                    GateKind::Or => {
                        if kids.clone().any(|v| v == Some(true)) {
                            Some(true)
                        } else if kids.all(|v| v == Some(false)) {
                            Some(false)
                        } else {
                            None
                        }
                    }
                }
            });
            val.push(v);
        }
        let gates = self
            .gates
            .iter()
            .zip(&val)
            .map(|(g, v)| match v {
                Some(b) => Gate::constant(*b),
                None => g.clone(),
            })
            .collect();
        prune(self.num_vars, gates, self.output, self.fanin)
    }

    /// Drops gates unreachable from the output, keeping relative order.
    pub fn pruned(&self) -> Circuit {
        prune(self.num_vars, self.gates.clone(), self.output, self.fanin)
    }
}

fn prune(num_vars: usize, gates: Vec<Gate>, output: GateId, fanin: FaninMode) -> Circuit {
    let mut live = vec![false; gates.len()];
    live[output] = true;
    for id in (0..gates.len()).rev() {
        if live[id] {
            for &c in &gates[id].children {
                live[c] = true;
            }
        }
    }
    let mut remap = vec![usize::MAX; gates.len()];
    let mut kept = Vec::new();
    for (id, g) in gates.into_iter().enumerate() {
        if live[id] {
            remap[id] = kept.len();
            kept.push(Gate {
                kind: g.kind,
                children: g.children.iter().map(|&c| remap[c]).collect(),
            });
        }
    }
    Circuit {
        num_vars,
        gates: kept,
        output: remap[output],
        fanin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and2() -> Circuit {
        Circuit::new(
            2,
            vec![Gate::input(0), Gate::input(1), Gate::and(vec![0, 1])],
            2,
            FaninMode::Fanin2,
        )
        .unwrap()
    }

    #[test]
    fn validation_errors() {
        let e = Circuit::new(
            1,
            vec![Gate::input(0), Gate::input(0)],
            1,
            FaninMode::Fanin2,
        );
        assert_eq!(e, Err(Error::DuplicateInputVar { var: 0 }));
        let e = Circuit::new(
            1,
            vec![Gate::input(0), Gate::and(vec![0])],
            1,
            FaninMode::Unbounded,
        );
        assert!(matches!(e, Err(Error::ArityViolation { gate: 1, .. })));
        let e = Circuit::new(1, vec![Gate::not(0)], 0, FaninMode::Fanin2);
        assert!(matches!(e, Err(Error::ArityViolation { gate: 0, .. })));
        let e = Circuit::new(1, vec![Gate::input(3)], 0, FaninMode::Fanin2);
        assert_eq!(
            e,
            Err(Error::VarOutOfRange {
                var: 3,
                num_vars: 1
            })
        );
        let e = Circuit::new(
            3,
            (0..3)
                .map(Gate::input)
                .chain([Gate::and(vec![0, 1, 2])])
                .collect(),
            3,
            FaninMode::Fanin2,
        );
        assert!(matches!(e, Err(Error::ArityViolation { gate: 3, .. })));
    }

    #[test]
    fn stats_of_small_circuits() {
        let s = and2().stats();
        assert_eq!((s.size, s.depth, s.negs, s.leaves), (1, 1, 0, Some(2)));
        let nand = Circuit::new(
            2,
            vec![
                Gate::input(0),
                Gate::input(1),
                Gate::and(vec![0, 1]),
                Gate::not(2),
            ],
            3,
            FaninMode::Fanin2,
        )
        .unwrap();
        let s = nand.stats();
        assert_eq!((s.size, s.depth, s.negs), (2, 2, 1));
    }

    #[test]
    fn restrict_and2() {
        let c = and2();
        let one = c.restrict(&[(0, true)]).unwrap();
        assert_eq!(
            one.gates(),
            &[Gate::constant(true), Gate::input(1), Gate::and(vec![0, 1])]
        );
        let zero = c.restrict(&[(0, false)]).unwrap();
        assert_eq!(zero.gates(), &[Gate::constant(false)]);
        assert_eq!(zero.output(), 0);
        assert_eq!(
            c.restrict(&[(2, true)]),
            Err(Error::VarOutOfRange {
                var: 2,
                num_vars: 2
            })
        );
    }

    #[test]
    fn negation_distinct() {
        let nn = Circuit::new(
            1,
            vec![Gate::input(0), Gate::not(0), Gate::not(1)],
            2,
            FaninMode::Fanin2,
        )
        .unwrap();
        assert!(!nn.is_negation_distinct());
        let two = Circuit::new(
            2,
            vec![
                Gate::input(0),
                Gate::input(1),
                Gate::not(0),
                Gate::not(0),
                Gate::and(vec![2, 3]),
            ],
            4,
            FaninMode::Fanin2,
        )
        .unwrap();
        assert!(!two.is_negation_distinct());
        assert!(and2().is_negation_distinct());
    }
}
