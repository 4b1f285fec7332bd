use std::ops::Deref;

use crate::error::{Error, Result};
use crate::ir::builder::Graph;
use crate::ir::circuit::Circuit;
use crate::ir::gate::{FaninMode, Gate, GateId, GateKind};

/// A tree-shaped circuit: every gate but the output has exactly one parent.
/// INPUT gates repeat, one per leaf occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula(Circuit);

impl Formula {
    pub fn new(
        num_vars: usize,
        gates: Vec<Gate>,
        output: GateId,
        fanin: FaninMode,
    ) -> Result<Self> {
        Self::from_circuit(Circuit::build(num_vars, gates, output, fanin, true)?)
    }

    pub fn from_circuit(c: Circuit) -> Result<Self> {
        if c.is_formula_shaped() {
            Ok(Formula(c))
        } else {
            Err(Error::NotAFormula(
                "some gate has out-degree other than one".into(),
            ))
        }
    }

    /// A single-leaf formula over `num_vars` variables.
    pub fn variable(var: usize, num_vars: usize) -> Result<Self> {
        Self::new(num_vars, vec![Gate::input(var)], 0, FaninMode::Fanin2)
    }

    pub fn constant(bit: bool, num_vars: usize) -> Self {
        Formula(
            Circuit::build(
                num_vars,
                vec![Gate::constant(bit)],
                0,
                FaninMode::Fanin2,
                true,
            )
            .expect("valid"),
        )
    }

    pub fn circuit(&self) -> &Circuit {
        &self.0
    }

    pub fn into_circuit(self) -> Circuit {
        self.0
    }

    /// Number of INPUT leaves.
    pub fn leaves(&self) -> usize {
        self.gates()
            .iter()
            .filter(|g| matches!(g.kind, GateKind::Input(_)))
            .count()
    }

    /// Parent of each gate; `None` for the root.
    pub fn parent_of(&self) -> Vec<Option<GateId>> {
        let mut parent = vec![None; self.len()];
        for (id, g) in self.gates().iter().enumerate() {
            for &c in &g.children {
                parent[c] = Some(id);
            }
        }
        parent
    }

    /// The subtree rooted at `g` as a formula over the same variables.
    pub fn subformula(&self, g: GateId) -> Result<Formula> {
        if g >= self.len() {
            return Err(Error::NoSuchGate(g));
        }
        let c = Circuit::build(
            self.num_vars(),
            self.gates().to_vec(),
            g,
            self.fanin(),
            true,
        )?;
        Formula::from_circuit(c.pruned())
    }

    /// Replaces the subtree rooted at `target` by a copy of `replacement`. The
    /// result ranges over the larger of the two variable counts.
    pub fn substitute_leaf(&self, target: GateId, replacement: &Formula) -> Result<Formula> {
        if target >= self.len() {
            return Err(Error::NoSuchGate(target));
        }
        let num_vars = self.num_vars().max(replacement.num_vars());
        let fanin = self.fanin().widest(replacement.fanin());
        let mut g = Graph::new(num_vars);
        let mut map = vec![usize::MAX; self.len()];
        let parent = self.parent_of();
        let mut inside = vec![false; self.len()];
        for id in (0..self.len()).rev() {
            inside[id] = id == target || parent[id].is_some_and(|p| inside[p]);
        }
        for (id, gate) in self.gates().iter().enumerate() {
            if id == target {
                let sub = g.append_tree(replacement.circuit());
                map[id] = sub[replacement.output()];
            } else if !inside[id] {
                map[id] = match gate.kind {
                    GateKind::Input(v) => g.leaf(v),
                    kind => g.push(Gate {
                        kind,
                        children: gate.children.iter().map(|&c| map[c]).collect(),
                    }),
                };
            }
        }
        let (f, _) = g.finish_formula(map[self.output()], fanin)?;
        Ok(f)
    }
}

impl Deref for Formula {
    type Target = Circuit;

    fn deref(&self) -> &Circuit {
        &self.0
    }
}
