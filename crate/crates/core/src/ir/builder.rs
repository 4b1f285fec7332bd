use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ir::circuit::Circuit;
use crate::ir::formula::Formula;
use crate::ir::gate::{FaninMode, Gate, GateId, GateKind};

/// A mutable gate graph. Node ids need not be topological; [`Graph::finish`]
/// sorts the part reachable from the output.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    num_vars: usize,
    nodes: Vec<Gate>,
    inputs: Vec<Option<GateId>>,
}

impl Graph {
    pub fn new(num_vars: usize) -> Self {
        Graph {
            num_vars,
            nodes: Vec::new(),
            inputs: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: GateId) -> &Gate {
        &self.nodes[id]
    }

    pub fn kind(&self, id: GateId) -> GateKind {
        self.nodes[id].kind
    }

    pub fn children_mut(&mut self, id: GateId) -> &mut Vec<GateId> {
        &mut self.nodes[id].children
    }

    pub fn push(&mut self, gate: Gate) -> GateId {
        self.nodes.push(gate);
        self.nodes.len() - 1
    }

    /// The shared INPUT node for `var`, created on first use.
    pub fn input(&mut self, var: usize) -> GateId {
        if var >= self.inputs.len() {
            self.inputs.resize(var + 1, None);
            self.num_vars = self.num_vars.max(var + 1);
        }
        match self.inputs[var] {
            Some(id) => id,
            None => {
                let id = self.push(Gate::input(var));
                self.inputs[var] = Some(id);
                id
            }
        }
    }

    /// A new INPUT node even if `var` already has one (formula leaves).
    pub fn leaf(&mut self, var: usize) -> GateId {
        self.num_vars = self.num_vars.max(var + 1);
        self.push(Gate::input(var))
    }

    pub fn constant(&mut self, bit: bool) -> GateId {
        self.push(Gate::constant(bit))
    }

    pub fn not(&mut self, child: GateId) -> GateId {
        self.push(Gate::not(child))
    }

    pub fn and(&mut self, children: Vec<GateId>) -> GateId {
        self.push(Gate::and(children))
    }

    pub fn or(&mut self, children: Vec<GateId>) -> GateId {
        self.push(Gate::or(children))
    }

    /// Copies the gates of `c` reachable from its output, sharing INPUT nodes.
    /// Returns the old-to-new id map (`usize::MAX` for dropped gates).
    pub fn append(&mut self, c: &Circuit) -> Vec<GateId> {
        self.append_with(c, false)
    }

    /// Copies `c` with fresh INPUT nodes for every leaf, keeping trees trees.
    pub fn append_tree(&mut self, c: &Circuit) -> Vec<GateId> {
        self.append_with(c, true)
    }

    fn append_with(&mut self, c: &Circuit, fresh_leaves: bool) -> Vec<GateId> {
        let mut live = vec![false; c.len()];
        live[c.output()] = true;
        for id in (0..c.len()).rev() {
            if live[id] {
                for &ch in &c.gate(id).children {
                    live[ch] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; c.len()];
        for (id, g) in c.gates().iter().enumerate() {
            if !live[id] {
                continue;
            }
            map[id] = match g.kind {
                GateKind::Input(v) if fresh_leaves => self.leaf(v),
                GateKind::Input(v) => self.input(v),
                kind => self.push(Gate {
                    kind,
                    children: g.children.iter().map(|&ch| map[ch]).collect(),
                }),
            };
        }
        map
    }

    /// Redirects every edge into `old` to `new`.
    pub fn replace_uses(&mut self, old: GateId, new: GateId) {
        for g in &mut self.nodes {
            for ch in &mut g.children {
                if *ch == old {
                    *ch = new;
                }
            }
        }
    }

    /// Ids in the cone of `root` (including it).
    pub fn cone(&self, root: GateId) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![root];
        while let Some(id) = stack.pop() {
            if !std::mem::replace(&mut seen[id], true) {
                stack.extend(self.nodes[id].children.iter().copied());
            }
        }
        seen
    }

    /// Sorts the nodes reachable from `output` topologically, lowest id first
    /// among ready nodes, and validates the result. Also returns the old-to-new
    /// id map (`usize::MAX` for dropped nodes).
    pub fn finish(&self, output: GateId, fanin: FaninMode) -> Result<(Circuit, Vec<GateId>)> {
        let (num_vars, gates, out, map) = self.sorted(output)?;
        Ok((Circuit::new(num_vars, gates, out, fanin)?, map))
    }

    /// As [`Graph::finish`] but for trees that carry one INPUT node per leaf.
    pub fn finish_formula(
        &self,
        output: GateId,
        fanin: FaninMode,
    ) -> Result<(Formula, Vec<GateId>)> {
        let (num_vars, gates, out, map) = self.sorted(output)?;
        Ok((Formula::new(num_vars, gates, out, fanin)?, map))
    }

    fn sorted(&self, output: GateId) -> Result<(usize, Vec<Gate>, GateId, Vec<GateId>)> {
        let n = self.nodes.len();
        let live = self.cone(output);
        let mut pending = vec![0usize; n];
        let mut parents = vec![Vec::new(); n];
        for id in (0..n).filter(|&id| live[id]) {
            for &ch in &self.nodes[id].children {
                pending[id] += 1;
                parents[ch].push(id);
            }
        }
        let mut ready: BinaryHeap<Reverse<GateId>> = (0..n)
            .filter(|&id| live[id] && pending[id] == 0)
            .map(Reverse)
            .collect();
        let mut map = vec![usize::MAX; n];
        let mut gates = Vec::new();
        while let Some(Reverse(id)) = ready.pop() {
            map[id] = gates.len();
            let g = &self.nodes[id];
            gates.push(Gate {
                kind: g.kind,
                children: g.children.iter().map(|&ch| map[ch]).collect(),
            });
            for &p in &parents[id] {
                pending[p] -= 1;
                if pending[p] == 0 {
                    ready.push(Reverse(p));
                }
            }
        }
        if gates.len() != live.iter().filter(|&&l| l).count() {
            return Err(Error::Malformed {
                what: "gate graph",
                detail: "cycle among gates".into(),
            });
        }
        Ok((self.num_vars, gates, map[output], map))
    }
}
