use std::collections::HashMap;

use crate::error::Result;
use crate::ir::{Circuit, DecisionTree, FaninMode, Gate, GateId, GateKind};
use crate::synth::connector::merge;

/// Output of [`dt_to_circuit`]. `guards[g]` lists the literal children of AND
/// gate `g` that were added to silence it outside its branch, innermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtCompileResult {
    pub circuit: Circuit,
    pub guards: Vec<Vec<GateId>>,
    pub tree_depth: usize,
}

pub fn dt_to_circuit(t: &DecisionTree) -> Result<DtCompileResult> {
    dt_to_circuit_over(t, t.var_bound())
}

/// Compiles `t` into an unbounded fan-in circuit over `num_vars` variables.
/// Each internal node merges the circuits of its branches with a connector,
/// guards every AND of a branch with that branch's literal, and feeds the
/// branch outputs straight into the top OR where the guards make that safe.
pub fn dt_to_circuit_over(t: &DecisionTree, num_vars: usize) -> Result<DtCompileResult> {
    let (circuit, guards) = compile(t, num_vars.max(t.var_bound()))?;
    Ok(DtCompileResult {
        circuit,
        guards,
        tree_depth: t.depth(),
    })
}

fn single(num_vars: usize, gates: Vec<Gate>) -> Result<(Circuit, Vec<Vec<GateId>>)> {
    let len = gates.len();
    Ok((
        Circuit::new(num_vars, gates, len - 1, FaninMode::Unbounded)?,
        vec![Vec::new(); len],
    ))
}

fn compile(t: &DecisionTree, n: usize) -> Result<(Circuit, Vec<Vec<GateId>>)> {
    let (var, low, high) = match t {
        DecisionTree::Leaf(b) => return single(n, vec![Gate::constant(*b)]),
        DecisionTree::Node { var, low, high } => (*var, low.as_ref(), high.as_ref()),
    };
    if let (DecisionTree::Leaf(a), DecisionTree::Leaf(b)) = (low, high) {
        return match (a, b) {
            (false, true) => single(n, vec![Gate::input(var)]),
            (true, false) => single(n, vec![Gate::input(var), Gate::not(0)]),
            _ => single(n, vec![Gate::constant(*a)]),
        };
    }
    let branches = [compile(low, n)?, compile(high, n)?];
    let mut m = merge(&branches[0].0, &branches[1].0, var)?;

    let mut guards: HashMap<GateId, Vec<GateId>> = HashMap::new();
    for (b, (_, old)) in branches.iter().enumerate() {
        for (o, list) in old.iter().enumerate() {
            if !list.is_empty() && m.map[b][o] != usize::MAX {
                guards.insert(m.map[b][o], list.iter().map(|&g| m.map[b][g]).collect());
            }
        }
    }
    let swap: HashMap<GateId, GateId> = m.replaced.iter().copied().collect();
    for list in guards.values_mut() {
        for g in list.iter_mut() {
            if let Some(&s) = swap.get(g) {
                *g = s;
            }
        }
    }
    for s in &m.selectors {
        guards.insert(s[0], vec![m.neg_lit]);
        guards.insert(s[1], vec![m.pos_lit]);
    }
    let lits = [m.neg_lit, m.pos_lit];
    for id in 0..m.part.len() {
        if let Some(b) = m.part[id] {
            if m.graph.kind(id) == GateKind::And {
                let lit = lits[b as usize];
                m.graph.children_mut(id).push(lit);
                guards.entry(id).or_default().push(lit);
            }
        }
    }
    for b in 0..2 {
        let side = m.side[b];
        let out = m.graph.node(side).children[1];
        let direct = matches!(
            m.graph.kind(out),
            GateKind::And | GateKind::Or | GateKind::Const(false)
        );
        if direct {
            m.graph.children_mut(m.root)[b] = out;
        } else {
            guards.insert(side, vec![lits[b]]);
        }
    }

    let (circuit, map) = m.graph.finish(m.root, FaninMode::Unbounded)?;
    let mut out = vec![Vec::new(); circuit.len()];
    for (old, list) in guards {
        if map[old] != usize::MAX {
            out[map[old]] = list.iter().map(|&g| map[g]).collect();
        }
    }
    Ok((circuit, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{energy_exhaustive, truth_table};

    pub(crate) fn check_conditions(t: &DecisionTree, r: &DtCompileResult) {
        let c = &r.circuit;
        let d = r.tree_depth;
        assert_eq!(
            truth_table(c).unwrap(),
            t.truth_table(c.num_vars()),
            "tree {t}"
        );
        assert!(c.negs() <= d, "tree {t}");
        assert!(energy_exhaustive(c).unwrap().ec <= 2 * d * d, "tree {t}");
        for g in c.gates() {
            match g.kind {
                GateKind::Or => {
                    assert_eq!(g.children.len(), 2);
                    for &ch in &g.children {
                        assert!(
                            !matches!(c.kind(ch), GateKind::Input(_) | GateKind::Not),
                            "tree {t}"
                        );
                    }
                }
                GateKind::And => assert!(g.children.len() <= d + 2),
                _ => {}
            }
        }
    }

    #[test]
    fn base_cases() {
        let r = dt_to_circuit(&"(x0 0 1)".parse().unwrap()).unwrap();
        assert_eq!(r.circuit.gates(), &[Gate::input(0)]);
        let r = dt_to_circuit(&"(x0 1 0)".parse().unwrap()).unwrap();
        assert_eq!(r.circuit.negs(), 1);
        let r = dt_to_circuit(&"1".parse().unwrap()).unwrap();
        assert_eq!(r.circuit.gates(), &[Gate::constant(true)]);
    }

    #[test]
    fn depth_two_energy_at_most_five() {
        for text in [
            "(x0 (x1 0 1) (x2 1 0))",
            "(x0 (x1 1 0) (x2 1 0))",
            "(x0 (x1 0 1) 1)",
            "(x1 0 (x0 1 0))",
        ] {
            let t: DecisionTree = text.parse().unwrap();
            let r = dt_to_circuit_over(&t, 3).unwrap();
            assert!(energy_exhaustive(&r.circuit).unwrap().ec <= 5);
            check_conditions(&t, &r);
        }
    }

    #[test]
    fn depth_three_parity() {
        let t: DecisionTree = "(x0 (x1 (x2 0 1) (x2 1 0)) (x1 (x2 1 0) (x2 0 1)))"
            .parse()
            .unwrap();
        let r = dt_to_circuit(&t).unwrap();
        check_conditions(&t, &r);
        for (g, list) in r.guards.iter().enumerate() {
            for &l in list {
                assert!(r.circuit.gate(g).children.contains(&l));
            }
        }
    }
}
