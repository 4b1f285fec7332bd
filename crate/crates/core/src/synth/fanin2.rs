use crate::error::Result;
use crate::ir::{Circuit, FaninMode, GateKind, Graph};
use crate::synth::dt_compile::DtCompileResult;

/// Rewrites every AND or OR with more than two children as a right comb of
/// two-input gates. An AND lists its unguarded children first and its guards
/// innermost to outermost, so the outermost guard sits at the bottom of the
/// comb and a false guard silences the whole chain.
pub fn fanin2_reduce(r: &DtCompileResult) -> Result<Circuit> {
    let c = &r.circuit;
    let mut g = Graph::new(c.num_vars());
    let mut map = Vec::with_capacity(c.len());
    for (id, gate) in c.gates().iter().enumerate() {
        let new = match gate.kind {
            GateKind::Input(v) => g.input(v),
            GateKind::Const(b) => g.constant(b),
            GateKind::Not => g.not(map[gate.children[0]]),
            kind => {
                let mut leaves = gate.children.clone();
                if kind == GateKind::And {
                    for guard in &r.guards[id] {
                        if let Some(k) = leaves.iter().position(|x| x == guard) {
                            leaves.remove(k);
                        }
                    }
                    leaves.extend(r.guards[id].iter().copied());
                }
                let mut it = leaves.iter().rev().map(|&l| map[l]);
                let last = it.next().expect("gates have children");
                it.fold(last, |acc, l| {
                    if kind == GateKind::And {
                        g.and(vec![l, acc])
                    } else {
                        g.or(vec![l, acc])
                    }
                })
            }
        };
        map.push(new);
    }
    Ok(g.finish(map[c.output()], FaninMode::Fanin2)?.0)
}
