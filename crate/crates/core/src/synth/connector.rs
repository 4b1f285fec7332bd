use crate::error::{Error, Result};
use crate::ir::{Circuit, GateId, GateKind, Graph};

/// `(¬xi ∧ C0) ∨ (xi ∧ C1)` with negations shared through selectors.
#[derive(Clone, Debug)]
pub struct ConnectorResult {
    pub circuit: Circuit,
    /// Gates of each selector: the two ANDs, the OR and the NOT.
    pub selectors: Vec<[GateId; 4]>,
}

/// Merge state before the final topological sort.
pub(crate) struct Merge {
    pub graph: Graph,
    /// `Some(b)` for non-input gates copied from `C_b`.
    pub part: Vec<Option<u8>>,
    pub map: [Vec<GateId>; 2],
    pub neg_lit: GateId,
    pub pos_lit: GateId,
    pub side: [GateId; 2],
    pub root: GateId,
    pub selectors: Vec<[GateId; 4]>,
    /// Original NOT gates replaced by a selector output.
    pub replaced: Vec<(GateId, GateId)>,
}

pub fn connector_merge(c0: &Circuit, c1: &Circuit, i: usize) -> Result<ConnectorResult> {
    let m = merge(c0, c1, i)?;
    let (circuit, map) = m.graph.finish(m.root, c0.fanin().widest(c1.fanin()))?;
    let selectors = m.selectors.iter().map(|s| s.map(|g| map[g])).collect();
    Ok(ConnectorResult { circuit, selectors })
}

pub(crate) fn merge(c0: &Circuit, c1: &Circuit, i: usize) -> Result<Merge> {
    if c0.num_vars() != c1.num_vars() {
        return Err(Error::IncompatibleArity {
            left: c0.num_vars(),
            right: c1.num_vars(),
        });
    }
    let n = c0.num_vars();
    if i >= n {
        return Err(Error::VarOutOfRange {
            var: i,
            num_vars: n,
        });
    }
    let mut graph = Graph::new(n);
    let mut part: Vec<Option<u8>> = Vec::new();
    let mut maps = Vec::with_capacity(2);
    for (b, c) in [c0, c1].into_iter().enumerate() {
        let before = graph.len();
        let map = graph.append(c);
        part.resize(graph.len(), None);
        for id in before..graph.len() {
            if !matches!(graph.kind(id), GateKind::Input(_)) {
                part[id] = Some(b as u8);
            }
        }
        maps.push(map);
    }
    let map: [Vec<GateId>; 2] = [maps.remove(0), maps.remove(0)];
    let out = [map[0][c0.output()], map[1][c1.output()]];

    let mut remaining: [Vec<GateId>; 2] = [0u8, 1].map(|b| {
        (0..graph.len())
            .filter(|&id| part[id] == Some(b) && graph.kind(id) == GateKind::Not)
            .collect()
    });

    let pos_lit = graph.input(i);
    let neg_lit = graph.not(pos_lit);
    let side = [
        graph.and(vec![neg_lit, out[0]]),
        graph.and(vec![pos_lit, out[1]]),
    ];
    let root = graph.or(side.to_vec());

    let mut selectors = Vec::new();
    let mut replaced = Vec::new();
    let steps = remaining[0].len().min(remaining[1].len());
    for _ in 0..steps {
        let mut is_remaining = vec![false; graph.len()];
        for &id in remaining.iter().flatten() {
            is_remaining[id] = true;
        }
        let pick = |b: usize, graph: &Graph| -> usize {
            remaining[b]
                .iter()
                .position(|&not| {
                    let cone = graph.cone(graph.node(not).children[0]);
                    !cone.iter().zip(&is_remaining).any(|(&c, &r)| c && r)
                })
                .expect("a lowest remaining negation always qualifies")
        };
        let (k0, k1) = (pick(0, &graph), pick(1, &graph));
        let nots = [remaining[0].remove(k0), remaining[1].remove(k1)];
        let g = nots.map(|not| graph.node(not).children[0]);
        let a0 = graph.and(vec![neg_lit, g[0]]);
        let a1 = graph.and(vec![pos_lit, g[1]]);
        let o = graph.or(vec![a0, a1]);
        let s = graph.not(o);
        for not in nots {
            graph.replace_uses(not, s);
            replaced.push((not, s));
        }
        selectors.push([a0, a1, o, s]);
    }
    part.resize(graph.len(), None);
    Ok(Merge {
        graph,
        part,
        map,
        neg_lit,
        pos_lit,
        side,
        root,
        selectors,
        replaced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{input_of, parse_netlist, TruthTable};
    use crate::semantics::{evaluate, truth_table};

    fn expected(c0: &Circuit, c1: &Circuit, i: usize) -> TruthTable {
        let (t0, t1) = (truth_table(c0).unwrap(), truth_table(c1).unwrap());
        TruthTable::from_fn(c0.num_vars(), |idx| {
            if idx >> i & 1 == 1 {
                t1.get(idx)
            } else {
                t0.get(idx)
            }
        })
    }

    #[test]
    fn no_selector_needed() {
        let c0 = parse_netlist("VARS 3\nINPUT x1\nOUTPUT g0").unwrap();
        let c1 = parse_netlist("VARS 3\nINPUT x2\nOUTPUT g0").unwrap();
        let r = connector_merge(&c0, &c1, 0).unwrap();
        assert_eq!(r.circuit.negs(), 1);
        assert!(r.selectors.is_empty());
        assert_eq!(truth_table(&r.circuit).unwrap(), expected(&c0, &c1, 0));
    }

    #[test]
    fn one_selector_step() {
        let c0 = parse_netlist("VARS 3\nINPUT x1\ng1 = NOT g0\nOUTPUT g1").unwrap();
        let c1 = parse_netlist("VARS 3\nINPUT x2\ng1 = NOT g0\nOUTPUT g1").unwrap();
        let r = connector_merge(&c0, &c1, 0).unwrap();
        assert_eq!(r.circuit.negs(), 2);
        assert_eq!(r.selectors.len(), 1);
        let want = TruthTable::from_fn(3, |idx| {
            let x = input_of(idx, 3);
            (!x[0] && !x[1]) || (x[0] && !x[2])
        });
        assert_eq!(truth_table(&r.circuit).unwrap(), want);
    }

    #[test]
    fn selector_fires_at_most_two_gates() {
        let c0 = parse_netlist(
            "VARS 3\nINPUT x1\nINPUT x2\ng2 = NOT g0\ng3 = NOT g1\ng4 = AND g2 g3\nOUTPUT g4",
        )
        .unwrap();
        let c1 = parse_netlist("VARS 3\nINPUT x1\nINPUT x2\ng2 = OR g0 g1\ng3 = NOT g2\nOUTPUT g3")
            .unwrap();
        let r = connector_merge(&c0, &c1, 0).unwrap();
        assert_eq!(r.circuit.negs(), 3);
        assert_eq!(truth_table(&r.circuit).unwrap(), expected(&c0, &c1, 0));
        for idx in 0..8 {
            let t = evaluate(&r.circuit, &input_of(idx, 3)).unwrap();
            for s in &r.selectors {
                assert!(s.iter().filter(|&&g| t.values[g]).count() <= 2);
            }
        }
    }

    #[test]
    fn errors() {
        let a = parse_netlist("VARS 2\nINPUT x1\nOUTPUT g0").unwrap();
        let b = parse_netlist("VARS 3\nINPUT x1\nOUTPUT g0").unwrap();
        assert!(matches!(
            connector_merge(&a, &b, 0),
            Err(Error::IncompatibleArity { .. })
        ));
        assert!(matches!(
            connector_merge(&a, &a, 2),
            Err(Error::VarOutOfRange { .. })
        ));
    }
}
