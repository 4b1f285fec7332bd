use crate::error::{Error, Result};
use crate::ir::{Circuit, DecisionTree, GateKind};
use crate::semantics::{
    constant_gates, dt_depth, energy_exhaustive_capped, firing_patterns_capped, truth_table, DT_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeoffReport {
    pub size: usize,
    pub energy: usize,
    pub patterns: usize,
    /// Largest gate fan-in, at least 1.
    pub max_fanin: usize,
    pub tree: DecisionTree,
    pub dt_oracle: Option<usize>,
}

impl TradeoffReport {
    /// `size^energy + 1`, saturating.
    pub fn pattern_bound(&self) -> u64 {
        (self.size as u64)
            .saturating_pow(self.energy as u32)
            .saturating_add(1)
    }

    pub fn depth_bound(&self) -> usize {
        self.max_fanin * self.patterns
    }
}

pub fn dt_from_patterns(c: &Circuit) -> Result<TradeoffReport> {
    dt_from_patterns_capped(c, 16)
}

/// Builds a decision tree by repeatedly hardwiring the gates that are constant
/// over all inputs, querying every variable feeding the first surviving gate
/// and recursing on the restrictions.
pub fn dt_from_patterns_capped(c: &Circuit, cap: usize) -> Result<TradeoffReport> {
    if c.num_vars() > cap {
        return Err(Error::CapExceeded {
            what: "pattern extraction",
            num_vars: c.num_vars(),
            cap,
        });
    }
    let tree = extract(c)?;
    let energy = energy_exhaustive_capped(c, cap)?.ec;
    let patterns = firing_patterns_capped(c, cap)?.len();
    let dt_oracle = if c.num_vars() <= DT_CAP {
        Some(dt_depth(&truth_table(c)?)?.depth)
    } else {
        None
    };
    Ok(TradeoffReport {
        size: c.size(),
        energy,
        patterns,
        max_fanin: c.max_fanin().max(1),
        tree,
        dt_oracle,
    })
}

fn extract(c: &Circuit) -> Result<DecisionTree> {
    if let GateKind::Input(v) = c.kind(c.output()) {
        return Ok(DecisionTree::node(
            v,
            DecisionTree::Leaf(false),
            DecisionTree::Leaf(true),
        ));
    }
    let c = c.hardwire(&constant_gates(c)?);
    match c.kind(c.output()) {
        GateKind::Const(b) => return Ok(DecisionTree::Leaf(b)),
        GateKind::Input(v) => {
            return Ok(DecisionTree::node(
                v,
                DecisionTree::Leaf(false),
                DecisionTree::Leaf(true),
            ))
        }
        _ => {}
    }
    let g = c
        .logic_gates()
        .next()
        .expect("a non-constant output has a logic gate");
    let mut vars: Vec<usize> = c
        .gate(g)
        .children
        .iter()
        .filter_map(|&ch| match c.kind(ch) {
            GateKind::Input(v) => Some(v),
            _ => None,
        })
        .collect();
    vars.sort_unstable();
    vars.dedup();
    query(&c, &vars)
}

fn query(c: &Circuit, vars: &[usize]) -> Result<DecisionTree> {
    let Some((&v, rest)) = vars.split_first() else {
        return extract(c);
    };
    let low = query(&c.restrict(&[(v, false)])?, rest)?;
    let high = query(&c.restrict(&[(v, true)])?, rest)?;
    Ok(DecisionTree::node(v, low, high))
}
