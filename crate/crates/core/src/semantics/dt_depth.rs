use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ir::{word_mask, DecisionTree, TruthTable, VAR_MASKS};

/// Default variable cap for the optimal decision-tree search.
pub const DT_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DtDepth {
    pub depth: usize,
    pub tree: DecisionTree,
}

pub fn dt_depth(f: &TruthTable) -> Result<DtDepth> {
    dt_depth_capped(f, DT_CAP)
}

/// Exact minimum decision-tree depth by memoized recursion over subfunctions.
/// Works up to 6 variables, where a table fits in one word.
pub fn dt_depth_capped(f: &TruthTable, cap: usize) -> Result<DtDepth> {
    let n = f.num_vars();
    if n > cap.min(6) {
        return Err(Error::CapExceeded {
            what: "decision-tree depth",
            num_vars: n,
            cap: cap.min(6),
        });
    }
    let mut search = Search {
        n,
        full: word_mask(n),
        memo: HashMap::new(),
    };
    let t = f.words()[0];
    let depth = search.depth(t);
    Ok(DtDepth {
        depth,
        tree: search.tree(t),
    })
}

/// `t` with variable `i` fixed to `b`, still over all `n` variables.
fn restrict_word(t: u64, i: usize, b: bool) -> u64 {
    let shift = 1 << i;
    if b {
        let hi = t & VAR_MASKS[i];
        hi | hi >> shift
    } else {
        let lo = t & !VAR_MASKS[i];
        lo | lo << shift
    }
}

struct Search {
    n: usize,
    full: u64,
    memo: HashMap<u64, (usize, usize)>,
}

impl Search {
    fn depth(&mut self, t: u64) -> usize {
        self.best(t).0
    }

    /// Depth and the chosen variable; ties go to the smallest index.
    fn best(&mut self, t: u64) -> (usize, usize) {
        let t = t & self.full;
        if t == 0 || t == self.full {
            return (0, usize::MAX);
        }
        if let Some(&hit) = self.memo.get(&t) {
            return hit;
        }
        let mut best = (usize::MAX, usize::MAX);
        for i in 0..self.n {
            let (lo, hi) = (
                restrict_word(t, i, false) & self.full,
                restrict_word(t, i, true) & self.full,
            );
            if lo == hi {
                continue;
            }
            let d = 1 + self.depth(lo).max(self.depth(hi));
            if d < best.0 {
                best = (d, i);
            }
        }
        self.memo.insert(t, best);
        best
    }

    fn tree(&mut self, t: u64) -> DecisionTree {
        let t = t & self.full;
        if t == 0 || t == self.full {
            return DecisionTree::Leaf(t != 0);
        }
        let (_, i) = self.best(t);
        let low = self.tree(restrict_word(t, i, false));
        let high = self.tree(restrict_word(t, i, true));
        DecisionTree::node(i, low, high)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    /// Functions of depth at most d: constants, closed under x_i ? high : low.
    fn depth_oracle(n: usize) -> HashMap<u64, usize> {
        let full = word_mask(n);
        let mut known: HashMap<u64, usize> = HashMap::from([(0, 0), (full, 0)]);
        let mut level: HashSet<u64> = known.keys().copied().collect();
        for d in 1..=n {
            let mut next = level.clone();
            for &lo in &level {
                for &hi in &level {
                    for i in 0..n {
                        next.insert((VAR_MASKS[i] & hi | !VAR_MASKS[i] & lo) & full);
                    }
                }
            }
            for &f in &next {
                known.entry(f).or_insert(d);
            }
            level = next;
        }
        known
    }

    #[test]
    fn agrees_with_closure_oracle_on_all_3_variable_functions() {
        let oracle = depth_oracle(3);
        assert_eq!(oracle.len(), 256);
        for t in 0u64..256 {
            let f = TruthTable::from_words(3, vec![t]);
            let r = dt_depth(&f).unwrap();
            assert_eq!(r.depth, oracle[&t], "table {t:08b}");
            assert_eq!(r.tree.depth(), r.depth);
            assert_eq!(r.tree.truth_table(3), f);
            assert!(r.tree.is_reduced());
        }
    }

    #[test]
    fn named_functions() {
        for n in 1..=5 {
            let parity = TruthTable::from_fn(n, |idx| idx.count_ones() % 2 == 1);
            assert_eq!(dt_depth(&parity).unwrap().depth, n);
        }
        assert_eq!(dt_depth(&TruthTable::zero(4)).unwrap().depth, 0);
        // Address function: x0 picks between y0 = x1 and y1 = x2.
        let addr = TruthTable::from_fn(3, |idx| {
            if idx & 1 == 1 {
                idx >> 2 & 1 == 1
            } else {
                idx >> 1 & 1 == 1
            }
        });
        assert_eq!(dt_depth(&addr).unwrap().depth, 2);
        assert!(matches!(
            dt_depth(&TruthTable::zero(6)),
            Err(Error::CapExceeded { .. })
        ));
        assert_eq!(dt_depth_capped(&TruthTable::var(6, 5), 6).unwrap().depth, 1);
    }

    #[test]
    fn ties_pick_smallest_variable() {
        let and = TruthTable::from_fn(2, |idx| idx == 3);
        assert_eq!(dt_depth(&and).unwrap().tree.to_string(), "(x0 0 (x1 0 1))");
    }
}
