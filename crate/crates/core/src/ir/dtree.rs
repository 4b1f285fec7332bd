use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ir::truth_table::TruthTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DecisionTree {
    Leaf(bool),
    Node {
        var: usize,
        low: Box<DecisionTree>,
        high: Box<DecisionTree>,
    },
}

impl DecisionTree {
    pub fn node(var: usize, low: DecisionTree, high: DecisionTree) -> Self {
        DecisionTree::Node {
            var,
            low: Box::new(low),
            high: Box::new(high),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { low, high, .. } => 1 + low.depth().max(high.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { low, high, .. } => 1 + low.node_count() + high.node_count(),
        }
    }

    /// One past the largest queried variable, 0 for a leaf.
    pub fn var_bound(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node { var, low, high } => {
                (var + 1).max(low.var_bound()).max(high.var_bound())
            }
        }
    }

    /// Evaluates on the input whose variable `i` is bit `i` of `idx`.
    pub fn eval_index(&self, idx: usize) -> bool {
        let mut t = self;
        loop {
            match t {
                DecisionTree::Leaf(b) => return *b,
                DecisionTree::Node { var, low, high } => {
                    t = if idx >> var & 1 == 1 { high } else { low }
                }
            }
        }
    }

    pub fn eval(&self, input: &[bool]) -> bool {
        let mut t = self;
        loop {
            match t {
                DecisionTree::Leaf(b) => return *b,
                DecisionTree::Node { var, low, high } => t = if input[*var] { high } else { low },
            }
        }
    }

    pub fn truth_table(&self, num_vars: usize) -> TruthTable {
        TruthTable::from_fn(num_vars, |idx| self.eval_index(idx))
    }

    /// No variable repeats along any root-to-leaf path.
    pub fn is_reduced(&self) -> bool {
        fn go(t: &DecisionTree, path: &mut Vec<usize>) -> bool {
            match t {
                DecisionTree::Leaf(_) => true,
                DecisionTree::Node { var, low, high } => {
                    if path.contains(var) {
                        return false;
                    }
                    path.push(*var);
                    let ok = go(low, path) && go(high, path);
                    path.pop();
                    ok
                }
            }
        }
        go(self, &mut Vec::new())
    }
}

impl fmt::Display for DecisionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionTree::Leaf(b) => write!(f, "{}", *b as u8),
            DecisionTree::Node { var, low, high } => write!(f, "(x{var} {low} {high})"),
        }
    }
}

impl FromStr for DecisionTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        let spaced = body.replace('(', " ( ").replace(')', " ) ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let tree = parse_tree(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(malformed(format!("trailing token `{}`", tokens[pos])));
        }
        Ok(tree)
    }
}

fn malformed(detail: String) -> Error {
    Error::Malformed {
        what: "decision tree",
        detail,
    }
}

fn parse_tree(tokens: &[&str], pos: &mut usize) -> Result<DecisionTree> {
    let tok = *tokens
        .get(*pos)
        .ok_or_else(|| malformed("unexpected end of input".into()))?;
    *pos += 1;
    match tok {
        "0" => Ok(DecisionTree::Leaf(false)),
        "1" => Ok(DecisionTree::Leaf(true)),
        "(" => {
            let name = *tokens
                .get(*pos)
                .ok_or_else(|| malformed("unexpected end of input".into()))?;
            let var = name
                .strip_prefix('x')
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| malformed(format!("expected a variable, got `{name}`")))?;
            *pos += 1;
            let low = parse_tree(tokens, pos)?;
            let high = parse_tree(tokens, pos)?;
            if tokens.get(*pos) != Some(&")") {
                return Err(malformed("expected `)`".into()));
            }
            *pos += 1;
            Ok(DecisionTree::node(var, low, high))
        }
        other => Err(malformed(format!("unexpected token `{other}`"))),
    }
}
