use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ir::{Circuit, DecisionTree, FaninMode, GateId, Graph};
use crate::synth::minterm_cascade;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    /// Depth-2 DNF of parity with one NOT per variable.
    ParityDnf(usize),
    AndTree(usize),
    OrTree(usize),
    /// `ADDR_k(x, y) = y[int(x)]` with `x` on variables `0..k`, most significant first.
    Addr(usize),
    Minterm(usize),
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownFixture(name.to_string());
        let (family, arg) = match name.split_once(':') {
            Some((f, a)) => (f, a.parse::<usize>().map_err(|_| unknown())?),
            None => {
                // Compact spelling such as `parity3_dnf`.
                let digits: String = name.chars().filter(|c| c.is_ascii_digit()).collect();
                let family = name.replace(&digits, "");
                match (family.as_str(), digits.parse::<usize>()) {
                    ("parity_dnf", Ok(k)) => ("parity_dnf", k),
                    _ => return Err(unknown()),
                }
            }
        };
        Ok(match family {
            "parity_dnf" => Fixture::ParityDnf(arg),
            "and_tree" => Fixture::AndTree(arg),
            "or_tree" => Fixture::OrTree(arg),
            "addr" => Fixture::Addr(arg),
            "minterm" => Fixture::Minterm(arg),
            _ => return Err(unknown()),
        })
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fixture::ParityDnf(n) => write!(f, "parity_dnf:{n}"),
            Fixture::AndTree(n) => write!(f, "and_tree:{n}"),
            Fixture::OrTree(n) => write!(f, "or_tree:{n}"),
            Fixture::Addr(k) => write!(f, "addr:{k}"),
            Fixture::Minterm(n) => write!(f, "minterm:{n}"),
        }
    }
}

const FIXTURE_CAP: usize = 16;

pub fn fixture(which: Fixture) -> Result<Circuit> {
    let too_big = |n: usize| n > FIXTURE_CAP;
    match which {
        Fixture::ParityDnf(n) if n < 2 || too_big(n) => Err(Error::BudgetInfeasible(format!(
            "{which} needs 2..=16 variables"
        ))),
        Fixture::ParityDnf(n) => parity_dnf(n),
        Fixture::AndTree(n) | Fixture::OrTree(n) if n == 0 || too_big(n) => Err(
            Error::BudgetInfeasible(format!("{which} needs 1..=16 variables")),
        ),
        Fixture::AndTree(n) => balanced(n, true),
        Fixture::OrTree(n) => balanced(n, false),
        Fixture::Addr(k) if k == 0 || k + (1 << k.min(5)) > FIXTURE_CAP + 4 => Err(
            Error::BudgetInfeasible(format!("{which} needs 1..=4 address bits")),
        ),
        Fixture::Addr(k) => addr(k),
        Fixture::Minterm(n) => Ok(minterm_cascade(n)?.circuit),
    }
}

pub fn fixture_by_name(name: &str) -> Result<Circuit> {
    fixture(name.parse()?)
}

fn fitting(c: &Graph, root: GateId) -> Result<Circuit> {
    let (c, _) = c.finish(root, FaninMode::Unbounded)?;
    if c.max_fanin() <= 2 {
        c.with_fanin(FaninMode::Fanin2)
    } else {
        Ok(c)
    }
}

fn parity_dnf(n: usize) -> Result<Circuit> {
    let mut g = Graph::new(n);
    let pos: Vec<GateId> = (0..n).map(|v| g.input(v)).collect();
    let neg: Vec<GateId> = pos.iter().map(|&x| g.not(x)).collect();
    let terms: Vec<GateId> = (0..1usize << n)
        .filter(|m| m.count_ones() % 2 == 1)
        .map(|m| {
            g.and(
                (0..n)
                    .map(|v| if m >> v & 1 == 1 { pos[v] } else { neg[v] })
                    .collect(),
            )
        })
        .collect();
    let root = g.or(terms);
    fitting(&g, root)
}

fn balanced(n: usize, and: bool) -> Result<Circuit> {
    let mut g = Graph::new(n);
    let mut layer: Vec<GateId> = (0..n).map(|v| g.input(v)).collect();
    while layer.len() > 1 {
        layer = layer
            .chunks(2)
            .map(|p| match p {
                [a, b] if and => g.and(vec![*a, *b]),
                [a, b] => g.or(vec![*a, *b]),
                [a] => *a,
                _ => unreachable!(),
            })
            .collect();
    }
    fitting(&g, layer[0])
}

fn addr(k: usize) -> Result<Circuit> {
    let n = k + (1 << k);
    let mut g = Graph::new(n);
    let x: Vec<GateId> = (0..k).map(|v| g.input(v)).collect();
    let nx: Vec<GateId> = x.iter().map(|&v| g.not(v)).collect();
    let terms: Vec<GateId> = (0..1usize << k)
        .map(|j| {
            let mut lits: Vec<GateId> = (0..k)
                .map(|t| {
                    if j >> (k - 1 - t) & 1 == 1 {
                        x[t]
                    } else {
                        nx[t]
                    }
                })
                .collect();
            lits.push(g.input(k + j));
            g.and(lits)
        })
        .collect();
    let root = g.or(terms);
    fitting(&g, root)
}

/// Number of reduced decision trees of depth at most `depth` over `vars` variables.
pub fn reduced_tree_count(depth: usize, vars: usize) -> u64 {
    if depth == 0 || vars == 0 {
        return 2;
    }
    let sub = reduced_tree_count(depth - 1, vars - 1);
    2 + vars as u64 * sub * sub
}

/// The `idx`-th reduced tree in a fixed enumeration of those counted by
/// [`reduced_tree_count`] over the variables in `vars`.
pub fn reduced_tree(depth: usize, vars: &[usize], mut idx: u64) -> DecisionTree {
    if idx < 2 {
        return DecisionTree::Leaf(idx == 1);
    }
    idx -= 2;
    let sub = reduced_tree_count(depth - 1, vars.len() - 1);
    let k = (idx / (sub * sub)) as usize;
    let rem = idx % (sub * sub);
    let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != vars[k]).collect();
    DecisionTree::node(
        vars[k],
        reduced_tree(depth - 1, &rest, rem / sub),
        reduced_tree(depth - 1, &rest, rem % sub),
    )
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::ir::input_of;
    use crate::semantics::{energy_exhaustive, truth_table};

    #[test]
    fn parity_dnf_energy() {
        for n in 2..=4 {
            let c = fixture(Fixture::ParityDnf(n)).unwrap();
            let t = truth_table(&c).unwrap();
            assert!((0..1 << n).all(|idx: usize| t.get(idx) == (idx.count_ones() % 2 == 1)));
            assert!(energy_exhaustive(&c).unwrap().ec <= n + 2);
            assert_eq!(c.negs(), n);
        }
        assert_eq!(
            fixture_by_name("parity2_dnf").unwrap(),
            fixture(Fixture::ParityDnf(2)).unwrap()
        );
    }

    #[test]
    fn and_tree_energy() {
        let c = fixture_by_name("and_tree:4").unwrap();
        let r = energy_exhaustive(&c).unwrap();
        assert_eq!((r.ec, r.argmax), (3, vec![true; 4]));
        assert_eq!(c.fanin(), FaninMode::Fanin2);
        assert_eq!(fixture_by_name("and_tree:1").unwrap().size(), 0);
    }

    #[test]
    fn addr_table() {
        let c = fixture_by_name("addr:1").unwrap();
        assert_eq!(c.num_vars(), 3);
        let t = truth_table(&c).unwrap();
        for idx in 0..8 {
            let v = input_of(idx, 3);
            assert_eq!(t.get(idx), if v[0] { v[2] } else { v[1] });
        }
        let c = fixture_by_name("addr:2").unwrap();
        let t = truth_table(&c).unwrap();
        for idx in 0..64 {
            let v = input_of(idx, 6);
            let a = (v[0] as usize) << 1 | v[1] as usize;
            assert_eq!(t.get(idx), v[2 + a]);
        }
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(
            fixture_by_name("majority:3"),
            Err(Error::UnknownFixture(_))
        ));
        assert!(matches!(
            fixture_by_name("and_tree:x"),
            Err(Error::UnknownFixture(_))
        ));
        assert!(fixture_by_name("parity_dnf:1").is_err());
    }

    #[test]
    fn tree_enumeration_is_a_bijection() {
        assert_eq!(reduced_tree_count(3, 4), 364_818);
        let total = reduced_tree_count(2, 3);
        assert_eq!(total, 302);
        let trees: HashSet<String> = (0..total)
            .map(|i| reduced_tree(2, &[0, 1, 2], i))
            .inspect(|t| assert!(t.is_reduced() && t.depth() <= 2))
            .map(|t| t.to_string())
            .collect();
        assert_eq!(trees.len() as u64, total);
    }
}
