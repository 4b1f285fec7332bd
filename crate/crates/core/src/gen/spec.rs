use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ir::{Circuit, DecisionTree, FaninMode, Formula, GateId, GateKind, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Circuit,
    Formula,
    ReadOnceLeafNeg,
    Monotone,
    DTree,
    /// A formula whose leaves are all paired under two-input bottom gates.
    NonSkewFormula,
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "CIRCUIT" => Shape::Circuit,
            "FORMULA" => Shape::Formula,
            "READONCE_LEAFNEG" => Shape::ReadOnceLeafNeg,
            "MONOTONE" => Shape::Monotone,
            "DTREE" => Shape::DTree,
            "NONSKEW_FORMULA" => Shape::NonSkewFormula,
            _ => {
                return Err(Error::Malformed {
                    what: "shape",
                    detail: s.to_string(),
                })
            }
        })
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Circuit => "CIRCUIT",
            Shape::Formula => "FORMULA",
            Shape::ReadOnceLeafNeg => "READONCE_LEAFNEG",
            Shape::Monotone => "MONOTONE",
            Shape::DTree => "DTREE",
            Shape::NonSkewFormula => "NONSKEW_FORMULA",
        })
    }
}

/// Parameters of one random instance. `size_budget` is the number of logic
/// gates for circuits, the number of leaves for formulas (leaf pairs for
/// non-skew formulas) and the maximum depth for decision trees.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    /// Selects an independent stream under the same seed.
    pub stream: u64,
    pub num_vars: usize,
    pub size_budget: usize,
    pub neg_density: f64,
    pub shape: Shape,
    pub fanin: FaninMode,
    pub max_negs: Option<usize>,
}

impl GenSpec {
    pub fn new(shape: Shape, seed: u64, num_vars: usize, size_budget: usize) -> Self {
        GenSpec {
            seed,
            stream: 0,
            num_vars,
            size_budget,
            neg_density: 0.0,
            shape,
            fanin: FaninMode::Fanin2,
            max_negs: None,
        }
    }

    pub fn stream(mut self, stream: u64) -> Self {
        self.stream = stream;
        self
    }

    pub fn neg_density(mut self, p: f64) -> Self {
        self.neg_density = p;
        self
    }

    pub fn fanin(mut self, fanin: FaninMode) -> Self {
        self.fanin = fanin;
        self
    }

    pub fn max_negs(mut self, cap: usize) -> Self {
        self.max_negs = Some(cap);
        self
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    fn validate(&self) -> Result<()> {
        let fail = |why: &str| Err(Error::BudgetInfeasible(why.to_string()));
        if self.num_vars == 0 {
            return fail("at least one variable is required");
        }
        if self.size_budget == 0 {
            return fail("size budget must be positive");
        }
        if !(0.0..=1.0).contains(&self.neg_density) {
            return fail("negation density must lie in [0, 1]");
        }
        if let FaninMode::Bounded(c) = self.fanin {
            if c < 2 {
                return fail("fan-in bound must be at least 2");
            }
        }
        if self.shape == Shape::ReadOnceLeafNeg && self.size_budget > self.num_vars {
            return fail("a read-once formula has at most one leaf per variable");
        }
        if self.shape == Shape::DTree && self.size_budget > self.num_vars {
            return fail("a reduced tree is no deeper than the number of variables");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generated {
    Circuit(Circuit),
    Formula(Formula),
    Tree(DecisionTree),
}

impl Generated {
    pub fn circuit(&self) -> Option<&Circuit> {
        match self {
            Generated::Circuit(c) => Some(c),
            Generated::Formula(f) => Some(f.circuit()),
            Generated::Tree(_) => None,
        }
    }

    pub fn into_circuit(self) -> Option<Circuit> {
        match self {
            Generated::Circuit(c) => Some(c),
            Generated::Formula(f) => Some(f.into_circuit()),
            Generated::Tree(_) => None,
        }
    }

    pub fn into_formula(self) -> Option<Formula> {
        match self {
            Generated::Formula(f) => Some(f),
            _ => None,
        }
    }

    pub fn into_tree(self) -> Option<DecisionTree> {
        match self {
            Generated::Tree(t) => Some(t),
            _ => None,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    spec.validate()?;
    let mut rng = spec.rng();
    let cap = spec.max_negs.unwrap_or(usize::MAX);
    Ok(match spec.shape {
        Shape::Circuit => {
            Generated::Circuit(random_circuit(spec, &mut rng, spec.neg_density, cap)?)
        }
        Shape::Monotone => Generated::Circuit(random_circuit(spec, &mut rng, 0.0, 0)?),
        Shape::Formula => {
            let mut b = FormulaBuilder {
                g: Graph::new(spec.num_vars),
                rng: &mut rng,
                negs: 0,
                cap,
            };
            let p = spec.neg_density;
            let root = b.tree(spec.size_budget, p, &mut |b| {
                let v = b.rng.random_range(0..spec.num_vars);
                let leaf = b.g.leaf(v);
                b.maybe_not(leaf, p)
            });
            Generated::Formula(b.g.finish_formula(root, FaninMode::Fanin2)?.0)
        }
        Shape::ReadOnceLeafNeg => {
            let mut vars: Vec<usize> = (0..spec.num_vars).collect();
            vars.shuffle(&mut rng);
            let mut next = vars.into_iter();
            let mut b = FormulaBuilder {
                g: Graph::new(spec.num_vars),
                rng: &mut rng,
                negs: 0,
                cap,
            };
            let p = spec.neg_density;
            let root = b.tree(spec.size_budget, 0.0, &mut |b| {
                let leaf = b.g.leaf(next.next().expect("budget checked"));
                b.maybe_not(leaf, p)
            });
            Generated::Formula(b.g.finish_formula(root, FaninMode::Fanin2)?.0)
        }
        Shape::NonSkewFormula => {
            let n = spec.num_vars;
            let mut b = FormulaBuilder {
                g: Graph::new(n),
                rng: &mut rng,
                negs: 0,
                cap,
            };
            let root = b.tree(spec.size_budget, spec.neg_density, &mut |b| {
                let x = b.rng.random_range(0..n);
                let y = if n > 1 {
                    (x + b.rng.random_range(1..n)) % n
                } else {
                    x
                };
                let (lx, ly) = (b.g.leaf(x), b.g.leaf(y));
                b.op(vec![lx, ly])
            });
            Generated::Formula(b.g.finish_formula(root, FaninMode::Fanin2)?.0)
        }
        Shape::DTree => {
            let vars: Vec<usize> = (0..spec.num_vars).collect();
            Generated::Tree(random_tree(&mut rng, &vars, spec.size_budget, true))
        }
    })
}

fn random_circuit(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
    neg_density: f64,
    cap: usize,
) -> Result<Circuit> {
    let n = spec.num_vars;
    let mut g = Graph::new(n);
    let mut nodes: Vec<GateId> = (0..n).map(|v| g.input(v)).collect();
    let mut negated = vec![false; n];
    let mut is_not = vec![false; n];
    let (mut size, mut negs) = (0, 0);
    while size < spec.size_budget {
        if negs < cap && neg_density > 0.0 && rng.random_bool(neg_density) {
            let open: Vec<usize> = (0..nodes.len())
                .filter(|&k| !is_not[k] && !negated[k])
                .collect();
            if !open.is_empty() {
                let k = open[rng.random_range(0..open.len())];
                negated[k] = true;
                nodes.push(g.not(nodes[k]));
                negated.push(false);
                is_not.push(true);
                size += 1;
                negs += 1;
                continue;
            }
        }
        let arity = match spec.fanin {
            FaninMode::Fanin2 => 2,
            FaninMode::Bounded(c) => rng.random_range(2..=c),
            FaninMode::Unbounded => rng.random_range(2..=4),
        };
        let children: Vec<GateId> = if nodes.len() >= arity {
            rand::seq::index::sample(rng, nodes.len(), arity)
                .into_iter()
                .map(|k| nodes[k])
                .collect()
        } else {
            (0..arity)
                .map(|_| nodes[rng.random_range(0..nodes.len())])
                .collect()
        };
        nodes.push(if rng.random_bool(0.5) {
            g.and(children)
        } else {
            g.or(children)
        });
        negated.push(false);
        is_not.push(false);
        size += 1;
    }
    let output = *nodes.last().expect("at least one node");
    Ok(g.finish(output, spec.fanin)?.0)
}

struct FormulaBuilder<'a> {
    g: Graph,
    rng: &'a mut ChaCha8Rng,
    negs: usize,
    cap: usize,
}

impl FormulaBuilder<'_> {
    fn op(&mut self, children: Vec<GateId>) -> GateId {
        if self.rng.random_bool(0.5) {
            self.g.and(children)
        } else {
            self.g.or(children)
        }
    }

    fn maybe_not(&mut self, id: GateId, p: f64) -> GateId {
        if self.negs < self.cap && p > 0.0 && self.rng.random_bool(p) {
            self.negs += 1;
            self.g.not(id)
        } else {
            id
        }
    }

    /// A random binary tree over `units` calls of `unit`, with a NOT above
    /// each internal node with probability `p`.
    fn tree(&mut self, units: usize, p: f64, unit: &mut dyn FnMut(&mut Self) -> GateId) -> GateId {
        if units == 1 {
            return unit(self);
        }
        let k = self.rng.random_range(1..units);
        let left = self.tree(k, p, unit);
        let right = self.tree(units - k, p, unit);
        let node = self.op(vec![left, right]);
        self.maybe_not(node, p)
    }
}

fn random_tree(rng: &mut ChaCha8Rng, vars: &[usize], depth: usize, root: bool) -> DecisionTree {
    if depth == 0 || vars.is_empty() || (!root && rng.random_bool(0.25)) {
        return DecisionTree::Leaf(rng.random_bool(0.5));
    }
    let k = rng.random_range(0..vars.len());
    let rest: Vec<usize> = vars.iter().copied().filter(|&v| v != vars[k]).collect();
    let low = random_tree(rng, &rest, depth - 1, false);
    let high = random_tree(rng, &rest, depth - 1, false);
    DecisionTree::node(vars[k], low, high)
}

/// Count of AND/OR gates in a formula whose children are all INPUT leaves.
pub fn nonskew_count(c: &Circuit) -> usize {
    c.gates()
        .iter()
        .filter(|g| matches!(g.kind, GateKind::And | GateKind::Or))
        .filter(|g| {
            g.children
                .iter()
                .all(|&ch| matches!(c.kind(ch), GateKind::Input(_)))
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::serialize;
    use crate::semantics::{is_monotone, truth_table};

    #[test]
    fn same_seed_same_netlist() {
        let spec = GenSpec::new(Shape::Circuit, 1, 4, 10).neg_density(0.3);
        let a = serialize(generate(&spec).unwrap().circuit().unwrap());
        let b = serialize(generate(&spec).unwrap().circuit().unwrap());
        assert_eq!(a, b);
        let other = serialize(
            generate(&spec.clone().stream(1))
                .unwrap()
                .circuit()
                .unwrap(),
        );
        assert_ne!(a, other);
    }

    #[test]
    fn circuits_respect_constraints() {
        for k in 0..200 {
            let spec = GenSpec::new(Shape::Circuit, 7, 5, 30)
                .stream(k)
                .neg_density(0.3)
                .max_negs(4);
            let c = generate(&spec).unwrap().into_circuit().unwrap();
            assert!(c.size() <= 30 && c.negs() <= 4);
            assert!(c.is_negation_distinct());
            assert_eq!(c.num_vars(), 5);
            assert!(c.max_fanin() <= 2);
            let bounded = generate(&spec.clone().fanin(FaninMode::Bounded(4)))
                .unwrap()
                .into_circuit()
                .unwrap();
            assert!(bounded.max_fanin() <= 4);
        }
    }

    #[test]
    fn monotone_shape_is_not_free() {
        for k in 0..50 {
            let spec = GenSpec::new(Shape::Monotone, 3, 5, 20)
                .stream(k)
                .neg_density(0.5);
            let c = generate(&spec).unwrap().into_circuit().unwrap();
            assert_eq!(c.negs(), 0);
            assert!(is_monotone(&truth_table(&c).unwrap()).unwrap());
        }
    }

    #[test]
    fn formulas() {
        for k in 0..100 {
            let spec = GenSpec::new(Shape::Formula, 5, 6, 12)
                .stream(k)
                .neg_density(0.2)
                .max_negs(4);
            let f = generate(&spec).unwrap().into_formula().unwrap();
            assert_eq!(f.leaves(), 12);
            assert!(f.negs() <= 4 && f.is_negation_distinct());
            let spec = GenSpec::new(Shape::ReadOnceLeafNeg, 5, 10, 8)
                .stream(k)
                .neg_density(0.5);
            let f = generate(&spec).unwrap().into_formula().unwrap();
            assert_eq!(f.leaves(), 8);
            assert!(!f.has_duplicate_inputs());
            for g in f.gates() {
                if g.kind == GateKind::Not {
                    assert!(matches!(f.kind(g.children[0]), GateKind::Input(_)));
                }
            }
            let spec = GenSpec::new(Shape::NonSkewFormula, 5, 10, 6)
                .stream(k)
                .neg_density(0.2);
            let f = generate(&spec).unwrap().into_formula().unwrap();
            assert_eq!(f.leaves(), 12);
            assert_eq!(nonskew_count(&f), 6);
        }
    }

    #[test]
    fn trees_are_reduced() {
        for k in 0..100 {
            let t = generate(&GenSpec::new(Shape::DTree, 2, 8, 6).stream(k))
                .unwrap()
                .into_tree()
                .unwrap();
            assert!(t.is_reduced());
            assert!((1..=6).contains(&t.depth()));
        }
    }

    #[test]
    fn infeasible_budgets() {
        assert!(matches!(
            generate(&GenSpec::new(Shape::Circuit, 1, 0, 5)),
            Err(Error::BudgetInfeasible(_))
        ));
        assert!(matches!(
            generate(&GenSpec::new(Shape::ReadOnceLeafNeg, 1, 3, 5)),
            Err(Error::BudgetInfeasible(_))
        ));
        assert!(generate(&GenSpec::new(Shape::Circuit, 1, 3, 5).neg_density(1.5)).is_err());
    }
}
