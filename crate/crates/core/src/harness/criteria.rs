use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fml::{
    alpha, check_decomposition, decompose_gk, nonskew_energy_estimate, readonce_leafneg_energy,
    restriction_energy_check,
};
use crate::gen::{fixture, generate, reduced_tree, reduced_tree_count, Fixture, GenSpec, Shape};
use crate::harness::sweep::{sweep, Check, Obs};
use crate::harness::{CheckRecord, Config};
use crate::ir::{
    input_of, serialize, word_mask, Circuit, DecisionTree, FaninMode, Formula, GateKind, TruthTable,
};
use crate::kw::{run_protocol, KwInstance};
use crate::lower::{check_psens_bound_capped, dt_from_patterns_capped, find_positive_path};
use crate::semantics::{
    block_count, energy_at, energy_exhaustive_capped, eval_block, is_monotone, truth_table_capped,
};
use crate::synth::{
    compile_truth_table_capped, dt_to_circuit_over, fanin2_reduce, minterm_cascade_capped,
};

pub const CRITERIA: &[&str] = &[
    "truth-table compilation: equivalence and EC <= 3n - 1 for every f on 3 and 4 variables",
    "minterm cascade: one tap per input and EC <= 2n - 1 for n = 1..10",
    "decision-tree compilation: structure and EC <= 2d^2",
    "fan-in 2 reduction of compiled trees: EC <= 2d^2(d + 1)",
    "positive sensitivity: 3 EC >= psens on fan-in 2 circuits",
    "continuous positive paths for every sensitive 1-bit",
    "firing patterns: extracted tree depth <= l t and t <= Size^EC + 1",
    "monotone game: protocol correctness and address bits <= EC log c",
    "formulas: restriction bound, block decomposition and its energy bounds",
    "read-once formulas with leaf negations: EC = L - 1",
    "monotone circuits: EC = size, reached at the all-ones input",
    "parity DNF: EC <= n + 2",
    "non-skew formulas: mean energy >= t/4 and Monte Carlo agreement",
];

pub fn criterion_title(id: usize) -> Option<&'static str> {
    id.checked_sub(1).and_then(|k| CRITERIA.get(k)).copied()
}

pub(crate) fn run(id: usize, cfg: &Config) -> Vec<CheckRecord> {
    match id {
        1 => compile_tt(cfg),
        2 => cascade(cfg),
        3 => dt_compile(cfg),
        4 => fanin2(cfg),
        5 => psens(cfg),
        6 => paths(cfg),
        7 => patterns(cfg),
        8 => kw_game(cfg),
        9 => formulas(cfg),
        10 => read_once(cfg),
        11 => monotone(cfg),
        12 => parity(cfg),
        13 => nonskew(cfg),
        _ => unreachable!("criterion ids are checked by the caller"),
    }
}

const SEED_CIRCUITS: u64 = 0xC1C0_0005;
const SEED_TREES: u64 = 0xD7EE_0003;
const SEED_PATTERNS: u64 = 0x7A7E_0007;
const SEED_KW: u64 = 0x0C0E_0008;
const SEED_FORMULAS: u64 = 0xF0F0_0009;
const SEED_READ_ONCE: u64 = 0x0E0E_0010;
const SEED_MONOTONE: u64 = 0x3030_0011;
const SEED_NONSKEW: u64 = 0x5CE3_0013;

fn count(n: usize) -> f64 {
    n as f64
}

fn circuit_of(spec: &GenSpec) -> Result<Circuit> {
    Ok(generate(spec)?
        .into_circuit()
        .expect("circuit shapes yield circuits"))
}

fn formula_of(spec: &GenSpec) -> Result<Formula> {
    Ok(generate(spec)?
        .into_formula()
        .expect("formula shapes yield formulas"))
}

fn compile_tt(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "compile_tt.equivalent",
            claim: "the compiled circuit computes f",
        },
        Check {
            id: "compile_tt.energy",
            claim: "EC <= 3n - 1",
        },
    ];
    let step = cfg.pick(61, 1);
    let table = |i: usize| {
        if i < 256 {
            TruthTable::from_words(3, vec![i as u64])
        } else {
            TruthTable::from_words(4, vec![((i - 256) * step) as u64])
        }
    };
    sweep(
        CHECKS,
        256 + (1usize << 16).div_ceil(step),
        |i| {
            let f = table(i);
            let c = compile_truth_table_capped(&f, cfg.cap)?;
            let ec = energy_exhaustive_capped(&c, cfg.cap)?.ec;
            Ok(vec![
                Obs::holds(truth_table_capped(&c, cfg.cap)? == f),
                Obs::le(count(ec), count(3 * f.num_vars() - 1)),
            ])
        },
        |i| table(i).to_string(),
    )
}

fn cascade(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "cascade.one_tap",
            claim: "exactly one tap outputs 1 on each input",
        },
        Check {
            id: "cascade.energy",
            claim: "EC <= 2n - 1",
        },
        Check {
            id: "cascade.n1_energy",
            claim: "EC = 1 for n = 1",
        },
    ];
    sweep(
        CHECKS,
        cfg.pick(8, 10),
        |k| {
            let n = k + 1;
            let m = minterm_cascade_capped(n, cfg.cap)?;
            let mask = word_mask(n);
            let mut vals = Vec::new();
            let mut one = Obs::none();
            for block in 0..block_count(n) {
                eval_block(&m.circuit, block, &mut vals);
                let (mut seen, mut dup) = (0u64, 0u64);
                for &t in &m.taps {
                    let w = vals[t] & mask;
                    dup |= seen & w;
                    seen |= w;
                }
                let bad = (mask & !(seen & !dup)).count_ones() as u64;
                let slack = if bad > 0 { -1.0 } else { 0.0 };
                one = one.merge(Obs {
                    tried: mask.count_ones() as u64,
                    failed: bad,
                    slack,
                });
            }
            let ec = energy_exhaustive_capped(&m.circuit, cfg.cap)?.ec;
            Ok(vec![
                one,
                Obs::le(count(ec), count(2 * n - 1)),
                if n == 1 {
                    Obs::eq(count(ec), 1.0)
                } else {
                    Obs::none()
                },
            ])
        },
        |k| format!("minterm cascade over {} variables", k + 1),
    )
}

struct TreeCorpus {
    stride: usize,
    exhaustive: usize,
    random: usize,
}

impl TreeCorpus {
    const DEPTH: usize = 3;
    const VARS: [usize; 4] = [0, 1, 2, 3];
    const RANDOM_VARS: usize = 8;
    const RANDOM_DEPTH: usize = 6;

    fn new(cfg: &Config) -> Self {
        let stride = cfg.pick(97, 1);
        let total = reduced_tree_count(Self::DEPTH, Self::VARS.len()) as usize;
        TreeCorpus {
            stride,
            exhaustive: total.div_ceil(stride),
            random: cfg.pick(50, 500),
        }
    }

    fn len(&self) -> usize {
        self.exhaustive + self.random
    }

    fn get(&self, i: usize) -> Result<(DecisionTree, usize)> {
        if i < self.exhaustive {
            return Ok((
                reduced_tree(Self::DEPTH, &Self::VARS, (i * self.stride) as u64),
                Self::VARS.len(),
            ));
        }
        let spec = GenSpec::new(
            Shape::DTree,
            SEED_TREES,
            Self::RANDOM_VARS,
            Self::RANDOM_DEPTH,
        )
        .stream((i - self.exhaustive) as u64);
        Ok((
            generate(&spec)?.into_tree().expect("tree shape"),
            Self::RANDOM_VARS,
        ))
    }

    fn describe(&self, i: usize) -> String {
        match self.get(i) {
            Ok((t, n)) => format!("{t} over {n} variables"),
            Err(e) => e.to_string(),
        }
    }
}

fn dt_compile(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "dt.equivalent",
            claim: "the compiled circuit computes the tree's function",
        },
        Check {
            id: "dt.negs",
            claim: "negs <= d",
        },
        Check {
            id: "dt.energy",
            claim: "EC <= 2d^2",
        },
        Check {
            id: "dt.or_fanin",
            claim: "every OR gate has fan-in 2",
        },
        Check {
            id: "dt.and_fanin",
            claim: "every AND gate has fan-in <= d + 2",
        },
        Check {
            id: "dt.or_inputs",
            claim: "no OR gate is fed by an INPUT or NOT gate",
        },
    ];
    let corpus = TreeCorpus::new(cfg);
    sweep(
        CHECKS,
        corpus.len(),
        |i| {
            let (t, n) = corpus.get(i)?;
            let r = dt_to_circuit_over(&t, n)?;
            let (c, d) = (&r.circuit, r.tree_depth);
            let ec = energy_exhaustive_capped(c, cfg.cap)?.ec;
            let ors: Vec<_> = c
                .gates()
                .iter()
                .filter(|g| g.kind == GateKind::Or)
                .collect();
            let max_and = c
                .gates()
                .iter()
                .filter(|g| g.kind == GateKind::And)
                .map(|g| g.children.len())
                .max()
                .unwrap_or(0);
            Ok(vec![
                Obs::holds(truth_table_capped(c, cfg.cap)? == t.truth_table(n)),
                Obs::le(count(c.negs()), count(d)),
                Obs::le(count(ec), count(2 * d * d)),
                Obs::holds(ors.iter().all(|g| g.children.len() == 2)),
                Obs::le(count(max_and), count(d + 2)),
                Obs::holds(
                    ors.iter()
                        .flat_map(|g| &g.children)
                        .all(|&ch| !matches!(c.kind(ch), GateKind::Input(_) | GateKind::Not)),
                ),
            ])
        },
        |i| corpus.describe(i),
    )
}

fn fanin2(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "fanin2.fanin",
            claim: "every AND/OR gate has fan-in <= 2",
        },
        Check {
            id: "fanin2.equivalent",
            claim: "the reduced circuit computes the tree's function",
        },
        Check {
            id: "fanin2.energy",
            claim: "EC <= 2d^2(d + 1)",
        },
    ];
    let corpus = TreeCorpus::new(cfg);
    sweep(
        CHECKS,
        corpus.len(),
        |i| {
            let (t, n) = corpus.get(i)?;
            let r = dt_to_circuit_over(&t, n)?;
            let d = r.tree_depth;
            let c = fanin2_reduce(&r)?;
            let ec = energy_exhaustive_capped(&c, cfg.cap)?.ec;
            Ok(vec![
                Obs::holds(c.max_fanin() <= 2 && c.fanin() == FaninMode::Fanin2),
                Obs::holds(truth_table_capped(&c, cfg.cap)? == t.truth_table(n)),
                Obs::le(count(ec), count(2 * d * d * (d + 1))),
            ])
        },
        |i| corpus.describe(i),
    )
}

/// Random fan-in 2 circuits shared by the sensitivity and path criteria.
fn sensitivity_circuit(i: usize) -> Result<Circuit> {
    let n = 1 + i % 8;
    let size = 5 + (i * 7) % 36;
    circuit_of(
        &GenSpec::new(Shape::Circuit, SEED_CIRCUITS, n, size)
            .stream(i as u64)
            .neg_density(0.25)
            .fanin(FaninMode::Fanin2),
    )
}

fn describe_circuit(c: Result<Circuit>) -> String {
    match c {
        Ok(c) => serialize(&c),
        Err(e) => e.to_string(),
    }
}

fn and_tree_dt(n: usize) -> DecisionTree {
    (0..n).rev().fold(DecisionTree::Leaf(true), |acc, v| {
        DecisionTree::node(v, DecisionTree::Leaf(false), acc)
    })
}

fn and_circuit(k: usize, cfg: &Config) -> Result<Circuit> {
    let n = 2 + k / 3;
    match k % 3 {
        0 => fixture(Fixture::AndTree(n)),
        1 => {
            compile_truth_table_capped(&TruthTable::from_fn(n, |idx| idx == (1 << n) - 1), cfg.cap)
        }
        _ => fanin2_reduce(&dt_to_circuit_over(&and_tree_dt(n), n)?),
    }
}

fn psens(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[Check {
        id: "psens.bound",
        claim: "3 EC >= psens(f)",
    }];
    const AND_CHECKS: &[Check] = &[Check {
        id: "psens.and_n",
        claim: "3 EC >= n for AND_n, n = 2..9",
    }];
    let mut out = sweep(
        CHECKS,
        cfg.pick(200, 1000),
        |i| {
            let c = sensitivity_circuit(i)?;
            let b = check_psens_bound_capped(&c, cfg.cap)?;
            Ok(vec![Obs::ge(count(b.divisor * b.ec), count(b.psens))])
        },
        |i| describe_circuit(sensitivity_circuit(i)),
    );
    out.extend(sweep(
        AND_CHECKS,
        3 * 8,
        |k| {
            let c = and_circuit(k, cfg)?;
            let ec = energy_exhaustive_capped(&c, cfg.cap)?.ec;
            Ok(vec![Obs::ge(count(3 * ec), count(c.num_vars()))])
        },
        |k| {
            let how = [
                "balanced tree",
                "compiled truth table",
                "reduced decision tree",
            ][k % 3];
            format!("AND_{} as {how}", 2 + k / 3)
        },
    ));
    out
}

fn paths(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[Check {
        id: "paths.found",
        claim: "every positively sensitive (input, index) has a verified all-firing path",
    }];
    sweep(
        CHECKS,
        cfg.pick(200, 1000),
        |i| {
            let c = sensitivity_circuit(i)?;
            let f = truth_table_capped(&c, cfg.cap)?;
            let n = c.num_vars();
            let mut obs = Obs::none();
            for idx in 0..1usize << n {
                let a = input_of(idx, n);
                for v in (0..n).filter(|&v| a[v]) {
                    let mut flipped = a.clone();
                    flipped[v] = false;
                    if f.eval(&a) != f.eval(&flipped) {
                        let ok = find_positive_path(&c, &a, v).is_ok_and(|p| p.verify(&c));
                        obs = obs.merge(Obs::holds(ok));
                    }
                }
            }
            Ok(vec![obs])
        },
        |i| describe_circuit(sensitivity_circuit(i)),
    )
}

fn pattern_circuit(i: usize) -> Result<Circuit> {
    let fanin = if i % 3 == 2 {
        FaninMode::Bounded(3)
    } else {
        FaninMode::Fanin2
    };
    circuit_of(
        &GenSpec::new(Shape::Circuit, SEED_PATTERNS, 1 + i % 5, 2 + i % 24)
            .stream(i as u64)
            .neg_density(0.3)
            .fanin(fanin),
    )
}

fn patterns(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "patterns.equivalent",
            claim: "the extracted tree computes f",
        },
        Check {
            id: "patterns.depth",
            claim: "depth of the extracted tree <= l t",
        },
        Check {
            id: "patterns.count",
            claim: "t <= Size^EC + 1",
        },
        Check {
            id: "patterns.dt_oracle",
            claim: "DT(f) <= l t",
        },
    ];
    sweep(
        CHECKS,
        cfg.pick(100, 500),
        |i| {
            let c = pattern_circuit(i)?;
            let r = dt_from_patterns_capped(&c, cfg.cap)?;
            let bound = r.depth_bound();
            Ok(vec![
                Obs::holds(r.tree.truth_table(c.num_vars()) == truth_table_capped(&c, cfg.cap)?),
                Obs::le(count(r.tree.depth()), count(bound)),
                Obs::le(r.patterns as f64, r.pattern_bound() as f64),
                r.dt_oracle
                    .map_or(Obs::none(), |d| Obs::le(count(d), count(bound))),
            ])
        },
        |i| describe_circuit(pattern_circuit(i)),
    )
}

fn kw_circuit(i: usize) -> Result<Circuit> {
    let fanin = if i % 4 == 3 {
        FaninMode::Bounded(4)
    } else {
        FaninMode::Fanin2
    };
    circuit_of(
        &GenSpec::new(Shape::Monotone, SEED_KW, 2 + i % 6, 2 + i % 20)
            .stream(i as u64)
            .fanin(fanin),
    )
}

fn kw_game(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "kw.result",
            claim: "the returned index i has a_i = 1 and b_i = 0",
        },
        Check {
            id: "kw.address_bits",
            claim: "address bits <= EC(C, a') ceil(log2 c)",
        },
        Check {
            id: "kw.minimal",
            claim: "a' <= a, f(a') = 1 and every 1-bit of a' is sensitive",
        },
    ];
    let pairs = cfg.pick(20, 50);
    sweep(
        CHECKS,
        cfg.pick(40, 200),
        |i| {
            let mono = kw_circuit(i)?;
            let f = truth_table_capped(&mono, cfg.cap)?;
            let neg = compile_truth_table_capped(&f, cfg.cap)?;
            let n = f.num_vars();
            let ones: Vec<usize> = (0..f.len()).filter(|&x| f.get(x)).collect();
            let zeros: Vec<usize> = (0..f.len()).filter(|&x| !f.get(x)).collect();
            let mut out = vec![Obs::none(); 3];
            if ones.is_empty() || zeros.is_empty() {
                return Ok(out);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(SEED_KW);
            rng.set_stream(i as u64);
            for _ in 0..pairs {
                let a = input_of(ones[rng.random_range(0..ones.len())], n);
                let b = input_of(zeros[rng.random_range(0..zeros.len())], n);
                for c in [&mono, &neg] {
                    let t = run_protocol(&KwInstance::new(
                        f.clone(),
                        c.clone(),
                        a.clone(),
                        b.clone(),
                    )?)?;
                    let m = &t.minimized;
                    let minimal = (0..n).all(|v| !m[v] || a[v])
                        && f.eval(m)
                        && (0..n).filter(|&v| m[v]).all(|v| {
                            let mut d = m.clone();
                            d[v] = false;
                            !f.eval(&d)
                        });
                    out[0] = out[0].merge(Obs::holds(a[t.result] && !b[t.result]));
                    out[1] = out[1].merge(Obs::le(count(t.alice_bits), count(t.bound())));
                    out[2] = out[2].merge(Obs::holds(minimal));
                }
            }
            Ok(out)
        },
        |i| describe_circuit(kw_circuit(i)),
    )
}

fn corpus_formula(i: usize) -> Result<Formula> {
    formula_of(
        &GenSpec::new(Shape::Formula, SEED_FORMULAS, 2 + i % 7, 2 + i % 23)
            .stream(i as u64)
            .neg_density(0.3)
            .max_negs(4),
    )
}

fn describe_formula(f: Result<Formula>) -> String {
    match f {
        Ok(f) => serialize(&f),
        Err(e) => e.to_string(),
    }
}

fn formulas(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "fml.restriction",
            claim: "EC(F|g:=b) <= EC(F) + Depth(F) for every non-root g and bit b",
        },
        Check {
            id: "fml.decomp.equivalent",
            claim: "F' computes the same function as F",
        },
        Check {
            id: "fml.decomp.leaves",
            claim: "L(F') <= 2 L(F)",
        },
        Check {
            id: "fml.decomp.blocks",
            claim: "T <= 5 negs - 2",
        },
        Check {
            id: "fml.decomp.structure",
            claim: "blocks are NOT-free and every leaf of F' lies in a block",
        },
        Check {
            id: "fml.decomp.upper",
            claim: "EC(F') <= (5 negs - 2)(EC(F) + Depth(F) + 1)",
        },
        Check {
            id: "fml.decomp.lower",
            claim: "EC(F') >= L(F) - (5 negs - 2)",
        },
        Check {
            id: "fml.combined",
            claim: "EC(F) >= L/(5 negs - 2) - Depth - 2",
        },
        Check {
            id: "fml.negs",
            claim: "EC(F) >= negs(F)",
        },
        Check {
            id: "fml.alpha",
            claim: "EC(F) >= alpha(L, Depth)",
        },
    ];
    sweep(
        CHECKS,
        cfg.pick(100, 500),
        |i| {
            let f = corpus_formula(i)?;
            let mut restriction = Obs::none();
            for g in (0..f.len()).filter(|&g| g != f.output()) {
                for b in [false, true] {
                    let r = restriction_energy_check(&f, g, b)?;
                    let worst = r.ec_restricted.max(r.ec_substituted);
                    restriction = restriction.merge(Obs::le(count(worst), count(r.bound)));
                }
            }
            let d = check_decomposition(&f, &decompose_gk(&f)?)?;
            let k = (5 * d.negs).saturating_sub(2);
            let energy = |o: Obs| if d.negs == 0 { Obs::none() } else { o };
            Ok(vec![
                restriction,
                Obs::holds(d.equivalent),
                Obs::le(count(d.leaves_prime), count(2 * d.leaves)),
                if d.negs == 0 {
                    Obs::eq(count(d.t), 1.0)
                } else {
                    Obs::le(count(d.t), count(k))
                },
                Obs::holds(d.structure_ok),
                energy(Obs::le(count(d.ec_prime), count(k * (d.ec + d.depth + 1)))),
                energy(Obs::ge(count(d.ec_prime + k), count(d.leaves))),
                energy(Obs::ge(count((d.ec + d.depth + 2) * k), count(d.leaves))),
                Obs::ge(count(d.ec), count(d.negs)),
                energy(Obs::ge(count(d.ec) + 1e-9, alpha(d.leaves, d.depth))),
            ])
        },
        |i| describe_formula(corpus_formula(i)),
    )
}

fn read_once_formula(i: usize) -> Result<Formula> {
    let l = 1 + i % 16;
    formula_of(
        &GenSpec::new(Shape::ReadOnceLeafNeg, SEED_READ_ONCE, l + i % 3, l)
            .stream(i as u64)
            .neg_density(0.5),
    )
}

fn read_once(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "readonce.literal",
            claim: "EC = L - 1 with leaf negations counted as part of the literal",
        },
        Check {
            id: "readonce.full",
            claim: "EC = L - 1 + negs with every NOT gate counted",
        },
    ];
    sweep(
        CHECKS,
        cfg.pick(50, 200),
        |i| {
            let f = read_once_formula(i)?;
            let r = readonce_leafneg_energy(&f)?;
            Ok(vec![
                Obs::eq(count(r.ec), count(r.leaves_minus_1)),
                Obs::eq(count(r.ec_full), count(r.leaves_minus_1 + f.negs())),
            ])
        },
        |i| describe_formula(read_once_formula(i)),
    )
}

fn monotone_circuit(i: usize) -> Result<Circuit> {
    let fanin = [
        FaninMode::Fanin2,
        FaninMode::Bounded(3),
        FaninMode::Unbounded,
    ][i % 3];
    circuit_of(
        &GenSpec::new(Shape::Monotone, SEED_MONOTONE, 1 + i % 8, 1 + i % 30)
            .stream(i as u64)
            .fanin(fanin),
    )
}

fn monotone(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "monotone.shape",
            claim: "negs = 0 and f is monotone",
        },
        Check {
            id: "monotone.energy",
            claim: "EC = number of NOT/AND/OR gates",
        },
        Check {
            id: "monotone.all_ones",
            claim: "EC(C, 1^n) = EC(C)",
        },
    ];
    sweep(
        CHECKS,
        cfg.pick(50, 200),
        |i| {
            let c = monotone_circuit(i)?;
            let ec = energy_exhaustive_capped(&c, cfg.cap)?.ec;
            let top = energy_at(&c, &vec![true; c.num_vars()])?;
            Ok(vec![
                Obs::holds(c.negs() == 0 && is_monotone(&truth_table_capped(&c, cfg.cap)?)?),
                Obs::eq(count(ec), count(c.size())),
                Obs::eq(count(top), count(ec)),
            ])
        },
        |i| describe_circuit(monotone_circuit(i)),
    )
}

fn parity(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "parity.computes",
            claim: "the DNF computes the parity of its inputs",
        },
        Check {
            id: "parity.energy",
            claim: "EC <= n + 2",
        },
    ];
    sweep(
        CHECKS,
        3,
        |k| {
            let n = k + 2;
            let c = fixture(Fixture::ParityDnf(n))?;
            let ec = energy_exhaustive_capped(&c, cfg.cap)?.ec;
            let xor = TruthTable::from_fn(n, |idx| idx.count_ones() % 2 == 1);
            Ok(vec![
                Obs::holds(truth_table_capped(&c, cfg.cap)? == xor),
                Obs::le(count(ec), count(n + 2)),
            ])
        },
        |k| format!("parity_dnf:{}", k + 2),
    )
}

fn nonskew_formula(i: usize) -> Result<Formula> {
    formula_of(
        &GenSpec::new(Shape::NonSkewFormula, SEED_NONSKEW, 4 + i % 9, 1 + i % 6)
            .stream(i as u64)
            .neg_density(0.2),
    )
}

fn nonskew(cfg: &Config) -> Vec<CheckRecord> {
    const CHECKS: &[Check] = &[
        Check {
            id: "nonskew.shape",
            claim: "every leaf is a child of a non-skew gate (2t = L)",
        },
        Check {
            id: "nonskew.mean",
            claim: "exact mean energy >= t/4",
        },
        Check {
            id: "nonskew.monte_carlo",
            claim: "|Monte Carlo mean - exact mean| <= 3 standard errors",
        },
    ];
    let samples = cfg.pick(1024, 4096);
    sweep(
        CHECKS,
        cfg.pick(30, 100),
        |i| {
            let f = nonskew_formula(i)?;
            let s = nonskew_energy_estimate(&f, samples, SEED_NONSKEW ^ i as u64)?;
            let exact = s.exact_mean.ok_or(Error::CapExceeded {
                what: "exact mean",
                num_vars: f.num_vars(),
                cap: 12,
            })?;
            Ok(vec![
                Obs::eq(count(2 * s.t), count(f.leaves())),
                Obs::ge(exact, s.lower_envelope),
                Obs::le((s.mean - exact).abs(), 3.0 * s.std_err),
            ])
        },
        |i| describe_formula(nonskew_formula(i)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Level;
    use crate::semantics::SWEEP_CAP;

    fn smoke() -> Config {
        Config {
            level: Level::Smoke,
            cap: SWEEP_CAP,
        }
    }

    #[test]
    fn titles_cover_every_criterion() {
        assert_eq!(CRITERIA.len(), 13);
        assert_eq!(criterion_title(0), None);
        assert!(criterion_title(13).is_some());
        assert_eq!(criterion_title(14), None);
    }

    #[test]
    fn and_dt_is_and() {
        for n in 1..=5 {
            assert_eq!(
                and_tree_dt(n).truth_table(n),
                TruthTable::from_fn(n, |i| i == (1 << n) - 1)
            );
        }
    }

    #[test]
    fn small_criteria_pass_at_smoke_level() {
        for id in [2, 10, 11, 12] {
            for r in run(id, &smoke()) {
                assert!(r.passed(), "{r:?}");
            }
        }
    }
}
