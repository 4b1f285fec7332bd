//! Property tests against straightforward scalar oracles.

use proptest::prelude::*;

use circuit_energy::fml::{decompose_gk, restriction_energy_check};
use circuit_energy::gen::{generate, GenSpec, Shape};
use circuit_energy::ir::{
    input_of, parse_formula, parse_netlist, serialize, Circuit, DecisionTree, FaninMode, Formula,
    GateKind, TruthTable,
};
use circuit_energy::lower::{dt_from_patterns, find_positive_path};
use circuit_energy::semantics::{
    dt_depth, energy_exhaustive, equivalent, firing_patterns, gate_values, psens, truth_table,
};
use circuit_energy::synth::{
    compile_truth_table, connector_merge, dt_to_circuit_over, fanin2_reduce,
};

fn circuit(seed: u64, n: usize, size: usize, p: f64, fanin: FaninMode) -> Circuit {
    let spec = GenSpec::new(Shape::Circuit, seed, n, size)
        .neg_density(p)
        .fanin(fanin);
    generate(&spec).unwrap().into_circuit().unwrap()
}

fn formula(seed: u64, n: usize, leaves: usize, p: f64) -> Formula {
    let spec = GenSpec::new(Shape::Formula, seed, n, leaves)
        .neg_density(p)
        .max_negs(4);
    generate(&spec).unwrap().into_formula().unwrap()
}

fn fanin_mode() -> impl Strategy<Value = FaninMode> {
    prop_oneof![
        Just(FaninMode::Fanin2),
        (3usize..5).prop_map(FaninMode::Bounded),
        Just(FaninMode::Unbounded)
    ]
}

fn energy_oracle(c: &Circuit, idx: usize) -> usize {
    let v = gate_values(c, &input_of(idx, c.num_vars()));
    c.gates()
        .iter()
        .zip(&v)
        .filter(|(g, &b)| b && g.kind.is_logic())
        .count()
}

fn output_oracle(c: &Circuit, input: &[bool]) -> bool {
    gate_values(c, input)[c.output()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn netlist_round_trip(seed in any::<u64>(), n in 1usize..7, size in 1usize..30, p in 0.0..0.6f64, m in fanin_mode()) {
        let c = circuit(seed, n, size, p, m);
        prop_assert_eq!(parse_netlist(&serialize(&c)).unwrap(), c);
    }

    #[test]
    fn formula_round_trip(seed in any::<u64>(), n in 1usize..6, leaves in 1usize..16, p in 0.0..0.5f64) {
        let f = formula(seed, n, leaves, p);
        prop_assert_eq!(parse_formula(&serialize(&f)).unwrap(), f);
    }

    #[test]
    fn exhaustive_energy_matches_scalar_sweep(seed in any::<u64>(), n in 1usize..9, size in 1usize..30, p in 0.0..0.6f64, m in fanin_mode()) {
        let c = circuit(seed, n, size, p, m);
        let r = energy_exhaustive(&c).unwrap();
        let energies: Vec<usize> = (0..1 << n).map(|i| energy_oracle(&c, i)).collect();
        let ec = *energies.iter().max().unwrap();
        prop_assert_eq!(r.ec, ec);
        prop_assert_eq!(r.argmax, input_of(energies.iter().position(|&e| e == ec).unwrap(), n));
        prop_assert_eq!(r.total, energies.iter().map(|&e| e as u64).sum::<u64>());
    }

    #[test]
    fn truth_table_matches_scalar_eval(seed in any::<u64>(), n in 1usize..9, size in 1usize..30, p in 0.0..0.6f64) {
        let c = circuit(seed, n, size, p, FaninMode::Fanin2);
        let t = truth_table(&c).unwrap();
        for idx in 0..1usize << n {
            prop_assert_eq!(t.get(idx), output_oracle(&c, &input_of(idx, n)));
        }
    }

    #[test]
    fn negation_distinct_circuits_pay_for_their_negations(seed in any::<u64>(), n in 1usize..7, size in 1usize..30, p in 0.0..0.8f64) {
        let c = circuit(seed, n, size, p, FaninMode::Fanin2);
        prop_assert!(c.is_negation_distinct());
        prop_assert!(energy_exhaustive(&c).unwrap().ec >= c.negs());
    }

    #[test]
    fn restriction_agrees_with_evaluation(seed in any::<u64>(), n in 2usize..7, size in 1usize..25, p in 0.0..0.6f64, fix in any::<u64>()) {
        let c = circuit(seed, n, size, p, FaninMode::Fanin2);
        let assignment: Vec<(usize, bool)> =
            (0..n).filter(|v| fix >> (2 * v) & 1 == 1).map(|v| (v, fix >> (2 * v + 1) & 1 == 1)).collect();
        let r = c.restrict(&assignment).unwrap();
        prop_assert_eq!(r.num_vars(), n);
        for idx in 0..1usize << n {
            let mut a = input_of(idx, n);
            for &(v, b) in &assignment {
                a[v] = b;
            }
            prop_assert_eq!(output_oracle(&r, &a), output_oracle(&c, &a));
        }
    }

    #[test]
    fn pattern_count_is_bounded(seed in any::<u64>(), n in 1usize..7, size in 1usize..25, p in 0.0..0.6f64) {
        let c = circuit(seed, n, size, p, FaninMode::Fanin2);
        let t = firing_patterns(&c).unwrap().len();
        prop_assert!(t >= 1 && t <= 1 << n);
        let r = dt_from_patterns(&c).unwrap();
        prop_assert_eq!(r.tree.truth_table(n), truth_table(&c).unwrap());
        prop_assert!(r.tree.depth() <= r.depth_bound());
        if let Some(d) = r.dt_oracle {
            prop_assert!(d <= r.tree.depth());
        }
    }

    #[test]
    fn psens_matches_definition(bits in any::<u64>(), n in 1usize..7) {
        let f = TruthTable::from_words(n, vec![bits]);
        let best = (0..1usize << n)
            .map(|idx| (0..n).filter(|&i| idx >> i & 1 == 1 && f.get(idx) != f.get(idx ^ 1 << i)).count())
            .max()
            .unwrap();
        prop_assert_eq!(psens(&f).unwrap().value, best);
    }

    #[test]
    fn positive_paths_exist(seed in any::<u64>(), n in 1usize..7, size in 1usize..25, p in 0.0..0.6f64, pick in any::<usize>()) {
        let c = circuit(seed, n, size, p, FaninMode::Fanin2);
        let a = input_of(pick % (1 << n), n);
        let f = truth_table(&c).unwrap();
        for v in (0..n).filter(|&v| a[v]) {
            let mut b = a.clone();
            b[v] = false;
            if f.eval(&a) != f.eval(&b) {
                prop_assert!(find_positive_path(&c, &a, v).unwrap().verify(&c));
            }
        }
    }

    #[test]
    fn compiled_tables_are_equivalent(bits in any::<u64>(), n in 1usize..7) {
        let f = TruthTable::from_words(n, vec![bits]);
        let c = compile_truth_table(&f).unwrap();
        prop_assert_eq!(truth_table(&c).unwrap(), f);
        prop_assert!(energy_exhaustive(&c).unwrap().ec <= 3 * n - 1);
    }

    #[test]
    fn connector_selects_by_variable(s0 in any::<u64>(), s1 in any::<u64>(), n in 1usize..6, i in 0usize..6, p in 0.0..0.6f64) {
        let i = i % n;
        let c0 = circuit(s0, n, 8, p, FaninMode::Fanin2);
        let c1 = circuit(s1, n, 8, p, FaninMode::Fanin2);
        let r = connector_merge(&c0, &c1, i).unwrap();
        let (t0, t1) = (truth_table(&c0).unwrap(), truth_table(&c1).unwrap());
        let want = TruthTable::from_fn(n, |idx| if idx >> i & 1 == 1 { t1.get(idx) } else { t0.get(idx) });
        prop_assert_eq!(truth_table(&r.circuit).unwrap(), want);
        prop_assert!(r.circuit.negs() <= c0.negs().max(c1.negs()) + 1);
    }

    #[test]
    fn compiled_trees(seed in any::<u64>(), n in 1usize..7, depth in 1usize..7) {
        let depth = depth.min(n);
        let t: DecisionTree = generate(&GenSpec::new(Shape::DTree, seed, n, depth)).unwrap().into_tree().unwrap();
        let r = dt_to_circuit_over(&t, n).unwrap();
        let d = r.tree_depth;
        prop_assert_eq!(d, t.depth());
        prop_assert_eq!(truth_table(&r.circuit).unwrap(), t.truth_table(n));
        prop_assert!(r.circuit.negs() <= d);
        prop_assert!(energy_exhaustive(&r.circuit).unwrap().ec <= 2 * d * d);
        if n <= 5 {
            prop_assert!(dt_depth(&t.truth_table(n)).unwrap().depth <= d);
        }
        let c = fanin2_reduce(&r).unwrap();
        prop_assert!(c.max_fanin() <= 2);
        prop_assert!(equivalent(&c, &r.circuit).unwrap());
        prop_assert!(energy_exhaustive(&c).unwrap().ec <= 2 * d * d * (d + 1));
    }

    #[test]
    fn substituting_a_subtree_by_itself_is_identity(seed in any::<u64>(), n in 1usize..6, leaves in 1usize..14, p in 0.0..0.5f64, pick in any::<usize>()) {
        let f = formula(seed, n, leaves, p);
        let g = pick % f.len();
        let back = f.substitute_leaf(g, &f.subformula(g).unwrap()).unwrap();
        prop_assert!(equivalent(&back, &f).unwrap());
        prop_assert_eq!(back.leaves(), f.leaves());
    }

    #[test]
    fn restriction_bound_and_decomposition(seed in any::<u64>(), n in 1usize..6, leaves in 2usize..14, p in 0.0..0.5f64, pick in any::<usize>(), b in any::<bool>()) {
        let f = formula(seed, n, leaves, p);
        let g = pick % (f.len() - 1);
        let g = if g >= f.output() { g + 1 } else { g };
        prop_assert!(restriction_energy_check(&f, g, b).unwrap().holds);
        let r = decompose_gk(&f).unwrap();
        prop_assert!(equivalent(&r.f_prime, &f).unwrap());
        prop_assert!(r.f_prime.leaves() <= 2 * f.leaves());
        prop_assert!(r.blocks.iter().flatten().all(|&id| r.f_prime.kind(id) != GateKind::Not));
    }
}
