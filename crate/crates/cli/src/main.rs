//! `cenergy`: command-line access to the circuit-energy toolkit.
//!
//! Circuits and formulas are read from netlist files, or named as
//! `fixture:<name>` (e.g. `fixture:and_tree:4`, `fixture:parity3_dnf`).
//! Exit status is 0 on success, 1 when a checked bound is violated and 2 on
//! usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use circuit_energy::fml::{
    check_decomposition, decompose_gk, nonskew_energy_estimate, readonce_leafneg_energy,
    DecompositionCheck,
};
use circuit_energy::gen::{fixture_by_name, generate, nonskew_count, GenSpec, Generated, Shape};
use circuit_energy::harness::{run_all, run_criterion, Config, Level, Report};
use circuit_energy::ir::{
    format_input, parse_formula, parse_input, parse_netlist, serialize, Circuit, DecisionTree,
    FaninMode, Formula, TruthTable,
};
use circuit_energy::kw::{run_protocol, KwInstance};
use circuit_energy::lower::{check_psens_bound_capped, dt_from_patterns_capped};
use circuit_energy::semantics::{
    energy_exhaustive_capped, evaluate, firing_patterns_capped, truth_table, SWEEP_CAP,
};
use circuit_energy::synth::{compile_truth_table_capped, dt_to_circuit_over, fanin2_reduce};

#[derive(Parser)]
#[command(
    name = "cenergy",
    version,
    about = "Energy complexity of Boolean circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a circuit on one input
    Eval {
        #[command(flatten)]
        circuit: CircuitArg,
        /// Input bits, variable 0 first
        #[arg(long)]
        input: String,
    },
    /// Energy on one input, or the maximum over all inputs
    Energy {
        #[command(flatten)]
        circuit: CircuitArg,
        /// Sweep all inputs (the default when --input is absent)
        #[arg(long, conflicts_with = "input")]
        exhaustive: bool,
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Count the distinct firing patterns
    Patterns {
        #[command(flatten)]
        circuit: CircuitArg,
        /// Also print every pattern
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Compile a truth table through the minterm cascade
    CompileTt {
        /// Truth table file (`n=<k>` followed by 2^k bits)
        #[arg(long)]
        table: PathBuf,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Compile a decision tree into a circuit with few negations
    Dt2circuit {
        #[command(flatten)]
        tree: TreeArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Compile a decision tree and reduce the result to fan-in 2
    Fanin2 {
        #[command(flatten)]
        tree: TreeArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check 3 EC >= psens (or (c+1) EC >= psens for fan-in bound c)
    PsensCheck {
        #[command(flatten)]
        circuit: CircuitArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Extract a decision tree from the firing patterns
    ExtractDt {
        #[command(flatten)]
        circuit: CircuitArg,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Play the monotone game on a circuit, printing a JSON transcript summary
    KwRun {
        #[command(flatten)]
        circuit: CircuitArg,
        /// A 1-input of the function
        #[arg(long)]
        a: String,
        /// A 0-input of the function
        #[arg(long)]
        b: String,
    },
    /// Decompose a formula into monotone blocks and check its bounds
    FmlDecompose {
        #[command(flatten)]
        formula: FormulaArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Leaf, depth, negation and energy statistics of a formula
    FmlStats {
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Sampled and exact mean energy of a formula
    FmlNonskew {
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a random instance
    Gen(GenArgs),
    /// Run the acceptance criteria
    VerifyAll {
        #[arg(long, default_value = "smoke")]
        level: Level,
        /// Write the report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
        /// Variable cap for exhaustive sweeps
        #[arg(long = "cap-n", default_value_t = SWEEP_CAP)]
        cap_n: usize,
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Args)]
struct CircuitArg {
    /// Netlist file or `fixture:<name>`
    #[arg(long)]
    circuit: String,
}

#[derive(Args)]
struct FormulaArg {
    /// Tree-shaped netlist file or `fixture:<name>`
    #[arg(long)]
    formula: String,
}

#[derive(Args)]
struct TreeArg {
    /// Decision tree file, e.g. `(x0 (x1 0 1) 1)`
    #[arg(long)]
    tree: PathBuf,
    /// Variable count of the circuit (default: one past the largest tested variable)
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Args)]
struct OutArg {
    /// Write the netlist here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CapArg {
    /// Variable cap for exhaustive sweeps
    #[arg(long = "cap-n", default_value_t = SWEEP_CAP)]
    cap_n: usize,
}

#[derive(Args)]
struct GenArgs {
    /// CIRCUIT, FORMULA, READONCE_LEAFNEG, MONOTONE, DTREE or NONSKEW_FORMULA
    #[arg(long)]
    shape: Shape,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    #[arg(long)]
    vars: usize,
    /// Gates for circuits, leaves for formulas, leaf pairs for non-skew formulas, depth for trees
    #[arg(long)]
    size: usize,
    #[arg(long, default_value_t = 0.0)]
    neg_density: f64,
    /// 2, a bound c >= 3, or UNBOUNDED
    #[arg(long, default_value = "2")]
    fanin: FaninMode,
    #[arg(long)]
    max_negs: Option<usize>,
    #[command(flatten)]
    out: OutArg,
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<circuit_energy::Error> for Failure {
    fn from(e: circuit_energy::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_circuit(arg: &str) -> Result<Circuit, Failure> {
    match arg.strip_prefix("fixture:") {
        Some(name) => Ok(fixture_by_name(name)?),
        None => Ok(parse_netlist(&read(Path::new(arg))?)?),
    }
}

fn load_formula(arg: &str) -> Result<Formula, Failure> {
    match arg.strip_prefix("fixture:") {
        Some(name) => Ok(Formula::from_circuit(fixture_by_name(name)?)?),
        None => Ok(parse_formula(&read(Path::new(arg))?)?),
    }
}

fn load_tree(arg: &TreeArg) -> Result<(DecisionTree, usize), Failure> {
    let t: DecisionTree = read(&arg.tree)?.parse()?;
    let n = arg.vars.unwrap_or_else(|| t.var_bound());
    Ok((t, n))
}

fn emit(out: &OutArg, text: &str) -> Outcome {
    match &out.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn with_header(lines: &[String], body: &str) -> String {
    let mut s: String = lines.iter().map(|l| format!("# {l}\n")).collect();
    s.push_str(body);
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn verdict(ok: bool, what: String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation(what))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Eval { circuit, input } => {
            let c = load_circuit(&circuit.circuit)?;
            let t = evaluate(&c, &parse_input(&input)?)?;
            let values: String = c
                .logic_gates()
                .map(|g| if t.values[g] { '1' } else { '0' })
                .collect();
            println!(
                "output={} energy={} pattern={values}",
                u8::from(t.output(&c)),
                t.energy
            );
            Ok(())
        }
        Command::Energy {
            circuit,
            exhaustive: _,
            input,
            cap,
        } => {
            let c = load_circuit(&circuit.circuit)?;
            match input {
                Some(bits) => println!("energy={}", evaluate(&c, &parse_input(&bits)?)?.energy),
                None => {
                    let r = energy_exhaustive_capped(&c, cap.cap_n)?;
                    println!("EC={} argmax={}", r.ec, format_input(&r.argmax));
                }
            }
            Ok(())
        }
        Command::Patterns { circuit, list, cap } => {
            let c = load_circuit(&circuit.circuit)?;
            let set = firing_patterns_capped(&c, cap.cap_n)?;
            println!("patterns={} size={}", set.len(), c.size());
            if list {
                for p in &set {
                    println!(
                        "{}",
                        (0..p.len)
                            .map(|k| if p.get(k) { '1' } else { '0' })
                            .collect::<String>()
                    );
                }
            }
            Ok(())
        }
        Command::CompileTt { table, out, cap } => {
            let f: TruthTable = read(&table)?.parse()?;
            let c = compile_truth_table_capped(&f, cap.cap_n)?;
            let ec = energy_exhaustive_capped(&c, cap.cap_n)?.ec;
            let bound = (3 * f.num_vars()).saturating_sub(1);
            let header = [format!(
                "EC={ec} bound={bound} size={} negs={}",
                c.size(),
                c.negs()
            )];
            emit(&out, &with_header(&header, &serialize(&c)))?;
            verdict(
                f.num_vars() == 0 || ec <= bound,
                format!("EC={ec} exceeds 3n-1={bound}"),
            )
        }
        Command::Dt2circuit { tree, out } => {
            let (t, n) = load_tree(&tree)?;
            let r = dt_to_circuit_over(&t, n)?;
            let d = r.tree_depth;
            let ec = energy_exhaustive_capped(&r.circuit, SWEEP_CAP)?.ec;
            let header = [format!(
                "depth={d} EC={ec} bound={} negs={} size={}",
                2 * d * d,
                r.circuit.negs(),
                r.circuit.size()
            )];
            emit(&out, &with_header(&header, &serialize(&r.circuit)))?;
            verdict(
                ec <= 2 * d * d && r.circuit.negs() <= d,
                format!("EC={ec} negs={} for depth {d}", r.circuit.negs()),
            )
        }
        Command::Fanin2 { tree, out } => {
            let (t, n) = load_tree(&tree)?;
            let r = dt_to_circuit_over(&t, n)?;
            let d = r.tree_depth;
            let c = fanin2_reduce(&r)?;
            let ec = energy_exhaustive_capped(&c, SWEEP_CAP)?.ec;
            let bound = 2 * d * d * (d + 1);
            let header = [format!(
                "depth={d} EC={ec} bound={bound} negs={} size={}",
                c.negs(),
                c.size()
            )];
            emit(&out, &with_header(&header, &serialize(&c)))?;
            verdict(ec <= bound, format!("EC={ec} exceeds {bound}"))
        }
        Command::PsensCheck { circuit, cap } => {
            let c = load_circuit(&circuit.circuit)?;
            let r = check_psens_bound_capped(&c, cap.cap_n)?;
            println!(
                "EC={} psens={} divisor={} holds={} ec_argmax={} psens_witness={}",
                r.ec,
                r.psens,
                r.divisor,
                r.holds,
                format_input(&r.ec_argmax),
                format_input(&r.psens_witness)
            );
            verdict(r.holds, format!("{} * {} < {}", r.divisor, r.ec, r.psens))
        }
        Command::ExtractDt { circuit, cap } => {
            let c = load_circuit(&circuit.circuit)?;
            let r = dt_from_patterns_capped(&c, cap.cap_n)?;
            println!("{}", r.tree);
            let oracle = r.dt_oracle.map_or("-".to_string(), |d| d.to_string());
            println!(
                "# depth={} patterns={} fanin={} depth_bound={} size={} EC={} pattern_bound={} dt={oracle}",
                r.tree.depth(),
                r.patterns,
                r.max_fanin,
                r.depth_bound(),
                r.size,
                r.energy,
                r.pattern_bound()
            );
            let equivalent = r.tree.truth_table(c.num_vars()) == truth_table(&c)?;
            verdict(
                equivalent
                    && r.tree.depth() <= r.depth_bound()
                    && (r.patterns as u64) <= r.pattern_bound(),
                "extracted tree violates a bound".to_string(),
            )
        }
        Command::KwRun { circuit, a, b } => {
            let c = load_circuit(&circuit.circuit)?;
            let f = truth_table(&c)?;
            let (a, b) = (parse_input(&a)?, parse_input(&b)?);
            let t = run_protocol(&KwInstance::new(f, c, a.clone(), b.clone())?)?;
            let summary = json!({
                "result": t.result,
                "minimized": format_input(&t.minimized),
                "alice_bits": t.alice_bits,
                "revisit_bits": t.revisit_bits,
                "bob_bits": t.bob_bits,
                "bits_per_address": t.bits_per_address,
                "energy": t.energy,
                "bound": t.bound(),
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("serializable")
            );
            verdict(
                a[t.result] && !b[t.result] && t.alice_bits <= t.bound(),
                format!(
                    "result {} or {} address bits > {}",
                    t.result,
                    t.alice_bits,
                    t.bound()
                ),
            )
        }
        Command::FmlDecompose { formula, out } => {
            let f = load_formula(&formula.formula)?;
            let r = decompose_gk(&f)?;
            let chk = check_decomposition(&f, &r)?;
            emit(
                &out,
                &with_header(&decomposition_header(&chk), &serialize(&r.f_prime)),
            )?;
            verdict(chk.holds(), format!("{chk:?}"))
        }
        Command::FmlStats { formula } => {
            let f = load_formula(&formula.formula)?;
            let e = energy_exhaustive_capped(&f, SWEEP_CAP)?;
            println!(
                "leaves={} depth={} negs={} size={} nonskew={} EC={} mean={}",
                f.leaves(),
                f.depth(),
                f.negs(),
                f.size(),
                nonskew_count(&f),
                e.ec,
                e.mean(f.num_vars())
            );
            if let Ok(r) = readonce_leafneg_energy(&f) {
                println!(
                    "read_once EC_literal={} EC_full={} L-1={} equal={}",
                    r.ec, r.ec_full, r.leaves_minus_1, r.equal
                );
            }
            Ok(())
        }
        Command::FmlNonskew {
            formula,
            samples,
            seed,
        } => {
            let f = load_formula(&formula.formula)?;
            let s = nonskew_energy_estimate(&f, samples, seed)?;
            let summary = json!({
                "t": s.t,
                "samples": s.samples,
                "mean": s.mean,
                "std_err": s.std_err,
                "exact_mean": s.exact_mean,
                "lower_envelope": s.lower_envelope,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&summary).expect("serializable")
            );
            Ok(())
        }
        Command::Gen(g) => {
            let mut spec = GenSpec::new(g.shape, g.seed, g.vars, g.size)
                .stream(g.stream)
                .neg_density(g.neg_density)
                .fanin(g.fanin);
            if let Some(m) = g.max_negs {
                spec = spec.max_negs(m);
            }
            let header = [format!(
                "gen shape={} seed={} stream={} vars={} size={} neg_density={} fanin={} max_negs={}",
                g.shape,
                g.seed,
                g.stream,
                g.vars,
                g.size,
                g.neg_density,
                g.fanin,
                g.max_negs.map_or("none".to_string(), |m| m.to_string())
            )];
            let body = match generate(&spec)? {
                Generated::Circuit(c) => serialize(&c),
                Generated::Formula(f) => serialize(&f),
                Generated::Tree(t) => t.to_string(),
            };
            emit(&g.out, &with_header(&header, &body))
        }
        Command::VerifyAll {
            level,
            json,
            cap_n,
            only,
        } => {
            let cfg = Config::new(level).cap(cap_n);
            let report = if only.is_empty() {
                run_all(&cfg)
            } else {
                let mut criteria = Vec::new();
                for id in only {
                    criteria.push(run_criterion(id, &cfg)?);
                }
                let wall_time_secs = criteria.iter().map(|c| c.wall_time_secs).sum();
                Report {
                    suite: "energy-complexity".to_string(),
                    level,
                    criteria,
                    wall_time_secs,
                }
            };
            for c in &report.criteria {
                let tried: u64 = c.checks.iter().map(|k| k.instances_tried).sum();
                println!(
                    "criterion {:>2} {} {tried} cases {} violations: {}",
                    c.id,
                    if c.passed() { "PASS" } else { "FAIL" },
                    c.violations(),
                    c.title
                );
                for k in c.checks.iter().filter(|k| !k.passed()) {
                    println!("  {} [{}]", k.check_id, k.claim);
                    if let Some(w) = &k.extremal_witness {
                        println!("    {}", w.replace('\n', "\n    "));
                    }
                }
            }
            println!(
                "{} of {} criteria passed in {:.1}s",
                report.criteria.iter().filter(|c| c.passed()).count(),
                report.criteria.len(),
                report.wall_time_secs
            );
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            verdict(
                report.passed(),
                format!("{} violations", report.violations()),
            )
        }
    }
}

fn decomposition_header(c: &DecompositionCheck) -> Vec<String> {
    vec![
        format!("L={} L'={} negs={} depth={} T={}", c.leaves, c.leaves_prime, c.negs, c.depth, c.t),
        format!("EC(F)={} EC(F')={}", c.ec, c.ec_prime),
        format!(
            "equivalent={} leaves_ok={} blocks_ok={} structure_ok={} upper_ok={} lower_ok={} combined_ok={} negs_ok={} alpha_ok={}",
            c.equivalent,
            c.leaves_ok,
            c.blocks_ok,
            c.structure_ok,
            c.upper_ok,
            c.lower_ok,
            c.combined_ok,
            c.negs_ok,
            c.alpha_ok
        ),
    ]
}
