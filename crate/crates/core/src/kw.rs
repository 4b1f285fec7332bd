//! The monotone Karchmer–Wigderson game played along positive paths: Alice
//! (holding `a` with `f(a) = 1`) walks Bob down firing paths of the circuit,
//! and Bob (holding `b` with `f(b) = 0`) stops at the first leaf `i` with
//! `b[i] = 0`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ir::{Circuit, GateId, GateKind, TruthTable};
use crate::lower::{find_positive_path, Terminal};
use crate::semantics::{energy_at, equivalent_to_table, is_monotone};

#[derive(Clone, Debug)]
pub struct KwInstance {
    pub f: TruthTable,
    pub circuit: Circuit,
    pub a: Vec<bool>,
    pub b: Vec<bool>,
}

impl KwInstance {
    pub fn new(f: TruthTable, circuit: Circuit, a: Vec<bool>, b: Vec<bool>) -> Result<Self> {
        if !is_monotone(&f)? {
            return Err(Error::NotMonotone);
        }
        if !equivalent_to_table(&circuit, &f)? {
            return Err(Error::Malformed {
                what: "game instance",
                detail: "circuit does not compute f".into(),
            });
        }
        for x in [&a, &b] {
            if x.len() != f.num_vars() {
                return Err(Error::LengthMismatch {
                    expected: f.num_vars(),
                    got: x.len(),
                });
            }
        }
        if !f.eval(&a) {
            return Err(Error::NotAOneInput);
        }
        if f.eval(&b) {
            return Err(Error::NotAZeroInput);
        }
        Ok(KwInstance { f, circuit, a, b })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KwTranscript {
    /// Address bits sent at gates not announced before.
    pub alice_bits: usize,
    /// Address bits sent at gates already announced on an earlier path.
    pub revisit_bits: usize,
    /// One verdict bit per traced index.
    pub bob_bits: usize,
    pub result: usize,
    pub minimized: Vec<bool>,
    /// `ceil(log2 c)` with `c` the AND/OR fan-in bound, at least 2.
    pub bits_per_address: usize,
    /// Energy of the circuit on the minimized input.
    pub energy: usize,
}

impl KwTranscript {
    pub fn bound(&self) -> usize {
        self.energy * self.bits_per_address
    }
}

/// Clears 1-bits of `a`, highest index first, while `f` stays 1, so the
/// surviving 1-bits sit at the lowest indices available.
pub fn minimize_one_input(f: &TruthTable, a: &[bool]) -> Result<Vec<bool>> {
    if !is_monotone(f)? {
        return Err(Error::NotMonotone);
    }
    if a.len() != f.num_vars() {
        return Err(Error::LengthMismatch {
            expected: f.num_vars(),
            got: a.len(),
        });
    }
    if !f.eval(a) {
        return Err(Error::NotAOneInput);
    }
    let mut m = a.to_vec();
    for i in (0..m.len()).rev() {
        if m[i] {
            m[i] = false;
            if !f.eval(&m) {
                m[i] = true;
            }
        }
    }
    Ok(m)
}

pub fn run_protocol(inst: &KwInstance) -> Result<KwTranscript> {
    let c = &inst.circuit;
    let minimized = minimize_one_input(&inst.f, &inst.a)?;
    let limit = c.fanin().limit().unwrap_or(c.max_fanin()).max(2);
    let bits_per_address = usize::BITS as usize - (limit - 1).leading_zeros() as usize;

    let mut groups: BTreeMap<GateId, Vec<Vec<GateId>>> = BTreeMap::new();
    for i in (0..minimized.len()).filter(|&i| minimized[i]) {
        let p = find_positive_path(c, &minimized, i)?;
        let target = match p.terminal {
            Terminal::Root => c.output(),
            Terminal::FeedsNot(n) => n,
        };
        groups.entry(target).or_default().push(p.gates);
    }

    let mut announced = vec![false; c.len()];
    let mut t = KwTranscript {
        alice_bits: 0,
        revisit_bits: 0,
        bob_bits: 0,
        result: usize::MAX,
        minimized: minimized.clone(),
        bits_per_address,
        energy: energy_at(c, &minimized)?,
    };
    for path in groups.values().flatten() {
        // Walk from the top of the path down to its INPUT gate; every gate
        // above the input names the child the walk continues into.
        for &g in path[1..].iter().rev() {
            if std::mem::replace(&mut announced[g], true) {
                t.revisit_bits += bits_per_address;
            } else {
                t.alice_bits += bits_per_address;
            }
        }
        let i = match c.kind(path[0]) {
            GateKind::Input(v) => v,
            _ => unreachable!("paths start at an INPUT gate"),
        };
        t.bob_bits += 1;
        if !inst.b[i] {
            t.result = i;
            return Ok(t);
        }
    }
    Err(Error::NoSensitiveIndexFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::parse_netlist;
    use crate::semantics::truth_table;

    fn inst(text: &str, a: &[bool], b: &[bool]) -> KwInstance {
        let c = parse_netlist(text).unwrap();
        KwInstance::new(truth_table(&c).unwrap(), c, a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn minimization() {
        let or: TruthTable = "n=2 0111".parse().unwrap();
        assert_eq!(
            minimize_one_input(&or, &[true, true]).unwrap(),
            vec![true, false]
        );
        let and: TruthTable = "n=2 0001".parse().unwrap();
        assert_eq!(
            minimize_one_input(&and, &[true, true]).unwrap(),
            vec![true, true]
        );
        let xor: TruthTable = "n=2 0110".parse().unwrap();
        assert_eq!(
            minimize_one_input(&xor, &[true, false]),
            Err(Error::NotMonotone)
        );
        assert_eq!(
            minimize_one_input(&and, &[true, false]),
            Err(Error::NotAOneInput)
        );
    }

    #[test]
    fn and2_game() {
        let t = run_protocol(&inst(
            "INPUT x0\nINPUT x1\ng2 = AND g0 g1\nOUTPUT g2",
            &[true, true],
            &[false, true],
        ))
        .unwrap();
        assert_eq!(t.result, 0);
        assert_eq!((t.alice_bits, t.bits_per_address, t.energy), (1, 1, 1));
        assert!(t.alice_bits <= t.bound());
    }

    #[test]
    fn and2_second_index_revisits_the_root() {
        let t = run_protocol(&inst(
            "INPUT x0\nINPUT x1\ng2 = AND g0 g1\nOUTPUT g2",
            &[true, true],
            &[true, false],
        ))
        .unwrap();
        assert_eq!(t.result, 1);
        assert_eq!((t.alice_bits, t.revisit_bits, t.bob_bits), (1, 1, 2));
        assert!(t.alice_bits <= t.bound());
    }

    #[test]
    fn or2_game() {
        let t = run_protocol(&inst(
            "INPUT x0\nINPUT x1\ng2 = OR g0 g1\nOUTPUT g2",
            &[true, false],
            &[false, false],
        ))
        .unwrap();
        assert_eq!(t.result, 0);
    }

    #[test]
    fn instance_checks() {
        let c = parse_netlist("INPUT x0\nINPUT x1\ng2 = AND g0 g1\nOUTPUT g2").unwrap();
        let f = truth_table(&c).unwrap();
        assert!(matches!(
            KwInstance::new(f.clone(), c.clone(), vec![true, false], vec![false, false]),
            Err(Error::NotAOneInput)
        ));
        assert!(matches!(
            KwInstance::new(f, c, vec![true, true], vec![true, true]),
            Err(Error::NotAZeroInput)
        ));
    }
}
