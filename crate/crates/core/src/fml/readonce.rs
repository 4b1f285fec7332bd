use crate::error::{Error, Result};
use crate::ir::{Formula, GateKind};
use crate::semantics::{energy_exhaustive, energy_weighted_capped, SWEEP_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOnceReport {
    /// EC counting AND/OR gates only, leaf negations being part of the literal.
    pub ec: usize,
    /// EC counting every NOT/AND/OR gate.
    pub ec_full: usize,
    pub leaves_minus_1: usize,
    /// `ec == leaves_minus_1`.
    pub equal: bool,
}

pub fn readonce_leafneg_energy(f: &Formula) -> Result<ReadOnceReport> {
    let mut seen = vec![false; f.num_vars()];
    for (id, g) in f.gates().iter().enumerate() {
        match g.kind {
            GateKind::Input(v) if std::mem::replace(&mut seen[v], true) => {
                return Err(Error::NotReadOnce { var: v })
            }
            GateKind::Not if !matches!(f.kind(g.children[0]), GateKind::Input(_)) => {
                return Err(Error::NonLeafNegation(id))
            }
            _ => {}
        }
    }
    let counted: Vec<bool> = f
        .gates()
        .iter()
        .map(|g| matches!(g.kind, GateKind::And | GateKind::Or))
        .collect();
    let ec = energy_weighted_capped(f, &counted, SWEEP_CAP)?.ec;
    let ec_full = energy_exhaustive(f)?.ec;
    let leaves_minus_1 = f.leaves().saturating_sub(1);
    Ok(ReadOnceReport {
        ec,
        ec_full,
        leaves_minus_1,
        equal: ec == leaves_minus_1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, GenSpec, Shape};
    use crate::ir::parse_formula;

    fn formula(text: &str) -> Formula {
        parse_formula(text).unwrap()
    }

    #[test]
    fn hand_examples() {
        let r = readonce_leafneg_energy(&formula(
            "INPUT x0\nINPUT x1\ng2 = NOT g1\ng3 = AND g0 g2\nOUTPUT g3",
        ))
        .unwrap();
        assert_eq!((r.ec, r.ec_full, r.leaves_minus_1), (1, 2, 1));
        let r = readonce_leafneg_energy(&formula(
            "INPUT x0\nINPUT x1\ng2 = OR g0 g1\nINPUT x2\ng4 = NOT g3\nINPUT x3\ng6 = OR g4 g5\ng7 = AND g2 g6\nOUTPUT g7",
        ))
        .unwrap();
        assert_eq!((r.ec, r.ec_full), (3, 4));
        assert!(r.equal);
        let r = readonce_leafneg_energy(&formula("INPUT x0\nOUTPUT g0")).unwrap();
        assert_eq!((r.ec, r.leaves_minus_1), (0, 0));
    }

    #[test]
    fn preconditions() {
        let twice = formula("INPUT x0\nINPUT x0\ng2 = AND g0 g1\nOUTPUT g2");
        assert_eq!(
            readonce_leafneg_energy(&twice),
            Err(Error::NotReadOnce { var: 0 })
        );
        let inner = formula("INPUT x0\nINPUT x1\ng2 = AND g0 g1\ng3 = NOT g2\nOUTPUT g3");
        assert_eq!(
            readonce_leafneg_energy(&inner),
            Err(Error::NonLeafNegation(3))
        );
    }

    #[test]
    fn generated_formulas() {
        for k in 0..100 {
            let spec = GenSpec::new(Shape::ReadOnceLeafNeg, 5, 10, 1 + k as usize % 10)
                .stream(k)
                .neg_density(0.5);
            let f = generate(&spec).unwrap().into_formula().unwrap();
            let r = readonce_leafneg_energy(&f).unwrap();
            assert!(r.equal, "stream {k}: {r:?}");
            assert_eq!(r.ec_full, r.leaves_minus_1 + f.negs());
        }
    }
}
