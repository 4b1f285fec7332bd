use crate::error::{Error, Result};
use crate::ir::{Formula, GateId};
use crate::semantics::energy_exhaustive;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionCheck {
    /// EC of `D` restricted to `z = b`, with forced gates folded to constants.
    pub ec_restricted: usize,
    /// EC of `F` with the subtree at `g` replaced by CONST `b`, no folding.
    pub ec_substituted: usize,
    /// `EC(F) + Depth(F)`.
    pub bound: usize,
    pub holds: bool,
}

/// Replaces the subtree at `g` by a fresh variable `z = x<n>`, fixes `z = b`
/// and compares the energy with `EC(F) + Depth(F)`.
pub fn restriction_energy_check(f: &Formula, g: GateId, b: bool) -> Result<RestrictionCheck> {
    if g >= f.len() {
        return Err(Error::NoSuchGate(g));
    }
    if g == f.output() {
        return Err(Error::RootNotAllowed);
    }
    let n = f.num_vars();
    let d = f.substitute_leaf(g, &Formula::variable(n, n + 1)?)?;
    let ec_restricted = energy_exhaustive(&d.restrict(&[(n, b)])?)?.ec;
    let ec_substituted =
        energy_exhaustive(f.substitute_leaf(g, &Formula::constant(b, n))?.circuit())?.ec;
    let bound = energy_exhaustive(f)?.ec + f.depth();
    Ok(RestrictionCheck {
        ec_restricted,
        ec_substituted,
        bound,
        holds: ec_restricted <= bound && ec_substituted <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::parse_formula;

    #[test]
    fn and_under_or() {
        // (x0 ∧ x1) ∨ x2
        let f =
            parse_formula("INPUT x0\nINPUT x1\ng2 = AND g0 g1\nINPUT x2\ng4 = OR g2 g3\nOUTPUT g4")
                .unwrap();
        let r = restriction_energy_check(&f, 2, false).unwrap();
        assert_eq!(r.bound, 2 + 2);
        assert_eq!((r.ec_restricted, r.ec_substituted), (1, 1));
        assert!(r.holds);
        let r = restriction_energy_check(&f, 2, true).unwrap();
        // OR(CONST1, x2) is folded to a constant by the restriction.
        assert_eq!((r.ec_restricted, r.ec_substituted), (0, 1));
    }

    #[test]
    fn leaf_restriction_is_constant_substitution() {
        let f =
            parse_formula("INPUT x0\ng1 = NOT g0\nINPUT x1\ng3 = AND g1 g2\nOUTPUT g3").unwrap();
        for b in [false, true] {
            let r = restriction_energy_check(&f, 0, b).unwrap();
            assert!(r.holds);
            assert_eq!(r.ec_substituted, if b { 0 } else { 2 });
        }
    }

    #[test]
    fn root_and_unknown_gates_are_rejected() {
        let f = parse_formula("INPUT x0\ng1 = NOT g0\nOUTPUT g1").unwrap();
        assert_eq!(
            restriction_energy_check(&f, 1, true),
            Err(Error::RootNotAllowed)
        );
        assert_eq!(
            restriction_energy_check(&f, 9, true),
            Err(Error::NoSuchGate(9))
        );
    }
}
