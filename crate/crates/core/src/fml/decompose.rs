use crate::error::{Error, Result};
use crate::ir::{FaninMode, Formula, Gate, GateId, GateKind, Graph};
use crate::semantics::{energy_exhaustive, equivalent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    pub f_prime: Formula,
    /// Gate ids of `f_prime` in each monotone block, one list per block.
    pub blocks: Vec<Vec<GateId>>,
    /// NOT/AND/OR gates of `f_prime` joining the blocks.
    pub skeleton: Vec<GateId>,
    pub t: usize,
}

enum Piece {
    Block(Formula),
    Gate(GateKind, Vec<Piece>),
    Not(Box<Piece>),
}

/// Rewrites a fan-in-2 formula as a read-once skeleton over NOT-free blocks.
///
/// With `F1` the subtree at the lowest common ancestor of all NOT gates: if
/// `F1 = F` the root is split (a NOT root negates the decomposed child, an
/// AND/OR root joins its decomposed children); otherwise, writing `F2` for `F`
/// with `F1` cut out and replaced by a constant,
/// `F' = F2[0] ∨ (F2[1] ∧ F1')`. A NOT-free formula is returned as one block.
pub fn decompose_gk(f: &Formula) -> Result<DecompositionResult> {
    if f.max_fanin() > 2 {
        return Err(Error::Malformed {
            what: "formula",
            detail: "decomposition needs AND/OR fan-in at most 2".into(),
        });
    }
    let piece = split(f)?;
    let mut g = Graph::new(f.num_vars());
    let mut blocks = Vec::new();
    let mut skeleton = Vec::new();
    let root = emit(&piece, &mut g, &mut blocks, &mut skeleton);
    let (f_prime, map) = g.finish_formula(root, FaninMode::Fanin2)?;
    let remap = |ids: &[GateId]| {
        let mut v: Vec<GateId> = ids
            .iter()
            .map(|&id| map[id])
            .filter(|&id| id != usize::MAX)
            .collect();
        v.sort_unstable();
        v
    };
    let blocks: Vec<Vec<GateId>> = blocks.iter().map(|b: &Vec<GateId>| remap(b)).collect();
    Ok(DecompositionResult {
        f_prime,
        t: blocks.len(),
        blocks,
        skeleton: remap(&skeleton),
    })
}

fn split(f: &Formula) -> Result<Piece> {
    if f.negs() == 0 {
        return Ok(Piece::Block(f.clone()));
    }
    let top = nots_lca(f);
    if top == f.output() {
        return split_root(f);
    }
    let n = f.num_vars();
    let zero = f.substitute_leaf(top, &Formula::constant(false, n))?;
    let one = f.substitute_leaf(top, &Formula::constant(true, n))?;
    let inner = split_root(&f.subformula(top)?)?;
    Ok(Piece::Gate(
        GateKind::Or,
        vec![
            Piece::Block(zero),
            Piece::Gate(GateKind::And, vec![Piece::Block(one), inner]),
        ],
    ))
}

/// The case where the NOT gates have the root as lowest common ancestor.
fn split_root(f: &Formula) -> Result<Piece> {
    let root = f.gate(f.output());
    match root.kind {
        GateKind::Not => Ok(Piece::Not(Box::new(split(
            &f.subformula(root.children[0])?,
        )?))),
        kind @ (GateKind::And | GateKind::Or) => {
            let kids = root
                .children
                .iter()
                .map(|&ch| f.subformula(ch))
                .collect::<Result<Vec<_>>>()?;
            assert!(
                kids.iter().all(|k| k.negs() > 0),
                "every child of an AND/OR root that is the lowest common ancestor of the NOT gates has a NOT"
            );
            Ok(Piece::Gate(
                kind,
                kids.iter().map(split).collect::<Result<_>>()?,
            ))
        }
        _ => unreachable!("a formula with a NOT gate has a logic root"),
    }
}

fn nots_lca(f: &Formula) -> GateId {
    let parent = f.parent_of();
    let mut depth = vec![0usize; f.len()];
    for id in (0..f.len()).rev() {
        if let Some(p) = parent[id] {
            depth[id] = depth[p] + 1;
        }
    }
    let lca = |mut a: GateId, mut b: GateId| {
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a].expect("non-root");
            } else {
                b = parent[b].expect("non-root");
            }
        }
        a
    };
    f.gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == GateKind::Not)
        .map(|(id, _)| id)
        .reduce(lca)
        .expect("at least one NOT")
}

fn emit(
    p: &Piece,
    g: &mut Graph,
    blocks: &mut Vec<Vec<GateId>>,
    skeleton: &mut Vec<GateId>,
) -> GateId {
    match p {
        Piece::Block(f) => {
            let map = g.append_tree(f.circuit());
            blocks.push(map.iter().copied().filter(|&id| id != usize::MAX).collect());
            map[f.output()]
        }
        Piece::Gate(kind, kids) => {
            let children = kids.iter().map(|k| emit(k, g, blocks, skeleton)).collect();
            let id = g.push(Gate {
                kind: *kind,
                children,
            });
            skeleton.push(id);
            id
        }
        Piece::Not(inner) => {
            let child = emit(inner, g, blocks, skeleton);
            let id = g.not(child);
            skeleton.push(id);
            id
        }
    }
}

/// The value of `negs` at which `negs` and `L/(5 negs - 2) - D - 2` meet, the
/// positive root of `5a² + (5D+8)a - (2D+4+L) = 0`.
pub fn alpha(leaves: usize, depth: usize) -> f64 {
    let (l, d) = (leaves as f64, depth as f64);
    (((5.0 * d + 12.0).powi(2) + 20.0 * l).sqrt() - (5.0 * d + 8.0)) / 10.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionCheck {
    pub leaves: usize,
    pub leaves_prime: usize,
    pub negs: usize,
    pub depth: usize,
    pub t: usize,
    pub ec: usize,
    pub ec_prime: usize,
    pub equivalent: bool,
    /// `L(F') <= 2 L(F)`.
    pub leaves_ok: bool,
    /// `T <= 5 negs - 2` (`T = 1` for NOT-free formulas).
    pub blocks_ok: bool,
    /// Blocks contain no NOT, and every leaf of `F'` lies in a block.
    pub structure_ok: bool,
    /// `EC(F') <= (5 negs - 2)(EC(F) + Depth(F) + 1)`.
    pub upper_ok: bool,
    /// `EC(F') >= L(F) - (5 negs - 2)`.
    pub lower_ok: bool,
    /// `(EC(F) + Depth(F) + 2)(5 negs - 2) >= L(F)`.
    pub combined_ok: bool,
    /// `EC(F) >= negs(F)`.
    pub negs_ok: bool,
    /// `EC(F) >= alpha(L, Depth)`.
    pub alpha_ok: bool,
}

impl DecompositionCheck {
    pub fn holds(&self) -> bool {
        self.equivalent
            && self.leaves_ok
            && self.blocks_ok
            && self.structure_ok
            && self.upper_ok
            && self.lower_ok
            && self.combined_ok
            && self.negs_ok
            && self.alpha_ok
    }
}

/// Evaluates every inequality of the decomposition exactly. The energy
/// inequalities are vacuous (reported true) for NOT-free formulas.
pub fn check_decomposition(f: &Formula, r: &DecompositionResult) -> Result<DecompositionCheck> {
    let fp = &r.f_prime;
    let (leaves, negs, depth) = (f.leaves(), f.negs(), f.depth());
    let ec = energy_exhaustive(f)?.ec;
    let ec_prime = energy_exhaustive(fp)?.ec;
    let mut in_block = vec![false; fp.len()];
    for &id in r.blocks.iter().flatten() {
        in_block[id] = true;
    }
    let structure_ok = r
        .blocks
        .iter()
        .flatten()
        .all(|&id| fp.kind(id) != GateKind::Not)
        && (0..fp.len()).all(|id| !matches!(fp.kind(id), GateKind::Input(_)) || in_block[id]);
    let k = (5 * negs).saturating_sub(2);
    let bounded = negs == 0;
    Ok(DecompositionCheck {
        leaves,
        leaves_prime: fp.leaves(),
        negs,
        depth,
        t: r.t,
        ec,
        ec_prime,
        equivalent: equivalent(f, fp)?,
        leaves_ok: fp.leaves() <= 2 * leaves,
        blocks_ok: if bounded { r.t == 1 } else { r.t <= k },
        structure_ok,
        upper_ok: bounded || ec_prime <= k * (ec + depth + 1),
        lower_ok: bounded || ec_prime + k >= leaves,
        combined_ok: bounded || (ec + depth + 2) * k >= leaves,
        negs_ok: ec >= negs,
        alpha_ok: bounded || ec as f64 + 1e-9 >= alpha(leaves, depth),
    })
}
