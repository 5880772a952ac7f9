//! The principal block of weight five with restriction data, Mullineux
//! duals and the pruning passes that run before any canonical basis work.

use std::collections::HashMap;

use crate::abacus::{induced_e_sequence, BlockId};
use crate::branching::{neighbor_blocks, simple_restrict, Direction, RunnerMove, SimpleBranch};
use crate::error::{Error, Result};
use crate::mullineux::mullineux;
use crate::notation::BracketExpr;
use crate::partition::Partition;

use super::Justification;

/// Everything about the e-regular partitions of the principal block of
/// `H_{5e}` that the pruning rules need, indexed by position in
/// descending lexicographic order.
pub struct BlockAnalysis {
    pub e: usize,
    pub block: BlockId,
    pub regular: Vec<Partition>,
    pub moves: Vec<RunnerMove>,
    index: HashMap<Partition, usize>,
    dual: Vec<usize>,
    branches: Vec<Vec<SimpleBranch>>,
    reducible: Vec<Option<usize>>,
    nonzero: Vec<Vec<usize>>,
    sequences: Vec<Vec<usize>>,
}

impl BlockAnalysis {
    pub fn new(e: usize) -> Result<Self> {
        crate::abacus::check_runners(e)?;
        let block = BlockId::principal(e, 5);
        let regular: Vec<Partition> = block.enumerate().into_iter().filter(|l| l.is_e_regular(e)).collect();
        let index: HashMap<Partition, usize> =
            regular.iter().enumerate().map(|(k, l)| (l.clone(), k)).collect();
        let moves = neighbor_blocks(&block, Direction::Restrict);
        let mut dual = Vec::with_capacity(regular.len());
        let mut branches = Vec::with_capacity(regular.len());
        let mut sequences = Vec::with_capacity(regular.len());
        let r = block.bead_count();
        for l in &regular {
            let m = mullineux(l, e)?;
            let k = *index
                .get(&m)
                .ok_or_else(|| Error::Invariant(format!("dual {m} of {l} left the block")))?;
            dual.push(k);
            branches.push(moves.iter().map(|mv| simple_restrict(l, mv)).collect::<Result<Vec<_>>>()?);
            sequences.push(induced_e_sequence(l, e, r)?.0);
        }
        let mut reducible = Vec::with_capacity(regular.len());
        let mut nonzero = Vec::with_capacity(regular.len());
        for (l, row) in regular.iter().zip(&branches) {
            let found: Vec<usize> = (0..moves.len()).filter(|&m| row[m].is_reducible()).collect();
            if found.len() > 1 {
                return Err(Error::Invariant(format!("{l} restricts reducibly to {} blocks", found.len())));
            }
            reducible.push(found.first().copied());
            nonzero.push((0..moves.len()).filter(|&m| !row[m].is_zero()).collect());
        }
        Ok(BlockAnalysis {
            e,
            block,
            regular,
            moves,
            index,
            dual,
            branches,
            reducible,
            nonzero,
            sequences,
        })
    }

    pub fn len(&self) -> usize {
        self.regular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regular.is_empty()
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    pub fn partition(&self, k: usize) -> &Partition {
        &self.regular[k]
    }

    pub fn dual(&self, k: usize) -> usize {
        self.dual[k]
    }

    /// Bracket label relative to the block.
    pub fn label(&self, lambda: &Partition) -> String {
        BracketExpr::encode(lambda, &self.block)
            .map(|b| b.to_string())
            .unwrap_or_else(|_| lambda.to_string())
    }

    /// Index of the move whose restriction of `D^λ` is reducible, if any.
    pub fn reducible_move(&self, k: usize) -> Option<usize> {
        self.reducible[k]
    }

    /// Moves along which `D^μ` restricts nonzero.
    pub fn nonzero_moves(&self, k: usize) -> &[usize] {
        &self.nonzero[k]
    }

    pub fn branch(&self, k: usize, m: usize) -> &SimpleBranch {
        &self.branches[k][m]
    }

    /// `λ <_P μ` on indices.
    pub fn product_less(&self, l: usize, m: usize) -> bool {
        let (a, b) = (&self.sequences[l], &self.sequences[m]);
        a != b && a.iter().zip(b).all(|(x, y)| x <= y)
    }

    /// The lowerable test: λ must restrict reducibly somewhere, and μ only
    /// to that same block.
    pub fn lowerable(&self, l: usize, m: usize) -> bool {
        match self.reducible[l] {
            None => true,
            Some(c) => self.nonzero[m].iter().any(|&x| x != c),
        }
    }

    /// Product order and row removal on the pair itself.
    pub fn order_rule(&self, l: usize, m: usize) -> Option<Justification> {
        let (a, b) = (&self.regular[l], &self.regular[m]);
        if a.first_part() == b.first_part() {
            Some(Justification::RowRemoval)
        } else if !self.product_less(l, m) {
            Some(Justification::ProductOrder)
        } else {
            None
        }
    }

    /// The first rule that settles `adj_{λμ} = 0` without canonical bases,
    /// consulting the Mullineux dual pair last.
    pub fn combinatorial_rule(&self, l: usize, m: usize) -> Option<Justification> {
        if l == m {
            return None;
        }
        if self.lowerable(l, m) {
            return Some(Justification::Lowerable);
        }
        if let Some(j) = self.order_rule(l, m) {
            return Some(j);
        }
        let (dl, dm) = (self.dual[l], self.dual[m]);
        if self.lowerable(dl, dm) || self.order_rule(dl, dm).is_some() {
            return Some(Justification::MullineuxTransfer);
        }
        None
    }
}

/// e-regular λ in the principal block of `H_{5e}` whose simple restricts
/// reducibly to some block of `H_{5e-1}`, in descending lexicographic order.
pub fn classify_reducible(e: usize) -> Result<Vec<Partition>> {
    let a = BlockAnalysis::new(e)?;
    classify_in(&a)
}

pub(crate) fn classify_in(a: &BlockAnalysis) -> Result<Vec<Partition>> {
    Ok((0..a.len())
        .filter(|&k| a.reducible_move(k).is_some())
        .map(|k| a.regular[k].clone())
        .collect())
}

/// Pairs `(λ, μ)` with λ reducible on restriction and `D^μ` restricting
/// nonzero only to that block.
pub fn lowerable_scan(e: usize) -> Result<Vec<(Partition, Partition)>> {
    let a = BlockAnalysis::new(e)?;
    Ok(survivors_in(&a)?
        .into_iter()
        .map(|(l, m)| (a.regular[l].clone(), a.regular[m].clone()))
        .collect())
}

pub(crate) fn survivors_in(a: &BlockAnalysis) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for l in 0..a.len() {
        if a.reducible_move(l).is_none() {
            continue;
        }
        for m in 0..a.len() {
            if m != l && !a.lowerable(l, m) {
                out.push((l, m));
            }
        }
    }
    Ok(out)
}

/// Survivors passing product order and row removal both directly and on
/// their Mullineux duals, closed under taking duals.
pub fn prune_candidates(e: usize, survivors: &[(Partition, Partition)]) -> Result<Vec<(Partition, Partition)>> {
    let a = BlockAnalysis::new(e)?;
    let mut idx = Vec::with_capacity(survivors.len());
    for (l, m) in survivors {
        let find = |p: &Partition| a.index_of(p).ok_or_else(|| Error::WrongBlock(p.clone()));
        idx.push((find(l)?, find(m)?));
    }
    Ok(prune_in(&a, &idx)?
        .into_iter()
        .map(|(l, m)| (a.regular[l].clone(), a.regular[m].clone()))
        .collect())
}

pub(crate) fn prune_in(a: &BlockAnalysis, survivors: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for &(l, m) in survivors {
        if a.combinatorial_rule(l, m).is_none() {
            out.push((l, m));
            out.push((a.dual(l), a.dual(m)));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
