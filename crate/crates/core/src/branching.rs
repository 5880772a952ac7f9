//! Modular branching on the abacus.
//!
//! A move along runner `i` pairs each position `a` on runner `i` with its
//! left neighbour `a - 1` on runner `i - 1` (cyclically; for `i = 0` the
//! neighbour sits one row higher on runner `e - 1`). Restriction moves beads
//! from runner `i` to runner `i - 1`, induction the other way.
//!
//! Every computation runs on a display padded with one extra full row, so
//! that positions above the top of the caller's display behave as occupied.

use std::fmt;

use crate::abacus::{AbacusDisplay, BlockId};
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    Restrict,
    Induce,
}

/// Moving `kappa` beads between runners `i - 1` and `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RunnerMove {
    pub source: BlockId,
    pub target: BlockId,
    pub runner: usize,
    pub kappa: usize,
    pub direction: Direction,
}

impl RunnerMove {
    /// Builds the move from `source` along runner `i`, deriving the target
    /// block. Returns `None` when no partition of the source block can make it.
    pub fn new(source: &BlockId, runner: usize, kappa: usize, direction: Direction) -> Option<Self> {
        let e = source.e;
        let left = (runner + e - 1) % e;
        let (from, to) = match direction {
            Direction::Restrict => (runner, left),
            Direction::Induce => (left, runner),
        };
        if source.core_beads[from] < kappa || kappa == 0 {
            return None;
        }
        let mut counts = source.core_beads.clone();
        counts[from] -= kappa;
        counts[to] += kappa;
        let n = source.size();
        let target_size = match direction {
            Direction::Restrict => n.checked_sub(kappa)?,
            Direction::Induce => n + kappa,
        };
        let probe = BlockId {
            e,
            core_beads: counts.clone(),
            weight: 0,
        };
        let core_size = probe.core().size();
        if target_size < core_size || !(target_size - core_size).is_multiple_of(e) {
            return None;
        }
        Some(RunnerMove {
            source: source.clone(),
            target: BlockId {
                e,
                core_beads: counts,
                weight: (target_size - core_size) / e,
            },
            runner,
            kappa,
            direction,
        })
    }

    /// The runner pair `(i - 1, i)`.
    pub fn pair(&self) -> (usize, usize) {
        let e = self.source.e;
        ((self.runner + e - 1) % e, self.runner)
    }
}

impl fmt::Display for RunnerMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.direction {
            Direction::Restrict => "restrict",
            Direction::Induce => "induce",
        };
        let (a, b) = self.pair();
        write!(
            f,
            "{arrow} runners ({a},{b}) kappa {}: {} -> {}",
            self.kappa, self.source, self.target
        )
    }
}

/// Moves of weight one to every neighbouring block.
pub fn neighbor_blocks(block: &BlockId, direction: Direction) -> Vec<RunnerMove> {
    (0..block.e)
        .filter_map(|i| RunnerMove::new(block, i, 1, direction))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

/// The i-signature of a display: one sign per row where exactly one of the
/// paired positions is occupied. Rows are rows of runner `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    pub raw: Vec<(Sign, usize)>,
    pub reduced: Vec<(Sign, usize)>,
}

impl Signature {
    /// Rows (on runner `i`) of normal beads, top first.
    pub fn normal_rows(&self) -> Vec<usize> {
        self.reduced
            .iter()
            .filter(|(s, _)| *s == Sign::Minus)
            .map(|&(_, row)| row)
            .collect()
    }

    /// Rows (of the paired position on runner `i`) of conormal beads, top first.
    pub fn conormal_rows(&self) -> Vec<usize> {
        self.reduced
            .iter()
            .filter(|(s, _)| *s == Sign::Plus)
            .map(|&(_, row)| row)
            .collect()
    }

    pub fn render(signs: &[(Sign, usize)]) -> String {
        signs
            .iter()
            .map(|(s, _)| match s {
                Sign::Plus => '+',
                Sign::Minus => '-',
            })
            .collect()
    }
}

/// Deletes adjacent `-+` pairs until none remain.
pub fn reduce_signature(raw: &[(Sign, usize)]) -> Vec<(Sign, usize)> {
    let mut stack: Vec<(Sign, usize)> = Vec::with_capacity(raw.len());
    for &item in raw {
        if item.0 == Sign::Plus && matches!(stack.last(), Some((Sign::Minus, _))) {
            stack.pop();
        } else {
            stack.push(item);
        }
    }
    stack
}

/// Display of λ with `r` beads plus one full padding row.
fn padded(lambda: &Partition, e: usize, r: usize) -> Result<AbacusDisplay> {
    if r < lambda.len() {
        return Err(Error::BeadCountTooSmall {
            beads: r,
            parts: lambda.len(),
        });
    }
    AbacusDisplay::new(lambda, e, r + e)
}

/// Padded positions of runner `i`, paired with their left neighbours,
/// covering every row where either could be occupied.
fn paired_positions(display: &AbacusDisplay, runner: usize) -> impl Iterator<Item = usize> {
    let e = display.runners();
    let top = display.positions().first().copied().unwrap_or(0);
    let rows = top / e + 2;
    (1..rows).map(move |row| row * e + runner)
}

pub fn signature(lambda: &Partition, e: usize, r: usize, runner: usize) -> Result<Signature> {
    crate::abacus::check_runners(e)?;
    if runner >= e {
        return Err(Error::RunnerOutOfRange { runner, e });
    }
    let d = padded(lambda, e, r)?;
    let mut raw = Vec::new();
    for a in paired_positions(&d, runner) {
        let here = d.is_occupied(a);
        let left = d.is_occupied(a - 1);
        let row = a / e - 1;
        match (left, here) {
            (false, true) => raw.push((Sign::Minus, row)),
            (true, false) => raw.push((Sign::Plus, row)),
            _ => {}
        }
    }
    let reduced = reduce_signature(&raw);
    Ok(Signature { raw, reduced })
}

/// Outcome of restricting or inducing a simple module to a neighbouring block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SimpleBranch {
    Zero,
    /// `kappa!` copies of a single simple.
    Simple(Partition),
    /// Nonzero and not semisimple-isotypic: the label is the socle.
    Reducible(Partition),
}

impl SimpleBranch {
    pub fn label(&self) -> Option<&Partition> {
        match self {
            SimpleBranch::Zero => None,
            SimpleBranch::Simple(p) | SimpleBranch::Reducible(p) => Some(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SimpleBranch::Zero)
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, SimpleBranch::Reducible(_))
    }
}

fn check_source(lambda: &Partition, mv: &RunnerMove, want: Direction) -> Result<()> {
    if mv.direction != want {
        return Err(Error::Invariant(format!("expected a {want:?} move")));
    }
    if !mv.source.contains(lambda) {
        return Err(Error::WrongBlock(lambda.clone()));
    }
    Ok(())
}

fn move_rows(
    lambda: &Partition,
    e: usize,
    r: usize,
    runner: usize,
    rows: &[usize],
    direction: Direction,
) -> Result<Partition> {
    let mut d = padded(lambda, e, r)?;
    for &row in rows {
        let a = (row + 1) * e + runner;
        d = match direction {
            Direction::Restrict => d.moved(a, a - 1),
            Direction::Induce => d.moved(a - 1, a),
        };
    }
    Ok(d.to_partition())
}

/// Removes the good node of residue `i`: the highest normal bead, on a
/// display whose bead count is a multiple of `e` so that runner `i` carries
/// the nodes of residue `i`.
pub fn remove_good_node(lambda: &Partition, e: usize, i: usize) -> Result<Option<Partition>> {
    let r = lambda.len().div_ceil(e) * e;
    let sig = signature(lambda, e, r, i)?;
    match sig.normal_rows().first() {
        None => Ok(None),
        Some(&row) => move_rows(lambda, e, r, i, &[row], Direction::Restrict).map(Some),
    }
}

/// Adds the cogood node of residue `i`: the lowest conormal bead.
pub fn add_cogood_node(lambda: &Partition, e: usize, i: usize) -> Result<Option<Partition>> {
    let r = lambda.len().div_ceil(e) * e;
    let sig = signature(lambda, e, r, i)?;
    match sig.conormal_rows().last() {
        None => Ok(None),
        Some(&row) => move_rows(lambda, e, r, i, &[row], Direction::Induce).map(Some),
    }
}

/// Bead count of the block's reference display, grown by whole rows if λ
/// has more parts.
fn display_beads(lambda: &Partition, block: &BlockId) -> usize {
    let base = block.bead_count();
    base + lambda.len().saturating_sub(base).div_ceil(block.e) * block.e
}

pub fn simple_restrict(lambda: &Partition, mv: &RunnerMove) -> Result<SimpleBranch> {
    let e = mv.source.e;
    if !lambda.is_e_regular(e) {
        return Err(Error::NotERegular {
            partition: lambda.clone(),
            e,
        });
    }
    check_source(lambda, mv, Direction::Restrict)?;
    let sig = signature(lambda, e, display_beads(lambda, &mv.source), mv.runner)?;
    let normal = sig.normal_rows();
    if normal.len() < mv.kappa {
        return Ok(SimpleBranch::Zero);
    }
    let r = display_beads(lambda, &mv.source);
    let label = move_rows(lambda, e, r, mv.runner, &normal[..mv.kappa], Direction::Restrict)?;
    Ok(if normal.len() == mv.kappa {
        SimpleBranch::Simple(label)
    } else {
        SimpleBranch::Reducible(label)
    })
}

pub fn simple_induce(lambda: &Partition, mv: &RunnerMove) -> Result<SimpleBranch> {
    let e = mv.source.e;
    if !lambda.is_e_regular(e) {
        return Err(Error::NotERegular {
            partition: lambda.clone(),
            e,
        });
    }
    check_source(lambda, mv, Direction::Induce)?;
    let sig = signature(lambda, e, display_beads(lambda, &mv.source), mv.runner)?;
    let conormal = sig.conormal_rows();
    if conormal.len() < mv.kappa {
        return Ok(SimpleBranch::Zero);
    }
    let lowest = &conormal[conormal.len() - mv.kappa..];
    let r = display_beads(lambda, &mv.source);
    let label = move_rows(lambda, e, r, mv.runner, lowest, Direction::Induce)?;
    Ok(if conormal.len() == mv.kappa {
        SimpleBranch::Simple(label)
    } else {
        SimpleBranch::Reducible(label)
    })
}

/// Factors of a Specht filtration; each appears `multiplicity` times.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpechtBranch {
    pub terms: Vec<Partition>,
    pub multiplicity: usize,
}

fn specht_list(lambda: &Partition, mv: &RunnerMove, direction: Direction) -> Result<SpechtBranch> {
    check_source(lambda, mv, direction)?;
    let e = mv.source.e;
    let r = display_beads(lambda, &mv.source);
    let d = padded(lambda, e, r)?;
    let movable: Vec<usize> = paired_positions(&d, mv.runner)
        .filter(|&a| match direction {
            Direction::Restrict => d.is_occupied(a) && !d.is_occupied(a - 1),
            Direction::Induce => d.is_occupied(a - 1) && !d.is_occupied(a),
        })
        .collect();
    let mut terms = Vec::new();
    for subset in combinations(movable.len(), mv.kappa) {
        let mut m = d.clone();
        for &k in &subset {
            let a = movable[k];
            m = match direction {
                Direction::Restrict => m.moved(a, a - 1),
                Direction::Induce => m.moved(a - 1, a),
            };
        }
        terms.push(m.to_partition());
    }
    terms.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SpechtBranch {
        terms,
        multiplicity: (1..=mv.kappa).product(),
    })
}

pub fn specht_restrict_list(lambda: &Partition, mv: &RunnerMove) -> Result<SpechtBranch> {
    specht_list(lambda, mv, Direction::Restrict)
}

pub fn specht_induce_list(lambda: &Partition, mv: &RunnerMove) -> Result<SpechtBranch> {
    specht_list(lambda, mv, Direction::Induce)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Restriction of an e-regular simple to every neighbouring block of
/// weight one move.
pub fn restriction_profile(lambda: &Partition, block: &BlockId) -> Result<Vec<(RunnerMove, SimpleBranch)>> {
    neighbor_blocks(block, Direction::Restrict)
        .into_iter()
        .map(|mv| {
            let b = simple_restrict(lambda, &mv)?;
            Ok((mv, b))
        })
        .collect()
}
