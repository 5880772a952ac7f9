//! Abacus displays, cores, weights, blocks and the product order.
//!
//! A partition λ with at most `r` parts is displayed on `e` runners by
//! placing beads at the positions `λ_i + r - i`, `1 <= i <= r`. Position `p`
//! sits on runner `p mod e`, row `p / e`. Pushing every bead as high as it
//! will go on its runner yields the display of the e-core; the number of
//! single-row moves needed is the e-weight.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Bead positions of a partition on an abacus with `e` runners.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbacusDisplay {
    e: usize,
    /// Occupied positions, strictly decreasing.
    beads: Vec<usize>,
}

pub(crate) fn check_runners(e: usize) -> Result<()> {
    if e < 2 {
        return Err(Error::InvalidRunnerCount(e));
    }
    Ok(())
}

impl AbacusDisplay {
    pub fn new(lambda: &Partition, e: usize, r: usize) -> Result<Self> {
        check_runners(e)?;
        if r < lambda.len() {
            return Err(Error::BeadCountTooSmall {
                beads: r,
                parts: lambda.len(),
            });
        }
        let beads = (0..r).map(|i| lambda.part(i) + r - 1 - i).collect();
        Ok(AbacusDisplay { e, beads })
    }

    /// Builds a display from an arbitrary set of distinct positions.
    pub fn from_positions(e: usize, mut positions: Vec<usize>) -> Result<Self> {
        check_runners(e)?;
        positions.sort_unstable_by(|a, b| b.cmp(a));
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invariant("repeated bead position".into()));
        }
        Ok(AbacusDisplay {
            e,
            beads: positions,
        })
    }

    /// Builds a display with the given occupied rows on each runner.
    pub fn from_runner_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let e = rows.len();
        let positions = rows
            .iter()
            .enumerate()
            .flat_map(|(runner, rs)| rs.iter().map(move |&row| row * e + runner))
            .collect();
        Self::from_positions(e, positions)
    }

    pub fn runners(&self) -> usize {
        self.e
    }

    pub fn bead_count(&self) -> usize {
        self.beads.len()
    }

    /// Occupied positions, strictly decreasing.
    pub fn positions(&self) -> &[usize] {
        &self.beads
    }

    pub fn is_occupied(&self, pos: usize) -> bool {
        self.beads.binary_search_by(|b| pos.cmp(b)).is_ok()
    }

    pub fn runner_of(&self, pos: usize) -> usize {
        pos % self.e
    }

    pub fn row_of(&self, pos: usize) -> usize {
        pos / self.e
    }

    /// Occupied rows of `runner`, increasing.
    pub fn runner_rows(&self, runner: usize) -> Vec<usize> {
        let mut rows: Vec<usize> = self
            .beads
            .iter()
            .filter(|&&p| p % self.e == runner)
            .map(|&p| p / self.e)
            .collect();
        rows.reverse();
        rows
    }

    /// Beads per runner.
    pub fn runner_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.e];
        for &p in &self.beads {
            counts[p % self.e] += 1;
        }
        counts
    }

    pub fn to_partition(&self) -> Partition {
        let r = self.beads.len();
        let parts = self
            .beads
            .iter()
            .enumerate()
            .map(|(i, &b)| b + 1 + i - r)
            .filter(|&p| p > 0)
            .collect();
        Partition::from_sorted(parts)
    }

    /// Number of vacant positions above `pos` on its runner.
    pub fn vacancies_above(&self, pos: usize) -> usize {
        let runner = pos % self.e;
        let row = pos / self.e;
        let occupied_above = self
            .beads
            .iter()
            .filter(|&&p| p % self.e == runner && p < pos)
            .count();
        row - occupied_above
    }

    /// The display with every bead pushed to the top of its runner.
    pub fn core_display(&self) -> AbacusDisplay {
        let rows: Vec<Vec<usize>> = self
            .runner_counts()
            .into_iter()
            .map(|c| (0..c).collect())
            .collect();
        AbacusDisplay::from_runner_rows(&rows).expect("core display is well formed")
    }

    pub fn weight(&self) -> usize {
        self.beads.iter().map(|&p| self.vacancies_above(p)).sum()
    }

    /// The single-runner partition λ(i) of `runner`.
    pub fn runner_partition(&self, runner: usize) -> Partition {
        let rows = self.runner_rows(runner);
        let b = rows.len();
        let parts = rows
            .iter()
            .rev()
            .enumerate()
            .map(|(j, &row)| row + 1 + j - b)
            .filter(|&p| p > 0)
            .collect();
        Partition::from_sorted(parts)
    }

    /// Moves the bead at `from` to the vacant position `to`.
    pub fn moved(&self, from: usize, to: usize) -> AbacusDisplay {
        debug_assert!(self.is_occupied(from) && !self.is_occupied(to));
        let mut beads: Vec<usize> = self.beads.iter().copied().filter(|&p| p != from).collect();
        let at = beads.partition_point(|&p| p > to);
        beads.insert(at, to);
        AbacusDisplay { e: self.e, beads }
    }
}

/// Reads the e-core and e-weight of λ.
pub fn e_core_and_weight(lambda: &Partition, e: usize) -> Result<(Partition, usize)> {
    let display = AbacusDisplay::new(lambda, e, lambda.len())?;
    Ok((display.core_display().to_partition(), display.weight()))
}

/// The normalized bead count for partitions of `n`: the least multiple of
/// `e` that is at least `n`, so every partition of `n` fits.
pub fn reference_beads(n: usize, e: usize) -> usize {
    n.div_ceil(e) * e
}

/// A Nakayama block: per-runner bead counts of the core display together with
/// the weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BlockId {
    pub e: usize,
    pub core_beads: Vec<usize>,
    pub weight: usize,
}

impl BlockId {
    /// Block of λ with the normalized bead count for its size.
    pub fn of(lambda: &Partition, e: usize) -> Result<Self> {
        Self::of_with_beads(lambda, e, reference_beads(lambda.size(), e))
    }

    pub fn of_with_beads(lambda: &Partition, e: usize, r: usize) -> Result<Self> {
        let display = AbacusDisplay::new(lambda, e, r)?;
        Ok(BlockId {
            e,
            core_beads: display.runner_counts(),
            weight: display.weight(),
        })
    }

    /// Block from an e-core and a weight, with the normalized bead count.
    pub fn from_core(core: &Partition, e: usize, weight: usize) -> Result<Self> {
        let (c, w) = e_core_and_weight(core, e)?;
        if w != 0 || &c != core {
            return Err(Error::BlockMismatch(format!("{core} is not an {e}-core")));
        }
        let n = core.size() + weight * e;
        let display = AbacusDisplay::new(core, e, reference_beads(n, e))?;
        Ok(BlockId {
            e,
            core_beads: display.runner_counts(),
            weight,
        })
    }

    /// The principal block of H_{we}: `w` beads on every runner.
    pub fn principal(e: usize, weight: usize) -> Self {
        BlockId {
            e,
            core_beads: vec![weight; e],
            weight,
        }
    }

    pub fn bead_count(&self) -> usize {
        self.core_beads.iter().sum()
    }

    pub fn core_display(&self) -> AbacusDisplay {
        let rows: Vec<Vec<usize>> = self.core_beads.iter().map(|&c| (0..c).collect()).collect();
        AbacusDisplay::from_runner_rows(&rows).expect("core display is well formed")
    }

    pub fn core(&self) -> Partition {
        self.core_display().to_partition()
    }

    /// Size of the partitions in the block.
    pub fn size(&self) -> usize {
        self.core().size() + self.weight * self.e
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        let base = self.bead_count();
        let r = base + lambda.len().saturating_sub(base).div_ceil(self.e) * self.e;
        lambda.size() == self.size()
            && BlockId::of_with_beads(lambda, self.e, r)
                .map(|b| b.weight == self.weight && self.same_core_beads(&b))
                .unwrap_or(false)
    }

    /// Compares bead counts allowing the other display to carry extra
    /// full rows at the top.
    fn same_core_beads(&self, other: &BlockId) -> bool {
        let shift = (other.bead_count() - self.bead_count()) / self.e;
        (other.bead_count() - self.bead_count()).is_multiple_of(self.e)
            && self
                .core_beads
                .iter()
                .zip(&other.core_beads)
                .all(|(a, b)| a + shift == *b)
    }

    /// All partitions of the block in descending lexicographic order.
    pub fn enumerate(&self) -> Vec<Partition> {
        let e = self.e;
        let w = self.weight;
        let min = self.core_beads.iter().copied().min().unwrap_or(0);
        let pad = w.saturating_sub(min);
        let counts: Vec<usize> = self.core_beads.iter().map(|c| c + pad).collect();
        let mut out = Vec::new();
        let mut quotient: Vec<Partition> = vec![Partition::empty(); e];
        enumerate_quotients(&counts, 0, w, &mut quotient, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

fn enumerate_quotients(
    counts: &[usize],
    runner: usize,
    remaining: usize,
    quotient: &mut Vec<Partition>,
    out: &mut Vec<Partition>,
) {
    let e = counts.len();
    if runner == e - 1 {
        for q in Partition::all_of_size(remaining) {
            if q.len() <= counts[runner] {
                quotient[runner] = q;
                out.push(display_from_quotient(counts, quotient).to_partition());
            }
        }
        return;
    }
    for k in 0..=remaining {
        for q in Partition::all_of_size(k) {
            if q.len() <= counts[runner] {
                quotient[runner] = q;
                enumerate_quotients(counts, runner + 1, remaining - k, quotient, out);
            }
        }
    }
}

/// Display where runner `i` carries `counts[i]` beads arranged as the
/// single-runner abacus of `quotient[i]`.
pub(crate) fn display_from_quotient(counts: &[usize], quotient: &[Partition]) -> AbacusDisplay {
    let rows: Vec<Vec<usize>> = counts
        .iter()
        .zip(quotient)
        .map(|(&b, q)| (0..b).map(|j| q.part(j) + b - 1 - j).collect())
        .collect();
    AbacusDisplay::from_runner_rows(&rows).expect("quotient display is well formed")
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        let mut i = 0;
        let mut first = true;
        while i < self.core_beads.len() {
            let mut j = i;
            while j < self.core_beads.len() && self.core_beads[j] == self.core_beads[i] {
                j += 1;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "{}^{}", self.core_beads[i], j - i)?;
            } else {
                write!(f, "{}", self.core_beads[i])?;
            }
            i = j;
        }
        write!(f, "> weight {}", self.weight)
    }
}

/// Weakly decreasing sequence of positions traced by the beads as they rise
/// to the core configuration.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ESequence(pub Vec<usize>);

pub fn induced_e_sequence(lambda: &Partition, e: usize, beads: usize) -> Result<ESequence> {
    let display = AbacusDisplay::new(lambda, e, beads)?;
    let mut seq = Vec::new();
    for &a in display.positions() {
        let w = display.vacancies_above(a);
        seq.extend((0..w).map(|k| a - k * e));
    }
    seq.sort_unstable_by(|a, b| b.cmp(a));
    Ok(ESequence(seq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductOrder {
    Leq,
    Geq,
    Equal,
    Incomparable,
    DifferentBlock,
}

/// Compares induced e-sequences componentwise at a common bead count.
pub fn product_order_cmp(lambda: &Partition, mu: &Partition, e: usize) -> Result<ProductOrder> {
    let (core_l, w_l) = e_core_and_weight(lambda, e)?;
    let (core_m, w_m) = e_core_and_weight(mu, e)?;
    if core_l != core_m || w_l != w_m {
        return Ok(ProductOrder::DifferentBlock);
    }
    let n = reference_beads(lambda.len().max(mu.len()), e);
    let sl = induced_e_sequence(lambda, e, n)?.0;
    let sm = induced_e_sequence(mu, e, n)?.0;
    let le = sl.iter().zip(&sm).all(|(a, b)| a <= b);
    let ge = sl.iter().zip(&sm).all(|(a, b)| a >= b);
    Ok(match (le, ge) {
        (true, true) => ProductOrder::Equal,
        (true, false) => ProductOrder::Leq,
        (false, true) => ProductOrder::Geq,
        (false, false) => ProductOrder::Incomparable,
    })
}

/// `lambda <_P mu` strictly.
pub fn product_less(lambda: &Partition, mu: &Partition, e: usize) -> Result<bool> {
    Ok(product_order_cmp(lambda, mu, e)? == ProductOrder::Leq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Removes rim hooks of length `e` in every possible order and checks all
    /// orders agree; independent of the abacus.
    fn rim_hook_core(lambda: &Partition, e: usize) -> (Partition, usize) {
        fn removable_hooks(l: &Partition, e: usize) -> Vec<Partition> {
            // A rim hook of length e is a connected skew strip without 2x2
            // squares; enumerate all partitions mu ⊂ l with |l/mu| = e and
            // check those properties directly on the diagram.
            let mut out = Vec::new();
            let n = l.size();
            if n < e {
                return out;
            }
            for mu in Partition::all_of_size(n - e) {
                if mu.len() > l.len() || (0..l.len()).any(|i| mu.part(i) > l.part(i)) {
                    continue;
                }
                let cells: Vec<(usize, usize)> = l
                    .nodes()
                    .filter(|&(r, c)| !mu.contains_node(r, c))
                    .collect();
                let no_square = cells.iter().all(|&(r, c)| {
                    !(cells.contains(&(r + 1, c + 1)))
                });
                let rows: Vec<usize> = cells.iter().map(|c| c.0).collect();
                let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
                let connected = (lo..hi).all(|r| {
                    // consecutive rows of a strip share a column
                    cells
                        .iter()
                        .filter(|c| c.0 == r)
                        .any(|&(_, c)| cells.contains(&(r + 1, c)))
                });
                if no_square && connected {
                    out.push(mu);
                }
            }
            out
        }
        let mut frontier = vec![lambda.clone()];
        let mut steps = 0;
        loop {
            let next: Vec<Partition> = frontier
                .iter()
                .flat_map(|l| removable_hooks(l, e))
                .collect();
            if next.is_empty() {
                let mut cores = frontier.clone();
                cores.dedup();
                assert!(cores.iter().all(|c| c == &cores[0]), "stripping orders disagree");
                return (cores[0].clone(), steps);
            }
            let mut next = next;
            next.sort();
            next.dedup();
            frontier = next;
            steps += 1;
        }
    }

    #[test]
    fn abacus_examples() {
        let d = AbacusDisplay::new(&p(&[]), 2, 2).unwrap();
        assert_eq!(d.positions(), &[1, 0]);
        let d = AbacusDisplay::new(&p(&[3, 2]), 2, 2).unwrap();
        assert_eq!(d.positions(), &[4, 2]);
        let d = AbacusDisplay::new(&p(&[1, 1]), 2, 2).unwrap();
        assert_eq!(d.positions(), &[2, 1]);
        assert_eq!(
            AbacusDisplay::new(&p(&[1, 1, 1]), 2, 2),
            Err(Error::BeadCountTooSmall { beads: 2, parts: 3 })
        );
    }

    #[test]
    fn round_trip_and_core_stability() {
        for n in 0..=12 {
            for l in Partition::all_of_size(n) {
                for e in 2..=6 {
                    for r in l.len()..=l.len() + 2 * e {
                        let d = AbacusDisplay::new(&l, e, r).unwrap();
                        assert_eq!(d.to_partition(), l);
                    }
                    let a = AbacusDisplay::new(&l, e, l.len()).unwrap();
                    let b = AbacusDisplay::new(&l, e, l.len() + e).unwrap();
                    assert_eq!(a.core_display().to_partition(), b.core_display().to_partition());
                    let (core, w) = e_core_and_weight(&l, e).unwrap();
                    assert_eq!(w * e + core.size(), n);
                }
            }
        }
    }

    #[test]
    fn cores_against_rim_hook_oracle() {
        assert_eq!(e_core_and_weight(&p(&[]), 2).unwrap(), (p(&[]), 0));
        assert_eq!(e_core_and_weight(&p(&[3, 2]), 2).unwrap(), (p(&[1]), 2));
        assert_eq!(e_core_and_weight(&p(&[2]), 3).unwrap(), (p(&[2]), 0));
        for n in 0..=9 {
            for l in Partition::all_of_size(n) {
                for e in 2..=4 {
                    assert_eq!(e_core_and_weight(&l, e).unwrap(), rim_hook_core(&l, e), "{l:?} e={e}");
                }
            }
        }
    }

    #[test]
    fn blocks() {
        let b = BlockId::of(&p(&[]), 5).unwrap();
        assert_eq!(b.weight, 0);
        assert_eq!(b.core_beads, vec![0; 5]);
        for e in 2..=4 {
            for l in Partition::all_of_size(5 * e) {
                if e_core_and_weight(&l, e).unwrap().0.is_empty() {
                    assert_eq!(BlockId::of(&l, e).unwrap(), BlockId::principal(e, 5));
                }
            }
        }
        assert_eq!(
            BlockId::of(&p(&[3, 2]), 2).unwrap(),
            BlockId::of(&p(&[1, 1, 1, 1, 1]), 2).unwrap()
        );
    }

    #[test]
    fn nakayama_consistency() {
        for n in 0..=10 {
            let all = Partition::all_of_size(n);
            for e in 2..=5 {
                let data: Vec<_> = all
                    .iter()
                    .map(|l| (BlockId::of(l, e).unwrap(), e_core_and_weight(l, e).unwrap().0))
                    .collect();
                for a in &data {
                    for b in &data {
                        assert_eq!(a.0 == b.0, a.1 == b.1);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let b = BlockId::from_core(&p(&[]), 2, 1).unwrap();
        assert_eq!(b.enumerate(), vec![p(&[2]), p(&[1, 1])]);
        let b = BlockId::from_core(&p(&[]), 3, 0).unwrap();
        assert_eq!(b.enumerate(), vec![p(&[])]);
        // every partition of 4 has empty 2-core
        let b = BlockId::from_core(&p(&[]), 2, 2).unwrap();
        assert_eq!(b.enumerate(), Partition::all_of_size(4));
        for n in 0..=12 {
            let all = Partition::all_of_size(n);
            for e in 2..=6 {
                let mut seen = std::collections::HashSet::new();
                for l in &all {
                    let (core, w) = e_core_and_weight(l, e).unwrap();
                    if !seen.insert(core.clone()) {
                        continue;
                    }
                    let block = BlockId::from_core(&core, e, w).unwrap();
                    let brute: Vec<Partition> = all
                        .iter()
                        .filter(|m| e_core_and_weight(m, e).unwrap().0 == core)
                        .cloned()
                        .collect();
                    assert_eq!(block.enumerate(), brute);
                    assert!(brute.iter().all(|m| block.contains(m)));
                }
            }
        }
    }

    #[test]
    fn induced_sequences() {
        assert_eq!(induced_e_sequence(&p(&[]), 3, 3).unwrap().0, Vec::<usize>::new());
        assert_eq!(induced_e_sequence(&p(&[1, 1]), 2, 2).unwrap().0, vec![2]);
        assert_eq!(induced_e_sequence(&p(&[2]), 2, 2).unwrap().0, vec![3]);
        for n in 0..=8 {
            for l in Partition::all_of_size(n) {
                for e in 2..=4 {
                    let w = e_core_and_weight(&l, e).unwrap().1;
                    let s = induced_e_sequence(&l, e, l.len() + e).unwrap();
                    assert_eq!(s.0.len(), w);
                }
            }
        }
    }

    #[test]
    fn product_order_examples() {
        assert_eq!(product_order_cmp(&p(&[1, 1]), &p(&[2]), 2).unwrap(), ProductOrder::Leq);
        let l = p(&[4, 1]);
        assert_eq!(product_order_cmp(&l, &l, 3).unwrap(), ProductOrder::Equal);
        assert_eq!(
            product_order_cmp(&p(&[2]), &p(&[1, 1, 1]), 2).unwrap(),
            ProductOrder::DifferentBlock
        );
    }

    #[test]
    fn product_order_is_partial_order_on_blocks() {
        for n in 0..=10 {
            let all = Partition::all_of_size(n);
            for e in 2..=4 {
                let mut seen = std::collections::HashSet::new();
                for l in &all {
                    let block = BlockId::of(l, e).unwrap();
                    if !seen.insert(block.clone()) {
                        continue;
                    }
                    let members = block.enumerate();
                    let leq = |a: &Partition, b: &Partition| {
                        matches!(
                            product_order_cmp(a, b, e).unwrap(),
                            ProductOrder::Leq | ProductOrder::Equal
                        )
                    };
                    for a in &members {
                        assert!(leq(a, a));
                        for b in &members {
                            if a != b {
                                assert!(!(leq(a, b) && leq(b, a)), "{a:?} {b:?}");
                            }
                            for c in &members {
                                if leq(a, b) && leq(b, c) {
                                    assert!(leq(a, c));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
