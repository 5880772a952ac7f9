//! The Fock space with basis `s(λ)` and the operators `f_i`.

use std::collections::BTreeMap;
use std::fmt;

use crate::abacus::{check_runners, AbacusDisplay};
use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, LaurentPoly};
use crate::partition::Partition;

/// A finite combination of basis vectors `s(λ)` with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<Partition, LaurentPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    /// The basis vector `s(λ)`.
    pub fn basis(lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, LaurentPoly::one());
        FockVector { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `s(λ)`, zero when absent.
    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&LaurentPoly> {
        self.terms.get(lambda)
    }

    /// Terms in increasing lexicographic order of the partition.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Partition, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &FockVector) {
        for (lambda, a) in other.iter() {
            self.add_term(lambda.clone(), &(c * a));
        }
    }

    /// Size shared by every supported partition, if the vector is nonzero
    /// and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(Partition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// Applies `p ↦ q(p)` to every coefficient.
    pub fn map_coeffs(&self, mut q: impl FnMut(&LaurentPoly) -> Result<LaurentPoly>) -> Result<Self> {
        let mut out = FockVector::zero();
        for (lambda, c) in self.iter() {
            out.add_term(lambda.clone(), &q(c)?);
        }
        Ok(out)
    }
}

impl FromIterator<(Partition, LaurentPoly)> for FockVector {
    fn from_iter<T: IntoIterator<Item = (Partition, LaurentPoly)>>(iter: T) -> Self {
        let mut out = FockVector::zero();
        for (lambda, c) in iter {
            out.add_term(lambda, &c);
        }
        out
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (lambda, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})s({lambda})")?;
        }
        Ok(())
    }
}

/// Adds one node of residue `i` to `s(λ)` in every possible way, with the
/// `v`-power of each move. Uses a display with `r` beads; `r` must leave a
/// vacant position above the new part.
pub fn f_on_basis(lambda: &Partition, i: usize, e: usize, r: usize) -> Result<Vec<(Partition, i32)>> {
    check_runners(e)?;
    if i >= e {
        return Err(Error::RunnerOutOfRange { runner: i, e });
    }
    let d = AbacusDisplay::new(lambda, e, r)?;
    let k = (i + r) % e;
    let left = (k + e - 1) % e;
    // a new part needs the bead at position -1
    if k == 0 && !d.is_occupied(0) {
        return Err(Error::BeadCountTooSmall {
            beads: r,
            parts: lambda.len() + 1,
        });
    }
    let beads = d.positions();
    let mut out = Vec::new();
    for &p in beads.iter().filter(|&&p| p % e == left) {
        if d.is_occupied(p + 1) {
            continue;
        }
        let above = beads.iter().filter(|&&q| q > p && q % e == left).count() as i32;
        let blocked = beads.iter().filter(|&&q| q > p + 1 && q % e == k).count() as i32;
        out.push((d.moved(p, p + 1).to_partition(), above - blocked));
    }
    Ok(out)
}

pub fn f_apply(x: &FockVector, i: usize, e: usize, r: usize) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (lambda, c) in x.iter() {
        for (mu, n) in f_on_basis(lambda, i, e, r)? {
            out.add_term(mu, &c.shift(n));
        }
    }
    Ok(out)
}

/// The divided power `f_i^a / [a]!`.
pub fn f_divided(x: &FockVector, i: usize, a: u32, e: usize, r: usize) -> Result<FockVector> {
    let mut y = x.clone();
    for _ in 0..a {
        y = f_apply(&y, i, e, r)?;
    }
    if a <= 1 {
        return Ok(y);
    }
    let fact = quantum_factorial(a);
    y.map_coeffs(|c| c.exact_div(&fact))
}

/// Ladders of μ in increasing order, each as `(residue, node count)`.
pub fn ladder_sequence(mu: &Partition, e: usize) -> Result<Vec<(usize, u32)>> {
    check_runners(e)?;
    if !mu.is_e_regular(e) {
        return Err(Error::NotERegular {
            partition: mu.clone(),
            e,
        });
    }
    let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
    for (row, col) in mu.nodes() {
        *counts.entry(row + (e - 1) * col).or_default() += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(ladder, m)| ((e - ladder % e) % e, m))
        .collect())
}
