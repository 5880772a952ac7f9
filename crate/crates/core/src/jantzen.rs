//! Jantzen-Schaper bounds and the Jantzen order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex};

use crate::abacus::{check_runners, reference_beads, AbacusDisplay, BlockId};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// λ → σ → τ: the bead at `a` slides up `i` rows to `a - i·e`, then in σ
/// the bead at `b - i·e` slides down to `b`, with `a < b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HookMove {
    pub source: Partition,
    pub mid: Partition,
    pub target: Partition,
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub l_lambda_sigma: usize,
    pub l_tau_sigma: usize,
}

impl HookMove {
    /// `(-1)^(l_λσ + l_τσ + 1)`.
    pub fn sign(&self) -> i64 {
        if (self.l_lambda_sigma + self.l_tau_sigma + 1).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn occupied_between(d: &AbacusDisplay, lo: usize, hi: usize) -> usize {
    d.positions().iter().filter(|&&p| p > lo && p < hi).count()
}

pub fn hook_moves(lambda: &Partition, e: usize, r: usize) -> Result<Vec<HookMove>> {
    check_runners(e)?;
    let d = AbacusDisplay::new(lambda, e, r)?;
    let top = d.positions().first().copied().unwrap_or(0);
    let mut out = Vec::new();
    for &a in d.positions() {
        for i in 1..=a / e {
            let lo = a - i * e;
            if d.is_occupied(lo) {
                continue;
            }
            let s = d.moved(a, lo);
            let mid = s.to_partition();
            let l1 = occupied_between(&d, lo, a);
            for b in a + 1..=top + i * e {
                if s.is_occupied(b) || !s.is_occupied(b - i * e) {
                    continue;
                }
                let t = s.moved(b - i * e, b);
                out.push(HookMove {
                    source: lambda.clone(),
                    mid: mid.clone(),
                    target: t.to_partition(),
                    a,
                    b,
                    i,
                    l_lambda_sigma: l1,
                    l_tau_sigma: occupied_between(&s, b - i * e, b),
                });
            }
        }
    }
    Ok(out)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `v_p(n)`, with `v_0 ≡ 0`.
pub fn p_valuation(n: usize, p: usize) -> usize {
    if p == 0 || n == 0 {
        return 0;
    }
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// `J_F(λ,μ)` for a field of characteristic `p`, with `[S^τ:D^μ]` supplied
/// by `decomp(τ)`.
pub fn js_bound(
    lambda: &Partition,
    mu: &Partition,
    e: usize,
    p: usize,
    mut decomp: impl FnMut(&Partition) -> Result<i64>,
) -> Result<i64> {
    check_runners(e)?;
    if !mu.is_e_regular(e) {
        return Err(Error::NotERegular {
            partition: mu.clone(),
            e,
        });
    }
    if p != 0 && !is_prime(p) {
        return Err(Error::InvalidCharacteristic(p));
    }
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    let r = reference_beads(lambda.size(), e).max(lambda.len());
    let mut total = 0i64;
    for m in hook_moves(lambda, e, r)? {
        if !mu.dominates(&m.target) {
            continue;
        }
        let d = decomp(&m.target)?;
        if d != 0 {
            total += m.sign() * (1 + p_valuation(m.i, p) as i64) * d;
        }
    }
    Ok(total)
}

/// The Jantzen order, with reachable sets memoized per partition.
pub struct JantzenOrder {
    e: usize,
    up: Mutex<HashMap<Partition, Arc<HashSet<Partition>>>>,
}

impl JantzenOrder {
    pub fn new(e: usize) -> Self {
        JantzenOrder {
            e,
            up: Mutex::default(),
        }
    }

    /// Every ν with `λ ≤_J ν`, λ included.
    pub fn up_set(&self, lambda: &Partition) -> Result<Arc<HashSet<Partition>>> {
        if let Some(s) = self.up.lock().expect("memo lock").get(lambda) {
            return Ok(s.clone());
        }
        let r = reference_beads(lambda.size(), self.e).max(lambda.len());
        let mut seen = HashSet::new();
        seen.insert(lambda.clone());
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(x) = queue.pop_front() {
            for m in hook_moves(&x, self.e, r)? {
                if seen.insert(m.target.clone()) {
                    queue.push_back(m.target);
                }
            }
        }
        let s = Arc::new(seen);
        self.up
            .lock()
            .expect("memo lock")
            .insert(lambda.clone(), s.clone());
        Ok(s)
    }

    pub fn leq(&self, lambda: &Partition, sigma: &Partition) -> Result<bool> {
        let a = BlockId::of(lambda, self.e)?;
        if !a.contains(sigma) {
            return Err(Error::DifferentBlock);
        }
        Ok(self.up_set(lambda)?.contains(sigma))
    }
}

/// `λ ≤_J σ`.
pub fn jantzen_leq(lambda: &Partition, sigma: &Partition, e: usize) -> Result<bool> {
    JantzenOrder::new(e).leq(lambda, sigma)
}

/// A pair where the characteristic-zero bound disagrees with `d'_{λμ}(1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundMismatch {
    pub e: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub bound: i64,
    pub derivative: i64,
}

/// Compares `J_C(λ,μ)` computed from the canonical basis at `v = 1` with
/// `d'_{λμ}(1)` for every λ ≠ μ of size `n`, μ e-regular. Returns the number
/// of pairs checked and the mismatches.
pub fn ryom_hansen_check(
    n: usize,
    e: usize,
    cache: &crate::llt::CanonicalCache,
) -> Result<(usize, Vec<BoundMismatch>)> {
    use rayon::prelude::*;
    check_runners(e)?;
    let all = Partition::all_of_size(n);
    let regular: Vec<Partition> = all.iter().filter(|m| m.is_e_regular(e)).cloned().collect();
    cache.compute_many(&regular, e)?;
    let per_mu = regular
        .par_iter()
        .map(|mu| -> Result<(usize, Vec<BoundMismatch>)> {
            let g = crate::llt::canonical_basis(mu, e, cache)?;
            let block = BlockId::of(mu, e)?;
            let mut checked = 0;
            let mut bad = Vec::new();
            for lambda in all.iter().filter(|l| *l != mu && block.contains(l)) {
                let bound = js_bound(lambda, mu, e, 0, |t| Ok(g.coeff(t).eval_at_one()))?;
                let derivative = g.coeff(lambda).derivative_at_one();
                checked += 1;
                if bound != derivative {
                    bad.push(BoundMismatch {
                        e,
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                        bound,
                        derivative,
                    });
                }
            }
            Ok((checked, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut checked = 0;
    let mut bad = Vec::new();
    for (c, b) in per_mu {
        checked += c;
        bad.extend(b);
    }
    Ok((checked, bad))
}
