//! The full adjustment-matrix status table for one e.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::abacus::BlockId;
use crate::error::{Error, Result};
use crate::jantzen::JantzenOrder;
use crate::llt::CanonicalCache;
use crate::notation::BracketExpr;
use crate::partition::Partition;

use super::analysis::{prune_in, survivors_in, BlockAnalysis};
use super::cor217::{cor217, may_fire, Cor217Context};
use super::prop33::{prop33_check, Prop33Outcome};
use super::{AdjStatus, Justification, Status};

/// The side condition under which a zero entry means what it says.
pub const HYPOTHESIS_BANNER: &str =
    "assumes char(F) >= 5; zero entries certify the adjustment matrix only under that hypothesis";

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub regular: usize,
    pub off_diagonal: usize,
    pub zero_by: BTreeMap<String, usize>,
    pub unknown: usize,
    pub verdict: String,
}

pub struct Report {
    pub e: usize,
    pub analysis: BlockAnalysis,
    /// Entries not settled by combinatorial rules, in processing order.
    pub candidates: Vec<AdjStatus>,
    pub prop33: Option<Prop33Outcome>,
    pub summary: Summary,
    /// Times the decomposition-number rule met an unresolved intermediate
    /// entry; zero when the processing order is right.
    pub deferrals: usize,
    candidate_index: HashMap<(usize, usize), usize>,
}

impl Report {
    pub fn block(&self) -> &BlockId {
        &self.analysis.block
    }

    /// Status of any entry; non-candidates are rebuilt on demand.
    pub fn status(&self, lambda: &Partition, mu: &Partition) -> Result<AdjStatus> {
        let find = |p: &Partition| {
            self.analysis
                .index_of(p)
                .ok_or_else(|| Error::WrongBlock(p.clone()))
        };
        let (l, m) = (find(lambda)?, find(mu)?);
        Ok(self.status_at(l, m))
    }

    fn status_at(&self, l: usize, m: usize) -> AdjStatus {
        let a = &self.analysis;
        if l == m {
            return AdjStatus::diagonal(a.partition(l).clone());
        }
        if let Some(&k) = self.candidate_index.get(&(l, m)) {
            return self.candidates[k].clone();
        }
        let j = a
            .combinatorial_rule(l, m)
            .expect("non-candidates are settled combinatorially");
        AdjStatus::zero(a.partition(l).clone(), a.partition(m).clone(), j)
    }

    /// Every entry of the matrix, rows then columns in descending order.
    pub fn all_entries(&self) -> impl Iterator<Item = AdjStatus> + '_ {
        let n = self.analysis.len();
        (0..n).flat_map(move |l| (0..n).map(move |m| self.status_at(l, m)))
    }

    pub fn unknown_entries(&self) -> Vec<&AdjStatus> {
        self.candidates
            .iter()
            .filter(|s| s.status == Status::Unknown)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.summary.unknown == 0
    }

    /// True when the unknown entries are exactly the expected ones.
    pub fn matches_expectation(&self) -> Result<bool> {
        let mut got: Vec<(Partition, Partition)> = self
            .unknown_entries()
            .into_iter()
            .map(|s| (s.lambda.clone(), s.mu.clone()))
            .collect();
        let mut want = expected_unknowns(self.e)?;
        got.sort();
        want.sort();
        Ok(got == want)
    }

    pub fn label(&self, lambda: &Partition) -> String {
        self.analysis.label(lambda)
    }
}

/// The entries that no rule settles: two at e = 4 and none otherwise.
pub fn expected_unknowns(e: usize) -> Result<Vec<(Partition, Partition)>> {
    if e != 4 {
        return Ok(Vec::new());
    }
    let b = BlockId::principal(4, 5);
    let d = |s: &str| BracketExpr::parse(s)?.decode(&b);
    Ok(vec![
        (d("<1_{2^2},3>")?, d("<1_2,2_2,3>")?),
        (d("<1,3_{2^2}>")?, d("<3_5>")?),
    ])
}

pub fn report(e: usize, cache: &CanonicalCache) -> Result<Report> {
    let a = BlockAnalysis::new(e)?;
    let survivors = survivors_in(&a)?;
    let cands = prune_in(&a, &survivors)?;
    for &(l, m) in &cands {
        if a.combinatorial_rule(l, m).is_some() {
            return Err(Error::Invariant(format!(
                "dual candidate ({}, {}) is settled combinatorially",
                a.partition(l),
                a.partition(m)
            )));
        }
    }
    let mut mus: Vec<Partition> = cands.iter().map(|&(_, m)| a.partition(m).clone()).collect();
    mus.sort();
    mus.dedup();
    cache.compute_many(&mus, e)?;

    let order = JantzenOrder::new(e);
    let ctx = Cor217Context { e, cache, order: &order };
    let deps = intermediate_candidates(&a, &cands, &ctx)?;
    let prop33 = if e >= 4 { Some(prop33_check(e, cache)?) } else { None };
    let mut by_prop33: HashMap<(usize, usize), AdjStatus> = HashMap::new();
    for s in prop33.iter().flat_map(|o| &o.statuses) {
        let key = (
            a.index_of(&s.lambda).ok_or_else(|| Error::WrongBlock(s.lambda.clone()))?,
            a.index_of(&s.mu).ok_or_else(|| Error::WrongBlock(s.mu.clone()))?,
        );
        by_prop33.insert(key, s.clone());
    }

    // Each pair waits until the candidate entries strictly between its ends,
    // on its own side and on the dual side, are decided.
    let mut settled: HashMap<(usize, usize), AdjStatus> = HashMap::new();
    let mut open: Vec<(usize, usize)> = cands.clone();
    let mut deferrals = 0;
    while !open.is_empty() {
        let pos = open
            .iter()
            .position(|k| deps[k].iter().all(|d| settled.contains_key(d)))
            .unwrap_or(0);
        let (l, m) = open.remove(pos);
        let (pl, pm) = (a.partition(l), a.partition(m));
        let (dl, dm) = (a.partition(a.dual(l)), a.partition(a.dual(m)));
        let is_zero = |nu: &Partition, mu: &Partition| match (a.index_of(nu), a.index_of(mu)) {
            (Some(n), Some(k)) => match settled.get(&(n, k)) {
                Some(s) => s.status == Status::Zero,
                None => a.combinatorial_rule(n, k).is_some(),
            },
            _ => false,
        };
        let mut s = match cor217((pl, pm), (dl, dm), &ctx, &is_zero) {
            Ok(s) => s,
            Err(Error::HypothesisUnmet { .. }) => {
                deferrals += 1;
                let mut s = AdjStatus::unknown(pl.clone(), pm.clone());
                s.d_poly = Some(crate::llt::v_decomp(pl, pm, e, cache)?);
                s
            }
            Err(err) => return Err(err),
        };
        if s.status == Status::Unknown {
            if let Some(p) = by_prop33.get(&(l, m)) {
                let d = s.d_poly.take();
                s = p.clone();
                s.d_poly = d;
            }
        }
        settled.insert((l, m), s);
    }

    let mut candidates = Vec::with_capacity(cands.len());
    let mut candidate_index = HashMap::new();
    for &(l, m) in &cands {
        let s = settled
            .remove(&(l, m))
            .ok_or_else(|| Error::Invariant("candidate left unprocessed".into()))?;
        candidate_index.insert((l, m), candidates.len());
        candidates.push(s);
    }

    let n = a.len();
    let mut zero_by: BTreeMap<String, usize> = BTreeMap::new();
    for l in 0..n {
        for m in 0..n {
            if l == m || candidate_index.contains_key(&(l, m)) {
                continue;
            }
            let j = a.combinatorial_rule(l, m).ok_or_else(|| {
                Error::Invariant(format!("({}, {}) has no rule", a.partition(l), a.partition(m)))
            })?;
            *zero_by.entry(j.to_string()).or_default() += 1;
        }
    }
    let mut unknown = 0;
    for s in &candidates {
        match s.status {
            Status::Zero => *zero_by.entry(s.justification.to_string()).or_default() += 1,
            _ => unknown += 1,
        }
    }
    let verdict = if unknown == 0 {
        "identity".to_string()
    } else {
        format!("{unknown} unknown")
    };
    let summary = Summary {
        regular: n,
        off_diagonal: n * n.saturating_sub(1),
        zero_by,
        unknown,
        verdict,
    };
    Ok(Report {
        e,
        analysis: a,
        candidates,
        prop33,
        summary,
        deferrals,
        candidate_index,
    })
}

type Dependencies = HashMap<(usize, usize), Vec<(usize, usize)>>;

/// For each candidate, the candidates `(ν, μ)` with `λ <_J ν <_J μ`, on each
/// side (the pair or its dual) where the decomposition-number rule can apply.
fn intermediate_candidates(
    a: &BlockAnalysis,
    cands: &[(usize, usize)],
    ctx: &Cor217Context<'_>,
) -> Result<Dependencies> {
    let set: HashSet<(usize, usize)> = cands.iter().copied().collect();
    let order = ctx.order;
    let between = |l: usize, m: usize| -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        let (pl, pm) = (a.partition(l), a.partition(m));
        if !may_fire(pl, pm, ctx)? {
            return Ok(out);
        }
        for &(n, k) in cands {
            if k != m || n == l || !set.contains(&(n, k)) {
                continue;
            }
            let nu = a.partition(n);
            if order.leq(a.partition(l), nu)? && order.leq(nu, a.partition(m))? {
                out.push((n, k));
            }
        }
        Ok(out)
    };
    let mut deps = HashMap::new();
    for &(l, m) in cands {
        let mut d = between(l, m)?;
        d.extend(between(a.dual(l), a.dual(m))?);
        d.retain(|k| *k != (l, m));
        deps.insert((l, m), d);
    }
    Ok(deps)
}

/// Orbits `{(λ, μ), (λ^◇, μ^◇)}` of the candidate entries, each listed once
/// with its lexicographically larger member first.
pub fn candidate_orbits(report: &Report) -> Vec<((Partition, Partition), (Partition, Partition))> {
    let a = &report.analysis;
    let mut out = Vec::new();
    for s in &report.candidates {
        let (l, m) = (a.index_of(&s.lambda).expect("in block"), a.index_of(&s.mu).expect("in block"));
        let d = (a.dual(l), a.dual(m));
        if (l, m) <= d {
            out.push((
                (s.lambda.clone(), s.mu.clone()),
                (a.partition(d.0).clone(), a.partition(d.1).clone()),
            ));
        }
    }
    out
}

impl Justification {
    pub fn is_combinatorial(&self) -> bool {
        matches!(
            self,
            Justification::Lowerable
                | Justification::ProductOrder
                | Justification::RowRemoval
                | Justification::MullineuxTransfer
        )
    }
}
