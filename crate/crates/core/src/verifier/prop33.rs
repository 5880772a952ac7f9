//! The pair `(⟨1,(e-1)_{2^2}⟩, ⟨0,1,(e-1)_3⟩)` for `e ≥ 4`, settled by
//! inducing a projective from the weight-four block `⟨5^{e-2},6,4⟩`.
//!
//! `f_{e-1} G(μ̃)` is expanded in the canonical basis of the principal block;
//! the coefficient at λ must vanish.

use crate::abacus::{product_order_cmp, BlockId, ProductOrder};
use crate::branching::{simple_induce, simple_restrict, specht_induce_list, specht_restrict_list, Direction, RunnerMove, SimpleBranch};
use crate::error::{Error, Result};
use crate::fock::{f_apply, f_on_basis, FockVector};
use crate::laurent::LaurentPoly;
use crate::llt::{canonical_basis, v_decomp, CanonicalCache};
use crate::mullineux::mullineux;
use crate::notation::BracketExpr;
use crate::partition::Partition;

use super::{AdjStatus, Justification};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prop33Setup {
    pub e: usize,
    pub lambda: Partition,
    pub mu: Partition,
    /// Weight-four block `⟨5^{e-2},6,4⟩`.
    pub block_d: BlockId,
    pub mu_tilde: Partition,
    /// The Specht label with `D^{μ̃}`-factor vanishing.
    pub lambda_tilde0: Partition,
    /// The Specht label with `f_{e-1} s(λ̃₁) = s(λ)`.
    pub lambda_tilde1: Partition,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Prop33Outcome {
    pub setup: Prop33Setup,
    /// `(ν, a_ν(v))` with `f_{e-1} G(μ̃) = Σ a_ν G(ν)`, descending.
    pub expansion: Vec<(Partition, LaurentPoly)>,
    pub a_lambda: LaurentPoly,
    pub d_tilde: LaurentPoly,
    /// Blocks `D^{(e-3)}, …, D^{(0)}, E` visited by the restriction chain.
    pub chain: Vec<BlockId>,
    pub mu_hat: Partition,
    pub lambda_hat0: Partition,
    pub statuses: Vec<AdjStatus>,
}

fn check_e(e: usize) -> Result<()> {
    if e < 4 {
        return Err(Error::Invariant(format!("the induction argument needs e >= 4, got {e}")));
    }
    Ok(())
}

fn move_or_err(source: &BlockId, runner: usize, kappa: usize, dir: Direction) -> Result<RunnerMove> {
    RunnerMove::new(source, runner, kappa, dir)
        .ok_or_else(|| Error::Invariant(format!("no {dir:?} move along runner {runner} from {source}")))
}

/// Builds λ, μ, the block D and the partitions μ̃, λ̃₀, λ̃₁.
pub fn prop33_setup(e: usize) -> Result<Prop33Setup> {
    check_e(e)?;
    let b = BlockId::principal(e, 5);
    let lambda = BracketExpr::parse(&format!("<1,{}_{{2^2}}>", e - 1))?.decode(&b)?;
    let mu = BracketExpr::parse(&format!("<0,1,{}_3>", e - 1))?.decode(&b)?;
    let down = move_or_err(&b, e - 1, 1, Direction::Restrict)?;
    let block_d = down.target.clone();
    let mut want = vec![5; e];
    want[e - 2] = 6;
    want[e - 1] = 4;
    if block_d.core_beads != want || block_d.weight != 4 {
        return Err(Error::Invariant(format!("unexpected lower block {block_d}")));
    }
    let mu_tilde = match simple_restrict(&mu, &down)? {
        SimpleBranch::Simple(p) => p,
        other => return Err(Error::Invariant(format!("restriction of D^mu is {other:?}"))),
    };
    let up = move_or_err(&block_d, e - 1, 1, Direction::Induce)?;
    if up.target != b {
        return Err(Error::Invariant(format!("induction from {block_d} reaches {}", up.target)));
    }
    let mut with_lambda = Vec::new();
    for t in block_d.enumerate() {
        if specht_induce_list(&t, &up)?.terms.contains(&lambda) {
            with_lambda.push(t);
        }
    }
    if with_lambda.len() != 2 {
        return Err(Error::Invariant(format!(
            "{} Specht modules of D induce onto S^lambda",
            with_lambda.len()
        )));
    }
    let r = 6 * e;
    let exact = |t: &Partition| -> Result<bool> { Ok(f_on_basis(t, e - 1, e, r)?.contains(&(lambda.clone(), 0))) };
    let (t1, t0) = if exact(&with_lambda[0])? {
        (with_lambda[0].clone(), with_lambda[1].clone())
    } else {
        (with_lambda[1].clone(), with_lambda[0].clone())
    };
    Ok(Prop33Setup {
        e,
        lambda,
        mu,
        block_d,
        mu_tilde,
        lambda_tilde0: t0,
        lambda_tilde1: t1,
    })
}

/// Writes `x` as `Σ a_ν G(ν)` by peeling the lexicographically largest term.
pub fn expand_in_canonical_basis(
    x: &FockVector,
    e: usize,
    cache: &CanonicalCache,
) -> Result<Vec<(Partition, LaurentPoly)>> {
    let mut rest = x.clone();
    let mut out = Vec::new();
    let limit = x.len() * 4 + 64;
    loop {
        let Some((top, c)) = rest.iter().next_back().map(|(p, c)| (p.clone(), c.clone())) else {
            break;
        };
        if !top.is_e_regular(e) || out.len() > limit {
            return Err(Error::ExpansionResidue(top));
        }
        if !c.in_n0_sym() {
            return Err(Error::PositivityViolation(top));
        }
        let g = canonical_basis(&top, e, cache)?;
        rest.add_scaled(&-&c, &g);
        out.push((top, c));
    }
    Ok(out)
}

/// Restricts `S^{λ̃₀}` and `D^{μ̃}` from D down to the weight-two block E.
fn replay_chain(setup: &Prop33Setup) -> Result<(Vec<BlockId>, Partition, Partition)> {
    let e = setup.e;
    let mut block = setup.block_d.clone();
    let mut specht = setup.lambda_tilde0.clone();
    let mut simple = setup.mu_tilde.clone();
    let mut chain = Vec::new();
    let steps: Vec<(usize, usize)> = (0..e - 2).rev().map(|i| (i + 1, 1)).chain([(0, 2)]).collect();
    for (runner, kappa) in steps {
        let mv = move_or_err(&block, runner, kappa, Direction::Restrict)?;
        let s = specht_restrict_list(&specht, &mv)?;
        if s.terms.len() != 1 {
            return Err(Error::Invariant(format!("S^{specht} restricts to {} factors", s.terms.len())));
        }
        specht = s.terms[0].clone();
        simple = match simple_restrict(&simple, &mv)? {
            SimpleBranch::Simple(p) => p,
            other => return Err(Error::Invariant(format!("D^{simple} restricts to {other:?}"))),
        };
        block = mv.target.clone();
        chain.push(block.clone());
    }
    let mut want = vec![5; e];
    want[0] = 4;
    want[e - 1] = 6;
    if block.core_beads != want || block.weight != 2 {
        return Err(Error::Invariant(format!("chain ends in {block}")));
    }
    Ok((chain, simple, specht))
}

/// Runs the argument and returns Zero statuses for the pair and its dual.
pub fn prop33_check(e: usize, cache: &CanonicalCache) -> Result<Prop33Outcome> {
    let setup = prop33_setup(e)?;
    let down = move_or_err(&BlockId::principal(e, 5), e - 1, 1, Direction::Restrict)?;
    let up = move_or_err(&setup.block_d, e - 1, 1, Direction::Induce)?;
    if simple_induce(&setup.mu_tilde, &up)?.label() != Some(&setup.mu) {
        return Err(Error::Invariant(format!("inducing D^{} misses D^{}", setup.mu_tilde, setup.mu)));
    }
    debug_assert_eq!(down.target, setup.block_d);

    let g = canonical_basis(&setup.mu_tilde, e, cache)?;
    let x = f_apply(&g, e - 1, e, 6 * e)?;
    let expansion = expand_in_canonical_basis(&x, e, cache)?;
    let a_lambda = expansion
        .iter()
        .find(|(nu, _)| *nu == setup.lambda)
        .map(|(_, c)| c.clone())
        .unwrap_or_default();
    let d_tilde = v_decomp(&setup.lambda_tilde0, &setup.mu_tilde, e, cache)?;
    let (chain, mu_hat, lambda_hat0) = replay_chain(&setup)?;
    if product_order_cmp(&mu_hat, &lambda_hat0, e)? != ProductOrder::Leq {
        return Err(Error::Invariant(format!("{mu_hat} is not below {lambda_hat0} in the product order")));
    }
    if !a_lambda.is_zero() || !d_tilde.is_zero() {
        return Err(Error::Invariant(format!("a_lambda = {a_lambda}, d = {d_tilde}")));
    }
    let dual_l = mullineux(&setup.lambda, e)?;
    let dual_m = mullineux(&setup.mu, e)?;
    let mut statuses = vec![AdjStatus::zero(setup.lambda.clone(), setup.mu.clone(), Justification::Prop33)];
    if (&dual_l, &dual_m) != (&setup.lambda, &setup.mu) {
        statuses.push(AdjStatus::zero(dual_l, dual_m, Justification::Prop33));
    }
    Ok(Prop33Outcome {
        setup,
        expansion,
        a_lambda,
        d_tilde,
        chain,
        mu_hat,
        lambda_hat0,
        statuses,
    })
}
