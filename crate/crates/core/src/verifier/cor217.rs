//! Zero adjustment entries from small decomposition numbers.
//!
//! When `d_{λμ}(v)` is `0` or `v` and every e-regular ν strictly between λ
//! and μ in the Jantzen order already has `adj_{νμ} = 0`, the Jantzen-Schaper
//! bounds over the field and over the complex numbers agree, forcing
//! `adj_{λμ} = 0`. The same test on the Mullineux dual pair also suffices.

use crate::abacus::{AbacusDisplay, BlockId};
use crate::error::{Error, Result};
use crate::jantzen::JantzenOrder;
use crate::laurent::LaurentPoly;
use crate::llt::{v_decomp, CanonicalCache};
use crate::partition::Partition;

use super::{AdjStatus, Justification};

/// Shared state for repeated applications within one block.
pub struct Cor217Context<'a> {
    pub e: usize,
    pub cache: &'a CanonicalCache,
    pub order: &'a JantzenOrder,
}

/// `⟨i_5⟩`: all five units of weight on a single bead.
pub fn is_single_bead_five(lambda: &Partition, e: usize) -> Result<bool> {
    let block = BlockId::of(lambda, e)?;
    let d = AbacusDisplay::new(lambda, e, block.bead_count().max(lambda.len()))?;
    let quotients: Vec<Partition> = (0..e).map(|i| d.runner_partition(i)).filter(|q| !q.is_empty()).collect();
    Ok(quotients.len() == 1 && quotients[0].parts() == [5])
}

fn small(d: &LaurentPoly) -> bool {
    d.is_zero() || *d == LaurentPoly::v()
}

/// Whether d and the shape of λ allow the rule on this orientation, before
/// looking at intermediate entries.
pub fn may_fire(lambda: &Partition, mu: &Partition, ctx: &Cor217Context<'_>) -> Result<bool> {
    Ok(small(&v_decomp(lambda, mu, ctx.e, ctx.cache)?) && !is_single_bead_five(lambda, ctx.e)?)
}

/// Checks the hypotheses for one orientation. `Ok(Some(d))` when the rule
/// fires, `Ok(None)` when d or the shape excludes it.
fn one_side(
    lambda: &Partition,
    mu: &Partition,
    ctx: &Cor217Context<'_>,
    is_zero: &dyn Fn(&Partition, &Partition) -> bool,
) -> Result<(LaurentPoly, bool)> {
    let d = v_decomp(lambda, mu, ctx.e, ctx.cache)?;
    if !small(&d) || is_single_bead_five(lambda, ctx.e)? {
        return Ok((d, false));
    }
    let up = ctx.order.up_set(lambda)?;
    let mut between: Vec<&Partition> = up
        .iter()
        .filter(|nu| *nu != lambda && *nu != mu && nu.is_e_regular(ctx.e))
        .collect();
    between.sort_unstable_by(|a, b| b.cmp(a));
    for nu in between {
        if ctx.order.up_set(nu)?.contains(mu) && !is_zero(nu, mu) {
            return Err(Error::HypothesisUnmet {
                lambda: nu.clone(),
                mu: mu.clone(),
            });
        }
    }
    Ok((d, true))
}

/// Applies the rule to `(λ, μ)` and then to its dual pair. `is_zero`
/// reports which entries are already settled as zero. Fails with
/// `HypothesisUnmet` only when d qualifies on some side and that side's
/// intermediate entries are still open while the other side does not fire.
pub fn cor217(
    pair: (&Partition, &Partition),
    dual: (&Partition, &Partition),
    ctx: &Cor217Context<'_>,
    is_zero: &dyn Fn(&Partition, &Partition) -> bool,
) -> Result<AdjStatus> {
    let (lambda, mu) = pair;
    let mut pending = None;
    let mut d_direct = None;
    for (k, (l, m)) in [pair, dual].into_iter().enumerate() {
        match one_side(l, m, ctx, is_zero) {
            Ok((d, fired)) => {
                if fired {
                    let mut s = AdjStatus::zero(lambda.clone(), mu.clone(), Justification::Cor217);
                    s.d_poly = Some(if k == 0 { d } else { v_decomp(lambda, mu, ctx.e, ctx.cache)? });
                    return Ok(s);
                }
                if k == 0 {
                    d_direct = Some(d);
                }
            }
            Err(err @ Error::HypothesisUnmet { .. }) => {
                pending.get_or_insert(err);
            }
            Err(err) => return Err(err),
        }
    }
    if let Some(err) = pending {
        return Err(err);
    }
    let mut s = AdjStatus::unknown(lambda.clone(), mu.clone());
    s.d_poly = match d_direct {
        Some(d) => Some(d),
        None => Some(v_decomp(lambda, mu, ctx.e, ctx.cache)?),
    };
    Ok(s)
}
