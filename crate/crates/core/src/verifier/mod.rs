//! Adjustment-matrix analysis for the principal block of `H_{5e}`.
//!
//! Every off-diagonal entry `adj_{λμ}` is either settled as zero by one rule
//! or left unknown. Combinatorial rules run first ([`analysis`]); the
//! survivors go through the decomposition-number test ([`cor217`]) and the
//! Fock-space induction argument ([`prop33`]).

use std::fmt;

use serde::Serialize;

use crate::laurent::LaurentPoly;
use crate::partition::Partition;

pub mod analysis;
pub mod cor217;
pub mod prop33;
pub mod report;
pub mod tables;

pub use analysis::{classify_reducible, lowerable_scan, prune_candidates, BlockAnalysis};
pub use cor217::cor217;
pub use prop33::{prop33_check, prop33_setup, Prop33Outcome, Prop33Setup};
pub use report::{report, Report, Summary};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Status {
    DiagonalOne,
    Zero,
    Unknown,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Justification {
    /// `λ = μ`.
    Diagonal,
    /// A lighter block sees `D^μ` but not a reducible restriction of `D^λ`.
    Lowerable,
    /// `μ` is not above `λ` in the product order.
    ProductOrder,
    /// `λ_1 = μ_1`, so removing the first row lands in weight at most four.
    RowRemoval,
    /// The Mullineux dual pair fails one of the rules above.
    MullineuxTransfer,
    /// `d_{λμ}(v) ∈ {0, v}` on the pair or its dual with all Jantzen-intermediate
    /// entries already zero.
    Cor217,
    /// `a_λ(v) = 0` in the induced canonical basis vector.
    Prop33,
    /// No rule applies.
    PaperUnresolved,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdjStatus {
    pub lambda: Partition,
    pub mu: Partition,
    pub status: Status,
    pub justification: Justification,
    /// `d_{λμ}(v)` when it was computed.
    pub d_poly: Option<LaurentPoly>,
}

impl AdjStatus {
    pub fn zero(lambda: Partition, mu: Partition, justification: Justification) -> Self {
        AdjStatus {
            lambda,
            mu,
            status: Status::Zero,
            justification,
            d_poly: None,
        }
    }

    pub fn unknown(lambda: Partition, mu: Partition) -> Self {
        AdjStatus {
            lambda,
            mu,
            status: Status::Unknown,
            justification: Justification::PaperUnresolved,
            d_poly: None,
        }
    }

    pub fn diagonal(lambda: Partition) -> Self {
        AdjStatus {
            mu: lambda.clone(),
            lambda,
            status: Status::DiagonalOne,
            justification: Justification::Diagonal,
            d_poly: Some(LaurentPoly::one()),
        }
    }
}
