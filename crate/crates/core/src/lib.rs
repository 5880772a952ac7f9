pub mod abacus;
pub mod branching;
pub mod error;
pub mod fock;
pub mod jantzen;
pub mod laurent;
pub mod llt;
pub mod mullineux;
pub mod notation;
pub mod partition;
pub mod verifier;

pub use error::{Error, Result};
pub use partition::Partition;
