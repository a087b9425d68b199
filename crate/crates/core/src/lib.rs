//! Exact computations in the peak algebra of noncommutative symmetric
//! functions: noncommutative Schur Q-functions, their quasisymmetric duals,
//! transition matrices and Pieri rules.

pub mod combinatorics;
pub mod commutative;
pub mod error;
pub mod golden;
pub mod json;
pub mod linalg;
pub mod nsqf;
pub mod nsym;
pub mod peak;
pub mod qsym;
pub mod rational;
pub mod tableaux;
pub mod verify;

pub use error::{Error, Result};

/// Library version, part of persisted cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
