//! Exact verification of the absolute-value coloured partition identities,
//! their classical companions, and the level-2 non-specialised characters of
//! the affine algebra `A_1^(1)`.
//!
//! Everything is integer arithmetic: series are truncated in `q` with
//! unbounded integer (or Laurent-polynomial) coefficients, and every identity
//! is checked coefficient by coefficient against an independent enumeration.

pub mod characters;
pub mod classical;
pub mod cli;
pub mod coloured;
pub mod crystal;
pub mod error;
pub mod par;
pub mod qseries;
pub mod report;

pub use error::{Error, Result};
pub use par::Parallelism;
