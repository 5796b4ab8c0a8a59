//! Exact constructions of planar point sets with many similar copies of a
//! pattern, under "no `m` points on a line" and parallelogram-free
//! restrictions.
//!
//! Every coordinate lives in a cyclotomic field `Q(ζ_M)`, so equality,
//! collinearity and similarity are decided exactly. The crate is `no_std`
//! (it needs `alloc`); file formats and the command line live in the
//! `patternforge` companion crate.
//!
//! Module map:
//!
//! - [`exactnum`]: cyclotomic field arithmetic ([`CycloNum`]).
//! - [`geom`]: point sets and exact predicates.
//! - [`patterns`]: patterns, symmetry orders, similar-copy counting, index.
//! - [`constructions`]: the catalog of initial sets and the two iteration engines.
//! - [`verify`]: the verdict ledger, lemma checkers and acceptance suite.

#![no_std]

extern crate alloc;

pub mod constructions;
pub mod error;
pub mod exactnum;
pub mod geom;
pub mod patterns;
pub mod verify;

pub use crate::error::{Error, Result};
pub use crate::exactnum::{CycloNum, Rational};
pub use crate::constructions::{BuildReport, Sampler};
pub use crate::geom::PointSet;
pub use crate::patterns::{count_similar, CountReport, Pattern};
pub use crate::verify::{run_acceptance_suite, LedgerEntry, Scope, VerdictLedger};
