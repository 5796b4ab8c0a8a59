//! The verdict ledger, lemma checkers and the acceptance suite.

mod checks;
mod ledger;
mod suite;

pub use checks::{
    check_iteration_bound, check_k22_freeness, check_k22_freeness_capped, check_minkowski_lemma, check_pfree_bounds, K22_CAP,
};
pub use ledger::{BoundKind, LedgerEntry, Summary, Value, VerdictLedger};
pub use suite::{run_acceptance_suite, Scope, GENERICITY_SEEDS, MINKOWSKI_COMBINATIONS, ORACLE_RANDOM_SETS};
