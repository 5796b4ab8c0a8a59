//! Patterns, symmetry orders, similar-copy counting and the index.

mod count;
mod pattern;

use alloc::format;

pub use count::{
    align, binomial, brute_force_count, count_similar, count_similar_with, index, index_from_counts, is_similar, CountOptions,
    CountReport, WitnessMode, BRUTE_FORCE_LIMIT, DEFAULT_WITNESS_LIMIT,
};
pub use pattern::{proper_symmetry_order, Pattern};

use crate::error::{Error, Result};
use crate::exactnum::lcm_u32;
use crate::geom::PointSet;
use crate::verify::{LedgerEntry, Value, VerdictLedger};

/// Checks the counting argument for a pattern contained in a polygon `R`:
/// `I·S_P(R) = |R|`, `I·S_P(A) ≥ S_R(A)·|R|`, and `i_P(A) ≥ i_R(A)`.
pub fn subset_regular_bound(pattern: &Pattern, polygon: &Pattern, set: &PointSet) -> Result<VerdictLedger> {
    let m = lcm_u32(pattern.order(), polygon.order());
    let (p, r) = (pattern.lift(m)?, polygon.lift(m)?);
    if !p.base().is_subset_of(r.base()) {
        return Err(Error::NotSubset);
    }
    let i = p.sym_order() as u64;
    let in_polygon = count_similar(&p, r.base())?;
    let p_in_a = count_similar(&p, set)?;
    let r_in_a = count_similar(&r, set)?;
    let size_r = r.len() as u64;
    let mut ledger = VerdictLedger::new();
    ledger.push(LedgerEntry::exact(
        "subset-regular.copies-in-polygon",
        format!("I·S_P(R) = |R| with I = {i}, |R| = {size_r}"),
        Value::int(size_r),
        Value::int(i * in_polygon.copies),
    ));
    ledger.push(LedgerEntry::lower(
        "subset-regular.copies-in-set",
        format!("I·S_P(A) >= S_R(A)·|R| with S_R(A) = {}", r_in_a.copies),
        Value::int(r_in_a.copies as u128 * size_r as u128),
        Value::int(i as u128 * p_in_a.copies as u128),
    ));
    ledger.push(
        LedgerEntry::lower(
            "subset-regular.index",
            "i_P(A) >= i_R(A)",
            Value::Real(r_in_a.index),
            Value::Real(p_in_a.index),
        )
        .with_tolerance(1e-12),
    );
    Ok(ledger)
}
