//! Checkers for the counting lemmas, run on concrete instances.

use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashSet;
use num_bigint::BigInt;

use super::{LedgerEntry, Value, VerdictLedger};
use crate::constructions::{iteration_bound, minkowski_sum_generic, pfree_lower_bound, pfree_upper_bound, BuildReport, Sampler};
use crate::error::{Error, Result};
use crate::geom::{in_general_position, is_parallelogram_free, PointSet};
use crate::patterns::{align, count_similar, Pattern};

/// Default largest set accepted by [`check_k22_freeness`].
pub const K22_CAP: usize = 200;

/// `I·S(B+vC) + |B||C| >= (I·S(B) + |B|)(I·S(C) + |C|)` on a sampled generic
/// sum, compared as exact integers.
pub fn check_minkowski_lemma(
    pattern: &Pattern,
    b: &PointSet,
    c: &PointSet,
    m: usize,
    sampler: &mut Sampler,
) -> Result<LedgerEntry> {
    let (_, sum) = minkowski_sum_generic(b, c, m, sampler)?;
    let i = BigInt::from(pattern.sym_order() as u64);
    let sb = count_similar(pattern, b)?.copies;
    let sc = count_similar(pattern, c)?.copies;
    let ss = count_similar(pattern, &sum)?.copies;
    let (nb, nc) = (b.len() as u64, c.len() as u64);
    let lhs = &i * ss + nb * nc;
    let rhs = (&i * sb + nb) * (&i * sc + nc);
    Ok(LedgerEntry::lower(
        "minkowski",
        format!("I·S(B+vC) + |B||C| >= (I·S(B) + |B|)(I·S(C) + |C|) with |B| = {nb}, |C| = {nc}, S(B) = {sb}, S(C) = {sc}, S(B+vC) = {ss}"),
        Value::Int(rhs),
        Value::Int(lhs),
    ))
}

/// Integer and index forms of the iteration bound for a
/// `minkowski_iterate` report.
pub fn check_iteration_bound(report: &BuildReport) -> Result<VerdictLedger> {
    let initial = report
        .initial
        .as_ref()
        .ok_or_else(|| Error::Precondition("report has no initial count; build it with minkowski_iterate".into()))?;
    let n0 = initial.target_size as u64;
    let n = report.size() as u64;
    let i = report.pattern.sym_order() as u64;
    let j = depth(n0, n)?;
    let s = report.copies();
    let mut ledger = VerdictLedger::new();
    ledger.push(LedgerEntry::lower(
        "iteration.bound",
        format!("S(A_j) >= ((I·S(A) + |A|)^j - |A|^j)/I with I = {i}, S(A) = {}, |A| = {n0}, j = {j}", initial.copies),
        Value::Int(iteration_bound(i, initial.copies, n0, j)),
        Value::int(s),
    ));
    let tight = (libm::pow(n0 as f64, j as f64 * initial.index) - n as f64) / i as f64;
    ledger.push(
        LedgerEntry::lower(
            "iteration.index-bound",
            format!("S(A_j) >= (|A|^(j·i) - n)/I with n = {n}, i = {:.12}", initial.index),
            Value::Real(tight),
            Value::Real(s as f64),
        )
        .with_tolerance(1e-9 * tight.abs().max(1.0)),
    );
    let weak = (libm::pow(n as f64 / n0 as f64, initial.index) - n as f64) / i as f64;
    ledger.push(
        LedgerEntry::lower(
            "iteration.index-bound-weak",
            format!("S(A_j) >= ((n/|A|)^i - n)/I with n = {n}"),
            Value::Real(weak),
            Value::Real(s as f64),
        )
        .with_tolerance(1e-9 * weak.abs().max(1.0)),
    );
    Ok(ledger)
}

/// `j` with `base^j = n`.
fn depth(base: u64, n: u64) -> Result<u32> {
    if base < 2 {
        return if n == base { Ok(1) } else { Err(Error::Precondition(format!("{n} is not a power of {base}"))) };
    }
    let (mut j, mut p) = (1u32, base);
    while p < n {
        p = p.saturating_mul(base);
        j += 1;
    }
    if p != n {
        return Err(Error::Precondition(format!("{n} is not a power of {base}")));
    }
    Ok(j)
}

/// `m|P|^{m-1} <= S <= n^{3/2} + n` for a `pfree_iterate` report.
pub fn check_pfree_bounds(report: &BuildReport) -> Result<VerdictLedger> {
    let k = report.pattern.len() as u64;
    let n = report.size() as u64;
    let m = depth(k, n)?;
    let s = report.copies();
    let mut ledger = VerdictLedger::new();
    ledger.push(LedgerEntry::lower(
        "pfree.lower",
        format!("S >= m|P|^(m-1) with m = {m}, |P| = {k}"),
        Value::Int(pfree_lower_bound(k, m)),
        Value::int(s),
    ));
    ledger.push(LedgerEntry::upper(
        "pfree.upper",
        format!("S <= n^(3/2) + n with n = {n}"),
        Value::Int(pfree_upper_bound(n)),
        Value::int(s),
    ));
    Ok(ledger)
}

/// Builds the bipartite graph with an edge `(a₁, a₂)` whenever
/// `a₁ + λ(a₂ - a₁) ∈ A`, `λ = (p₃ - p₁)/(p₂ - p₁)`, and checks that it has no
/// `K_{2,2}` and at least `S_P(A)` edges.
pub fn check_k22_freeness(pattern: &Pattern, set: &PointSet) -> Result<VerdictLedger> {
    check_k22_freeness_capped(pattern, set, K22_CAP)
}

pub fn check_k22_freeness_capped(pattern: &Pattern, set: &PointSet, cap: usize) -> Result<VerdictLedger> {
    let n = set.len();
    if n > cap {
        return Err(Error::SizeCap { size: format!("|A| = {n}"), cap });
    }
    if n >= 3 && !in_general_position(set)? {
        return Err(Error::Precondition("set has three collinear points".into()));
    }
    if n >= 4 && !is_parallelogram_free(set)? {
        return Err(Error::Precondition("set contains a parallelogram".into()));
    }
    let (p, a) = align(pattern, set)?;
    let (i1, i2) = p.anchors();
    let i3 = (0..p.len()).find(|&t| t != i1 && t != i2).ok_or(Error::TooFewPoints { needed: 3, got: p.len() })?;
    let base = p.base();
    let lambda = (&base[i3] - &base[i1]).try_div(&(&base[i2] - &base[i1]))?;

    let mut neighbours: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
    let mut edges = 0u64;
    for (x, a1) in a.iter().enumerate() {
        for (y, a2) in a.iter().enumerate() {
            if x != y && a.contains(&(a1 + &(&lambda * &(a2 - a1)))) {
                neighbours[x].push(y);
                edges += 1;
            }
        }
    }
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut k22 = false;
    'outer: for list in &neighbours {
        for (s, &c) in list.iter().enumerate() {
            for &d in &list[s + 1..] {
                if !seen.insert((c, d)) {
                    k22 = true;
                    break 'outer;
                }
            }
        }
    }
    let copies = count_similar(&p, &a)?.copies;
    let mut ledger = VerdictLedger::new();
    ledger.push(LedgerEntry::exact(
        "k22.free",
        format!("edge graph on {n} + {n} vertices with {edges} edges has no K(2,2)"),
        Value::Flag(false),
        Value::Flag(k22),
    ));
    ledger.push(LedgerEntry::lower("k22.edges", "E >= S_P(A)", Value::int(copies), Value::int(edges)));
    Ok(ledger)
}
