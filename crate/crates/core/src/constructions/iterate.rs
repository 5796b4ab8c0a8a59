//! Iterated Minkowski sums.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::report::{resample, Candidate, RecipeRecord};
use super::sampler::{GenericParam, Sampler};
use super::BuildReport;
use crate::error::{Error, Result};
use crate::exactnum::{lcm_u32, CycloNum, MAX_ORDER};
use crate::geom::{max_collinear, PointSet};
use crate::patterns::{count_similar, Pattern};
use crate::verify::BoundKind;

fn common_conductor(orders: &[u32]) -> Result<u32> {
    let m = orders.iter().fold(4, |m, &o| lcm_u32(m, o));
    if m > MAX_ORDER {
        return Err(Error::UnsupportedOrder(m));
    }
    Ok(m)
}

/// `A + vB` for a sampled `v` such that the sum has `|A||B|` points and no
/// `m` on a line.
pub fn minkowski_sum_generic(
    a: &PointSet,
    b: &PointSet,
    m: usize,
    sampler: &mut Sampler,
) -> Result<(GenericParam, PointSet)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    for (name, s) in [("first", a), ("second", b)] {
        if max_collinear(s)? >= m {
            return Err(Error::Precondition(format!("{name} summand has {m} points on a line")));
        }
    }
    let order = common_conductor(&[a.order(), b.order()])?;
    let (a, b) = (a.lift(order)?, b.lift(order)?);
    let target = a.len() * b.len();
    let (found, _) = resample(sampler, |s, attempt| {
        let v = s.param("v", order, attempt)?;
        let vb: Vec<CycloNum> = b.iter().map(|q| &v.value * q).collect();
        let mut pts = Vec::with_capacity(target);
        for p in a.iter() {
            pts.extend(vb.iter().map(|q| p + q));
        }
        let sum = PointSet::from_union(order, pts)?;
        if sum.len() != target {
            return Err(Error::CheckFailed(format!("sum has {} points, expected {target}", sum.len())));
        }
        let mc = max_collinear(&sum)?;
        if mc >= m {
            return Err(Error::CheckFailed(format!("sum has {mc} points on a line")));
        }
        Ok((v, sum))
    })?;
    Ok(found)
}

/// `((I·S + |A|)^j - |A|^j) / I`; the division is exact because
/// `I·S + |A| ≡ |A| (mod I)`.
pub fn iteration_bound(sym_order: u64, copies: u64, size: u64, j: u32) -> BigInt {
    let base = BigInt::from(sym_order) * copies + size;
    let num = base.pow(j) - BigInt::from(size).pow(j);
    num / BigInt::from(sym_order)
}

/// `|A|^j`, refusing anything above the cap.
pub fn checked_power(size: usize, j: u32, cap: usize) -> Result<usize> {
    let n = BigInt::from(size).pow(j);
    match n.to_usize() {
        Some(v) if v <= cap => Ok(v),
        _ => Err(Error::SizeCap { size: format!("{size}^{j} = {n}"), cap }),
    }
}

/// `A₁* = A`, `A_{i+1}* = A_i* + v_i·A`: `|A|^j` points, no `m` on a line,
/// and at least `((I·S + |A|)^j - |A|^j)/I` copies of the pattern.
pub fn minkowski_iterate(
    pattern: &Pattern,
    base: &PointSet,
    j: u32,
    m: usize,
    sampler: &mut Sampler,
) -> Result<BuildReport> {
    if j == 0 {
        return Err(Error::InvalidParameter("iteration depth j must be at least 1".into()));
    }
    let size = checked_power(base.len(), j, sampler.size_cap)?;
    if max_collinear(base)? >= m {
        return Err(Error::Precondition(format!("initial set has {m} points on a line")));
    }
    let order = common_conductor(&[base.order(), pattern.order()])?;
    let base = base.lift(order)?;
    let pattern = pattern.lift(order)?;
    let seed = sampler.seed();
    let initial = count_similar(&pattern, &base)?;
    let i = pattern.sym_order() as u64;
    let n0 = base.len() as u64;

    let mut current = base.clone();
    let mut params = Vec::new();
    let mut draws = 0;
    for _ in 1..j {
        let (mut v, next) = minkowski_sum_generic(&current, &base, m, sampler)?;
        draws += v.attempts - 1;
        v.name = format!("v{}", params.len() + 2);
        params.push(v);
        current = next;
    }
    let record = RecipeRecord::new("minkowski_iterate").param("j", j).param("m", m).param("initial_size", n0);
    let mut c = Candidate::new(record, current, pattern);
    c.params = params;
    c.check_size(size as u64);
    let mc = c.check_collinear(BoundKind::Upper, m - 1)?;
    let mut report = c.finish(size as u64, BoundKind::Lower, iteration_bound(i, initial.copies, n0, j), mc, seed)?;
    report.resamples = draws;
    report.initial = Some(initial.clone());
    let c = 1.0 / (2.0 * i as f64 * libm::pow(n0 as f64, initial.index));
    report.notes.push(format!(
        "initial set: |A| = {n0}, S = {}, index {:.6}; growth constant c = {c:.3e}",
        initial.copies, initial.index
    ));
    Ok(report)
}
