//! Parallelogram-free recursion.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::iterate::checked_power;
use super::report::{resample_build, Candidate, RecipeRecord};
use super::sampler::Sampler;
use super::BuildReport;
use crate::error::{Error, Result};
use crate::exactnum::{lcm_u32, CycloNum, MAX_ORDER};
use crate::geom::{has_parallel_segments, is_parallelogram_free, PointSet};
use crate::patterns::{count_similar, Pattern};
use crate::verify::{BoundKind, LedgerEntry, Value};

/// Whether to also require that no two disjoint pairs span parallel segments.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PfreeOptions {
    pub strict: bool,
}

/// `isqrt(n³) + n`, the integer form of `n^{3/2} + n` for integer counts.
pub fn pfree_upper_bound(n: u64) -> BigInt {
    let n = BigInt::from(n);
    (&n * &n * &n).sqrt() + n
}

/// `m·|P|^{m-1}`.
pub fn pfree_lower_bound(pattern_size: u64, m: u32) -> BigInt {
    BigInt::from(m) * BigInt::from(pattern_size).pow(m - 1)
}

/// `Q = ∪_{p∈P} (up + (vp - p + 1)A)` for sampled `u`, `v` with `|Q| = |A||P|`,
/// no three collinear points and no parallelogram.
pub fn pfree_q(pattern: &Pattern, set: &PointSet, opts: PfreeOptions, sampler: &mut Sampler) -> Result<BuildReport> {
    for (name, s) in [("pattern", pattern.base()), ("set", set)] {
        if s.len() >= 3 && !is_parallelogram_free(s)? {
            return Err(Error::Precondition(format!("{name} is not parallelogram-free")));
        }
    }
    let strict = opts.strict && set.len() >= 4 && !has_parallel_segments(set)? && !has_parallel_segments(pattern.base())?;
    if opts.strict && !strict && set.len() >= 4 {
        return Err(Error::Precondition("strict mode needs inputs without parallel segments".into()));
    }
    let order = [pattern.order(), set.order()].iter().fold(4, |m, &o| lcm_u32(m, o));
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let p = pattern.lift(order)?;
    let a = set.lift(order)?;
    let initial = count_similar(&p, &a)?;
    let seed = sampler.seed();
    let one = CycloNum::one(order)?;
    let size = (a.len() * p.len()) as u64;
    let expected = BigInt::from(p.len() as u64) * initial.copies + a.len();
    let mut report = resample_build(sampler, |s, attempt| {
        let u = s.param("u", order, attempt)?;
        let v = s.param("v", order, attempt)?;
        let mut pts = Vec::with_capacity(size as usize);
        for q in p.base() {
            let shift = &u.value * q;
            let scale = &(&(&v.value * q) - q) + &one;
            pts.extend(a.iter().map(|x| &shift + &(&scale * x)));
        }
        let output = PointSet::from_union(order, pts)?;
        let record = RecipeRecord::new("pfree_q").param("u", &u.value).param("v", &v.value).param("strict", opts.strict);
        let mut c = Candidate::new(record, output, p.clone());
        c.params.push(u);
        c.params.push(v);
        c.check_size(size);
        let mc = c.check_collinear(BoundKind::Upper, 2)?;
        c.check_parallelogram_free();
        if opts.strict {
            c.check_no_parallel_segments()?;
        }
        c.finish(size, BoundKind::Lower, expected.clone(), mc, seed)
    })?;
    report.initial = Some(initial);
    Ok(report)
}

/// `A₁ = P`, `A_{i+1} = Q(P, A_i, u_i, v_i)`: `|P|^m` points, parallelogram-free,
/// with `m|P|^{m-1} <= S <= n^{3/2} + n`.
pub fn pfree_iterate(pattern: &Pattern, m: u32, opts: PfreeOptions, sampler: &mut Sampler) -> Result<BuildReport> {
    if m == 0 {
        return Err(Error::InvalidParameter("depth m must be at least 1".into()));
    }
    let n = checked_power(pattern.len(), m, sampler.size_cap)? as u64;
    if !is_parallelogram_free(pattern.base())? {
        return Err(Error::Precondition("pattern is not parallelogram-free".into()));
    }
    let order = lcm_u32(pattern.order(), 4);
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let p = pattern.lift(order)?;
    let seed = sampler.seed();
    let mut current = p.base().clone();
    let mut params = Vec::new();
    let mut resamples = 0;
    for level in 2..=m {
        let step = pfree_q(&p, &current, opts, sampler)?;
        resamples += step.resamples;
        for mut g in step.params {
            g.name = format!("{}{level}", g.name);
            params.push(g);
        }
        current = step.output;
    }
    let record = RecipeRecord::new("pfree_iterate").param("m", m).param("strict", opts.strict);
    let mut c = Candidate::new(record, current, p.clone());
    c.params = params;
    c.check_size(n);
    let mc = c.check_collinear(BoundKind::Upper, 2)?;
    c.check_parallelogram_free();
    if opts.strict && n >= 4 {
        c.check_no_parallel_segments()?;
    }
    let upper = pfree_upper_bound(n);
    let mut report = c.finish_with(n, BoundKind::Lower, pfree_lower_bound(p.len() as u64, m), mc, seed, |count, ledger| {
        ledger.push(LedgerEntry::upper(
            "copies.upper",
            "copies at most n^{3/2} + n",
            Value::Int(upper),
            Value::int(count.copies),
        ));
    })?;
    report.resamples = resamples;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_arithmetic() {
        assert_eq!(pfree_upper_bound(27), BigInt::from(167));
        assert_eq!(pfree_upper_bound(81), BigInt::from(810));
        assert_eq!(pfree_upper_bound(3), BigInt::from(8));
        assert_eq!(pfree_lower_bound(3, 3), BigInt::from(27));
        assert_eq!(pfree_lower_bound(3, 4), BigInt::from(108));
        assert_eq!(pfree_lower_bound(3, 1), BigInt::from(1));
    }
}
