use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::sampler::{GenericParam, Sampler};
use crate::error::{Error, Result};
use crate::geom::{find_parallelogram_indices, has_parallel_segments, max_collinear, PointSet};
use crate::patterns::{count_similar_with, CountOptions, CountReport, Pattern};
use crate::verify::{BoundKind, LedgerEntry, Value, VerdictLedger};

/// Name and parameters of a build, as printed and persisted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeRecord {
    pub name: String,
    pub params: Vec<(String, String)>,
}

impl RecipeRecord {
    pub fn new(name: &str) -> RecipeRecord {
        RecipeRecord { name: name.into(), params: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> RecipeRecord {
        self.params.push((key.into(), value.to_string()));
        self
    }
}

/// A verified construction: its output passed every entry in `checks`.
#[derive(Clone, Debug)]
pub struct BuildReport {
    pub recipe: RecipeRecord,
    pub seed: u64,
    pub output: PointSet,
    /// The pattern whose copies are counted.
    pub pattern: Pattern,
    pub expected_size: u64,
    pub expected_copies: BigInt,
    pub copies_kind: BoundKind,
    pub count: CountReport,
    pub max_collinear: usize,
    pub params: Vec<GenericParam>,
    pub checks: VerdictLedger,
    /// Rejected draws before the accepted one.
    pub resamples: u32,
    /// Count in the starting set, for iterated builds.
    pub initial: Option<CountReport>,
    pub notes: Vec<String>,
}

impl BuildReport {
    pub fn copies(&self) -> u64 {
        self.count.copies
    }

    pub fn index(&self) -> f64 {
        self.count.index
    }

    pub fn size(&self) -> usize {
        self.output.len()
    }
}

/// Accumulates the checks for one candidate output.
pub(crate) struct Candidate {
    pub recipe: RecipeRecord,
    pub output: PointSet,
    pub pattern: Pattern,
    pub params: Vec<GenericParam>,
    pub checks: VerdictLedger,
    pub notes: Vec<String>,
    pub count_options: CountOptions,
}

impl Candidate {
    pub fn new(recipe: RecipeRecord, output: PointSet, pattern: Pattern) -> Candidate {
        Candidate {
            recipe,
            output,
            pattern,
            params: Vec::new(),
            checks: VerdictLedger::new(),
            notes: Vec::new(),
            count_options: CountOptions::default(),
        }
    }

    pub fn push(&mut self, entry: LedgerEntry) {
        self.checks.push(entry);
    }

    pub fn check_size(&mut self, expected: u64) {
        self.push(LedgerEntry::exact(
            "size",
            "number of distinct points",
            Value::int(expected),
            Value::int(self.output.len() as u64),
        ));
    }

    /// `max_collinear` either equal to `expected` or at most `limit`.
    pub fn check_collinear(&mut self, kind: BoundKind, bound: usize) -> Result<usize> {
        let mc = max_collinear(&self.output)?;
        let claim = match kind {
            BoundKind::Exact => format!("largest collinear subset has exactly {bound} points"),
            _ => format!("no {} points on a line", bound + 1),
        };
        self.push(LedgerEntry::new("max_collinear", claim, kind, Value::int(bound as u64), Value::int(mc as u64)));
        Ok(mc)
    }

    pub fn check_parallelogram_free(&mut self) {
        let found = find_parallelogram_indices(&self.output).is_some();
        self.push(LedgerEntry::exact(
            "parallelogram_free",
            "no four points form a parallelogram",
            Value::Flag(false),
            Value::Flag(found),
        ));
    }

    pub fn check_no_parallel_segments(&mut self) -> Result<()> {
        let found = has_parallel_segments(&self.output)?;
        self.push(LedgerEntry::exact(
            "no_parallel_segments",
            "no two disjoint point pairs span parallel segments",
            Value::Flag(false),
            Value::Flag(found),
        ));
        Ok(())
    }

    /// Counts copies of the pattern and records the copy-count claim. Any
    /// failed check turns the candidate into a rejection.
    pub fn finish(
        self,
        expected_size: u64,
        kind: BoundKind,
        expected_copies: BigInt,
        max_collinear: usize,
        seed: u64,
    ) -> Result<BuildReport> {
        self.finish_with(expected_size, kind, expected_copies, max_collinear, seed, |_, _| {})
    }

    /// [`Candidate::finish`] with extra checks that need the count.
    pub fn finish_with(
        mut self,
        expected_size: u64,
        kind: BoundKind,
        expected_copies: BigInt,
        max_collinear: usize,
        seed: u64,
        extra: impl FnOnce(&CountReport, &mut VerdictLedger),
    ) -> Result<BuildReport> {
        if !self.checks.all_passed() {
            return Err(Error::CheckFailed(format!("{}: {}", self.recipe.name, self.checks.failure_list())));
        }
        let count = count_similar_with(&self.pattern, &self.output, &self.count_options)?;
        self.push(LedgerEntry::new(
            "copies",
            format!("similar copies of the {}-point pattern", self.pattern.len()),
            kind,
            Value::Int(expected_copies.clone()),
            Value::int(count.copies),
        ));
        extra(&count, &mut self.checks);
        if !self.checks.all_passed() {
            return Err(Error::CheckFailed(format!("{}: {}", self.recipe.name, self.checks.failure_list())));
        }
        Ok(BuildReport {
            recipe: self.recipe,
            seed,
            output: self.output,
            pattern: self.pattern,
            expected_size,
            expected_copies,
            copies_kind: kind,
            count,
            max_collinear,
            params: self.params,
            checks: self.checks,
            resamples: 0,
            initial: None,
            notes: self.notes,
        })
    }
}

/// Runs `attempt` until it produces a value. `Error::CheckFailed` and
/// `Error::DuplicatePoint` count as rejections of the sampled parameters;
/// any other error is returned immediately.
pub(crate) fn resample<T>(
    sampler: &mut Sampler,
    mut attempt: impl FnMut(&mut Sampler, u32) -> Result<T>,
) -> Result<(T, u32)> {
    let budget = sampler.budget.max(1);
    let mut last = String::new();
    for n in 1..=budget {
        match attempt(sampler, n) {
            Ok(v) => return Ok((v, n - 1)),
            Err(Error::CheckFailed(why)) => last = why,
            Err(e @ Error::DuplicatePoint(..)) => last = e.to_string(),
            Err(e) => return Err(e),
        }
    }
    Err(Error::BudgetExhausted { attempts: budget, last })
}

/// Like [`resample`] for builds: records the resample count on the report.
pub(crate) fn resample_build(
    sampler: &mut Sampler,
    attempt: impl FnMut(&mut Sampler, u32) -> Result<BuildReport>,
) -> Result<BuildReport> {
    let (mut report, resamples) = resample(sampler, attempt)?;
    report.resamples = resamples;
    Ok(report)
}
