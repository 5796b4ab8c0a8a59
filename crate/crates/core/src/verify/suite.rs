//! The acceptance suite: every reproduced count, bound and lemma as one ledger.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use super::checks::{check_iteration_bound, check_k22_freeness, check_minkowski_lemma, check_pfree_bounds};
use super::{BoundKind, LedgerEntry, Value, VerdictLedger};
use crate::constructions::shapes::{equilateral_triangle, isosceles_triangle, random_pattern, regular_polygon, scalene_triangle, square};
use crate::constructions::{
    equilateral15, even_kgon, even_kgon_copies, even_kgon_size, hex_cluster_size, hex_cluster_triangles, hex_lattice_cluster,
    isosceles8, minkowski_iterate, minkowski_sum_generic, pentagon120, pfree_iterate, pfree_q, scalene14, scalene14_with, scalene5,
    scalene5_with, theorem3_generic, BuildReport, IsoscelesVariant, PfreeOptions, Sampler,
};
use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, Rational};
use crate::geom::{is_parallelogram_free, max_collinear, PointSet};
use crate::patterns::{binomial, brute_force_count, count_similar, subset_regular_bound, Pattern, BRUTE_FORCE_LIMIT};

/// Which part of the suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scope {
    /// One entry per row of the two published tables.
    Tables,
    /// Minkowski lemma, iteration bound, subset-of-polygon bound.
    Lemmas,
    /// Parallelogram-free recursion and the `K_{2,2}` argument.
    Pfree,
    /// Sizes, collinearity, incidence and index claims of the named sets.
    Catalog,
    /// Fast count against the brute-force count.
    Oracle,
    /// Repeated sampled builds re-verified from scratch.
    Genericity,
    All,
    None,
}

impl Scope {
    pub const NAMES: [&'static str; 8] = ["tables", "lemmas", "pfree", "catalog", "oracle", "genericity", "all", "none"];

    fn parts(self) -> &'static [Scope] {
        use Scope::*;
        match self {
            All => &[Tables, Lemmas, Pfree, Catalog, Oracle, Genericity],
            None => &[],
            Tables => &[Tables],
            Lemmas => &[Lemmas],
            Pfree => &[Pfree],
            Catalog => &[Catalog],
            Oracle => &[Oracle],
            Genericity => &[Genericity],
        }
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scope> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "tables" => Scope::Tables,
            "lemmas" => Scope::Lemmas,
            "pfree" => Scope::Pfree,
            "catalog" => Scope::Catalog,
            "oracle" => Scope::Oracle,
            "genericity" => Scope::Genericity,
            "all" => Scope::All,
            "none" | "" => Scope::None,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown scope {other:?}; expected one of {}",
                    Scope::NAMES.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [
            Scope::Tables,
            Scope::Lemmas,
            Scope::Pfree,
            Scope::Catalog,
            Scope::Oracle,
            Scope::Genericity,
            Scope::All,
            Scope::None,
        ]
        .iter()
        .position(|s| s == self)
        .unwrap_or(7);
        f.write_str(Scope::NAMES[i])
    }
}

/// Seeds per sampled recipe in the genericity scope.
pub const GENERICITY_SEEDS: u64 = 100;
/// Random `(P, B, C)` draws in the lemma scope.
pub const MINKOWSKI_COMBINATIONS: usize = 20;
/// Random 10-point sets in the oracle scope.
pub const ORACLE_RANDOM_SETS: usize = 200;

/// Runs the requested scope and returns the ledger sorted by claim id. The
/// ledger depends only on `scope` and `seed`.
pub fn run_acceptance_suite(scope: Scope, seed: u64) -> VerdictLedger {
    let mut bench = Bench::new(seed);
    let mut ledger = VerdictLedger::new();
    for part in scope.parts() {
        let got = match part {
            Scope::Tables => tables(&mut bench),
            Scope::Lemmas => lemmas(&mut bench),
            Scope::Pfree => pfree(&mut bench),
            Scope::Catalog => catalog(&mut bench),
            Scope::Oracle => oracle(&mut bench),
            Scope::Genericity => genericity(&mut bench),
            Scope::All | Scope::None => VerdictLedger::new(),
        };
        ledger.extend(got);
    }
    ledger.sort();
    ledger
}

fn sub_seed(seed: u64, tag: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(tag.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// A failed entry standing in for a check that could not run.
fn errored(claim_id: impl Into<String>, e: &Error) -> LedgerEntry {
    LedgerEntry::exact(claim_id, format!("check could not run: {e}"), Value::Flag(true), Value::Flag(false))
}

fn prefixed(prefix: &str, ledger: VerdictLedger) -> VerdictLedger {
    let mut out = VerdictLedger::new();
    for mut e in ledger.entries {
        e.claim_id = format!("{prefix}.{}", e.claim_id);
        out.push(e);
    }
    out
}

/// The named builds, each made once per suite run.
struct Bench {
    seed: u64,
    cache: Vec<(String, Result<BuildReport>)>,
}

impl Bench {
    fn new(seed: u64) -> Bench {
        Bench { seed, cache: Vec::new() }
    }

    fn sampler(&self, tag: u64) -> Sampler {
        Sampler::new(sub_seed(self.seed, tag))
    }

    fn get(&mut self, key: &str) -> Result<&BuildReport> {
        if !self.cache.iter().any(|(k, _)| k == key) {
            let built = self.build(key);
            self.cache.push((key.to_string(), built));
        }
        let (_, r) = self.cache.iter().find(|(k, _)| k == key).expect("just inserted");
        r.as_ref().map_err(Clone::clone)
    }

    fn build(&mut self, key: &str) -> Result<BuildReport> {
        match key {
            "equilateral15" => equilateral15(&mut self.sampler(1)),
            "scalene5" => scalene5(&mut self.sampler(2)),
            "scalene14" => scalene14(&mut self.sampler(3)),
            "isosceles8" => isosceles8(IsoscelesVariant::A, 1, 5),
            "pentagon120" => pentagon120(&mut self.sampler(5)),
            "scalene-family" => {
                let mut s = self.sampler(6);
                let z = scalene_z(&mut s)?;
                scalene5_with(&z)
            }
            k if k.starts_with("even_kgon.k") => {
                let k: u32 = k["even_kgon.k".len()..].parse().map_err(|_| Error::Parse(key.into()))?;
                even_kgon(k, &mut self.sampler(100 + k as u64))
            }
            m if m.starts_with("hex.m") => {
                let m: u32 = m["hex.m".len()..].parse().map_err(|_| Error::Parse(key.into()))?;
                hex_lattice_cluster(m)
            }
            k if k.starts_with("theorem3.k") => {
                let k: usize = k["theorem3.k".len()..].parse().map_err(|_| Error::Parse(key.into()))?;
                let mut s = self.sampler(200 + k as u64);
                let p = random_pattern(k, 3, &mut s)?;
                theorem3_generic(&p, 3, &mut s)
            }
            m if m.starts_with("pfree.m") => {
                let m: u32 = m["pfree.m".len()..].parse().map_err(|_| Error::Parse(key.into()))?;
                let mut s = self.sampler(300);
                let z = scalene_z(&mut s)?;
                let p = scalene_triangle(&z)?;
                pfree_iterate(&p, m, PfreeOptions::default(), &mut self.sampler(300 + m as u64))
            }
            _ => Err(Error::InvalidParameter(format!("unknown build {key}"))),
        }
    }
}

fn scalene_z(s: &mut Sampler) -> Result<CycloNum> {
    for _ in 0..s.budget {
        let z = s.gaussian(4)?;
        if crate::constructions::shapes::is_scalene(&z) {
            return Ok(z);
        }
    }
    Err(Error::BudgetExhausted { attempts: s.budget, last: "no scalene triangle drawn".into() })
}

/// Copies of `pattern` in a named build, compared with a table value.
fn table_row(bench: &mut Bench, id: &str, claim: &str, key: &str, pattern: Option<Pattern>, kind: BoundKind, value: u64) -> LedgerEntry {
    let counted = bench.get(key).and_then(|r| match &pattern {
        Some(p) => count_similar(p, &r.output).map(|c| c.copies),
        None => Ok(r.copies()),
    });
    match counted {
        Ok(c) => LedgerEntry::new(id, claim, kind, Value::int(value), Value::int(c)),
        Err(e) => errored(id, &e),
    }
}

fn tables(bench: &mut Bench) -> VerdictLedger {
    use BoundKind::{Exact, Lower};
    let mut l = VerdictLedger::new();
    let rows: Vec<(&str, &str, &str, Option<Pattern>, BoundKind, u64)> = vec![
        ("table.triangle.scalene-most", "14 points with at least 26 copies of a generic scalene triangle", "scalene14", None, Lower, 26),
        ("table.triangle.scalene-all", "5 points with exactly 4 copies of any scalene triangle", "scalene5", None, Exact, 4),
        ("table.triangle.isosceles", "8 points with 9 copies of an isosceles triangle (base angle π/5)", "isosceles8", None, Exact, 9),
        (
            "table.triangle.isosceles-2pi3",
            "84 points with at least 444 copies of the (2π/3, π/6, π/6) triangle",
            "even_kgon.k6",
            isosceles_triangle(1, 6).ok(),
            Lower,
            444,
        ),
        (
            "table.triangle.isosceles-right",
            "24 points with at least 120 copies of the (π/2, π/4, π/4) triangle",
            "even_kgon.k4",
            isosceles_triangle(1, 4).ok(),
            Lower,
            120,
        ),
        ("table.triangle.equilateral", "15 points with exactly 29 equilateral triangles", "equilateral15", None, Exact, 29),
        ("table.polygon.square", "24 points with at least 30 squares", "even_kgon.k4", None, Lower, 30),
        (
            "table.polygon.hexagon",
            "84 points with at least 74 regular hexagons (the printed row swaps |A| and S)",
            "even_kgon.k6",
            None,
            Lower,
            74,
        ),
        ("table.polygon.octagon", "208 points with at least 138 regular octagons", "even_kgon.k8", None, Lower, 138),
        ("table.polygon.decagon", "420 points with at least 222 regular decagons", "even_kgon.k10", None, Lower, 222),
        ("table.polygon.pentagon", "120 points with at least 264 regular pentagons", "pentagon120", None, Lower, 264),
    ];
    for (id, claim, key, pattern, kind, value) in rows {
        l.push(table_row(bench, id, claim, key, pattern, kind, value));
    }
    l
}

fn size_entry(id: &str, r: &BuildReport, expected: u64) -> LedgerEntry {
    LedgerEntry::exact(format!("{id}.size"), "number of distinct points", Value::int(expected), Value::int(r.size() as u64))
}

fn collinear_entry(id: &str, r: &BuildReport, kind: BoundKind, bound: usize) -> LedgerEntry {
    let claim = match kind {
        BoundKind::Exact => format!("largest collinear subset has exactly {bound} points"),
        _ => format!("no {} points on a line", bound + 1),
    };
    LedgerEntry::new(format!("{id}.max_collinear"), claim, kind, Value::int(bound as u64), Value::int(r.max_collinear as u64))
}

fn copies_entry(id: &str, r: &BuildReport, kind: BoundKind, expected: u64) -> LedgerEntry {
    LedgerEntry::new(format!("{id}.copies"), "similar copies of the pattern", kind, Value::int(expected), Value::int(r.copies()))
}

/// `log(I·S + n)/log n` with the published `S`, against the computed index.
fn index_entry(id: &str, r: &BuildReport, kind: BoundKind, published: &str, target: f64) -> LedgerEntry {
    let e = LedgerEntry::new(format!("{id}.index"), format!("index {published}"), kind, Value::Real(target), Value::Real(r.index()));
    e.with_tolerance(1e-12)
}

fn log_ratio(a: f64, b: f64) -> f64 {
    libm::log(a) / libm::log(b)
}

fn with_build(l: &mut VerdictLedger, bench: &mut Bench, key: &str, id: &str, f: impl FnOnce(&BuildReport, &mut VerdictLedger)) {
    match bench.get(key) {
        Ok(r) => f(r, l),
        Err(e) => l.push(errored(format!("{id}.build"), &e)),
    }
}

fn catalog(bench: &mut Bench) -> VerdictLedger {
    use BoundKind::{Exact, Lower, Upper};
    let mut l = VerdictLedger::new();
    with_build(&mut l, bench, "equilateral15", "equilateral15", |r, l| {
        l.push(size_entry("equilateral15", r, 15));
        l.push(collinear_entry("equilateral15", r, Exact, 2));
        l.push(index_entry("equilateral15", r, Exact, "log 102/log 15", log_ratio(102.0, 15.0)));
    });
    for j in 0..5u64 {
        let id = format!("scalene5.run{j}");
        match scalene5(&mut bench.sampler(1000 + j)) {
            Ok(r) => {
                l.push(size_entry(&id, &r, 5));
                l.push(copies_entry(&id, &r, Exact, 4));
                l.push(collinear_entry(&id, &r, Upper, 2));
            }
            Err(e) => l.push(errored(format!("{id}.build"), &e)),
        }
        let id = format!("scalene14.run{j}");
        match scalene14(&mut bench.sampler(1100 + j)) {
            Ok(r) => {
                l.push(size_entry(&id, &r, 14));
                l.push(copies_entry(&id, &r, Lower, 26));
            }
            Err(e) => l.push(errored(format!("{id}.build"), &e)),
        }
    }
    with_build(&mut l, bench, "scalene14", "scalene14", |r, l| {
        l.push(index_entry("scalene14", r, Lower, "> 1.397 (log 40/log 14)", log_ratio(40.0, 14.0)));
    });
    with_build(&mut l, bench, "scalene5", "scalene5", |r, l| {
        l.push(index_entry("scalene5", r, Exact, "log 9/log 5", log_ratio(9.0, 5.0)));
    });
    with_build(&mut l, bench, "isosceles8", "isosceles8", |r, l| {
        l.push(size_entry("isosceles8", r, 8));
        l.push(index_entry("isosceles8", r, Exact, "log 17/log 8", log_ratio(17.0, 8.0)));
    });
    for k in [4u64, 6, 8, 10] {
        let id = format!("even_kgon.k{k}");
        with_build(&mut l, bench, &id.clone(), &id, |r, l| {
            l.push(size_entry(&id, r, even_kgon_size(k)));
            l.push(collinear_entry(&id, r, Exact, 2));
            let n = even_kgon_size(k) as f64;
            let target = log_ratio(k as f64 * even_kgon_copies(k) as f64 + n, n);
            l.push(index_entry(&id, r, Lower, "from the closed-form size and copy count", target));
        });
    }
    with_build(&mut l, bench, "pentagon120", "pentagon120", |r, l| {
        l.push(size_entry("pentagon120", r, 120));
        l.push(index_entry("pentagon120", r, Lower, "> 1.519 (log 1440/log 120)", log_ratio(1440.0, 120.0)));
        match &r.count.incidence {
            Some(inc) => {
                let lo = inc.iter().copied().min().unwrap_or(0);
                let hi = inc.iter().copied().max().unwrap_or(0);
                l.push(LedgerEntry::exact("pentagon120.incidence.min", "every point lies on exactly 11 pentagons", Value::int(11u32), Value::int(lo)));
                l.push(LedgerEntry::exact("pentagon120.incidence.max", "every point lies on exactly 11 pentagons", Value::int(11u32), Value::int(hi)));
            }
            None => l.push(errored("pentagon120.incidence", &Error::Precondition("no incidence recorded".into()))),
        }
    });
    for k in [3u64, 4, 5] {
        let id = format!("theorem3.k{k}");
        with_build(&mut l, bench, &id.clone(), &id, |r, l| {
            l.push(size_entry(&id, r, k * k - k + 1));
            l.push(copies_entry(&id, r, Lower, 2 * k - 1));
        });
    }
    for m in [4u64, 6, 8] {
        let id = format!("hex.m{m}");
        with_build(&mut l, bench, &id.clone(), &id, |r, l| {
            l.push(size_entry(&id, r, hex_cluster_size(m)));
            l.push(copies_entry(&id, r, Exact, hex_cluster_triangles(m)));
            l.push(collinear_entry(&id, r, Exact, m as usize - 1));
        });
    }
    l
}

fn lemmas(bench: &mut Bench) -> VerdictLedger {
    let mut l = VerdictLedger::new();
    let families = match minkowski_families(bench) {
        Ok(f) => f,
        Err(e) => {
            l.push(errored("minkowski.families", &e));
            Vec::new()
        }
    };
    if !families.is_empty() {
        let mut s = bench.sampler(400);
        let mut drawn = 0;
        while drawn < MINKOWSKI_COMBINATIONS {
            let (name, pattern, sets) = &families[s.index(families.len())];
            let (bn, b) = &sets[s.index(sets.len())];
            let (cn, c) = &sets[s.index(sets.len())];
            if b.len() * c.len() > 1000 {
                continue;
            }
            let id = format!("minkowski.draw{drawn:02}");
            let m = match (max_collinear(b), max_collinear(c)) {
                (Ok(x), Ok(y)) => x.max(y).max(2) + 1,
                (Err(e), _) | (_, Err(e)) => {
                    l.push(errored(id, &e));
                    drawn += 1;
                    continue;
                }
            };
            match check_minkowski_lemma(pattern, b, c, m, &mut s) {
                Ok(mut e) => {
                    e.claim_id = id;
                    e.claim = format!("{name}: B = {bn}, C = {cn}, m = {m}; {}", e.claim);
                    l.push(e);
                }
                Err(e) => l.push(errored(id, &e)),
            }
            drawn += 1;
        }
    }

    for (id, key, m) in [("iteration.equilateral15", "equilateral15", 3usize), ("iteration.hex-m4", "hex.m4", 4)] {
        let tag = if m == 3 { 500 } else { 501 };
        let mut s = bench.sampler(tag);
        let built = bench.get(key).and_then(|r| minkowski_iterate(&equilateral_triangle(), &r.output, 2, m, &mut s));
        match built {
            Ok(r) => {
                let n0 = r.initial.as_ref().map(|c| c.target_size as u64).unwrap_or(0);
                l.push(size_entry(id, &r, n0 * n0));
                l.push(collinear_entry(id, &r, BoundKind::Upper, m - 1));
                match check_iteration_bound(&r) {
                    Ok(c) => l.extend(prefixed(id, strip_prefix(c, "iteration."))),
                    Err(e) => l.push(errored(format!("{id}.bound"), &e)),
                }
            }
            Err(e) => l.push(errored(format!("{id}.build"), &e)),
        }
    }

    for (id, k) in [("subset-regular.square", 4u32), ("subset-regular.hexagon", 6)] {
        let key = format!("even_kgon.k{k}");
        let mut run = || -> Result<VerdictLedger> {
            let p = polygon_corner(k)?;
            let r = regular_polygon(k)?;
            let a = bench.get(&key)?;
            subset_regular_bound(&p, &r, &a.output)
        };
        match run() {
            Ok(c) => l.extend(prefixed(id, strip_prefix(c, "subset-regular."))),
            Err(e) => l.push(errored(id, &e)),
        }
    }
    l
}

/// Three consecutive vertices of the regular `k`-gon: the isosceles triangle
/// with apex angle `π - 2π/k`.
fn polygon_corner(k: u32) -> Result<Pattern> {
    let pts = (0..3).map(|j| CycloNum::root_of_unity(k, j)).collect::<Result<Vec<_>>>()?;
    Pattern::from_points(k, pts)
}

fn strip_prefix(ledger: VerdictLedger, prefix: &str) -> VerdictLedger {
    let mut out = VerdictLedger::new();
    for mut e in ledger.entries {
        if let Some(rest) = e.claim_id.strip_prefix(prefix) {
            e.claim_id = rest.to_string();
        }
        out.push(e);
    }
    out
}

type Family = (&'static str, Pattern, Vec<(&'static str, PointSet)>);

/// Patterns with catalog sets that contain copies of them.
fn minkowski_families(bench: &mut Bench) -> Result<Vec<Family>> {
    let tri = equilateral_triangle();
    let sq = square();
    let iso = isosceles_triangle(1, 5)?;
    let sc = bench.get("scalene-family")?;
    let t = sc.pattern.clone();
    let sc5 = sc.output.clone();
    let z = t.base().iter().find(|p| !p.is_real()).cloned().ok_or(Error::TooFewPoints { needed: 3, got: 2 })?;
    let sc14 = scalene14_with(&z)?.output;
    let pent = regular_polygon(5)?;
    Ok(vec![
        (
            "equilateral triangle",
            tri.clone(),
            vec![
                ("triangle", tri.base().clone()),
                ("equilateral15", bench.get("equilateral15")?.output.clone()),
                ("hex m=4", bench.get("hex.m4")?.output.clone()),
                ("hex m=6", bench.get("hex.m6")?.output.clone()),
            ],
        ),
        ("square", sq.clone(), vec![("square", sq.base().clone()), ("even_kgon k=4", bench.get("even_kgon.k4")?.output.clone())]),
        ("isosceles π/5", iso.clone(), vec![("triangle", iso.base().clone()), ("isosceles8", bench.get("isosceles8")?.output.clone())]),
        ("scalene", t.clone(), vec![("triangle", t.base().clone()), ("scalene5", sc5), ("scalene14", sc14)]),
        ("pentagon", pent.clone(), vec![("pentagon", pent.base().clone()), ("pentagon120", bench.get("pentagon120")?.output.clone())]),
    ])
}

fn pfree(bench: &mut Bench) -> VerdictLedger {
    let mut l = VerdictLedger::new();
    for m in [2u32, 3, 4] {
        let id = format!("pfree.m{m}");
        let r = match bench.get(&id) {
            Ok(r) => r.clone(),
            Err(e) => {
                l.push(errored(format!("{id}.build"), &e));
                continue;
            }
        };
        let n = 3u64.pow(m);
        l.push(size_entry(&id, &r, n));
        l.push(collinear_entry(&id, &r, BoundKind::Upper, 2));
        let pf = is_parallelogram_free(&r.output);
        l.push(match pf {
            Ok(free) => LedgerEntry::exact(format!("{id}.parallelogram_free"), "no four points form a parallelogram", Value::Flag(true), Value::Flag(free)),
            Err(e) => errored(format!("{id}.parallelogram_free"), &e),
        });
        match check_pfree_bounds(&r) {
            Ok(c) => l.extend(prefixed(&id, strip_prefix(c, "pfree."))),
            Err(e) => l.push(errored(format!("{id}.bounds"), &e)),
        }
        match check_k22_freeness(&r.pattern, &r.output) {
            Ok(c) => l.extend(prefixed(&id, c)),
            Err(e) => l.push(errored(format!("{id}.k22"), &e)),
        }
    }
    l
}

fn oracle_entry(id: &str, pattern: &Pattern, set: &PointSet) -> Option<LedgerEntry> {
    if binomial(set.len(), pattern.len()) > BRUTE_FORCE_LIMIT {
        return None;
    }
    let id = format!("oracle.{id}");
    Some(match (count_similar(pattern, set), brute_force_count(pattern, set)) {
        (Ok(fast), Ok(slow)) => LedgerEntry::exact(
            id,
            format!("fast count equals subset enumeration over C({}, {}) subsets", set.len(), pattern.len()),
            Value::int(slow),
            Value::int(fast.copies),
        ),
        (Err(e), _) | (_, Err(e)) => errored(id, &e),
    })
}

fn oracle(bench: &mut Bench) -> VerdictLedger {
    let mut l = VerdictLedger::new();
    let mut cases: Vec<(String, Pattern, PointSet)> = Vec::new();
    let mut keys: Vec<String> =
        ["equilateral15", "scalene5", "scalene14", "isosceles8", "pentagon120"].iter().map(|s| s.to_string()).collect();
    keys.extend([4, 6, 8, 10].iter().map(|k| format!("even_kgon.k{k}")));
    keys.extend([3, 4, 5].iter().map(|k| format!("theorem3.k{k}")));
    keys.extend([4, 6, 8].iter().map(|m| format!("hex.m{m}")));
    keys.extend([2, 3, 4].iter().map(|m| format!("pfree.m{m}")));
    for key in &keys {
        match bench.get(key) {
            Ok(r) => cases.push((key.clone(), r.pattern.clone(), r.output.clone())),
            Err(e) => l.push(errored(format!("oracle.{key}.build"), &e)),
        }
    }
    for (k, num, den) in [(4u32, 1u32, 4u32), (6, 1, 6)] {
        if let (Ok(r), Ok(p)) = (bench.get(&format!("even_kgon.k{k}")), isosceles_triangle(num, den)) {
            cases.push((format!("even_kgon.k{k}.isosceles-{num}pi{den}"), p, r.output.clone()));
        }
    }
    for (id, p, set) in &cases {
        if let Some(e) = oracle_entry(id, p, set) {
            l.push(e);
        }
    }

    let mut s = bench.sampler(600);
    let mut mismatches = 0u64;
    let mut total = 0u64;
    let mut errors = Vec::new();
    for _ in 0..ORACLE_RANDOM_SETS {
        match random_case(&mut s).and_then(|(p, a)| Ok((count_similar(&p, &a)?.copies, brute_force_count(&p, &a)?))) {
            Ok((fast, slow)) => {
                total += slow;
                if fast != slow {
                    mismatches += 1;
                }
            }
            Err(e) => errors.push(e),
        }
    }
    l.push(LedgerEntry::exact(
        "oracle.random.mismatches",
        format!("{ORACLE_RANDOM_SETS} random 10-point lattice sets, {total} copies in all; fast and brute-force counts disagree on none"),
        Value::int(0u32),
        Value::int(mismatches),
    ));
    l.push(LedgerEntry::exact(
        "oracle.random.errors",
        match errors.first() {
            Some(e) => format!("random cases failed to run, first: {e}"),
            None => "every random case ran".into(),
        },
        Value::int(0u32),
        Value::int(errors.len() as u64),
    ));
    l
}

/// Ten distinct points of the square lattice `[-3, 3]²` and a triangle with
/// vertices in `[-2, 2]²`, both over `Q(i)`.
fn random_case(s: &mut Sampler) -> Result<(Pattern, PointSet)> {
    let lattice = |s: &mut Sampler, r: i64| -> Result<CycloNum> {
        let x = s.index(2 * r as usize + 1) as i64 - r;
        let y = s.index(2 * r as usize + 1) as i64 - r;
        CycloNum::gaussian(4, &Rational::from_integer(BigInt::from(x)), &Rational::from_integer(BigInt::from(y)))
    };
    let mut set = PointSet::empty(4);
    while set.len() < 10 {
        set.insert(lattice(s, 3)?)?;
    }
    loop {
        let pts = vec![lattice(s, 2)?, lattice(s, 2)?, lattice(s, 2)?];
        if let Ok(tri) = PointSet::new(4, pts) {
            if max_collinear(&tri)? < 3 {
                return Ok((Pattern::new(tri)?, set));
            }
        }
    }
}

/// One sampled recipe, run once per seed.
struct Recipe {
    name: &'static str,
    run: Box<dyn Fn(&mut Sampler) -> Result<BuildReport>>,
    /// Extra exact property of the output beyond size, collinearity and count.
    parallelogram_free: bool,
}

fn genericity(bench: &mut Bench) -> VerdictLedger {
    let tri = equilateral_triangle();
    let recipes: Vec<Recipe> = vec![
        Recipe { name: "equilateral15", run: Box::new(equilateral15), parallelogram_free: false },
        Recipe { name: "scalene5", run: Box::new(scalene5), parallelogram_free: false },
        Recipe { name: "scalene14", run: Box::new(scalene14), parallelogram_free: false },
        Recipe { name: "even_kgon.k4", run: Box::new(|s| even_kgon(4, s)), parallelogram_free: false },
        Recipe { name: "even_kgon.k6", run: Box::new(|s| even_kgon(6, s)), parallelogram_free: false },
        Recipe { name: "pentagon120", run: Box::new(pentagon120), parallelogram_free: false },
        Recipe {
            name: "theorem3.k4",
            run: Box::new(|s| {
                let p = random_pattern(4, 3, s)?;
                theorem3_generic(&p, 3, s)
            }),
            parallelogram_free: false,
        },
        Recipe {
            name: "minkowski_sum",
            run: Box::new(move |s| {
                let t = tri.clone();
                let (v, sum) = minkowski_sum_generic(t.base(), t.base(), 3, s)?;
                minkowski_as_report(t, sum, v.attempts, s.seed())
            }),
            parallelogram_free: false,
        },
        Recipe {
            name: "pfree_q",
            run: Box::new(|s| {
                let z = scalene_z(s)?;
                let p = scalene_triangle(&z)?;
                pfree_q(&p, &p.base().clone(), PfreeOptions::default(), s)
            }),
            parallelogram_free: true,
        },
    ];
    let mut l = VerdictLedger::new();
    for (tag, recipe) in recipes.iter().enumerate() {
        let mut escapes = 0u64;
        let mut failures = 0u64;
        let mut resamples = 0u64;
        let mut first_problem: Option<String> = None;
        for j in 0..GENERICITY_SEEDS {
            let mut s = bench.sampler(10_000 + 1000 * tag as u64 + j);
            match (recipe.run)(&mut s) {
                Ok(r) => {
                    resamples += r.resamples as u64;
                    if let Err(why) = reverify(&r, recipe.parallelogram_free) {
                        escapes += 1;
                        first_problem.get_or_insert(format!("seed {j}: {why}"));
                    }
                }
                Err(e) => {
                    failures += 1;
                    first_problem.get_or_insert(format!("seed {j}: {e}"));
                }
            }
        }
        let note = first_problem.unwrap_or_else(|| format!("{resamples} rejected draws in all"));
        l.push(LedgerEntry::exact(
            format!("genericity.{}.escapes", recipe.name),
            format!("{GENERICITY_SEEDS} seeds; every accepted set re-verified from scratch ({note})"),
            Value::int(0u32),
            Value::int(escapes),
        ));
        l.push(LedgerEntry::exact(
            format!("genericity.{}.failures", recipe.name),
            format!("{GENERICITY_SEEDS} seeds; builds that found no valid parameters within the budget"),
            Value::int(0u32),
            Value::int(failures),
        ));
    }
    l
}

/// The generic sum `△ + v△` as a report: 9 points and at least
/// `((I + 3)² - 9)/I = 9` triangles.
fn minkowski_as_report(t: Pattern, sum: PointSet, attempts: u32, seed: u64) -> Result<BuildReport> {
    let count = count_similar(&t, &sum)?;
    let mc = max_collinear(&sum)?;
    let mut checks = VerdictLedger::new();
    checks.push(LedgerEntry::exact("size", "number of distinct points", Value::int(9u32), Value::int(sum.len() as u64)));
    checks.push(LedgerEntry::upper("max_collinear", "no 3 points on a line", Value::int(2u32), Value::int(mc as u64)));
    Ok(BuildReport {
        recipe: crate::constructions::RecipeRecord::new("minkowski_sum"),
        seed,
        output: sum,
        pattern: t,
        expected_size: 9,
        expected_copies: BigInt::from(9),
        copies_kind: BoundKind::Lower,
        count,
        max_collinear: mc,
        params: Vec::new(),
        checks,
        resamples: attempts - 1,
        initial: None,
        notes: Vec::new(),
    })
}

/// Recomputes the report's claims on its output without trusting any stored
/// value.
fn reverify(r: &BuildReport, parallelogram_free: bool) -> core::result::Result<(), String> {
    if r.output.len() as u64 != r.expected_size {
        return Err(format!("size {} != {}", r.output.len(), r.expected_size));
    }
    let mc = max_collinear(&r.output).map_err(|e| e.to_string())?;
    let bound = match r.checks.get("max_collinear") {
        Some(e) => e.expected.clone(),
        None => return Err("no collinearity claim".into()),
    };
    let kind = r.checks.get("max_collinear").map(|e| e.kind).unwrap_or(BoundKind::Upper);
    if !LedgerEntry::new("", "", kind, bound, Value::int(mc as u64)).passed() {
        return Err(format!("max_collinear {mc} violates the claim"));
    }
    let copies = count_similar(&r.pattern, &r.output).map_err(|e| e.to_string())?.copies;
    if !LedgerEntry::new("", "", r.copies_kind, Value::Int(r.expected_copies.clone()), Value::int(copies)).passed() {
        return Err(format!("{copies} copies violates {} {}", r.copies_kind, r.expected_copies));
    }
    if parallelogram_free && !is_parallelogram_free(&r.output).map_err(|e| e.to_string())? {
        return Err("output contains a parallelogram".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse_and_print() {
        for name in Scope::NAMES {
            assert_eq!(name.parse::<Scope>().unwrap().to_string(), name);
        }
        assert!("bogus".parse::<Scope>().is_err());
    }

    #[test]
    fn empty_scope_gives_empty_ledger() {
        let l = run_acceptance_suite(Scope::None, 3);
        assert!(l.is_empty());
        assert!(l.all_passed());
    }

    #[test]
    fn random_cases_have_copies() {
        let mut s = Sampler::new(1);
        let total: u64 = (0..20)
            .map(|_| {
                let (p, a) = random_case(&mut s).unwrap();
                count_similar(&p, &a).unwrap().copies
            })
            .sum();
        assert!(total > 0);
    }
}
