use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use patternforge_core::constructions::shapes::{is_scalene, random_pattern, scalene_triangle};
use patternforge_core::constructions::{
    equilateral15, even_kgon, hex_lattice_candidate, hex_lattice_cluster, isosceles8, minkowski_iterate, minkowski_sum_generic,
    pentagon120, pfree_iterate, scalene14, scalene5, theorem3_generic, BuildReport, IsoscelesVariant, PfreeOptions, Sampler,
    DEFAULT_SIZE_CAP,
};
use patternforge_core::geom::max_collinear;
use patternforge_core::patterns::{brute_force_count, count_similar_with, CountOptions, CountReport, WitnessMode};
use patternforge_core::verify::{
    check_iteration_bound, check_k22_freeness, check_minkowski_lemma, check_pfree_bounds, run_acceptance_suite, Scope, VerdictLedger,
    K22_CAP,
};
use patternforge_core::{Pattern, PointSet};
use serde_json::{json, Value as Json};

use crate::document::PointSetDocument;
use crate::error::{CliError, CliResult};
use crate::shapes::{parse_fraction, parse_pattern};
use crate::svg::{render, SvgOptions};

/// Environment variable overriding the size cap of iterated builds.
pub const SIZE_CAP_VAR: &str = "PATTERNFORGE_SIZE_CAP";

#[derive(Debug, Parser)]
#[command(name = "patternforge", version, about = "Exact constructions of point sets with many similar copies of a pattern")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the recipes with their parameters and published values.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Build a catalog set and write it as a point-set document.
    Build(BuildArgs),
    /// Count similar copies of a pattern in a point set.
    Count(CountArgs),
    /// Run the acceptance suite and print the verdict ledger.
    Verify(VerifyArgs),
    /// Draw a point set as SVG.
    Svg(SvgArgs),
    /// Generic Minkowski sum `A + vB` of two documents.
    Sum(SumArgs),
    /// Iterated generic Minkowski sums of an initial set.
    Iterate(IterateArgs),
    /// Parallelogram-free recursion on a pattern.
    Pfree(PfreeArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the resulting point set here.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Print a JSON report instead of the text summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Recipe name; see `catalog`.
    pub recipe: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Polygon size (even_kgon) or pattern size (theorem3).
    #[arg(long)]
    pub k: Option<u32>,
    /// Collinearity limit: hex clusters, theorem3.
    #[arg(long)]
    pub m: Option<u32>,
    /// isosceles8 variant, `a` or `b`.
    #[arg(long, default_value = "a")]
    pub variant: String,
    /// isosceles8 base angle as `NUM/DEN` (times π).
    #[arg(long, default_value = "1/5")]
    pub angle: String,
    /// theorem3 pattern; random when omitted.
    #[arg(long)]
    pub pattern: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Pattern: a document or a named shape.
    pub pattern: String,
    /// Target point-set document.
    pub set: PathBuf,
    /// Keep witnesses: a number or `all`.
    #[arg(long)]
    pub witnesses: Option<String>,
    /// Cross-check against subset enumeration.
    #[arg(long)]
    pub oracle: bool,
    /// Report how many copies pass through each point.
    #[arg(long)]
    pub incidence: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of tables, lemmas, pfree, catalog, oracle, genericity, all, none.
    #[arg(long, default_value = "all")]
    pub scope: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SvgArgs {
    /// Point-set document to draw.
    pub set: PathBuf,
    #[arg(long, short)]
    pub out: PathBuf,
    /// Draw every similar copy of this pattern; `recipe` uses the pattern
    /// recorded in the document.
    #[arg(long)]
    pub highlight_pattern: Option<String>,
    /// Pixels per unit length.
    #[arg(long)]
    pub scale: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// The sum must have fewer than `m` points on any line.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also check the product inequality for this pattern.
    #[arg(long)]
    pub pattern: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    #[arg(long)]
    pub pattern: String,
    /// Initial set document.
    #[arg(long)]
    pub base: PathBuf,
    #[arg(long, default_value_t = 2)]
    pub j: u32,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PfreeArgs {
    /// Pattern; a random scalene triangle when omitted.
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Also forbid parallel segments.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Catalog { json } => catalog(json),
        Command::Build(a) => build(a),
        Command::Count(a) => count(a),
        Command::Verify(a) => verify(a),
        Command::Svg(a) => svg(a),
        Command::Sum(a) => sum(a),
        Command::Iterate(a) => iterate(a),
        Command::Pfree(a) => pfree(a),
    }
}

fn sampler(seed: u64) -> CliResult<Sampler> {
    let cap = match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SIZE_CAP_VAR} must be a positive integer, got {v:?}")))?,
        Err(_) => DEFAULT_SIZE_CAP,
    };
    Ok(Sampler::new(seed).with_size_cap(cap))
}

struct RecipeInfo {
    name: &'static str,
    params: &'static str,
    pattern: &'static str,
    size: &'static str,
    copies: &'static str,
}

const RECIPES: [RecipeInfo; 9] = [
    RecipeInfo { name: "equilateral15", params: "--seed", pattern: "equilateral triangle", size: "15", copies: "= 29" },
    RecipeInfo { name: "scalene5", params: "--seed", pattern: "scalene triangle {0, 1, z}", size: "5", copies: "= 4" },
    RecipeInfo { name: "scalene14", params: "--seed", pattern: "scalene triangle {0, 1, z}", size: "14", copies: ">= 26" },
    RecipeInfo {
        name: "isosceles8",
        params: "--variant a|b --angle NUM/DEN",
        pattern: "isosceles triangle, base angle NUM/DEN·π",
        size: "8",
        copies: "= 9",
    },
    RecipeInfo {
        name: "even_kgon",
        params: "--k K (even) --seed",
        pattern: "regular K-gon",
        size: "(K/2)(K²-2K+4)",
        copies: ">= (5K²-6K+4)/2",
    },
    RecipeInfo { name: "pentagon120", params: "--seed", pattern: "regular pentagon", size: "120", copies: ">= 264" },
    RecipeInfo {
        name: "hex_lattice_cluster",
        params: "--m M (even)",
        pattern: "equilateral triangle",
        size: "(3M²-6M+4)/4",
        copies: "= (7M⁴-28M³+36M²-16M)/64",
    },
    RecipeInfo {
        name: "hex_lattice_candidate",
        params: "--m M (odd)",
        pattern: "equilateral triangle",
        size: "trimmed hexagon",
        copies: "reported",
    },
    RecipeInfo {
        name: "theorem3",
        params: "--k K --m M --pattern P --seed",
        pattern: "any K points, fewer than M on a line",
        size: "K²-K+1",
        copies: ">= 2K-1",
    },
];

fn catalog(json: bool) -> CliResult<()> {
    if json {
        let rows: Vec<Json> = RECIPES
            .iter()
            .map(|r| json!({"name": r.name, "params": r.params, "pattern": r.pattern, "size": r.size, "copies": r.copies}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
        return Ok(());
    }
    println!("{:<22} {:<34} {:<40} {:<16} copies", "recipe", "parameters", "pattern", "size");
    for r in &RECIPES {
        println!("{:<22} {:<34} {:<40} {:<16} {}", r.name, r.params, r.pattern, r.size, r.copies);
    }
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str, recipe: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("{recipe} needs {flag}")))
}

fn build_recipe(a: &BuildArgs) -> CliResult<BuildReport> {
    let mut s = sampler(a.seed)?;
    let name = a.recipe.as_str();
    let report = match name {
        "equilateral15" => equilateral15(&mut s)?,
        "scalene5" => scalene5(&mut s)?,
        "scalene14" => scalene14(&mut s)?,
        "isosceles8" => {
            let variant: IsoscelesVariant = a.variant.parse()?;
            let (num, den) = parse_fraction(&a.angle)?;
            isosceles8(variant, num, den)?
        }
        "even_kgon" => even_kgon(need(a.k, "--k", name)?, &mut s)?,
        "pentagon120" => pentagon120(&mut s)?,
        "hex_lattice_cluster" => hex_lattice_cluster(need(a.m, "--m", name)?)?,
        "hex_lattice_candidate" => hex_lattice_candidate(need(a.m, "--m", name)?)?,
        "theorem3" | "theorem3_generic" => {
            let m = a.m.unwrap_or(3) as usize;
            let pattern = match &a.pattern {
                Some(p) => parse_pattern(p)?,
                None => random_pattern(a.k.unwrap_or(3) as usize, m, &mut s)?,
            };
            theorem3_generic(&pattern, m, &mut s)?
        }
        other => {
            let names: Vec<&str> = RECIPES.iter().map(|r| r.name).collect();
            return Err(CliError::Usage(format!("unknown recipe {other:?}; known recipes: {}", names.join(", "))));
        }
    };
    Ok(report)
}

fn build(a: BuildArgs) -> CliResult<()> {
    let report = build_recipe(&a)?;
    finish_build(&report, &a.output, &VerdictLedger::new())
}

/// Prints the report (plus any extra checks), writes the document, and
/// fails when an extra check failed.
fn finish_build(report: &BuildReport, output: &Output, extra: &VerdictLedger) -> CliResult<()> {
    if output.json {
        let mut v = report_json(report);
        v["extra_checks"] = serde_json::to_value(extra).expect("json");
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        print_report(report);
        for e in &extra.entries {
            println!("{e}");
        }
    }
    if let Some(path) = &output.out {
        PointSetDocument::from_report(report)?.write(path)?;
        if !output.json {
            println!("wrote {}", path.display());
        }
    }
    if !extra.all_passed() {
        return Err(CliError::Failed(format!("failed checks: {}", extra.failure_list())));
    }
    Ok(())
}

pub fn report_json(r: &BuildReport) -> Json {
    let params: serde_json::Map<String, Json> = r
        .recipe
        .params
        .iter()
        .map(|(k, v)| (k.clone(), Json::String(v.clone())))
        .chain(r.params.iter().map(|g| (g.name.clone(), Json::String(g.value.to_string()))))
        .collect();
    json!({
        "recipe": r.recipe.name,
        "params": params,
        "seed": r.seed,
        "size": r.size(),
        "expected_size": r.expected_size,
        "copies": r.copies(),
        "expected_copies": r.expected_copies.to_string(),
        "copies_kind": r.copies_kind,
        "index": r.index(),
        "max_collinear": r.max_collinear,
        "resamples": r.resamples,
        "checks": r.checks,
        "count": r.count,
        "initial": r.initial,
        "notes": r.notes,
    })
}

fn print_report(r: &BuildReport) {
    println!("recipe: {}", r.recipe.name);
    println!("seed: {}", r.seed);
    for (k, v) in &r.recipe.params {
        println!("param {k}: {v}");
    }
    println!("points: {}", r.size());
    println!("max_collinear: {}", r.max_collinear);
    println!("copies: {} ({} {})", r.copies(), r.copies_kind, r.expected_copies);
    println!("index: {:.12}", r.index());
    println!("resamples: {}", r.resamples);
    let s = r.checks.summary();
    println!("checks: {} passed, {} failed", s.passed, s.failed);
    for note in &r.notes {
        println!("note: {note}");
    }
}

fn parse_witnesses(text: Option<&str>) -> CliResult<WitnessMode> {
    Ok(match text {
        None => WitnessMode::None,
        Some("all") => WitnessMode::All,
        Some(n) => WitnessMode::Sample(
            n.parse().map_err(|_| CliError::Usage(format!("--witnesses takes a number or `all`, got {n:?}")))?,
        ),
    })
}

fn count(a: CountArgs) -> CliResult<()> {
    let pattern = parse_pattern(&a.pattern)?;
    let set = PointSetDocument::read(&a.set)?.to_set()?;
    let opts = CountOptions { witnesses: parse_witnesses(a.witnesses.as_deref())?, incidence: a.incidence };
    let report = count_similar_with(&pattern, &set, &opts)?;
    let oracle = if a.oracle { Some(brute_force_count(&pattern, &set)?) } else { None };
    if a.json {
        let mut v = serde_json::to_value(&report).expect("json");
        if let Some(o) = oracle {
            v["oracle"] = json!({"copies": o, "agree": o == report.copies});
        }
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        print_count(&report);
        if let Some(o) = oracle {
            if o == report.copies {
                println!("oracle: agree ({o} by subset enumeration)");
            } else {
                println!("oracle: DISAGREE ({o} by subset enumeration)");
            }
        }
    }
    match oracle {
        Some(o) if o != report.copies => Err(CliError::Failed(format!("oracle found {o} copies, fast count {}", report.copies))),
        _ => Ok(()),
    }
}

fn print_count(r: &CountReport) {
    println!("pattern: {} points, symmetry order {}", r.pattern_size, r.sym_order);
    println!("target: {} points", r.target_size);
    println!("ordered matches: {}", r.ordered_matches);
    println!("copies: {}", r.copies);
    println!("index: {:.12}", r.index);
    if let Some(inc) = &r.incidence {
        let lo = inc.iter().min().copied().unwrap_or(0);
        let hi = inc.iter().max().copied().unwrap_or(0);
        println!("incidence: min {lo}, max {hi}");
    }
    for w in &r.witnesses {
        let idx: Vec<String> = w.iter().map(usize::to_string).collect();
        println!("witness: {}", idx.join(" "));
    }
}

fn verify(a: VerifyArgs) -> CliResult<()> {
    let scope: Scope = a.scope.parse().map_err(|e: patternforge_core::Error| CliError::Usage(e.to_string()))?;
    let ledger = run_acceptance_suite(scope, a.seed);
    if a.json {
        let s = ledger.summary();
        let v = json!({"scope": scope.to_string(), "seed": a.seed, "summary": s, "entries": ledger.entries});
        println!("{}", serde_json::to_string_pretty(&v).expect("json"));
    } else {
        print_ledger(&ledger);
    }
    if ledger.all_passed() {
        Ok(())
    } else {
        let ids: Vec<&str> = ledger.failures().map(|e| e.claim_id.as_str()).collect();
        Err(CliError::Failed(format!("failing claims: {}", ids.join(", "))))
    }
}

pub fn print_ledger(ledger: &VerdictLedger) {
    let width = ledger.entries.iter().map(|e| e.claim_id.len()).max().unwrap_or(8).max(8);
    println!("{:<6} {:<width$} {:<6} {:>16} {:>16}  claim", "status", "claim id", "kind", "expected", "computed");
    for e in &ledger.entries {
        println!(
            "{:<6} {:<width$} {:<6} {:>16} {:>16}  {}",
            if e.passed() { "PASS" } else { "FAIL" },
            e.claim_id,
            e.kind.to_string(),
            e.expected.to_string(),
            e.computed.to_string(),
            e.claim
        );
    }
    let s = ledger.summary();
    println!("{} passed, {} failed", s.passed, s.failed);
}

fn svg(a: SvgArgs) -> CliResult<()> {
    let doc = PointSetDocument::read(&a.set)?;
    let set = doc.to_set()?;
    let copies = match a.highlight_pattern.as_deref() {
        None => Vec::new(),
        Some("recipe") => {
            let p = doc.recorded_pattern()?.ok_or_else(|| CliError::Usage("document records no pattern".into()))?;
            witnesses(&p, &set)?
        }
        Some(spec) => witnesses(&parse_pattern(spec)?, &set)?,
    };
    if matches!(a.scale, Some(s) if !(s.is_finite() && s > 0.0)) {
        return Err(CliError::Usage("--scale must be positive".into()));
    }
    let text = render(&set, &copies, &SvgOptions { scale: a.scale, ..SvgOptions::default() });
    fs::write(&a.out, text).map_err(|source| CliError::Io { path: a.out.clone(), source })?;
    println!("wrote {} ({} points, {} highlighted copies)", a.out.display(), set.len(), copies.len());
    Ok(())
}

fn witnesses(pattern: &Pattern, set: &PointSet) -> CliResult<Vec<Vec<usize>>> {
    let opts = CountOptions { witnesses: WitnessMode::All, incidence: false };
    Ok(count_similar_with(pattern, set, &opts)?.witnesses)
}

fn read_set(path: &Path) -> CliResult<PointSet> {
    PointSetDocument::read(path)?.to_set()
}

fn sum(a: SumArgs) -> CliResult<()> {
    let first = read_set(&a.first)?;
    let second = read_set(&a.second)?;
    let (v, out) = minkowski_sum_generic(&first, &second, a.m, &mut sampler(a.seed)?)?;
    let mc = max_collinear(&out)?;
    let mut extra = VerdictLedger::new();
    if let Some(p) = &a.pattern {
        let pattern = parse_pattern(p)?;
        // same seed, same draws: the lemma is checked on this very sum
        extra.push(check_minkowski_lemma(&pattern, &first, &second, a.m, &mut sampler(a.seed)?)?);
    }
    if a.output.json {
        let j = json!({"size": out.len(), "max_collinear": mc, "v": v.value.to_string(), "attempts": v.attempts, "checks": extra});
        println!("{}", serde_json::to_string_pretty(&j).expect("json"));
    } else {
        println!("points: {}", out.len());
        println!("max_collinear: {mc}");
        println!("v: {} (attempt {})", v.value, v.attempts);
        for e in &extra.entries {
            println!("{e}");
        }
    }
    if let Some(path) = &a.output.out {
        let mut doc = PointSetDocument::from_set(&out);
        doc.metadata.recipe = Some("minkowski_sum".into());
        doc.metadata.seed = Some(a.seed);
        doc.metadata.params.insert("v".into(), v.value.to_string());
        doc.metadata.params.insert("m".into(), a.m.to_string());
        doc.write(path)?;
        if !a.output.json {
            println!("wrote {}", path.display());
        }
    }
    if !extra.all_passed() {
        return Err(CliError::Failed(format!("failed checks: {}", extra.failure_list())));
    }
    Ok(())
}

fn iterate(a: IterateArgs) -> CliResult<()> {
    let pattern = parse_pattern(&a.pattern)?;
    let base = read_set(&a.base)?;
    let report = minkowski_iterate(&pattern, &base, a.j, a.m, &mut sampler(a.seed)?)?;
    let extra = check_iteration_bound(&report)?;
    finish_build(&report, &a.output, &extra)
}

fn pfree(a: PfreeArgs) -> CliResult<()> {
    let mut s = sampler(a.seed)?;
    let pattern = match &a.pattern {
        Some(p) => parse_pattern(p)?,
        None => random_scalene(&mut s)?,
    };
    let report = pfree_iterate(&pattern, a.m, PfreeOptions { strict: a.strict }, &mut s)?;
    let mut extra = check_pfree_bounds(&report)?;
    if report.size() <= K22_CAP {
        extra.extend(check_k22_freeness(&report.pattern, &report.output)?);
    }
    finish_build(&report, &a.output, &extra)
}

fn random_scalene(s: &mut Sampler) -> CliResult<Pattern> {
    for _ in 0..s.budget {
        let z = s.gaussian(4)?;
        if is_scalene(&z) {
            return Ok(scalene_triangle(&z)?);
        }
    }
    Err(CliError::Failed("no scalene triangle drawn within the budget".into()))
}
