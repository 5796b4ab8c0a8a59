//! Runs the whole verdict suite once and reports one PASS/FAIL line per
//! acceptance criterion. Tolerances are fixed inside the ledger entries:
//! exact integer comparisons everywhere except the index claims (1e-12
//! absolute) and the real-valued iteration bounds (1e-9 relative).

use patternforge_core::verify::{run_acceptance_suite, LedgerEntry, Scope, VerdictLedger};

const SEED: u64 = 20_240_101;

struct Criterion {
    number: u32,
    title: &'static str,
    owns: fn(&str) -> bool,
}

fn is_pfree_bound(id: &str) -> bool {
    id.starts_with("pfree.") && !id.contains(".k22.")
}

const CRITERIA: [Criterion; 15] = [
    Criterion {
        number: 1,
        title: "equilateral15: 15 points, exactly 29 triangles, general position, index log 102/log 15 (tol 1e-12)",
        owns: |id| id.starts_with("equilateral15.") || id == "table.triangle.equilateral",
    },
    Criterion {
        number: 2,
        title: "scalene5 over 5 seeds: 5 points, exactly 4 copies, general position",
        owns: |id| id.starts_with("scalene5.") || id == "table.triangle.scalene-all",
    },
    Criterion {
        number: 3,
        title: "scalene14 over 5 seeds: 14 points, at least 26 copies",
        owns: |id| id.starts_with("scalene14.") || id == "table.triangle.scalene-most",
    },
    Criterion {
        number: 4,
        title: "isosceles8, base angle π/5: 8 points, exactly 9 copies",
        owns: |id| id.starts_with("isosceles8.") || id == "table.triangle.isosceles",
    },
    Criterion {
        number: 5,
        title: "even_kgon k = 4, 6, 8, 10: exact sizes 24/84/208/420, copies at least 30/74/138/222",
        owns: |id| {
            id.starts_with("even_kgon.")
                || ["table.polygon.square", "table.polygon.hexagon", "table.polygon.octagon", "table.polygon.decagon"].contains(&id)
        },
    },
    Criterion {
        number: 6,
        title: "pentagon120: 120 points, at least 264 pentagons, every point on exactly 11",
        owns: |id| id.starts_with("pentagon120.") || id == "table.polygon.pentagon",
    },
    Criterion {
        number: 7,
        title: "theorem3_generic k = 3, 4, 5: k²-k+1 points, at least 2k-1 copies",
        owns: |id| id.starts_with("theorem3."),
    },
    Criterion {
        number: 8,
        title: "hex_lattice_cluster m = 4, 6, 8: closed-form size and triangle count, m-1 on a line",
        owns: |id| id.starts_with("hex."),
    },
    Criterion {
        number: 9,
        title: "fast count equals brute force on catalog sets and 200 random 10-point sets",
        owns: |id| id.starts_with("oracle."),
    },
    Criterion {
        number: 10,
        title: "Minkowski product inequality on 20 random catalog combinations (exact integers)",
        owns: |id| id.starts_with("minkowski."),
    },
    Criterion {
        number: 11,
        title: "iterated sums: 225 points with S >= 3393; 49 points with S >= 304",
        owns: |id| id.starts_with("iteration."),
    },
    Criterion {
        number: 12,
        title: "parallelogram-free recursion m = 2, 3, 4: |P|^m points, m|P|^(m-1) <= S <= n^(3/2) + n",
        owns: is_pfree_bound,
    },
    Criterion {
        number: 13,
        title: "no K(2,2) in the edge graph of the pfree outputs, E >= S",
        owns: |id| id.starts_with("pfree.") && id.contains(".k22."),
    },
    Criterion {
        number: 14,
        title: "pattern inside a regular polygon: I·S_P(A) >= S_R(A)·|R| and i_P(A) >= i_R(A)",
        owns: |id| {
            id.starts_with("subset-regular.") || id == "table.triangle.isosceles-right" || id == "table.triangle.isosceles-2pi3"
        },
    },
    Criterion {
        number: 15,
        title: "100 seeds per sampled recipe, every accepted set re-verified, zero escapes",
        owns: |id| id.starts_with("genericity."),
    },
];

fn owner(id: &str) -> Vec<u32> {
    CRITERIA.iter().filter(|c| (c.owns)(id)).map(|c| c.number).collect()
}

#[test]
fn acceptance() {
    let ledger = run_acceptance_suite(Scope::All, SEED);
    let mut orphans = Vec::new();
    for e in &ledger.entries {
        match owner(&e.claim_id).len() {
            1 => {}
            _ => orphans.push(e.claim_id.clone()),
        }
    }

    let mut failed = Vec::new();
    println!();
    for c in &CRITERIA {
        let mine: Vec<&LedgerEntry> = ledger.entries.iter().filter(|e| (c.owns)(&e.claim_id)).collect();
        let bad: Vec<&&LedgerEntry> = mine.iter().filter(|e| !e.passed()).collect();
        let ok = !mine.is_empty() && bad.is_empty();
        println!("{} criterion {:>2}: {} [{} claims]", if ok { "PASS" } else { "FAIL" }, c.number, c.title, mine.len());
        for e in bad {
            println!("       {e}");
        }
        if !ok {
            failed.push(c.number);
        }
    }
    let s = ledger.summary();
    println!("ledger: {} passed, {} failed, seed {SEED}", s.passed, s.failed);
    assert!(orphans.is_empty(), "claims without exactly one criterion: {orphans:?}");
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn table_scope_has_one_claim_per_row() {
    let ledger = run_acceptance_suite(Scope::Tables, 3);
    assert_eq!(ledger.len(), 11);
    let mut ids: Vec<&str> = ledger.entries.iter().map(|e| e.claim_id.as_str()).collect();
    ids.dedup();
    assert_eq!(ids.len(), 11);
    assert!(ledger.all_passed(), "{ledger}");
}

#[test]
fn ledgers_are_deterministic() {
    let render = |l: &VerdictLedger| l.entries.iter().map(|e| format!("{e}\n")).collect::<String>();
    let a = run_acceptance_suite(Scope::Lemmas, 11);
    let b = run_acceptance_suite(Scope::Lemmas, 11);
    assert_eq!(render(&a), render(&b));
    assert!(run_acceptance_suite(Scope::None, 11).is_empty());
}
