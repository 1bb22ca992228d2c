//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Pass criterion numbers as arguments to run a subset.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use sorder_core::enumeration::{grow_by_leaf, prufer_codes};
use sorder_core::families_ops::all_sites;
use sorder_core::{
    ascend_chain, cmp_s, count_k13, count_p2, count_p3, count_p4, count_subgraph_bruteforce,
    double_star, free_trees, from_graph6, s4_formula, s5_formula, s6_formula, to_graph6,
    trees_with_bipartition, verify_all, verify_key_inequalities, verify_proof_sets, walk_moments,
    walk_moments_to, CanonicalCode, EnumerationConfig, OpKind, SOrdering, Tree, TreeClassQuery,
};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, checked: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            passed: true,
            detail: checked,
        }
    } else {
        let shown: Vec<_> = failures.iter().take(12).cloned().collect();
        let more = failures.len().saturating_sub(shown.len());
        let tail = if more > 0 {
            format!("; and {more} more")
        } else {
            String::new()
        };
        Outcome {
            passed: false,
            detail: format!(
                "{checked}; {} failure(s): {}{tail}",
                failures.len(),
                shown.join("; ")
            ),
        }
    }
}

fn theorem_reproduction() -> Outcome {
    let witnesses = [
        (4, 4),
        (5, 5),
        (6, 7),
        (7, 8),
        (7, 9),
        (5, 6),
        (6, 8),
        (4, 5),
        (4, 6),
        (4, 7),
    ];
    let reports = verify_all(16, &EnumerationConfig::default());
    let mut failures = Vec::new();
    let mut seen = BTreeSet::new();
    for r in &reports {
        match r {
            Ok(r) => {
                seen.insert((r.p, r.q));
                if !r.passed {
                    let actual: Vec<String> = r
                        .actual_names
                        .iter()
                        .map(|n| n.clone().unwrap_or_else(|| "?".into()))
                        .collect();
                    failures.push(format!(
                        "({},{}) predicted [{}] got [{}]",
                        r.p,
                        r.q,
                        r.predicted.join(", "),
                        actual.join(", ")
                    ));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    for w in witnesses {
        if !seen.contains(&w) {
            failures.push(format!("witness {w:?} missing"));
        }
    }
    outcome(failures, format!("{} cells", reports.len()))
}

fn engine_cross_validation() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=12 {
        for t in free_trees(n).unwrap() {
            count += 1;
            let m = walk_moments_to(&t, 6);
            let v = m.values();
            if s4_formula(&t) != v[4]
                || s5_formula(&t) != v[5]
                || s6_formula(&t) != v[6]
                || v[5] != 0u32.into()
            {
                failures.push(format!("{}: walks {:?}", to_graph6(&t), &v[4..]));
            }
        }
    }
    outcome(failures, format!("{count} trees"))
}

fn subgraph_oracle() -> Outcome {
    let patterns = [Tree::path(2), Tree::path(3), Tree::path(4), Tree::star(3)];
    let counters: [fn(&Tree) -> u64; 4] = [count_p2, count_p3, count_p4, count_k13];
    let names = ["P2", "P3", "P4", "K13"];
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 1..=10 {
        for t in free_trees(n).unwrap() {
            count += 1;
            for ((pattern, counter), name) in patterns.iter().zip(counters).zip(names) {
                let brute = count_subgraph_bruteforce(&t, pattern).unwrap();
                if brute != counter(&t) {
                    failures.push(format!(
                        "{} {name}: {} vs {brute}",
                        to_graph6(&t),
                        counter(&t)
                    ));
                }
            }
        }
    }
    outcome(failures, format!("{count} trees"))
}

fn s4(t: &Tree) -> BigInt {
    walk_moments_to(t, 4).values()[4].clone().into()
}

fn operation_monotonicity() -> Outcome {
    let mut failures = Vec::new();
    let mut sites = 0;
    for n in 1..=10 {
        for t in free_trees(n).unwrap() {
            let before = walk_moments(&t);
            for (kind, site) in all_sites(&t) {
                sites += 1;
                let out = sorder_core::families_ops::apply(&t, kind, site).unwrap();
                let (dv, dw) = (t.degree(site.v) as i64, t.degree(site.w) as i64);
                let expected = match kind {
                    OpKind::One => 4 * (dw - dv + 1),
                    OpKind::Two => 4 * (dv - 1) * (dw - 1),
                };
                let gap = s4(&out) - s4(&t);
                let increases = cmp_s(&before, &walk_moments(&out)).unwrap() == SOrdering::Before;
                let same_class = out.bipartition().sizes() == t.bipartition().sizes();
                if !increases || !same_class || gap != BigInt::from(expected) {
                    failures.push(format!(
                        "{} {kind:?} {site:?}: increases {increases}, same class {same_class}, S4 gap {gap} vs {expected}",
                        to_graph6(&t)
                    ));
                }
            }
        }
    }
    outcome(failures, format!("{sites} sites"))
}

fn ascent_termination() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 4..=12 {
        for p in 2..=n / 2 {
            let q = n - p;
            let top = double_star(p, q).unwrap();
            for t in trees_with_bipartition(&TreeClassQuery::new(p, q).unwrap()).unwrap() {
                count += 1;
                let chain = match ascend_chain(&t) {
                    Ok(c) => c,
                    Err(e) => {
                        failures.push(format!("{}: {e}", to_graph6(&t)));
                        continue;
                    }
                };
                let moments: Vec<_> = chain.iter().map(walk_moments).collect();
                let strict = moments
                    .windows(2)
                    .all(|w| cmp_s(&w[0], &w[1]).unwrap() == SOrdering::Before);
                let ends = chain.last().unwrap().is_isomorphic(&top);
                if !strict || !ends {
                    failures.push(format!(
                        "{}: strict {strict}, ends at double star {ends}",
                        to_graph6(&t)
                    ));
                }
            }
        }
    }
    outcome(failures, format!("{count} chains"))
}

fn proof_sets() -> Outcome {
    let mut failures = Vec::new();
    let mut cells = 0;
    for p in 4..=7 {
        for q in p..=14 - p {
            cells += 1;
            let report = verify_proof_sets(p, q).unwrap();
            for name in ["A1", "A2"] {
                let c = report.check(name).unwrap();
                if !c.holds {
                    failures.push(format!("({p},{q}) {name}: {}", c.detail));
                }
            }
        }
    }
    outcome(failures, format!("{cells} cells"))
}

fn pivotal_identities() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for p in 4..=12 {
        for q in p..=12 {
            for c in verify_key_inequalities(p, q).unwrap().checks {
                if !c.applies {
                    continue;
                }
                checked += 1;
                if !c.holds() {
                    failures.push(format!("({p},{q}) {}: observed {}", c.name, c.observed));
                }
            }
        }
    }
    outcome(failures, format!("{checked} identity instances"))
}

fn infrastructure_counts() -> Outcome {
    const COUNTS: [usize; 12] = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
    let mut failures = Vec::new();
    let mut previous: Vec<Tree> = Vec::new();
    for (i, &want) in COUNTS.iter().enumerate() {
        let n = i + 1;
        // Prüfer sweep while affordable, then one-leaf growth of the previous level.
        let codes = if n <= 9 {
            prufer_codes(n)
        } else {
            grow_by_leaf(&previous)
        };
        previous = codes.iter().map(CanonicalCode::to_tree).collect();
        let oracle = codes.len();
        let trees = free_trees(n).unwrap();
        if oracle != want || trees.len() != want {
            failures.push(format!(
                "n={n}: oracle {oracle}, generator {}, expected {want}",
                trees.len()
            ));
        }
        for t in &trees {
            let g6 = to_graph6(t);
            let back = from_graph6(&g6).unwrap();
            if to_graph6(&back) != g6 || back.edges().ne(t.edges()) {
                failures.push(format!("graph6 round trip failed for {g6}"));
            }
        }
    }
    outcome(failures, "n = 1..12".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("theorem reproduction", theorem_reproduction),
        ("engine cross-validation", engine_cross_validation),
        ("subgraph-count oracle", subgraph_oracle),
        ("operation monotonicity", operation_monotonicity),
        ("ascent termination", ascent_termination),
        ("proof-set structure", proof_sets),
        ("pivotal inequality identities", pivotal_identities),
        ("infrastructure counts", infrastructure_counts),
    ];
    let selected: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let number = i + 1;
        if !selected.is_empty() && !selected.contains(&number) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {number} ({name}): {verdict} [{:.1}s] {}",
            start.elapsed().as_secs_f64(),
            o.detail
        );
        if !o.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
