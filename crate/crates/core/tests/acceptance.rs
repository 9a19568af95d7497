//! Acceptance run: the full built-in suite once, summarised as one
//! PASS/FAIL line per criterion.

use std::process::ExitCode;

use graphconf::verify::{run_checks, suite, Report, Status, SuiteOptions};

/// Criterion number, description, check groups, and whether it may block.
const CRITERIA: &[(u32, &str, &[&str], bool)] = &[
    (
        1,
        "small spaces: exact Betti numbers and torsion, n = 1..5",
        &["small-spaces"],
        true,
    ),
    (
        2,
        "cell counts and Euler characteristics of the sink intervals and circles",
        &["cell-counts"],
        true,
    ),
    (
        3,
        "two-particle K5 and K3,3 are homology surfaces of genus 6 and 4",
        &["surfaces"],
        true,
    ),
    (
        4,
        "three particles on banana(4): homology, 144-cell non-product cycle, product span",
        &[
            "banana/homology",
            "banana/nonproduct-cycle",
            "banana/products",
        ],
        true,
    ),
    (
        5,
        "star(4) relation is the zero chain on star(4) and banana(4)",
        &["star4-relation"],
        true,
    ),
    (
        6,
        "trees with loops: torsion-free and spanned by basic classes",
        &["tree-corpus"],
        true,
    ),
    (
        7,
        "degree-1 basic classes span for K5, K3,3 and banana(4)",
        &["spanning"],
        true,
    ),
    (8, "randomised property suites", &["properties"], true),
    (
        9,
        "torsion fuzz over random small graphs (non-blocking)",
        &["fuzz"],
        false,
    ),
];

fn main() -> ExitCode {
    let report: Report = run_checks(&suite(&SuiteOptions::default()), None);
    let mut ok = true;
    for &(n, what, groups, blocking) in CRITERIA {
        let results: Vec<_> = groups.iter().flat_map(|g| report.group(g)).collect();
        let failed: Vec<_> = results
            .iter()
            .filter(|c| c.status == Status::Fail)
            .collect();
        let notes = results.iter().filter(|c| c.status == Status::Note).count();
        let pass = !results.is_empty() && failed.is_empty();
        ok &= pass || !blocking;
        let mut line = format!(
            "criterion {n}: {} — {what} ({} checks",
            if pass { "PASS" } else { "FAIL" },
            results.len()
        );
        if notes > 0 {
            line.push_str(&format!(", {notes} noteworthy"));
        }
        line.push(')');
        println!("{line}");
        for c in failed {
            println!("    FAIL {}  {}", c.id, c.detail);
        }
        if notes > 0 {
            for c in results.iter().filter(|c| c.status == Status::Note) {
                println!("    NOTE {}  {}", c.id, c.detail);
            }
        }
    }
    let other = report.checks.len()
        - CRITERIA
            .iter()
            .flat_map(|(_, _, groups, _)| groups.iter())
            .map(|g| report.group(g).len())
            .sum::<usize>();
    println!(
        "suite: {} passed, {} failed, {} notes ({other} supporting checks)",
        report.passed, report.failed, report.notes
    );
    ok &= report.ok();
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
