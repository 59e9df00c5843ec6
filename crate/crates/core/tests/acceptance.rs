//! Acceptance report: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the output is exactly the list of
//! criteria; the process exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use youngwall::classical::LambdaContext;
use youngwall::crystal;
use youngwall::graphgen::fixtures::{check_set, oracle_contexts, wall_sets};
use youngwall::graphgen::{
    export_dot, export_json, generate_with, verify, CrystalGraph, GenerateOptions,
    VerificationReport,
};
use youngwall::liealg::{AffineDatum, AffineKind, Family};
use youngwall::wall::{Wall, WallContext};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

struct Generated {
    ctx: LambdaContext,
    graph: CrystalGraph,
    report: VerificationReport,
}

fn generate_all() -> Result<Vec<Generated>, String> {
    let contexts = oracle_contexts().map_err(|e| e.to_string())?;
    contexts
        .into_iter()
        .map(|ctx| {
            let graph =
                generate_with(&ctx, GenerateOptions::default()).map_err(|e| format!("{ctx}: {e}"))?;
            let report = verify(&graph).map_err(|e| format!("{ctx}: {e}"))?;
            Ok(Generated { ctx, graph, report })
        })
        .collect()
}

fn dimensions(all: &[Generated]) -> Outcome {
    let bad: Vec<String> = all
        .iter()
        .filter(|g| !g.report.dimension_matches())
        .map(|g| format!("{} has {} nodes, expected {}", g.ctx, g.report.node_count, g.report.expected_dimension))
        .collect();
    let counts: Vec<String> = all.iter().map(|g| g.report.node_count.to_string()).collect();
    if bad.is_empty() {
        outcome(true, format!("{} contexts, sizes {}", all.len(), counts.join(" ")))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn characters(all: &[Generated]) -> Outcome {
    let bad: Vec<String> = all
        .iter()
        .filter(|g| !g.report.weight_mismatches.is_empty())
        .map(|g| format!("{}: {} weights differ", g.ctx, g.report.weight_mismatches.len()))
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} contexts", all.len()) } else { bad.join("; ") })
}

fn closure(all: &[Generated]) -> Outcome {
    let mut bad = Vec::new();
    for g in all {
        let r = &g.report;
        if !r.closure_violations.is_empty() || !r.rejected_nodes.is_empty() {
            bad.push(format!(
                "{}: {} closure violations, {} rejected nodes",
                g.ctx,
                r.closure_violations.len(),
                r.rejected_nodes.len()
            ));
        }
        if r.sources != [g.graph.source().unwrap_or(usize::MAX)]
            || r.sinks != [g.graph.sink().unwrap_or(usize::MAX)]
        {
            bad.push(format!("{}: sources {:?}, sinks {:?}", g.ctx, r.sources, r.sinks));
        }
    }
    let pairs: usize = all.iter().map(|g| g.graph.nodes.len() * g.ctx.rank).sum();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{pairs} node-colour pairs") } else { bad.join("; ") })
}

fn wall_fixtures() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for set in wall_sets() {
        match check_set(&set) {
            Ok(outcomes) => {
                for o in outcomes {
                    total += 1;
                    if !o.passed() {
                        bad.push(format!(
                            "{} {:?}: expected {:?}, got {:?}",
                            o.set, o.case.wall.fills, o.case.failed, o.verdict.failed
                        ));
                    }
                }
            }
            Err(e) => bad.push(format!("{}: {e}", set.name)),
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{total} walls") } else { bad.join("; ") })
}

/// Breadth-first search with every raising and lowering operator, keeping
/// only walls of `F`.
fn unrestricted_f(ctx: &LambdaContext) -> BTreeSet<Wall> {
    let mut seen: HashSet<Wall> = HashSet::from([ctx.highest().clone()]);
    let mut stack = vec![ctx.highest().clone()];
    while let Some(w) = stack.pop() {
        for i in ctx.colors() {
            for next in [crystal::f(&w, i), crystal::e(&w, i)].into_iter().flatten() {
                if ctx.in_f(&next).unwrap_or(false) && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
    }
    seen.into_iter().collect()
}

fn spin_short_circuit() -> Outcome {
    let ctx = match LambdaContext::from_coefficients(Family::B, 3, &[0, 0, 1]) {
        Ok(ctx) => ctx,
        Err(e) => return outcome(false, e.to_string()),
    };
    let walls = unrestricted_f(&ctx);
    let enumerated: BTreeSet<Wall> = ctx.enumerate_f().into_iter().collect();
    let rejected = walls
        .iter()
        .filter(|w| !ctx.member(w).map(|v| v.accepted).unwrap_or(false))
        .count();
    outcome(
        walls.len() == 8 && enumerated == walls && rejected == 0,
        format!(
            "|F| = {} by search, {} by enumeration, {} rejected",
            walls.len(),
            enumerated.len(),
            rejected
        ),
    )
}

fn axioms(all: &[Generated]) -> Outcome {
    let bad: Vec<String> = all
        .iter()
        .filter(|g| {
            !g.report.axiom_violations.is_empty()
                || !g.report.string_violations.is_empty()
                || !g.report.connected
        })
        .map(|g| {
            format!(
                "{}: {} axiom, {} string violations, connected {}",
                g.ctx,
                g.report.axiom_violations.len(),
                g.report.string_violations.len(),
                g.report.connected
            )
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} graphs", all.len()) } else { bad.join("; ") })
}

fn pattern_marks() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for kind in AffineKind::all() {
        for rank in kind.classical().min_rank().max(2)..=6 {
            let Ok(datum) = AffineDatum::new(kind, rank) else { continue };
            for ground in datum.level_one_weights() {
                let Ok(walls) = WallContext::new(kind, rank, ground) else {
                    bad.push(format!("{kind} n={rank} ground {ground} rejected"));
                    continue;
                };
                for col in 0..2 {
                    let len = walls.period_items(col);
                    for start in 0..len {
                        let mut counts = vec![0i64; rank + 1];
                        for pos in start..start + len {
                            counts[walls.pattern_item(col, pos).color] += 1;
                        }
                        checked += 1;
                        if counts != datum.marks {
                            bad.push(format!(
                                "{kind} n={rank} ground {ground} column {col}: {counts:?} vs {:?}",
                                datum.marks
                            ));
                        }
                    }
                }
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{checked} periods") } else { bad.join("; ") })
}

fn determinism() -> Outcome {
    let ctx = match LambdaContext::from_coefficients(Family::C, 3, &[0, 1, 1]) {
        Ok(ctx) => ctx,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut outputs = Vec::new();
    for threads in [1, 8, 1, 8] {
        let options = GenerateOptions {
            threads: Some(threads),
            ..GenerateOptions::default()
        };
        match generate_with(&ctx, options) {
            Ok(g) => outputs.push((export_json(&g), export_dot(&g))),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    let same = outputs.windows(2).all(|p| p[0] == p[1]);
    outcome(same, format!("{} runs, {} JSON bytes", outputs.len(), outputs[0].0.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let generated = generate_all();
    let with_graphs = |check: fn(&[Generated]) -> Outcome| match &generated {
        Ok(all) => check(all),
        Err(e) => outcome(false, e.clone()),
    };
    let results = [
        ("dimension oracle", with_graphs(dimensions)),
        ("character oracle", with_graphs(characters)),
        ("closure and extremal walls", with_graphs(closure)),
        ("hand-checked wall verdicts", wall_fixtures()),
        ("spin crystal equals F", spin_short_circuit()),
        ("crystal axioms", with_graphs(axioms)),
        ("pattern periods match marks", pattern_marks()),
        ("deterministic output", determinism()),
    ];
    let mut failures = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {mark} {name}: {}", k + 1, o.detail);
        failures += usize::from(!o.passed);
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        results.len() - failures,
        results.len(),
        start.elapsed()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
