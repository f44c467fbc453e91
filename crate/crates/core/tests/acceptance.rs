//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p tbspan-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tbspan_core::generators::{random_connected, random_tree, snowflake, snowflake_decomposition, tree_from_prufer, Classic, Snowflake};
use tbspan_core::spanner::{build_from_multiplicative, build_spanner, check_extension, complete_spanner, extend_subtree};
use tbspan_core::tree_metrics::{d_of_tree, pbt_bruteforce};
use tbspan_core::treedec::{self, heuristic_layering_decomposition};
use tbspan_core::verify::{self, TreeSearch};
use tbspan_core::{BuildOptions, BuildTrace, CheckLevel, Graph, StretchReport, TreeDecomposition, VerifyMode};

use common::{random_spanning_tree, random_subtree, unlabeled_trees};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let corpus_start = Instant::now();
    let corpus = build_corpus();
    let corpus_time = corpus_start.elapsed();

    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 spanner bound 8ρ(2d+1), exact", Box::new(|| criterion_1(&corpus, corpus_time))),
        ("2 per-level core subtree", Box::new(|| criterion_2(&corpus))),
        ("3 extension contract", Box::new(criterion_3)),
        ("4 completion contract", Box::new(criterion_4)),
        ("5 d(T) ≤ pbt(T) ≤ d(T)+1", Box::new(criterion_5)),
        ("6 pbt(T) ≤ log2(n+1) - 1", Box::new(criterion_6)),
        ("7 multiplicative to additive", Box::new(criterion_7)),
        ("8 snowflake family", Box::new(criterion_8)),
        ("9 100x100 grid, sampled", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("[{status}] {name}: {} ({:.2?})", o.detail, start.elapsed());
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

struct Built {
    label: String,
    result: Result<(StretchReport, BuildTrace), tbspan_core::Error>,
}

fn corpus_instances() -> Vec<(String, Graph, TreeDecomposition)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..170u64 {
        let n = rng.gen_range(8..=300);
        let extra = rng.gen_range(0..=n);
        let g = random_connected(n, n - 1 + extra, i).unwrap();
        let td = heuristic_layering_decomposition(&g).unwrap();
        out.push((format!("random#{i} n={n}"), g, td));
    }
    for k in 2..=6 {
        let (g, td) = Snowflake::new(k).unwrap().build();
        out.push((format!("G_{k}"), g, td));
    }
    for rows in 1..=6 {
        for cols in [2, 3, 5, 8, 13] {
            let g = Classic::Grid(rows * 2, cols).build().unwrap();
            let td = heuristic_layering_decomposition(&g).unwrap();
            out.push((format!("grid {}x{cols}", rows * 2), g, td));
        }
    }
    out
}

fn build_corpus() -> Vec<Built> {
    let opts = BuildOptions { check: CheckLevel::PerLevel, verify: VerifyMode::Exact };
    corpus_instances()
        .into_iter()
        .map(|(label, g, td)| Built { label, result: build_spanner(&g, &td, opts).map(|(_, r, t)| (r, t)) })
        .collect()
}

fn first_failure(failures: &[String]) -> String {
    failures.first().cloned().unwrap_or_default()
}

fn criterion_1(corpus: &[Built], elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for b in corpus {
        match &b.result {
            Ok((report, trace)) => {
                let bound = 8 * trace.rho * (2 * trace.d as u32 + 1);
                if report.mode != VerifyMode::Exact || report.bound_checked != Some(bound) || report.max_additive > bound {
                    failures.push(format!("{}: stretch {} > {bound}", b.label, report.max_additive));
                }
                if bound > 0 {
                    worst = worst.max(f64::from(report.max_additive) / f64::from(bound));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", b.label)),
        }
    }
    let pass = corpus.len() >= 200 && failures.is_empty() && elapsed < Duration::from_secs(60);
    outcome(
        pass,
        format!(
            "{} instances built in {elapsed:.2?}, {} failures, max stretch/bound {worst:.3} {}",
            corpus.len(),
            failures.len(),
            first_failure(&failures)
        ),
    )
}

fn criterion_2(corpus: &[Built]) -> Outcome {
    let mut failures = Vec::new();
    let mut levels = 0;
    for b in corpus {
        let Ok((_, trace)) = &b.result else {
            failures.push(format!("{}: build failed", b.label));
            continue;
        };
        if trace.levels.len() != trace.d + 1 {
            failures.push(format!("{}: {} snapshots for d={}", b.label, trace.levels.len(), trace.d));
        }
        for s in &trace.levels {
            levels += 1;
            let slack_ok = s.measured_slack.is_some_and(|m| m <= 16 * trace.rho * (trace.d - s.level) as u32);
            if !s.meets_all_bags || !slack_ok {
                failures.push(format!("{}: level {} slack {:?}", b.label, s.level, s.measured_slack));
            }
        }
    }
    outcome(failures.is_empty(), format!("{levels} levels checked, {} failures {}", failures.len(), first_failure(&failures)))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    let trials = 1_000;
    for i in 0..trials {
        let n = rng.gen_range(2..=60);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(3 * n));
        let g = random_connected(n, m, 1_000 + i).unwrap();
        let s = random_subtree(&g, rng.gen_range(0..n), rng.gen_range(1..=n), &mut rng);
        let u: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
        let result = extend_subtree(&g, &s, &u).and_then(|ext| check_extension(&g, &s, &u, &ext));
        if let Err(e) = result {
            failures.push(format!("trial {i}: {e}"));
        }
    }
    outcome(failures.is_empty(), format!("{trials} triples, {} failures {}", failures.len(), first_failure(&failures)))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let trials = 250;
    for i in 0..trials {
        let n = rng.gen_range(2..=80);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(3 * n));
        let g = random_connected(n, m, 2_000 + i).unwrap();
        let s = random_subtree(&g, rng.gen_range(0..n), rng.gen_range(1..=n), &mut rng);
        let (rho_add, _) = verify::subtree_additive_slack(&g, &s);
        let (rho_prime, _) = verify::max_distance_to_subtree(&g, &s).unwrap();
        let report = complete_spanner(&g, &s, rho_add, rho_prime, true)
            .and_then(|t| verify::additive_stretch(&g, &t, VerifyMode::Exact));
        match report {
            Ok(r) if r.max_additive <= rho_add + 4 * rho_prime => {}
            Ok(r) => failures.push(format!("trial {i}: {} > {rho_add} + 4*{rho_prime}", r.max_additive)),
            Err(e) => failures.push(format!("trial {i}: {e}")),
        }
    }
    outcome(failures.is_empty(), format!("{trials} pairs, {} failures {}", failures.len(), first_failure(&failures)))
}

fn window_violation(t: &Graph) -> Option<String> {
    let d = d_of_tree(t).unwrap() as u32;
    let p = pbt_bruteforce(t).unwrap();
    (p < d || p > d + 1).then(|| format!("n={} edges {:?}: d={d} pbt={p}", t.order(), t.edges().collect::<Vec<_>>()))
}

/// Every labeled tree on `n` vertices, by counting through Prüfer sequences.
fn for_each_labeled_tree(n: usize, mut f: impl FnMut(&Graph)) {
    if n <= 2 {
        f(&tree_from_prufer(&[], n).unwrap());
        return;
    }
    let mut seq = vec![0usize; n - 2];
    loop {
        f(&tree_from_prufer(&seq, n).unwrap());
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return;
        }
    }
}

const LABELED_EXHAUSTIVE_MAX: usize = 8;

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut labeled = 0u64;
    for n in 1..=LABELED_EXHAUSTIVE_MAX {
        for_each_labeled_tree(n, |t| {
            labeled += 1;
            failures.extend(window_violation(t));
        });
    }
    let shapes = unlabeled_trees(10);
    let expected_counts = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    let counts: Vec<usize> = shapes.values().map(Vec::len).collect();
    if counts != expected_counts {
        failures.push(format!("unlabeled tree counts {counts:?}"));
    }
    let unlabeled: usize = counts.iter().sum();
    for t in shapes.values().flatten() {
        failures.extend(window_violation(t));
    }
    for seed in 0..500u64 {
        let t = random_tree(1 + (seed as usize % 15), seed).unwrap();
        failures.extend(window_violation(&t));
    }
    for b in 0..=4 {
        let t = Classic::CompleteBinaryTree(b).build().unwrap();
        if pbt_bruteforce(&t).unwrap() != b {
            failures.push(format!("complete binary tree depth {b}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{labeled} labeled trees (n ≤ {LABELED_EXHAUSTIVE_MAX}), {unlabeled} unlabeled (n ≤ 10), 500 random; {} failures {}",
            failures.len(),
            first_failure(&failures)
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut check = |t: &Graph| {
        checked += 1;
        let p = pbt_bruteforce(t).unwrap();
        // pbt ≤ log2(n+1) - 1  ⟺  2^(pbt+1) ≤ n + 1
        if (1u64 << (p + 1)) > t.order() as u64 + 1 {
            failures.push(format!("n={} pbt={p}", t.order()));
        }
    };
    for n in 1..=LABELED_EXHAUSTIVE_MAX {
        for_each_labeled_tree(n, &mut check);
    }
    for t in unlabeled_trees(10).values().flatten() {
        check(t);
    }
    for seed in 0..500u64 {
        check(&random_tree(1 + (seed as usize % 15), seed).unwrap());
    }
    for b in 0..=8 {
        check(&Classic::CompleteBinaryTree(b).build().unwrap());
    }
    outcome(failures.is_empty(), format!("{checked} trees, {} failures {}", failures.len(), first_failure(&failures)))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let trials = 120;
    for i in 0..trials {
        let n = rng.gen_range(3..=80);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(2 * n));
        let g = random_connected(n, m, 3_000 + i).unwrap();
        let t = random_spanning_tree(&g, &mut rng);
        let k = verify::multiplicative_stretch(&g, &t).unwrap().ceil();
        let half = k.div_ceil(2);
        let td = treedec::from_multiplicative_spanner(&g, &t, k).unwrap();
        let violations = treedec::validate(&td, &g).unwrap();
        if !violations.is_empty() {
            failures.push(format!("trial {i}: {} violations", violations.len()));
            continue;
        }
        let rho = treedec::breadth_bfs(&td, &g).unwrap();
        if rho > half {
            failures.push(format!("trial {i}: breadth {rho} > {half}"));
        }
        match build_from_multiplicative(&g, &t, k, BuildOptions::default()) {
            Ok((_, report, trace)) => {
                let bound = 8 * half * (2 * trace.d as u32 + 1);
                if report.bound_checked != Some(bound) || report.max_additive > bound {
                    failures.push(format!("trial {i}: stretch {} > {bound}", report.max_additive));
                }
            }
            Err(e) => failures.push(format!("trial {i}: {e}")),
        }
    }
    outcome(failures.is_empty(), format!("{trials} pairs, {} failures {}", failures.len(), first_failure(&failures)))
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for k in 1..=10u32 {
        let n = snowflake(k).unwrap().order();
        if n != 3 << (k - 1) {
            failures.push(format!("|G_{k}| = {n}"));
        }
    }
    for k in 1..=8 {
        let g = snowflake(k).unwrap();
        let td = snowflake_decomposition(k).unwrap();
        let clean = treedec::validate(&td, &g).unwrap().is_empty();
        let rho = treedec::breadth_bfs(&td, &g).unwrap();
        if !clean || rho != 1 {
            failures.push(format!("G_{k}: clean={clean} breadth={rho}"));
        }
    }
    let g2 = match verify::min_additive_tree_stretch_bruteforce(&snowflake(2).unwrap(), 1_000_000) {
        Ok(TreeSearch::Conclusive { min_stretch, trees, .. }) => {
            if min_stretch < 2 {
                failures.push(format!("G_2 admits an additive tree {min_stretch}-spanner"));
            }
            format!("G_2 min stretch {min_stretch} over {trees} trees")
        }
        other => {
            failures.push(format!("G_2 search: {other:?}"));
            String::from("G_2 search failed")
        }
    };
    let g3 = match verify::min_additive_tree_stretch_bruteforce(&snowflake(3).unwrap(), 1_000_000) {
        Ok(TreeSearch::Conclusive { min_stretch, trees, .. }) => {
            format!("G_3 conclusive: min stretch {min_stretch} over {trees} trees")
        }
        Ok(TreeSearch::Inconclusive { best_found, trees, total }) => {
            format!("G_3 inconclusive after {trees} of {total} trees, best {best_found:?}")
        }
        Err(e) => format!("G_3 not attempted: {e}"),
    };
    outcome(failures.is_empty(), format!("orders k ≤ 10, breadth 1 for k ≤ 8, {g2}; {g3} {}", first_failure(&failures)))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let g = Classic::Grid(100, 100).build().unwrap();
    let td = heuristic_layering_decomposition(&g).unwrap();
    let opts = BuildOptions { verify: VerifyMode::Sampled { seed: 9, pairs: 10_000 }, ..BuildOptions::for_order(g.order()) };
    let result = build_spanner(&g, &td, opts);
    let elapsed = start.elapsed();
    match result {
        Ok((t, report, trace)) => {
            let bound = 8 * trace.rho * (2 * trace.d as u32 + 1);
            let pass = verify::is_spanning_tree(&g, &t)
                && report.pairs_checked == 10_000
                && report.max_additive <= bound
                && elapsed < Duration::from_secs(10);
            outcome(
                pass,
                format!(
                    "n={} ρ={} d={} sampled stretch {} ≤ {bound}, built and verified in {elapsed:.2?}",
                    g.order(),
                    trace.rho,
                    trace.d,
                    report.max_additive
                ),
            )
        }
        Err(e) => outcome(false, format!("build failed: {e}")),
    }
}
