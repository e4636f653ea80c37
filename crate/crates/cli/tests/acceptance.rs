//! Acceptance suite. Prints one pass/fail line per criterion; ranges,
//! windows and time limits are pinned below.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use grading_lattice::exec::Execution;
use grading_lattice::{GradingContext, LatticeElement};
use hms_match::{a_side_counterparts, build_correspondence, compare_dim_tables, match_resolutions, presentation, transport_relations};
use koszul_mf::{b_side_resolutions, formality_check, oracle_check, BAlgebra};
use staircase_triangulation::{binomial, oracle::normalized_volume, triangulation_check};
use toric_fan::{all_charts, is_unimodular};
use twisted_complex::{build_TxLk1_resolution_n2_x1_only, validate_with, QuiverAlgebra};

const FAN_MAX_SUM: usize = 9;
const FAN_LIMIT: Duration = Duration::from_secs(10);
const TRIANGULATION_MAX_SUM: usize = 8;
const VOLUME_ORACLE_MAX_SUM: usize = 7;
const TRIANGULATION_SAMPLES: usize = 200;
const TRIANGULATION_LIMIT: Duration = Duration::from_secs(60);
/// Window above each generator degree, under the positive functional.
const ORACLE_EXTRA: i64 = 10;
const ORACLE_LIMIT: Duration = Duration::from_secs(300);
const MATCH_BOUND_N1: i64 = 8;
const MATCH_BOUND_N2: i64 = 6;
const MATCH_LIMIT: Duration = Duration::from_secs(600);
const MAX_K_N1: usize = 5;
const MAX_K_N2: usize = 4;
const FORMALITY_BOUND: i64 = 8;
const FORMALITY_LIMIT: Duration = Duration::from_secs(300);
const RESOLUTION_MAX_K: usize = 4;
const RESOLUTION_LIMIT: Duration = Duration::from_secs(300);
const DETERMINISM_LIMIT: Duration = Duration::from_secs(300);

/// The ten generator sets of the (2, 4) fan, verbatim.
const EXAMPLE_24: [(&str, [&str; 6]); 10] = [
    ("44", ["X1", "X2", "C23", "V3", "V2", "V1"]),
    ("43", ["X1", "C13", "C23^-1", "C22", "V2", "V1"]),
    ("42", ["X1", "C13", "V3", "C22^-1", "C21", "V1"]),
    ("41", ["X1", "C13", "V3", "V2", "C21^-1", "X3"]),
    ("33", ["V4", "C13^-1", "X2", "C22", "V2", "V1"]),
    ("32", ["V4", "C13^-1", "C12", "C22^-1", "C21", "V1"]),
    ("31", ["V4", "C13^-1", "C12", "V2", "C21^-1", "X3"]),
    ("22", ["V4", "V3", "C12^-1", "X2", "C21", "V1"]),
    ("21", ["V4", "V3", "C12^-1", "C11", "C21^-1", "X3"]),
    ("11", ["V4", "V3", "V2", "C11^-1", "X2", "X3"]),
];

fn token_class(ctx: &GradingContext, t: &str) -> LatticeElement {
    let (body, inv) = match t.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (t, false),
    };
    let d: Vec<usize> = body[1..].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
    let e = match &body[..1] {
        "X" => ctx.x(d[0]),
        "V" => ctx.v(d[0]),
        "C" => ctx.c(d[0], d[1]),
        _ => panic!("bad token {t}"),
    };
    if inv {
        -e
    } else {
        e
    }
}

fn cases() -> Vec<(usize, usize)> {
    (1..=MAX_K_N1).map(|k| (1, k)).chain((1..=MAX_K_N2).map(|k| (2, k))).collect()
}

fn criterion(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> (bool, String)) -> bool {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let timely = elapsed <= limit;
    let passed = ok && timely;
    // written past the test harness capture so the lines show on success
    let _ = writeln!(
        std::io::stderr(),
        "criterion {id} ({name}): {}; {detail}; {:.2}s (limit {}s){}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if timely { "" } else { "; over time" }
    );
    passed
}

fn fan_suite() -> (bool, String) {
    let mut pairs = 0;
    let mut bad = Vec::new();
    for n in 1..FAN_MAX_SUM {
        for k in 1..=FAN_MAX_SUM - n {
            let ctx = GradingContext::new(n, k);
            let charts = all_charts(&ctx);
            pairs += 1;
            if charts.len() != binomial(n + k - 1, n) || !charts.iter().all(|c| is_unimodular(&ctx, c)) {
                bad.push(format!("({n},{k})"));
            }
        }
    }
    let ctx = GradingContext::new(2, 4);
    let charts = all_charts(&ctx);
    let mut verbatim = charts.len() == EXAMPLE_24.len();
    for (name, gens) in EXAMPLE_24 {
        let phi: Vec<usize> = name.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        let Some(chart) = charts.iter().find(|c| c.phi.values == phi) else {
            verbatim = false;
            continue;
        };
        let mut want: Vec<LatticeElement> = gens.iter().map(|t| token_class(&ctx, t)).collect();
        let mut got = chart.basis.clone();
        want.sort();
        got.sort();
        let mut want_labels: Vec<&str> = gens.to_vec();
        let mut got_labels: Vec<&str> = chart.labels.iter().map(String::as_str).collect();
        want_labels.sort();
        got_labels.sort();
        verbatim &= got == want && got_labels == want_labels;
    }
    let detail = format!("{pairs} (n,k) pairs with n+k <= {FAN_MAX_SUM}, failing {bad:?}; (2,4) list verbatim: {verbatim}");
    (bad.is_empty() && verbatim, detail)
}

fn triangulation_suite() -> (bool, String) {
    let mut pairs = 0;
    let mut bad = Vec::new();
    let mut oracle_pairs = 0;
    for n in 1..TRIANGULATION_MAX_SUM {
        for k in 1..=TRIANGULATION_MAX_SUM - n {
            let r = triangulation_check(n, k, TRIANGULATION_SAMPLES, Execution::Parallel);
            pairs += 1;
            let mut ok = r.passed();
            if n + k <= VOLUME_ORACLE_MAX_SUM {
                oracle_pairs += 1;
                ok &= normalized_volume(n, k).to_string() == r.volume_sum;
            }
            if !ok {
                bad.push(format!("({n},{k})"));
            }
        }
    }
    let detail = format!("{pairs} pairs with n+k <= {TRIANGULATION_MAX_SUM}, brute-force volume on {oracle_pairs}, failing {bad:?}");
    (bad.is_empty(), detail)
}

fn oracle_suite() -> (bool, String) {
    let mut pairs = 0;
    let mut mismatches = 0;
    let mut vanishing = 0;
    let mut required_missing = Vec::new();
    for (n, k) in cases() {
        let r = oracle_check(n, k, ORACLE_EXTRA, Execution::Parallel).expect("oracle runs");
        pairs += r.pairs.len();
        mismatches += r.pairs.iter().map(|p| p.mismatches.len()).sum::<usize>();
        vanishing += r.vanishing_pairs;
        if n == 2 {
            for i in 1..k {
                for j in 0..i {
                    for q in 0..=k {
                        let (from, to) = (format!("P_{i}_{j}"), format!("Q_{q}"));
                        let p = r.pairs.iter().find(|p| p.from == from && p.to == to);
                        if !p.is_some_and(|p| p.degrees == 0 && p.mismatches.is_empty()) {
                            required_missing.push(format!("k={k} {from}->{to}"));
                        }
                    }
                }
            }
        }
    }
    let detail = format!(
        "{pairs} pairs, window {ORACLE_EXTRA} above each generator, {mismatches} mismatches, {vanishing} zero pairs, required vanishings failing {required_missing:?}"
    );
    (mismatches == 0 && required_missing.is_empty(), detail)
}

fn match_suite() -> (bool, String) {
    let mut degrees = 0;
    let mut mismatches = 0;
    let mut relations = 0;
    let mut failures = 0;
    for (n, k) in cases() {
        let q = presentation(n, k).expect("presentation");
        let alg = BAlgebra::new(n, k).expect("algebra");
        let corr = build_correspondence(&q, &alg).expect("offsets solve");
        let bound = if n == 1 { MATCH_BOUND_N1 } else { MATCH_BOUND_N2 };
        let d = compare_dim_tables(&q, &corr, bound, Execution::Parallel).expect("tables");
        degrees += d.degrees_compared;
        mismatches += d.mismatches.len();
        let r = transport_relations(&q, &corr, &alg);
        relations += r.relations;
        failures += r.failures.len();
    }
    let detail = format!(
        "D = {MATCH_BOUND_N1} (n=1), {MATCH_BOUND_N2} (n=2): {degrees} degrees, {mismatches} mismatches; {relations} relations transported, {failures} nonzero"
    );
    (mismatches == 0 && failures == 0, detail)
}

fn formality_suite() -> (bool, String) {
    let mut generators = 0;
    let mut rows = 0;
    let mut violations = 0;
    for (n, k) in cases() {
        let r = formality_check(&GradingContext::new(n, k), n, k, FORMALITY_BOUND).expect("formality runs");
        generators += r.generators_checked + r.ring_generators_checked;
        rows += r.rows_checked;
        violations += r.violations.len();
    }
    (violations == 0, format!("{generators} generators and {rows} rows in collapse degree 0 check, {violations} violations"))
}

fn resolution_suite() -> (bool, String) {
    let mut a_count = 0;
    let mut b_count = 0;
    let mut invalid = Vec::new();
    let mut unmatched = Vec::new();
    let mut x1_only_fails = Vec::new();
    for n in 1..=2 {
        for k in 1..=RESOLUTION_MAX_K {
            let q = presentation(n, k).expect("presentation");
            let qa = QuiverAlgebra::new(&q);
            for tc in a_side_counterparts(&q) {
                a_count += 1;
                if !validate_with(&qa, &tc, Execution::Parallel).valid {
                    invalid.push(format!("A ({n},{k}) {}", tc.name));
                }
            }
            let alg = BAlgebra::new(n, k).expect("algebra");
            for tc in b_side_resolutions(&alg).expect("resolutions build") {
                b_count += 1;
                if !validate_with(&alg, &tc, Execution::Parallel).valid {
                    invalid.push(format!("B ({n},{k}) {}", tc.name));
                }
            }
            let corr = build_correspondence(&q, &alg).expect("offsets solve");
            let m = match_resolutions(&q, &corr, &alg).expect("matching runs");
            unmatched.extend(m.matches.iter().filter(|r| !r.passed).map(|r| format!("({n},{k}) {}", r.name)));
            if n == 2 && !validate_with(&qa, &build_TxLk1_resolution_n2_x1_only(&q), Execution::Parallel).valid {
                x1_only_fails.push(k);
            }
        }
    }
    let detail = format!(
        "{a_count} A complexes, {b_count} B complexes, invalid {invalid:?}, unmatched {unmatched:?}; note: with x1 alone for x1.x2 the last n=2 complex fails d^2 = 0 for k in {x1_only_fails:?}, x1.x2 used"
    );
    (invalid.is_empty() && unmatched.is_empty(), detail)
}

fn verify_all(jobs: u32) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hms"))
        .args(["verify-all", "--n", "2", "--k", "3", "--max-degree", "6", "--jobs", &jobs.to_string()])
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism_suite() -> (bool, String) {
    let runs: Vec<(u32, (i32, Vec<u8>))> = [1, 1, 8, 8].into_iter().map(|j| (j, verify_all(j))).collect();
    let first = &runs[0].1;
    let identical = runs.iter().all(|(_, r)| r.1 == first.1);
    let exits: Vec<i32> = runs.iter().map(|(_, r)| r.0).collect();
    let detail =
        format!("verify-all (2,3) run twice each with --jobs 1 and --jobs 8: {} bytes, identical {identical}, exit codes {exits:?}", first.1.len());
    (identical && exits.iter().all(|&c| c == 0) && !first.1.is_empty(), detail)
}

#[test]
fn acceptance() {
    let _ = writeln!(std::io::stderr());
    let results = [
        criterion(1, "fan and chart bases", FAN_LIMIT, fan_suite),
        criterion(2, "staircase triangulation and duality", TRIANGULATION_LIMIT, triangulation_suite),
        criterion(3, "B-side engine against closed forms", ORACLE_LIMIT, oracle_suite),
        criterion(4, "mirror match of Hom dimensions", MATCH_LIMIT, match_suite),
        criterion(5, "formality shifts", FORMALITY_LIMIT, formality_suite),
        criterion(6, "resolutions", RESOLUTION_LIMIT, resolution_suite),
        criterion(7, "determinism", DETERMINISM_LIMIT, determinism_suite),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
