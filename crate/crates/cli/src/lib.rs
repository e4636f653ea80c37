//! Command-line front end. Every subcommand builds a report, prints it as
//! JSON (sorted keys) or Markdown, and maps the verdict to an exit code:
//! 0 when every check passes, 1 on a verification failure, 2 on an
//! invalid configuration.

mod moment;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;

use arc_quiver::{dim_tables, positive_functional, HomTable, QuiverPresentation};
use clap::{Parser, Subcommand, ValueEnum};
use grading_lattice::exec::Execution;
use grading_lattice::{CollapseMap, GradingContext, LatticeElement};
use hms_match::{build_correspondence, full_match, match_resolutions, presentation, MatchError};
use koszul_mf::{
    closed_form, formality_check, generators, koszul_hom, oracle_check, support_cohomology, window_functional, BAlgebra, BHomTable, Geometry,
};
use serde_json::{json, Value};
use staircase_triangulation::{binomial, oracle::normalized_volume, triangulation_check};
use toric_fan::{all_charts_with, is_unimodular};
use twisted_complex::{build_TxLk1_resolution_n2_x1_only, validate_with, QuiverAlgebra};

pub use moment::{moment_map_grid, picture_cells, Cell};

/// Sample points per triangulation check.
pub const TRIANGULATION_SAMPLES: usize = 300;
/// Largest `n + k` for the brute-force volume oracle.
pub const VOLUME_ORACLE_MAX: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "hms", version, about = "Verify both sides of the arc algebra / matrix factorization correspondence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    pub k: i64,
    /// Degree window under the positive functional.
    #[arg(long = "max-degree", global = true, default_value_t = 6, allow_negative_numbers = true)]
    pub max_degree: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Which side `algebra` reports on.
    #[arg(long, global = true, value_enum, default_value_t = Side::A)]
    pub side: Side,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub jobs: Option<i64>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Charts of the toric resolution and their unimodularity.
    Fan,
    /// Staircase triangulation of the product of simplices.
    Triangulate,
    /// Moment map picture of the special fiber (n = 2).
    MomentMap,
    /// Graded Hom tables of one side.
    Algebra,
    /// Degree-by-degree comparison of the two sides.
    Compare,
    /// Resolutions on both sides and their matching.
    Resolutions,
    /// Every check in sequence.
    VerifyAll,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Md,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub command: Command,
    pub n: usize,
    pub k: usize,
    pub max_degree: i64,
    pub side: Side,
    pub jobs: usize,
}

/// A finished report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub json: Value,
    pub markdown: String,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n",
            Format::Md => self.markdown.clone(),
        }
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn categorical(c: Command) -> bool {
    !matches!(c, Command::Fan | Command::Triangulate)
}

pub fn validate_config(cli: &Cli) -> Result<Config, String> {
    if cli.n < 1 {
        return Err(format!("--n must be at least 1, got {}", cli.n));
    }
    if cli.k < 1 {
        return Err(format!("--k must be at least 1, got {}", cli.k));
    }
    if cli.max_degree < 0 {
        return Err(format!("--max-degree must be nonnegative, got {}", cli.max_degree));
    }
    if categorical(cli.command) && cli.n > 2 {
        return Err(format!("this subcommand supports n = 1 and n = 2, got n = {}", cli.n));
    }
    if cli.command == Command::MomentMap && cli.n != 2 {
        return Err("moment-map draws the n = 2 picture only".to_string());
    }
    let jobs = match cli.jobs {
        Some(j) if j < 1 => return Err(format!("--jobs must be at least 1, got {j}")),
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map_or(1, |p| p.get()),
    };
    Ok(Config { command: cli.command, n: cli.n as usize, k: cli.k as usize, max_degree: cli.max_degree, side: cli.side, jobs })
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce(Execution) -> T + Send) -> Result<T, String> {
    if jobs == 1 {
        return Ok(f(Execution::Sequential));
    }
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| e.to_string())?;
        Ok(pool.install(|| f(Execution::Parallel)))
    }
    #[cfg(not(feature = "parallel"))]
    Ok(f(Execution::Sequential))
}

/// Parse, run, print; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let cfg = match validate_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let outcome = match with_jobs(cfg.jobs, |exec| execute(&cfg, exec)) {
        Ok(Ok(o)) => o,
        Ok(Err(msg)) | Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let text = outcome.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{text}"),
    }
    if outcome.passed {
        0
    } else {
        1
    }
}

pub fn execute(cfg: &Config, exec: Execution) -> Result<Outcome, String> {
    let (n, k, d) = (cfg.n, cfg.k, cfg.max_degree);
    match cfg.command {
        Command::Fan => Ok(fan(n, k, exec)),
        Command::Triangulate => Ok(triangulate(n, k, exec)),
        Command::MomentMap => moment_map(k),
        Command::Algebra => match cfg.side {
            Side::A => algebra_a(n, k, d, exec),
            Side::B => algebra_b(n, k, d, exec),
        },
        Command::Compare => compare(n, k, d, exec),
        Command::Resolutions => resolutions(n, k, exec),
        Command::VerifyAll => verify_all(n, k, d, exec),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn fan(n: usize, k: usize, exec: Execution) -> Outcome {
    let ctx = GradingContext::new(n, k);
    let charts = all_charts_with(&ctx, exec);
    let expected = binomial(n + k - 1, n);
    let mut rows = Vec::new();
    let mut md = String::new();
    let mut all_unimodular = true;
    for c in &charts {
        let uni = is_unimodular(&ctx, c);
        all_unimodular &= uni;
        let phi: String = c.phi.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        md += &format!("| {phi} | {} | {} |\n", c.labels.join(" "), if uni { "yes" } else { "no" });
        rows.push(json!({
            "phi": c.phi.values,
            "labels": c.labels,
            "basis": c.basis.iter().map(|b| b.render(&ctx)).collect::<Vec<_>>(),
            "unimodular": uni,
        }));
    }
    let passed = all_unimodular && charts.len() == expected;
    let markdown = format!(
        "## Fan charts, n = {n}, k = {k}: {}\n\n{} charts (expected {expected}), all unimodular: {}\n\n| phi | generators | unimodular |\n|---|---|---|\n{md}",
        mark(passed),
        charts.len(),
        all_unimodular
    );
    Outcome {
        passed,
        json: json!({"n": n, "k": k, "charts": rows, "count": charts.len(), "expected": expected, "all_unimodular": all_unimodular, "passed": passed}),
        markdown,
    }
}

pub fn triangulate(n: usize, k: usize, exec: Execution) -> Outcome {
    let r = triangulation_check(n, k, TRIANGULATION_SAMPLES, exec);
    let oracle = (n + k <= VOLUME_ORACLE_MAX).then(|| normalized_volume(n, k).to_string());
    let oracle_ok = oracle.as_ref().map_or(true, |v| *v == r.volume_sum && *v == r.expected_count.to_string());
    let passed = r.passed() && oracle_ok;
    let mut json = serde_json::to_value(&r).expect("report serializes");
    json["oracle_volume"] = json!(oracle);
    json["passed"] = json!(passed);
    let markdown = format!(
        "## Staircase triangulation, n = {n}, k = {k}: {}\n\n- simplices: {} (expected binomial {})\n- normalized volume sum: {}\n- brute-force volume: {}\n- sample points checked: {}, counterexamples: {}\n",
        mark(passed),
        r.simplex_count,
        r.expected_count,
        r.volume_sum,
        oracle.as_deref().unwrap_or("skipped"),
        r.samples_checked,
        r.counterexamples.len()
    );
    Outcome { passed, json, markdown }
}

pub fn moment_map(k: usize) -> Result<Outcome, String> {
    let model = toric_fan::special_fiber_model(2, k, false).map_err(err)?;
    let cells = picture_cells(k);
    let mut counts = Vec::new();
    let mut passed = true;
    let mut md_counts = String::new();
    for kind in moment::KINDS {
        let from_picture = cells.iter().filter(|c| c.kind == kind).count();
        let from_model = model.count(kind);
        passed &= from_picture == from_model;
        counts.push(json!({"kind": format!("{kind:?}"), "picture": from_picture, "model": from_model}));
        md_counts += &format!("| {kind:?} | {from_picture} | {from_model} |\n");
    }
    let grid = moment_map_grid(k);
    let markdown = format!(
        "## Moment map, n = 2, k = {k}: {}\n\n```\n{}\n```\n\n| component | picture | model |\n|---|---|---|\n{md_counts}",
        mark(passed),
        grid.join("\n")
    );
    Ok(Outcome { passed, json: json!({"n": 2, "k": k, "grid": grid, "components": counts, "passed": passed}), markdown })
}

fn all_pairs(nv: usize) -> Vec<(usize, usize)> {
    (0..nv).flat_map(|v| (0..nv).map(move |w| (v, w))).collect()
}

fn table_json(ctx: &GradingContext, from: &str, to: &str, rows: &[(LatticeElement, usize, Vec<String>)]) -> Value {
    let rows: Vec<Value> = rows.iter().map(|(d, dim, basis)| json!({"degree": d.render(ctx), "dim": dim, "basis": basis})).collect();
    json!({"from": from, "to": to, "rows": rows})
}

fn a_rows(t: &HomTable) -> Vec<(LatticeElement, usize, Vec<String>)> {
    t.rows.iter().map(|r| (r.degree.clone(), r.dim, r.basis.clone())).collect()
}

fn b_rows(t: &BHomTable) -> Vec<(LatticeElement, usize, Vec<String>)> {
    t.rows.iter().map(|r| (r.degree.clone(), r.dim, r.basis.clone())).collect()
}

fn quiver(n: usize, k: usize) -> Result<QuiverPresentation, String> {
    let q = presentation(n, k).map_err(err)?;
    q.validate().map_err(err)?;
    Ok(q)
}

pub fn algebra_a(n: usize, k: usize, bound: i64, exec: Execution) -> Result<Outcome, String> {
    let q = quiver(n, k)?;
    let ctx = q.ctx;
    let p = CollapseMap::new(&ctx, positive_functional(&ctx)).map_err(err)?;
    let tables = dim_tables(&q, &all_pairs(q.vertices.len()), &p, bound, exec).map_err(err)?;
    let mut md = format!(
        "## A side, n = {n}, k = {k}, window 0..={bound}: pass\n\n{} vertices, {} arrows, {} relations\n\n| from | to | degrees | total dim |\n|---|---|---|---|\n",
        q.vertices.len(),
        q.arrows.len(),
        q.relations.len()
    );
    let mut out = Vec::new();
    for t in &tables {
        md += &format!("| {} | {} | {} | {} |\n", t.from, t.to, t.rows.len(), t.rows.iter().map(|r| r.dim).sum::<usize>());
        out.push(table_json(&ctx, &t.from, &t.to, &a_rows(t)));
    }
    let relations: Vec<String> = q.relations.iter().map(|r| q.render_relation(r)).collect();
    Ok(Outcome {
        passed: true,
        json: json!({"side": "a", "n": n, "k": k, "bound": bound, "vertices": q.vertices.len(), "arrows": q.arrows.len(), "relations": relations, "tables": out, "passed": true}),
        markdown: md,
    })
}

/// Closed-form tables, each checked against the Koszul engine in the same window.
pub fn algebra_b(n: usize, k: usize, bound: i64, exec: Execution) -> Result<Outcome, String> {
    let ctx = GradingContext::new(n, k);
    let f = window_functional(&ctx);
    let geo = Geometry::new(n, k).map_err(err)?;
    let objs = generators(&ctx, n, k).map_err(err)?;
    let pairs = all_pairs(objs.len());
    let per_pair = grading_lattice::exec::map_ordered(exec, &pairs, |&(a, b)| -> Result<(Value, String, bool), String> {
        let (e, g) = (&objs[a], &objs[b]);
        let closed = closed_form(&ctx, n, k, e.id, g.id).map(|c| c.table(&ctx, &f, bound)).transpose().map_err(err)?;
        let hom = koszul_hom(&geo, e, g).map_err(err)?;
        let engine = support_cohomology(&geo, &hom, &f, bound).map_err(err)?;
        let rows = closed.as_ref().map(b_rows).unwrap_or_default();
        let mut degs: BTreeSet<LatticeElement> = rows.iter().map(|r| r.0.clone()).collect();
        degs.extend(engine.rows.iter().map(|r| r.degree.clone()));
        let closed_dim = |d: &LatticeElement| closed.as_ref().map_or(0, |c| c.dim_at(d));
        let agree = degs.iter().all(|d| closed_dim(d) == engine.dim_at(d));
        let (fr, to) = (e.id.name(), g.id.name());
        let md = format!("| {fr} | {to} | {} | {} | {} |\n", rows.len(), rows.iter().map(|r| r.1).sum::<usize>(), mark(agree));
        let mut v = table_json(&ctx, &fr, &to, &rows);
        v["engine_agrees"] = json!(agree);
        Ok((v, md, agree))
    });
    let mut tables = Vec::new();
    let mut md = String::new();
    let mut passed = true;
    for r in per_pair {
        let (v, line, ok) = r?;
        tables.push(v);
        md += &line;
        passed &= ok;
    }
    let markdown = format!(
        "## B side, n = {n}, k = {k}, window 0..={bound}: {}\n\n{} objects\n\n| from | to | degrees | total dim | engine |\n|---|---|---|---|---|\n{md}",
        mark(passed),
        objs.len()
    );
    Ok(Outcome {
        passed,
        json: json!({"side": "b", "n": n, "k": k, "bound": bound, "objects": objs.len(), "tables": tables, "passed": passed}),
        markdown,
    })
}

pub fn compare(n: usize, k: usize, bound: i64, exec: Execution) -> Result<Outcome, String> {
    let r = full_match(n, k, bound, exec).map_err(err)?;
    Ok(Outcome { passed: r.passed, json: serde_json::to_value(&r).map_err(err)?, markdown: r.to_markdown() })
}

pub fn resolutions(n: usize, k: usize, exec: Execution) -> Result<Outcome, String> {
    let q = quiver(n, k)?;
    let alg = BAlgebra::new(n, k).map_err(err)?;
    let corr = build_correspondence(&q, &alg).map_err(|e: MatchError| e.to_string())?;
    let r = match_resolutions(&q, &corr, &alg).map_err(err)?;
    let mut json = serde_json::to_value(&r).map_err(err)?;
    let mut md =
        format!("## Resolutions, n = {n}, k = {k}: {}\n\n| complex | A valid | B valid | shift | match |\n|---|---|---|---|---|\n", mark(r.passed));
    for m in &r.matches {
        md += &format!("| {} | {} | {} | {} | {} |\n", m.name, m.a_valid, m.b_valid, m.global_shift.as_deref().unwrap_or("-"), mark(m.passed));
    }
    if n == 2 {
        // informational: the single-x1 entry of the last complex
        let x1_only = validate_with(&QuiverAlgebra::new(&q), &build_TxLk1_resolution_n2_x1_only(&q), exec);
        json["x1_only_variant_valid"] = json!(x1_only.valid);
        md += &format!("\nnote: with x1 alone in place of x1.x2 the last complex has d^2 = 0: {}\n", x1_only.valid);
    }
    Ok(Outcome { passed: r.passed, json, markdown: md })
}

pub fn verify_all(n: usize, k: usize, bound: i64, exec: Execution) -> Result<Outcome, String> {
    let ctx = GradingContext::new(n, k);
    let mut sections: Vec<(&str, Outcome)> = vec![("fan", fan(n, k, exec)), ("triangulate", triangulate(n, k, exec))];
    if n == 2 {
        sections.push(("moment_map", moment_map(k)?));
    }
    let fr = formality_check(&ctx, n, k, bound).map_err(err)?;
    let fr_md = format!(
        "## Formality, n = {n}, k = {k}: {}\n\n{} generators, {} ring generators, {} rows, {} violations\n",
        mark(fr.passed),
        fr.generators_checked,
        fr.ring_generators_checked,
        fr.rows_checked,
        fr.violations.len()
    );
    sections.push(("formality", Outcome { passed: fr.passed, json: serde_json::to_value(&fr).map_err(err)?, markdown: fr_md }));
    let or = oracle_check(n, k, bound, exec).map_err(err)?;
    let bad = or.pairs.iter().filter(|p| !p.mismatches.is_empty()).count();
    let or_md = format!(
        "## Closed forms against the engine, n = {n}, k = {k}: {}\n\n{} pairs, {} vanishing, {} with mismatches\n",
        mark(or.passed),
        or.pairs.len(),
        or.vanishing_pairs,
        bad
    );
    sections.push(("oracle", Outcome { passed: or.passed, json: serde_json::to_value(&or).map_err(err)?, markdown: or_md }));
    sections.push(("compare", compare(n, k, bound, exec)?));
    let passed = sections.iter().all(|(_, o)| o.passed);
    let mut json = json!({"n": n, "k": k, "bound": bound, "passed": passed});
    let mut md = format!("# verify-all, n = {n}, k = {k}, max degree {bound}: {}\n\n", mark(passed));
    for (name, o) in &sections {
        md += &format!("- {name}: {}\n", mark(o.passed));
    }
    for (name, o) in sections {
        md += "\n";
        md += &o.markdown;
        json[name] = o.json;
    }
    Ok(Outcome { passed, json, markdown: md })
}
