//! The combined verification report for one `(n, k)`.

use arc_quiver::{build_a1k, build_a2k, QuiverPresentation};
use grading_lattice::exec::Execution;
use koszul_mf::BAlgebra;
use serde::Serialize;

use crate::{
    build_correspondence, compare_dim_tables, match_resolutions, transport_relations, DimReport, MatchError, RelationReport, ResolutionReport,
};

#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub n: usize,
    pub k: usize,
    pub offsets: Vec<(String, String, String)>,
    pub offset_rank: usize,
    pub dims: DimReport,
    pub relations: RelationReport,
    pub resolutions: ResolutionReport,
    pub passed: bool,
}

pub fn presentation(n: usize, k: usize) -> Result<QuiverPresentation, MatchError> {
    match n {
        1 => Ok(build_a1k(k)),
        2 => Ok(build_a2k(k)),
        _ => Err(MatchError::Unsupported(format!("n = {n}"))),
    }
}

pub fn full_match(n: usize, k: usize, bound: i64, exec: Execution) -> Result<MatchReport, MatchError> {
    let q = presentation(n, k)?;
    let alg = BAlgebra::new(n, k).map_err(|e| MatchError::Unsupported(e.to_string()))?;
    let corr = build_correspondence(&q, &alg)?;
    let dims = compare_dim_tables(&q, &corr, bound, exec)?;
    let relations = transport_relations(&q, &corr, &alg);
    let resolutions = match_resolutions(&q, &corr, &alg)?;
    let offsets = corr.objects.iter().map(|(a, b)| (a.clone(), b.clone(), corr.offset(a).render(&q.ctx))).collect();
    let passed = dims.passed && relations.passed && resolutions.passed && corr.rank + 1 == corr.objects.len();
    Ok(MatchReport { n, k, offsets, offset_rank: corr.rank, dims, relations, resolutions, passed })
}

fn mark(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

impl MatchReport {
    pub fn to_markdown(&self) -> String {
        let mut s = format!("## A/B match, n = {}, k = {}: {}\n\n", self.n, self.k, mark(self.passed));
        s += "| vertex | object | offset |\n|---|---|---|\n";
        for (a, b, o) in &self.offsets {
            s += &format!("| {a} | {b} | {o} |\n");
        }
        s += &format!(
            "\nOffset rank {} of {} objects.\n\nDimensions up to {}: {} degrees over {} pairs, {} mismatches ({}).\n",
            self.offset_rank,
            self.offsets.len(),
            self.dims.bound,
            self.dims.degrees_compared,
            self.dims.pairs.len(),
            self.dims.mismatches.len(),
            mark(self.dims.passed)
        );
        for m in &self.dims.mismatches {
            s += &format!("- {} -> {} at {}: A {}, closed {}, engine {}\n", m.from, m.to, m.degree, m.a, m.closed, m.engine);
        }
        s += &format!(
            "\nRelations: {} transported, {} nonzero ({}).\n",
            self.relations.relations,
            self.relations.failures.len(),
            mark(self.relations.passed)
        );
        for f in &self.relations.failures {
            s += &format!("- {f}\n");
        }
        s += "\n| resolution | terms | A valid | B valid | shift | result |\n|---|---|---|---|---|---|\n";
        for m in &self.resolutions.matches {
            s += &format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                m.name,
                m.objects,
                m.a_valid,
                m.b_valid,
                m.global_shift.as_deref().unwrap_or("-"),
                mark(m.passed)
            );
        }
        for m in self.resolutions.matches.iter().filter(|m| !m.passed) {
            s += &format!("\n{}:\n- A: {}\n- B: {}\n", m.name, m.a_render, m.b_render);
            for p in &m.problems {
                s += &format!("- {p}\n");
            }
        }
        s
    }
}
