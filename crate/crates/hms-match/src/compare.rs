//! Graded dimensions on both sides, degree by degree.

use std::collections::BTreeSet;

use arc_quiver::{dim_tables, positive_functional, QuiverPresentation};
use grading_lattice::exec::{map_ordered, Execution};
use grading_lattice::{collapse, CollapseMap, LatticeElement};
use koszul_mf::{closed_form, generators, koszul_hom, support_cohomology, Geometry, MFObject};
use serde::Serialize;

use crate::correspondence::{object_for, Correspondence};
use crate::MatchError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimMismatch {
    pub from: String,
    pub to: String,
    pub degree: String,
    pub a: usize,
    pub closed: usize,
    pub engine: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub from: String,
    pub to: String,
    pub nonzero_degrees: usize,
    pub total_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub n: usize,
    pub k: usize,
    pub bound: i64,
    pub pairs: Vec<PairSummary>,
    pub degrees_compared: usize,
    pub mismatches: Vec<DimMismatch>,
    pub passed: bool,
}

/// Compare all `Hom(v, w)` in every degree `d` with `0 <= p(d) <= bound`,
/// `p` the positive functional, against the closed forms and the Koszul
/// engine, translated by the offsets.
pub fn compare_dim_tables(q: &QuiverPresentation, corr: &Correspondence, bound: i64, exec: Execution) -> Result<DimReport, MatchError> {
    let ctx = q.ctx;
    let p = CollapseMap::new(&ctx, positive_functional(&ctx)).expect("rank matches");
    let nv = q.vertices.len();
    let pairs: Vec<(usize, usize)> = (0..nv).flat_map(|v| (0..nv).map(move |w| (v, w))).collect();
    let a_tables = dim_tables(q, &pairs, &p, bound, exec).map_err(|e| MatchError::Unsupported(e.to_string()))?;
    let geo = Geometry::new(q.n, q.k).map_err(|e| MatchError::Unsupported(e.to_string()))?;
    let objs = generators(&ctx, q.n, q.k).map_err(|e| MatchError::Unsupported(e.to_string()))?;
    let find = |set: &[usize]| -> &MFObject {
        let id = object_for(q.n, q.k, set);
        objs.iter().find(|o| o.id == id).expect("every vertex has an object")
    };
    let jobs: Vec<usize> = (0..pairs.len()).collect();
    let per_pair = map_ordered(exec, &jobs, |&ix| -> Result<(PairSummary, usize, Vec<DimMismatch>), MatchError> {
        let (v, w) = pairs[ix];
        let (lv, lw) = (&q.vertices[v].label, &q.vertices[w].label);
        let delta = corr.offset(lw) - corr.offset(lv);
        let (e, f) = (find(&q.vertices[v].set), find(&q.vertices[w].set));
        let b_bound = bound - collapse(&p, &delta);
        let closed = closed_form(&ctx, q.n, q.k, e.id, f.id).map(|c| c.table(&ctx, &p, b_bound)).transpose();
        let closed = closed.map_err(|x| MatchError::Unsupported(x.to_string()))?;
        let hom = koszul_hom(&geo, e, f).map_err(|x| MatchError::Unsupported(x.to_string()))?;
        let engine = support_cohomology(&geo, &hom, &p, b_bound).map_err(|x| MatchError::Unsupported(x.to_string()))?;
        let at = &a_tables[ix];
        let mut degs: BTreeSet<Vec<i64>> = at.rows.iter().map(|r| r.degree.coeffs.clone()).collect();
        let lifted = |d: &LatticeElement| (d + &delta).coeffs;
        degs.extend(engine.rows.iter().map(|r| lifted(&r.degree)));
        if let Some(c) = &closed {
            degs.extend(c.rows.iter().map(|r| lifted(&r.degree)));
        }
        let mut mismatches = Vec::new();
        let mut compared = 0;
        for d in degs {
            let d = LatticeElement { coeffs: d };
            if collapse(&p, &d) < 0 || collapse(&p, &d) > bound {
                continue;
            }
            compared += 1;
            let db = &d - &delta;
            let (a, c, g) = (at.dim_at(&d), closed.as_ref().map_or(0, |t| t.dim_at(&db)), engine.dim_at(&db));
            if a != c || a != g {
                mismatches.push(DimMismatch { from: lv.clone(), to: lw.clone(), degree: d.render(&ctx), a, closed: c, engine: g });
            }
        }
        let summary =
            PairSummary { from: lv.clone(), to: lw.clone(), nonzero_degrees: at.rows.len(), total_dim: at.rows.iter().map(|r| r.dim).sum() };
        Ok((summary, compared, mismatches))
    });
    let mut report = DimReport { n: q.n, k: q.k, bound, pairs: Vec::new(), degrees_compared: 0, mismatches: Vec::new(), passed: false };
    for r in per_pair {
        let (s, c, m) = r?;
        report.pairs.push(s);
        report.degrees_compared += c;
        report.mismatches.extend(m);
    }
    report.passed = report.mismatches.is_empty();
    Ok(report)
}
