//! The Koszul engine against the closed forms, pair by pair.

use std::collections::BTreeSet;

use grading_lattice::exec::{map_ordered, Execution};
use grading_lattice::{collapse, GradingContext, LatticeElement};
use serde::Serialize;

use crate::closed::closed_form;
use crate::engine::{koszul_hom, support_cohomology, HomResult};
use crate::formality::window_functional;
use crate::geometry::Geometry;
use crate::{generators, KoszulError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub from: String,
    pub to: String,
    pub pattern: String,
    pub degrees: usize,
    pub mismatches: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub k: usize,
    /// Window above each generator, under the window functional.
    pub extra: i64,
    pub pairs: Vec<PairCheck>,
    pub vanishing_pairs: usize,
    pub passed: bool,
}

/// Every pair, every degree within `extra` of the pair's generator: the
/// engine's table equals the closed form, zero tables included.
pub fn oracle_check(n: usize, k: usize, extra: i64, exec: Execution) -> Result<OracleReport, KoszulError> {
    let ctx = GradingContext::new(n, k);
    let geo = Geometry::new(n, k)?;
    let objs = generators(&ctx, n, k)?;
    let f = window_functional(&ctx);
    let jobs: Vec<(usize, usize)> = (0..objs.len()).flat_map(|a| (0..objs.len()).map(move |b| (a, b))).collect();
    let checks = map_ordered(exec, &jobs, |&(a, b)| -> Result<(PairCheck, bool), KoszulError> {
        let (e, g) = (&objs[a], &objs[b]);
        let cf = closed_form(&ctx, n, k, e.id, g.id);
        let bound = cf.as_ref().map_or(0, |c| collapse(&f, &c.degree)) + extra;
        let res = koszul_hom(&geo, e, g)?;
        let pattern = match &res {
            HomResult::Support(s) => s.pattern.clone(),
            HomResult::Vanishing { reason, .. } => format!("vanishing: {reason}"),
        };
        let t = support_cohomology(&geo, &res, &f, bound)?;
        let c = cf.as_ref().map(|c| c.table(&ctx, &f, bound)).transpose()?;
        let mut degs: BTreeSet<Vec<i64>> = t.rows.iter().map(|r| r.degree.coeffs.clone()).collect();
        if let Some(c) = &c {
            degs.extend(c.rows.iter().map(|r| r.degree.coeffs.clone()));
        }
        let mut mismatches = Vec::new();
        for d in &degs {
            let d = LatticeElement { coeffs: d.clone() };
            let (x, y) = (t.dim_at(&d), c.as_ref().map_or(0, |c| c.dim_at(&d)));
            if x != y {
                mismatches.push(format!("{}: engine {x}, closed {y}", d.render(&ctx)));
            }
        }
        let zero = cf.is_none() && t.rows.is_empty();
        Ok((PairCheck { from: e.name.clone(), to: g.name.clone(), pattern, degrees: degs.len(), mismatches }, zero))
    });
    let mut pairs = Vec::new();
    let mut vanishing_pairs = 0;
    for c in checks {
        let (p, z) = c?;
        vanishing_pairs += usize::from(z);
        pairs.push(p);
    }
    let passed = pairs.iter().all(|p| p.mismatches.is_empty());
    Ok(OracleReport { n, k, extra, pairs, vanishing_pairs, passed })
}
