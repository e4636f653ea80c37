//! Shifted generators and the degree-concentration check.
//!
//! An element of `Hom(G, G')` of degree `e` has degree `e - s(G') + s(G)`
//! between the shifted objects `G[s(G)]`, `G'[s(G')]`.

use grading_lattice::{collapse, CollapseMap, GradingContext, LatticeElement};
use serde::Serialize;

use crate::catalogue::ObjectId;
use crate::closed::{closed_form, var_degree};
use crate::KoszulError;

pub type Shifts = Vec<(ObjectId, LatticeElement)>;

/// `l0 -> 1, x -> 2, v -> -1`: positive on every ring variable.
pub fn window_functional(ctx: &GradingContext) -> CollapseMap {
    let mut vals = vec![0i64; ctx.rank()];
    vals[0] = 1;
    for v in vals.iter_mut().skip(1).take(ctx.n) {
        *v = 2;
    }
    for v in vals.iter_mut().skip(1 + ctx.n) {
        *v = -1;
    }
    CollapseMap::new(ctx, vals).expect("rank matches")
}

fn shifts(ctx: &GradingContext, n: usize, k: usize, literal: bool) -> Result<Shifts, KoszulError> {
    let ids = crate::object_ids(n, k)?;
    let c2_tail = |j: usize| (j..k).fold(ctx.zero(), |acc, r| acc + ctx.c(2, r).scale(2));
    Ok(ids
        .into_iter()
        .map(|id| {
            let s = match id {
                ObjectId::P1(i) => ctx.l0().scale(-(((k - i) * (k - i)) as i64)),
                ObjectId::P(i, j) => {
                    let mut s = ctx.l0().scale((2 * k - i - j) as i64) - c2_tail(j);
                    if i < k || literal {
                        s -= &ctx.c(1, i).scale(2);
                    }
                    s
                }
                ObjectId::Q(j) => ctx.l0().scale((k - j) as i64) - c2_tail(j),
            };
            (id, s)
        })
        .collect())
}

/// Shifts making the endomorphism algebra of the sum of all generators
/// concentrated in degree 0. For `n = 2` the `c_{1,i}` term is dropped at
/// `i = k`, where `c_{1,k} = -x_1` would leave `gamma`/`delta` at `-+2x_1`.
pub fn shifted_generators(ctx: &GradingContext, n: usize, k: usize) -> Result<Shifts, KoszulError> {
    shifts(ctx, n, k, false)
}

/// The same list keeping `-2c_{1,k}` on `P_kj`.
pub fn shifted_generators_literal(ctx: &GradingContext, n: usize, k: usize) -> Result<Shifts, KoszulError> {
    shifts(ctx, n, k, true)
}

pub fn shifted_degree(e: &LatticeElement, s_from: &LatticeElement, s_to: &LatticeElement) -> LatticeElement {
    e - s_to + s_from.clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalityViolation {
    pub check: String,
    pub from: String,
    pub to: String,
    pub generator: String,
    pub degree: String,
    pub collapse: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalityReport {
    pub n: usize,
    pub k: usize,
    pub bound: i64,
    pub generators_checked: usize,
    pub ring_generators_checked: usize,
    pub rows_checked: usize,
    /// Generators whose shifted degree is 0 in the full lattice.
    pub lattice_zero: Vec<String>,
    pub violations: Vec<FormalityViolation>,
    pub passed: bool,
}

pub fn formality_check(ctx: &GradingContext, n: usize, k: usize, bound: i64) -> Result<FormalityReport, KoszulError> {
    formality_check_with(ctx, n, k, bound, &shifted_generators(ctx, n, k)?)
}

/// Checks (a) every named generator between shifted objects has
/// `f0`-degree 0, (b) every ring variable has `f0`-degree 0, and (c) every
/// basis element within `bound` above its generator (under
/// [`window_functional`]) has shifted `f0`-degree 0.
pub fn formality_check_with(ctx: &GradingContext, n: usize, k: usize, bound: i64, shifts: &Shifts) -> Result<FormalityReport, KoszulError> {
    let f0 = CollapseMap::f0(ctx);
    let win = window_functional(ctx);
    let mut report = FormalityReport {
        n,
        k,
        bound,
        generators_checked: 0,
        ring_generators_checked: 0,
        rows_checked: 0,
        lattice_zero: Vec::new(),
        violations: Vec::new(),
        passed: false,
    };
    let nvars = k + n;
    for v in 1..=nvars {
        let d = var_degree(ctx, v);
        report.ring_generators_checked += 1;
        if collapse(&f0, &d) != 0 {
            report.violations.push(FormalityViolation {
                check: "ring".to_string(),
                from: String::new(),
                to: String::new(),
                generator: crate::closed::var_name(k, v),
                degree: d.render(ctx),
                collapse: collapse(&f0, &d),
            });
        }
    }
    for (a, sa) in shifts {
        for (b, sb) in shifts {
            let Some(cf) = closed_form(ctx, n, k, *a, *b) else { continue };
            let d = shifted_degree(&cf.degree, sa, sb);
            report.generators_checked += 1;
            if d.is_zero() && a != b {
                report.lattice_zero.push(cf.generator.clone());
            }
            if collapse(&f0, &d) != 0 {
                report.violations.push(FormalityViolation {
                    check: "generator".to_string(),
                    from: cf.from.clone(),
                    to: cf.to.clone(),
                    generator: cf.generator.clone(),
                    degree: d.render(ctx),
                    collapse: collapse(&f0, &d),
                });
            }
            let table = cf.table(ctx, &win, collapse(&win, &cf.degree) + bound)?;
            for row in &table.rows {
                report.rows_checked += 1;
                let d = shifted_degree(&row.degree, sa, sb);
                if collapse(&f0, &d) != 0 {
                    report.violations.push(FormalityViolation {
                        check: "row".to_string(),
                        from: cf.from.clone(),
                        to: cf.to.clone(),
                        generator: row.basis.join("+"),
                        degree: d.render(ctx),
                        collapse: collapse(&f0, &d),
                    });
                }
            }
        }
    }
    report.passed = report.violations.is_empty();
    Ok(report)
}
