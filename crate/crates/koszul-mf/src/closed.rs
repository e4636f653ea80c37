//! Closed-form Hom spaces between the generators.
//!
//! Every nonzero `Hom(G, G')` is free of rank one over a monomial quotient
//! of `k[U_1..U_k, X_1, X_2]` (variables `1..=k`, `k + 1`, `k + 2`), on a
//! named generator. Writing `U_{k+1} = X_1`:
//!
//! - `End(P_ij) = k[U_i,U_{i+1},U_j,U_{j+1}]/(U_iU_{i+1}, U_jU_{j+1})`, with
//!   `k[U_{i-1},U_i,U_{i+1}]/(U_{i-1}U_iU_{i+1})` for `j = i - 1`,
//!   `k[U_1,U_i,U_{i+1}]/(U_iU_{i+1})` for `j = 0` and `k[U_1,U_2]` for `P_10`;
//! - `End(Q_j) = k[X_1,X_2,U_j,U_{j+1}]/(X_1X_2, U_jU_{j+1})`, with
//!   `k[X_1,X_2,U_1]/(X_1X_2)` for `j = 0` and `k[X_1,X_2,U_k]/(U_kX_1X_2)` for `j = k`;
//! - a move in one slot has ring `End(G) (x) End(G')`: the common variables
//!   modulo the relations of both; a move in both slots has ring
//!   `k[U_a, U_b]` on the two node variables.

use grading_lattice::{collapse, CollapseMap, GradingContext, LatticeElement};
use serde::Serialize;

use crate::catalogue::ObjectId;
use crate::{BHomRow, BHomTable, KoszulError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub from: String,
    pub to: String,
    pub generator: String,
    pub degree: LatticeElement,
    pub vars: Vec<usize>,
    pub relations: Vec<Vec<usize>>,
}

pub fn var_name(k: usize, v: usize) -> String {
    if v <= k {
        format!("U{v}")
    } else {
        format!("X{}", v - k)
    }
}

pub fn var_degree(ctx: &GradingContext, v: usize) -> LatticeElement {
    if v <= ctx.k {
        ctx.u(v).scale(2)
    } else {
        ctx.x(v - ctx.k).scale(2)
    }
}

/// `(slot-1 index, slot-2 index)`, with `Q_j` at slot-1 index `k + 1`.
fn slots(id: ObjectId, k: usize) -> (usize, usize) {
    match id {
        ObjectId::P1(i) => (i, 0),
        ObjectId::P(i, j) => (i, j),
        ObjectId::Q(j) => (k + 1, j),
    }
}

/// Variables and relations of `End(G)`.
pub fn end_ring(n: usize, k: usize, id: ObjectId) -> (Vec<usize>, Vec<Vec<usize>>) {
    let (x1, x2) = (k + 1, k + 2);
    if n == 1 {
        let ObjectId::P1(i) = id else { unreachable!("n = 1 objects are P_i") };
        return if i == 0 { (vec![1], vec![]) } else { (vec![i, i + 1], vec![vec![i, i + 1]]) };
    }
    let (i, j) = slots(id, k);
    if i == k + 1 {
        return if j == 0 {
            (vec![1, x1, x2], vec![vec![x1, x2]])
        } else if j == k {
            (vec![k, x1, x2], vec![vec![k, x1, x2]])
        } else {
            (vec![j, j + 1, x1, x2], vec![vec![j, j + 1], vec![x1, x2]])
        };
    }
    if j == 0 {
        if i == 1 {
            (vec![1, 2], vec![])
        } else {
            (vec![1, i, i + 1], vec![vec![i, i + 1]])
        }
    } else if i == j + 1 {
        (vec![j, i, i + 1], vec![vec![j, i, i + 1]])
    } else {
        (vec![j, j + 1, i, i + 1], vec![vec![i, i + 1], vec![j, j + 1]])
    }
}

/// Named generators of the elementary moves, as `(name, degree)`.
fn slot1_step(ctx: &GradingContext, k: usize, from: (usize, usize), to: (usize, usize)) -> Option<(String, LatticeElement)> {
    let (i, j) = from;
    let (i2, _) = to;
    let gamma = |i: usize| {
        if i + 1 < k {
            ctx.l0() - ctx.c(1, i).scale(2) + ctx.c(1, i + 1).scale(2)
        } else {
            ctx.l0() - ctx.c(1, k - 1).scale(2)
        }
    };
    if i == k + 1 || i2 == k + 1 {
        return match (i, i2) {
            (a, b) if a == b => Some((String::new(), ctx.zero())),
            (a, b) if a == k && b == k + 1 => Some((format!("gammaQ({j})"), ctx.x(1).scale(2))),
            (a, b) if a == k + 1 && b == k => Some((format!("deltaQ({})", to.1), ctx.zero())),
            _ => None,
        };
    }
    if i2 + 1 == i {
        Some((format!("gamma({i2},{j})"), gamma(i2)))
    } else if i + 1 == i2 {
        Some((format!("delta({i},{j})"), ctx.u(i + 1).scale(2) - gamma(i)))
    } else if i == i2 {
        Some((String::new(), ctx.zero()))
    } else {
        None
    }
}

fn slot2_step(ctx: &GradingContext, k: usize, from: (usize, usize), to: (usize, usize)) -> Option<(String, LatticeElement)> {
    let (i, j) = from;
    let (_, j2) = to;
    let obj = |i: usize, j: usize| if i == k + 1 { format!("Q({j})") } else { format!("({i},{j})") };
    if j2 + 1 == j {
        Some((format!("alpha{}", obj(i, j2)), ctx.l0() - ctx.c(2, j2).scale(2)))
    } else if j + 1 == j2 {
        Some((format!("beta{}", obj(i, j)), ctx.l0() + ctx.c(2, j + 1).scale(2)))
    } else if j == j2 {
        Some((String::new(), ctx.zero()))
    } else {
        None
    }
}

/// The closed form of `Hom(from, to)`, or `None` when it vanishes.
pub fn closed_form(ctx: &GradingContext, n: usize, k: usize, from: ObjectId, to: ObjectId) -> Option<ClosedForm> {
    let (vars, relations, generator, degree) = if n == 1 {
        let (ObjectId::P1(i), ObjectId::P1(i2)) = (from, to) else { return None };
        let (va, ra) = end_ring(1, k, from);
        let (vb, rb) = end_ring(1, k, to);
        let (name, deg) = if i == i2 {
            (String::new(), ctx.zero())
        } else if i2 + 1 == i {
            (format!("a_{i}"), ctx.l0() - ctx.c(1, i - 1).scale(2))
        } else if i + 1 == i2 {
            (format!("b_{i2}"), ctx.l0() + ctx.c(1, i2).scale(2))
        } else {
            return None;
        };
        let (v, r) = tensor(&va, &ra, &vb, &rb);
        (v, r, name, deg)
    } else {
        let (s, t) = (slots(from, k), slots(to, k));
        let (n1, d1) = slot1_step(ctx, k, s, t)?;
        let (n2, d2) = slot2_step(ctx, k, s, t)?;
        let (va, ra) = end_ring(2, k, from);
        let (vb, rb) = end_ring(2, k, to);
        let (v, r) = if s.0 != t.0 && s.1 != t.1 { (vec![s.0.max(t.0), s.1.max(t.1)], Vec::new()) } else { tensor(&va, &ra, &vb, &rb) };
        let name = [n2, n1].into_iter().filter(|x| !x.is_empty()).collect::<Vec<_>>().join(".");
        (v, r, name, d1 + d2)
    };
    let generator = if generator.is_empty() { format!("id[{}]", from.name()) } else { generator };
    Some(ClosedForm { from: from.name(), to: to.name(), generator, degree, vars, relations })
}

fn tensor(va: &[usize], ra: &[Vec<usize>], vb: &[usize], rb: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut vars: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
    vars.sort_unstable();
    let mut rels: Vec<Vec<usize>> = ra.iter().chain(rb).filter(|m| m.iter().all(|v| vars.contains(v))).cloned().collect();
    rels.sort();
    rels.dedup();
    (vars, rels)
}

impl ClosedForm {
    /// Exponent vector (indexed by variable) of the monomial in degree `d`, if any.
    pub fn monomial_at(&self, ctx: &GradingContext, d: &LatticeElement) -> Option<Vec<(usize, i64)>> {
        let rest = d - &self.degree;
        // U_r is the only variable with a v_r component; X_a the only one with x_a
        let mut ex: Vec<(usize, i64)> = Vec::new();
        let mut acc = ctx.zero();
        for &v in &self.vars {
            let e = if v <= ctx.k { -rest.coeffs[ctx.n + v] } else { rest.coeffs[v - ctx.k] };
            if e % 2 != 0 || e < 0 {
                return None;
            }
            let e = e / 2;
            ex.push((v, e));
            acc += &var_degree(ctx, v).scale(e);
        }
        if acc != rest {
            return None;
        }
        let killed = self.relations.iter().any(|m| m.iter().all(|v| ex.iter().any(|(w, e)| w == v && *e > 0)));
        (!killed).then_some(ex)
    }

    pub fn dim_at(&self, ctx: &GradingContext, d: &LatticeElement) -> usize {
        usize::from(self.monomial_at(ctx, d).is_some())
    }

    /// Facets of the Stanley-Reisner complex of the ring.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let m = self.vars.len();
        let mut faces: Vec<Vec<usize>> = (0..1u32 << m)
            .map(|mask| (0..m).filter(|b| mask >> b & 1 == 1).map(|b| self.vars[b]).collect::<Vec<_>>())
            .filter(|s| !self.relations.iter().any(|r| r.iter().all(|v| s.contains(v))))
            .collect();
        faces.sort();
        let maximal: Vec<Vec<usize>> =
            faces.iter().filter(|s| !faces.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v)))).cloned().collect();
        maximal
    }

    pub fn table(&self, ctx: &GradingContext, f: &CollapseMap, bound: i64) -> Result<BHomTable, KoszulError> {
        if self.vars.iter().any(|&v| collapse(f, &var_degree(ctx, v)) <= 0) {
            return Err(KoszulError::Window("collapse must be positive on every ring variable".to_string()));
        }
        let mut rows = Vec::new();
        let mut ex = vec![0i64; self.vars.len()];
        fn rec(
            cf: &ClosedForm,
            ctx: &GradingContext,
            f: &CollapseMap,
            bound: i64,
            pos: usize,
            cur: &LatticeElement,
            ex: &mut Vec<i64>,
            rows: &mut Vec<BHomRow>,
        ) {
            if collapse(f, cur) > bound {
                return;
            }
            if pos == cf.vars.len() {
                let killed = cf.relations.iter().any(|m| m.iter().all(|v| ex[cf.vars.iter().position(|w| w == v).unwrap()] > 0));
                if !killed {
                    let mut parts: Vec<String> = cf
                        .vars
                        .iter()
                        .zip(ex.iter())
                        .filter(|(_, e)| **e > 0)
                        .map(|(v, e)| if *e == 1 { var_name(ctx.k, *v) } else { format!("{}^{e}", var_name(ctx.k, *v)) })
                        .collect();
                    parts.push(cf.generator.clone());
                    rows.push(BHomRow { degree: cur.clone(), dim: 1, basis: vec![parts.join("*")] });
                }
                return;
            }
            let step = var_degree(ctx, cf.vars[pos]);
            let mut d = cur.clone();
            loop {
                if collapse(f, &d) > bound {
                    break;
                }
                rec(cf, ctx, f, bound, pos + 1, &d, ex, rows);
                ex[pos] += 1;
                d += &step;
            }
            ex[pos] = 0;
        }
        rec(self, ctx, f, bound, 0, &self.degree, &mut ex, &mut rows);
        rows.sort_by(|a, b| (collapse(f, &a.degree), &a.degree.coeffs).cmp(&(collapse(f, &b.degree), &b.degree.coeffs)));
        Ok(BHomTable { from: self.from.clone(), to: self.to.clone(), rows })
    }
}

/// All pairwise closed-form tables, zero tables included, in object order.
pub fn closed_form_tables(ctx: &GradingContext, n: usize, k: usize, f: &CollapseMap, bound: i64) -> Result<Vec<BHomTable>, KoszulError> {
    let ids = crate::object_ids(n, k)?;
    let mut out = Vec::new();
    for &a in &ids {
        for &b in &ids {
            match closed_form(ctx, n, k, a, b) {
                Some(cf) => out.push(cf.table(ctx, f, bound)?),
                None => out.push(BHomTable { from: a.name(), to: b.name(), rows: Vec::new() }),
            }
        }
    }
    Ok(out)
}
