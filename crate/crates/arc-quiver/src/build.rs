use std::collections::BTreeSet;

use grading_lattice::{GradingContext, LatticeElement};

use crate::{Arrow, ArrowKind, Central, Certificate, QuiverPresentation, Relation, Vertex};

/// How the loop `x2` interacts with the other arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum X2Reading {
    /// `x2` is central, with `x2 e = 0` at vertices not containing `k + 1`.
    #[default]
    Central,
    /// Only the two stated one-sided relations and the vanishing outside `k + 1`.
    Listed,
}

/// Move the element at `m - 1` to `m` (`left`) or at `m` to `m - 1`.
pub(crate) fn apply(set: &[usize], m: usize, left: bool, max_pos: usize) -> Option<Vec<usize>> {
    if m == 0 || m > max_pos {
        return None;
    }
    let (from, to) = if left { (m - 1, m) } else { (m, m - 1) };
    if !set.contains(&from) || set.contains(&to) {
        return None;
    }
    let mut out: Vec<usize> = set.iter().map(|&p| if p == from { to } else { p }).collect();
    out.sort_unstable();
    Some(out)
}

fn letter_name(kind: ArrowKind, k: usize) -> String {
    match kind {
        ArrowKind::Left(m) => format!("l{m}"),
        ArrowKind::Right(m) => format!("r{m}"),
        ArrowKind::Loop(Central::U(r)) if r == k + 1 => "x1".to_string(),
        ArrowKind::Loop(Central::U(r)) => format!("u{r}"),
        ArrowKind::Loop(Central::X2) => "x2".to_string(),
    }
}

fn push_arrow(arrows: &mut Vec<Arrow>, kind: ArrowKind, source: usize, target: usize, degree: LatticeElement, k: usize) {
    arrows.push(Arrow { name: letter_name(kind, k), kind, source, target, degree });
}

fn letter_arrows(vertices: &[Vertex], max_pos: usize, k: usize, arrows: &mut Vec<Arrow>, degree: impl Fn(&[usize], ArrowKind) -> LatticeElement) {
    let index = |s: &[usize]| vertices.iter().position(|v| v.set == s).expect("vertex set");
    for (vi, v) in vertices.iter().enumerate() {
        for m in 1..=max_pos {
            for left in [true, false] {
                if let Some(t) = apply(&v.set, m, left, max_pos) {
                    let kind = if left { ArrowKind::Left(m) } else { ArrowKind::Right(m) };
                    push_arrow(arrows, kind, vi, index(&t), degree(&v.set, kind), k);
                }
            }
        }
    }
}

fn normalize(mut terms: Vec<(i64, Vec<usize>)>) -> Option<Relation> {
    terms.sort_by(|a, b| a.1.cmp(&b.1));
    let mut merged: Vec<(i64, Vec<usize>)> = Vec::new();
    for (c, p) in terms {
        match merged.last_mut() {
            Some(last) if last.1 == p => last.0 += c,
            _ => merged.push((c, p)),
        }
    }
    merged.retain(|t| t.0 != 0);
    if merged.is_empty() {
        return None;
    }
    if merged[0].0 < 0 {
        for t in &mut merged {
            t.0 = -t.0;
        }
    }
    Some(Relation { terms: merged })
}

struct RelationSet(BTreeSet<Relation>);

impl RelationSet {
    fn zero(&mut self, p: Vec<usize>) {
        self.0.extend(normalize(vec![(1, p)]));
    }

    fn equal(&mut self, p: Vec<usize>, q: Vec<usize>) {
        self.0.extend(normalize(vec![(1, p), (-1, q)]));
    }

    /// `a` then `b` equals `c` then `d`, where either side may be absent (zero).
    fn equal_or_zero(&mut self, lhs: Option<Vec<usize>>, rhs: Option<Vec<usize>>) {
        match (lhs, rhs) {
            (Some(p), Some(q)) => self.equal(p, q),
            (Some(p), None) | (None, Some(p)) => self.zero(p),
            (None, None) => {}
        }
    }
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out
}

fn finish(mut q: QuiverPresentation, rels: RelationSet) -> QuiverPresentation {
    q.relations = rels.0.into_iter().collect();
    q.certificate = Certificate::new(&q, &crate::hom::length_functional(&q.ctx)).expect("the arc quivers admit a length certificate");
    q.validate().expect("built presentation is consistent");
    q
}

/// `A_{1,k}`: the chain `L_0 .. L_k` with a loop `x1` at `L_k`.
pub fn build_a1k(k: usize) -> QuiverPresentation {
    assert!(k >= 1, "k >= 1");
    let ctx = GradingContext::new(1, k);
    let vertices: Vec<Vertex> = (0..=k).map(|i| Vertex { label: format!("L_{i}"), set: vec![i] }).collect();
    let mut arrows = Vec::new();
    letter_arrows(&vertices, k, k, &mut arrows, |_, kind| match kind {
        ArrowKind::Left(m) => ctx.l0() + ctx.c(1, m).scale(2),
        ArrowKind::Right(m) => ctx.l0() - ctx.c(1, m - 1).scale(2),
        ArrowKind::Loop(_) => unreachable!(),
    });
    push_arrow(&mut arrows, ArrowKind::Loop(Central::U(k + 1)), k, k, ctx.x(1).scale(2), k);
    let q = QuiverPresentation::assemble(ctx, 1, k, vertices, arrows);

    let mut rels = RelationSet(BTreeSet::new());
    for i in 0..=k {
        for m in 1..k {
            if let Some(p) = q.walk(i, &[ArrowKind::Left(m), ArrowKind::Left(m + 1)]) {
                rels.zero(p);
            }
            if let Some(p) = q.walk(i, &[ArrowKind::Right(m + 1), ArrowKind::Right(m)]) {
                rels.zero(p);
            }
        }
    }
    let x1 = ArrowKind::Loop(Central::U(k + 1));
    rels.zero(q.walk(k - 1, &[ArrowKind::Left(k), x1]).expect("l_k then x1"));
    rels.zero(q.walk(k, &[x1, ArrowKind::Right(k)]).expect("x1 then r_k"));
    finish(q, rels)
}

pub fn build_a2k(k: usize) -> QuiverPresentation {
    build_a2k_with(k, X2Reading::Central)
}

/// `A_{2,k}`: vertices are the 2-subsets of `{0, .., k+1}`.
pub fn build_a2k_with(k: usize, reading: X2Reading) -> QuiverPresentation {
    assert!(k >= 1, "k >= 1");
    let ctx = GradingContext::new(2, k);
    let max_pos = k + 1;
    let mut vertices = Vec::new();
    for i in 0..=max_pos {
        for j in i + 1..=max_pos {
            vertices.push(Vertex { label: format!("L_{i}_{j}"), set: vec![i, j] });
        }
    }
    let mut arrows = Vec::new();
    // The smaller element carries the slot-2 classes, the larger one the slot-1 classes.
    letter_arrows(&vertices, max_pos, k, &mut arrows, |set, kind| {
        let small = |m: usize, left: bool| set[0] == if left { m - 1 } else { m };
        match kind {
            ArrowKind::Left(m) if small(m, true) => ctx.l0() + ctx.c(2, m).scale(2),
            ArrowKind::Right(m) if small(m, false) => ctx.l0() - ctx.c(2, m - 1).scale(2),
            ArrowKind::Left(m) if m == k + 1 => ctx.x(1).scale(2),
            ArrowKind::Right(m) if m == k + 1 => ctx.zero(),
            ArrowKind::Left(_) => ctx.l0(),
            ArrowKind::Right(m) => ctx.l0() - ctx.v(m).scale(2),
            ArrowKind::Loop(_) => unreachable!(),
        }
    });
    for (vi, v) in vertices.iter().enumerate() {
        for r in 1..=k + 1 {
            if v.set == [r - 1, r] {
                let deg = if r == k + 1 { ctx.x(1).scale(2) } else { ctx.u(r).scale(2) };
                push_arrow(&mut arrows, ArrowKind::Loop(Central::U(r)), vi, vi, deg, k);
            }
        }
        push_arrow(&mut arrows, ArrowKind::Loop(Central::X2), vi, vi, ctx.x(2).scale(2), k);
    }
    let q = QuiverPresentation::assemble(ctx, 2, k, vertices, arrows);

    let mut rels = RelationSet(BTreeSet::new());
    let index_of = |kind: ArrowKind| match kind {
        ArrowKind::Left(m) | ArrowKind::Right(m) => Some(m as i64),
        ArrowKind::Loop(_) => None,
    };
    let x2 = ArrowKind::Loop(Central::X2);
    for a in 0..q.arrows.len() {
        let first = &q.arrows[a];
        for &b in q.outgoing(first.target) {
            let second = &q.arrows[b];
            match (first.kind, second.kind) {
                (ArrowKind::Left(m), ArrowKind::Left(m2)) if m2 == m + 1 => rels.zero(vec![a, b]),
                (ArrowKind::Right(m), ArrowKind::Right(m2)) if m2 + 1 == m => rels.zero(vec![a, b]),
                _ => {}
            }
            if let (Some(m1), Some(m2)) = (index_of(first.kind), index_of(second.kind)) {
                if (m1 - m2).abs() >= 2 {
                    let other = q.walk(first.source, &[second.kind, first.kind]).expect("far letters commute");
                    rels.equal(vec![a, b], other);
                }
            }
        }
    }
    let top = k + 1;
    for v in 0..q.vertices.len() {
        let set = q.vertices[v].set.clone();
        if !set.contains(&top) {
            rels.zero(q.walk(v, &[x2]).expect("x2 loop"));
            if let Some(p) = q.walk(v, &[ArrowKind::Left(top), x2]) {
                rels.zero(p);
            }
        } else if let Some(p) = q.walk(v, &[x2, ArrowKind::Right(top)]) {
            rels.zero(p);
        }
    }
    let mut centrals: Vec<Central> = (1..=k + 1).map(Central::U).collect();
    if reading == X2Reading::Central {
        centrals.push(Central::X2);
    }
    for &z in &centrals {
        for (a, arrow) in q.arrows.iter().enumerate() {
            if arrow.kind == ArrowKind::Loop(z) {
                continue;
            }
            if reading == X2Reading::Listed && arrow.kind == x2 {
                continue;
            }
            let lhs = q.central_path(z, arrow.source).map(|p| concat(&p, &[a]));
            let rhs = q.central_path(z, arrow.target).map(|p| concat(&[a], &p));
            rels.equal_or_zero(lhs, rhs);
        }
    }
    finish(q, rels)
}
