//! The arc algebras `A_{1,k}` and `A_{2,k}` as lattice-graded quivers with
//! relations, with exact Hom dimensions in each multidegree.
//!
//! Vertices are subsets of positions (`{i}` for `n = 1`, `{i, j}` for
//! `n = 2`). The letters `l_m` and `r_m` move one element of the subset
//! between positions `m - 1` and `m`. Paths are stored in traversal order,
//! first arrow first; rendering uses composition order, so the path
//! "`l_1` then `r_1`" prints as `r1.l1`.

mod build;
mod hom;
pub mod module;

use std::collections::HashMap;

use grading_lattice::{GradingContext, LatticeElement};
use serde::Serialize;
use thiserror::Error;

pub use build::{build_a1k, build_a2k, build_a2k_with, X2Reading};
pub use hom::{
    combination_vanishes, dim_table, dim_tables, dim_tables_from, hom_dimension, hom_dimension_with, length_functional, positive_functional,
    Certificate, HomRow, HomSpace, HomTable, Method,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("collapse map does not bound path length (a cycle has value below its length)")]
    NoCertificate,
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("relation {0} mixes endpoints or contains a non-composable path")]
    Endpoints(String),
    #[error("arrow {0} has the wrong endpoints for its letter")]
    BadArrow(String),
}

/// Central elements: `U(r)` for `1 <= r <= k + 1` (with `U(k+1) = x1`), and `x2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Central {
    U(usize),
    X2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArrowKind {
    Left(usize),
    Right(usize),
    Loop(Central),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub name: String,
    pub kind: ArrowKind,
    pub source: usize,
    pub target: usize,
    pub degree: LatticeElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub label: String,
    pub set: Vec<usize>,
}

/// A formal integer combination of parallel paths, asserted to vanish.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Relation {
    pub terms: Vec<(i64, Vec<usize>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuiverPresentation {
    #[serde(skip)]
    pub ctx: GradingContext,
    pub n: usize,
    pub k: usize,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Relation>,
    #[serde(skip)]
    outgoing: Vec<Vec<usize>>,
    #[serde(skip)]
    by_kind: HashMap<(usize, ArrowKind), usize>,
    #[serde(skip)]
    by_set: HashMap<Vec<usize>, usize>,
    #[serde(skip)]
    certificate: Certificate,
}

impl QuiverPresentation {
    fn assemble(ctx: GradingContext, n: usize, k: usize, vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Self {
        let mut outgoing = vec![Vec::new(); vertices.len()];
        let mut by_kind = HashMap::new();
        for (a, arrow) in arrows.iter().enumerate() {
            outgoing[arrow.source].push(a);
            by_kind.insert((arrow.source, arrow.kind), a);
        }
        let by_set = vertices.iter().enumerate().map(|(i, v)| (v.set.clone(), i)).collect();
        QuiverPresentation { ctx, n, k, vertices, arrows, relations: Vec::new(), outgoing, by_kind, by_set, certificate: Certificate::default() }
    }

    pub fn vertex(&self, label: &str) -> Result<usize, QuiverError> {
        self.vertices.iter().position(|v| v.label == label).ok_or_else(|| QuiverError::UnknownVertex(label.to_string()))
    }

    pub fn vertex_of_set(&self, set: &[usize]) -> Option<usize> {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.by_set.get(&s).copied()
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn arrow_at(&self, v: usize, kind: ArrowKind) -> Option<usize> {
        self.by_kind.get(&(v, kind)).copied()
    }

    /// Follow a word of letters from `v`; `None` if some letter does not act.
    pub fn walk(&self, v: usize, kinds: &[ArrowKind]) -> Option<Vec<usize>> {
        let mut cur = v;
        let mut out = Vec::with_capacity(kinds.len());
        for &kind in kinds {
            let a = self.arrow_at(cur, kind)?;
            out.push(a);
            cur = self.arrows[a].target;
        }
        Some(out)
    }

    pub fn path_target(&self, v: usize, path: &[usize]) -> usize {
        path.last().map_or(v, |&a| self.arrows[a].target)
    }

    pub fn is_composable(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    pub fn path_degree(&self, path: &[usize]) -> LatticeElement {
        let mut d = self.ctx.zero();
        for &a in path {
            d += &self.arrows[a].degree;
        }
        d
    }

    /// The central element `z` at vertex `v` as a path, or `None` if it acts by zero.
    pub fn central_path(&self, z: Central, v: usize) -> Option<Vec<usize>> {
        let set = &self.vertices[v].set;
        match z {
            Central::X2 => {
                if set.contains(&(self.k + 1)) {
                    self.arrow_at(v, ArrowKind::Loop(Central::X2)).map(|a| vec![a])
                } else {
                    None
                }
            }
            Central::U(r) => {
                if let Some(a) = self.arrow_at(v, ArrowKind::Loop(z)) {
                    return Some(vec![a]);
                }
                if set.contains(&(r - 1)) {
                    if let Some(p) = self.walk(v, &[ArrowKind::Left(r), ArrowKind::Right(r)]) {
                        return Some(p);
                    }
                }
                if set.contains(&r) {
                    if let Some(p) = self.walk(v, &[ArrowKind::Right(r), ArrowKind::Left(r)]) {
                        return Some(p);
                    }
                }
                None
            }
        }
    }

    /// The termination certificate used for single-degree enumeration.
    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn render_path(&self, v: usize, path: &[usize]) -> String {
        if path.is_empty() {
            return format!("e[{}]", self.vertices[v].label);
        }
        path.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
    }

    pub fn render_relation(&self, rel: &Relation) -> String {
        let v = self.arrows[rel.terms[0].1[0]].source;
        let mut s = String::new();
        for (t, (c, p)) in rel.terms.iter().enumerate() {
            let body = self.render_path(v, p);
            match (t, *c) {
                (0, 1) => s.push_str(&body),
                (0, -1) => s.push_str(&format!("-{body}")),
                (0, c) => s.push_str(&format!("{c}*{body}")),
                (_, 1) => s.push_str(&format!(" + {body}")),
                (_, -1) => s.push_str(&format!(" - {body}")),
                (_, c) if c < 0 => s.push_str(&format!(" - {}*{body}", -c)),
                (_, c) => s.push_str(&format!(" + {c}*{body}")),
            }
        }
        s
    }

    /// Check arrow endpoints against letters and relation homogeneity.
    pub fn validate(&self) -> Result<(), QuiverError> {
        for arrow in &self.arrows {
            if arrow.source >= self.vertices.len() || arrow.target >= self.vertices.len() {
                return Err(QuiverError::BadArrow(arrow.name.clone()));
            }
            let expected = match arrow.kind {
                ArrowKind::Loop(_) => Some(arrow.source),
                ArrowKind::Left(m) => {
                    build::apply(&self.vertices[arrow.source].set, m, true, self.max_position()).and_then(|s| self.vertex_of_set(&s))
                }
                ArrowKind::Right(m) => {
                    build::apply(&self.vertices[arrow.source].set, m, false, self.max_position()).and_then(|s| self.vertex_of_set(&s))
                }
            };
            if expected != Some(arrow.target) {
                return Err(QuiverError::BadArrow(arrow.name.clone()));
            }
        }
        for rel in &self.relations {
            let label = self.render_relation(rel);
            let (_, first) = &rel.terms[0];
            let src = self.arrows[first[0]].source;
            let tgt = self.path_target(src, first);
            let deg = self.path_degree(first);
            for (_, p) in &rel.terms {
                if p.is_empty() || !self.is_composable(p) {
                    return Err(QuiverError::Endpoints(label));
                }
                if self.arrows[p[0]].source != src || self.path_target(src, p) != tgt {
                    return Err(QuiverError::Endpoints(label));
                }
                if self.path_degree(p) != deg {
                    return Err(QuiverError::Inhomogeneous(label));
                }
            }
        }
        Ok(())
    }

    pub fn max_position(&self) -> usize {
        if self.n == 1 {
            self.k
        } else {
            self.k + 1
        }
    }

    pub fn relation_degree(&self, rel: &Relation) -> LatticeElement {
        self.path_degree(&rel.terms[0].1)
    }
}
