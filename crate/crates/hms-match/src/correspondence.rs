//! Objects, generators and per-object shift offsets.
//!
//! Arrow degrees on the quiver side are stored as their images `m l0 + 2h`
//! under the grading isomorphism, so both sides live in one lattice. An
//! arrow `a: v -> w` matched with a generator `g` satisfies
//! `deg a = deg g + o(w) - o(v)`.

use std::collections::{BTreeMap, VecDeque};

use arc_quiver::{ArrowKind, Central, QuiverPresentation};
use grading_lattice::linalg::{sparse_from_i64, SparseEchelon};
use grading_lattice::{grading_iso_a_to_b, grading_iso_b_to_a, LatticeElement};
use koszul_mf::{BAlgebra, ObjectId};
use serde::Serialize;

use crate::MatchError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorMatch {
    pub from: String,
    pub to: String,
    /// Quiver path, traversal order.
    pub path: Vec<String>,
    /// B-side letter: a named generator or a ring variable.
    pub generator: String,
    pub degree_a: LatticeElement,
    pub degree_b: LatticeElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct Correspondence {
    pub n: usize,
    pub k: usize,
    /// `(vertex label, object name)`, in vertex order.
    pub objects: Vec<(String, String)>,
    pub generators: Vec<GeneratorMatch>,
    /// Offsets `o(v)`, normalized to 0 at the first vertex.
    pub offsets: BTreeMap<String, LatticeElement>,
    /// Rank of the offset system; `vertices - 1` means unique up to a global shift.
    pub rank: usize,
}

/// `L_i <-> P_i`; `L_{a,b} <-> P_{b,a}` for `b <= k` and `L_{j,k+1} <-> Q_j`.
pub fn object_for(n: usize, k: usize, set: &[usize]) -> ObjectId {
    match (n, set) {
        (1, [i]) => ObjectId::P1(*i),
        (_, [a, b]) if *b == k + 1 => ObjectId::Q(*a),
        (_, [a, b]) => ObjectId::P(*b, *a),
        _ => unreachable!("vertex sets have n elements"),
    }
}

fn ring_letter(k: usize, c: Central) -> String {
    match c {
        Central::U(r) if r == k + 1 => "X1".to_string(),
        Central::U(r) => format!("U{r}"),
        Central::X2 => "X2".to_string(),
    }
}

/// The letter of a loop arrow on the B side.
pub fn loop_letter(q: &QuiverPresentation, kind: ArrowKind) -> Option<String> {
    match kind {
        ArrowKind::Loop(c) => Some(ring_letter(q.k, c)),
        _ => None,
    }
}

impl Correspondence {
    pub fn object(&self, label: &str) -> Option<&str> {
        self.objects.iter().find(|(a, _)| a == label).map(|(_, b)| b.as_str())
    }

    pub fn vertex(&self, object: &str) -> Option<&str> {
        self.objects.iter().find(|(_, b)| b == object).map(|(a, _)| a.as_str())
    }

    pub fn offset(&self, label: &str) -> &LatticeElement {
        &self.offsets[label]
    }

    /// The quiver path of a B-side letter starting at `from`.
    pub fn path_of(&self, from: &str, letter: &str) -> Option<&GeneratorMatch> {
        self.generators.iter().find(|g| g.from == from && g.generator == letter)
    }
}

/// Pass an arrow degree through the grading isomorphism and back; fails
/// off `Z l0 + 2H`.
fn through_iso(q: &QuiverPresentation, d: &LatticeElement) -> Result<LatticeElement, MatchError> {
    let (m, h) = grading_iso_b_to_a(d).ok_or_else(|| MatchError::Grading(d.render(&q.ctx)))?;
    grading_iso_a_to_b(&q.ctx, m, &h).map_err(|_| MatchError::Grading(d.render(&q.ctx)))
}

pub fn build_correspondence(q: &QuiverPresentation, alg: &BAlgebra) -> Result<Correspondence, MatchError> {
    let (n, k) = (q.n, q.k);
    let nv = q.vertices.len();
    let objects: Vec<(String, String)> = q.vertices.iter().map(|v| (v.label.clone(), object_for(n, k, &v.set).name())).collect();
    let mut generators = Vec::new();
    let mut edges: Vec<(usize, usize, LatticeElement)> = Vec::new();
    for a in &q.arrows {
        let (from, to) = (&objects[a.source].1, &objects[a.target].1);
        let degree_a = through_iso(q, &a.degree)?;
        let (generator, degree_b) = match loop_letter(q, a.kind) {
            Some(l) => {
                let d = alg.ring_degree(&l).ok_or_else(|| MatchError::Unmatched(a.name.clone()))?;
                (l, d)
            }
            None => {
                let cf = alg.closed(from, to).ok_or_else(|| MatchError::Unmatched(format!("{} at {}", a.name, q.vertices[a.source].label)))?;
                (cf.generator.clone(), cf.degree.clone())
            }
        };
        edges.push((a.source, a.target, &degree_a - &degree_b));
        generators.push(GeneratorMatch { from: from.clone(), to: to.clone(), path: vec![a.name.clone()], generator, degree_a, degree_b });
    }
    // solve over a spanning tree, then check every equation
    let mut off: Vec<Option<LatticeElement>> = vec![None; nv];
    off[0] = Some(q.ctx.zero());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (s, t, d) in &edges {
            let (next, val) = if *s == v && off[*t].is_none() {
                (*t, off[v].clone().unwrap() + d.clone())
            } else if *t == v && off[*s].is_none() {
                (*s, off[v].clone().unwrap() - d.clone())
            } else {
                continue;
            };
            off[next] = Some(val);
            queue.push_back(next);
        }
    }
    let off: Vec<LatticeElement> = off
        .into_iter()
        .enumerate()
        .map(|(v, o)| o.ok_or_else(|| MatchError::InconsistentShifts(format!("{} is not reached", q.vertices[v].label))))
        .collect::<Result<_, _>>()?;
    for ((s, t, d), g) in edges.iter().zip(&generators) {
        if &(&off[*t] - &off[*s]) != d {
            return Err(MatchError::InconsistentShifts(format!("{} -> {} via {}", g.from, g.to, g.generator)));
        }
    }
    let mut ech = SparseEchelon::new();
    for (s, t, _) in &edges {
        if s != t {
            ech.insert(sparse_from_i64([(*s, 1), (*t, -1)]));
        }
    }
    let offsets = q.vertices.iter().zip(off).map(|(v, o)| (v.label.clone(), o)).collect();
    Ok(Correspondence { n, k, objects, generators, offsets, rank: ech.rank() })
}
