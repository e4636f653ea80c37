//! The right module `e_v A`, computed one graded piece at a time.
//!
//! The piece at `(w, d)` is the span of `m . a` over arrows `a: s -> w` and
//! basis elements `m` of the piece at `(s, d - deg a)`, modulo every
//! relation instance `m . R` ending at `w`. Pieces are processed in order of
//! certificate weight, which strictly increases along arrows, so every
//! piece a relation instance passes through is already known. Zero pieces
//! are dropped, which keeps the computation proportional to the size of
//! the answer.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use grading_lattice::linalg::{SparseEchelon, SparseVec};
use grading_lattice::LatticeElement;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hom::Certificate;
use crate::QuiverPresentation;

type Key = (usize, Vec<i64>);

#[derive(Debug, Clone)]
pub struct Piece {
    pub vertex: usize,
    pub degree: LatticeElement,
    /// Incoming generators `(arrow, basis index of the predecessor piece)`.
    columns: Vec<(usize, usize)>,
    column_index: HashMap<(usize, usize), usize>,
    /// Each column written in the quotient basis.
    reduced: Vec<SparseVec>,
    /// Representative path of each quotient basis element, traversal order.
    pub basis: Vec<Vec<usize>>,
    pub relation_rank: usize,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }
}

/// All nonzero pieces of `e_v A` of weight at most `max_weight`.
#[derive(Debug, Clone)]
pub struct LayeredModule {
    pub source: usize,
    pub max_weight: i64,
    pieces: HashMap<Key, Piece>,
}

fn add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &BigRational) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(BigRational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

impl LayeredModule {
    pub fn compute(q: &QuiverPresentation, cert: &Certificate, source: usize, max_weight: i64) -> Self {
        let weights: Vec<i64> = (0..q.arrows.len()).map(|a| cert.arrow_weight(q, a)).collect();
        let mut by_end: HashMap<usize, Vec<usize>> = HashMap::new();
        for (r, rel) in q.relations.iter().enumerate() {
            let p = &rel.terms[0].1;
            by_end.entry(q.arrows[*p.last().expect("nonempty")].target).or_default().push(r);
        }
        let rel_src: Vec<usize> = q.relations.iter().map(|r| q.arrows[r.terms[0].1[0]].source).collect();
        let rel_deg: Vec<LatticeElement> = q.relations.iter().map(|r| q.relation_degree(r)).collect();

        let mut module = LayeredModule { source, max_weight, pieces: HashMap::new() };
        let mut levels: BTreeMap<i64, BTreeSet<Key>> = BTreeMap::new();
        let mut pending: HashMap<Key, Vec<(usize, usize)>> = HashMap::new();

        let unit = Piece {
            vertex: source,
            degree: q.ctx.zero(),
            columns: Vec::new(),
            column_index: HashMap::new(),
            reduced: Vec::new(),
            basis: vec![Vec::new()],
            relation_rank: 0,
        };
        module.publish(q, &weights, 0, unit, &mut levels, &mut pending);

        while let Some((level, keys)) = levels.pop_first() {
            for key in keys {
                let mut columns = pending.remove(&key).unwrap_or_default();
                columns.sort_unstable();
                columns.dedup();
                let column_index: HashMap<(usize, usize), usize> = columns.iter().enumerate().map(|(i, c)| (*c, i)).collect();
                let degree = LatticeElement { coeffs: key.1.clone() };
                let mut ech = SparseEchelon::new();
                for &r in by_end.get(&key.0).map(Vec::as_slice).unwrap_or(&[]) {
                    let pre = (rel_src[r], (&degree - &rel_deg[r]).coeffs);
                    let Some(prefix) = module.pieces.get(&pre) else { continue };
                    for b in 0..prefix.dim() {
                        let mut row = SparseVec::new();
                        for (c, term) in &q.relations[r].terms {
                            let mut x = SparseVec::new();
                            x.insert(b, BigRational::one());
                            let mut at = pre.clone();
                            for &a in &term[..term.len() - 1] {
                                let (next, y) = module.push(q, &at, &x, a);
                                at = next;
                                x = y;
                                if x.is_empty() {
                                    break;
                                }
                            }
                            let last = *term.last().expect("nonempty");
                            let coef = BigRational::from_integer((*c).into());
                            for (i, xi) in &x {
                                let col = column_index[&(last, *i)];
                                let e = row.entry(col).or_insert_with(BigRational::zero);
                                *e += &coef * xi;
                                if e.is_zero() {
                                    row.remove(&col);
                                }
                            }
                        }
                        ech.insert(row);
                    }
                }
                let pivots: BTreeSet<usize> = ech.pivots().collect();
                let free: Vec<usize> = (0..columns.len()).filter(|c| !pivots.contains(c)).collect();
                if free.is_empty() {
                    continue;
                }
                let position: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
                let reduced: Vec<SparseVec> = (0..columns.len())
                    .map(|c| {
                        let mut v = SparseVec::new();
                        match ech.row(c) {
                            None => {
                                v.insert(position[&c], BigRational::one());
                            }
                            Some(row) => {
                                for (j, x) in row {
                                    if *j != c {
                                        v.insert(position[j], -x.clone());
                                    }
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let basis = free
                    .iter()
                    .map(|&c| {
                        let (a, i) = columns[c];
                        let pred = (q.arrows[a].source, (&degree - &q.arrows[a].degree).coeffs);
                        let mut p = module.pieces[&pred].basis[i].clone();
                        p.push(a);
                        p
                    })
                    .collect();
                let piece = Piece { vertex: key.0, degree, columns, column_index, reduced, basis, relation_rank: pivots.len() };
                module.publish(q, &weights, level, piece, &mut levels, &mut pending);
            }
        }
        module
    }

    fn publish(
        &mut self,
        q: &QuiverPresentation,
        weights: &[i64],
        level: i64,
        piece: Piece,
        levels: &mut BTreeMap<i64, BTreeSet<Key>>,
        pending: &mut HashMap<Key, Vec<(usize, usize)>>,
    ) {
        for &a in q.outgoing(piece.vertex) {
            let next = level + weights[a];
            if next > self.max_weight {
                continue;
            }
            let key = (q.arrows[a].target, (&piece.degree + &q.arrows[a].degree).coeffs);
            let cols = pending.entry(key.clone()).or_default();
            for b in 0..piece.dim() {
                cols.push((a, b));
            }
            levels.entry(next).or_default().insert(key);
        }
        self.pieces.insert((piece.vertex, piece.degree.coeffs.clone()), piece);
    }

    /// Right multiplication by an arrow, landing in an already computed piece.
    fn push(&self, q: &QuiverPresentation, at: &Key, x: &SparseVec, a: usize) -> (Key, SparseVec) {
        let arrow = &q.arrows[a];
        let key = (arrow.target, (LatticeElement { coeffs: at.1.clone() } + arrow.degree.clone()).coeffs);
        let mut out = SparseVec::new();
        if let Some(piece) = self.pieces.get(&key) {
            for (i, xi) in x {
                if let Some(&c) = piece.column_index.get(&(a, *i)) {
                    add_scaled(&mut out, &piece.reduced[c], xi);
                }
            }
        }
        (key, out)
    }

    /// Whether `sum c * path` (paths from the source, traversal order)
    /// vanishes. Every path must stay within the computed weight.
    pub fn combination_vanishes(&self, q: &QuiverPresentation, terms: &[(i64, Vec<usize>)]) -> bool {
        let mut by_end: HashMap<Key, SparseVec> = HashMap::new();
        for (c, path) in terms {
            let mut at: Key = (self.source, q.ctx.zero().coeffs);
            let mut x = SparseVec::new();
            x.insert(0, BigRational::one());
            for &a in path {
                let (next, y) = self.push(q, &at, &x, a);
                at = next;
                x = y;
                if x.is_empty() {
                    break;
                }
            }
            let acc = by_end.entry(at).or_default();
            add_scaled(acc, &x, &BigRational::from_integer((*c).into()));
        }
        by_end.values().all(|v| v.is_empty())
    }

    pub fn piece(&self, w: usize, d: &LatticeElement) -> Option<&Piece> {
        self.pieces.get(&(w, d.coeffs.clone()))
    }

    pub fn dim(&self, w: usize, d: &LatticeElement) -> usize {
        self.piece(w, d).map_or(0, Piece::dim)
    }

    /// Nonzero pieces ending at `w`, sorted by degree.
    pub fn pieces_at(&self, w: usize) -> Vec<&Piece> {
        let mut out: Vec<&Piece> = self.pieces.values().filter(|p| p.vertex == w).collect();
        out.sort_by(|a, b| a.degree.coeffs.cmp(&b.degree.coeffs));
        out
    }
}
