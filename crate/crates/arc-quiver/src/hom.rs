use std::collections::{BTreeSet, HashMap};

use grading_lattice::exec::{map_ordered, Execution};
use grading_lattice::linalg::{sparse_from_i64, SparseEchelon};
use grading_lattice::{collapse, CollapseMap, GradingContext, LatticeElement};
use serde::Serialize;

use crate::module::LayeredModule;
use crate::{QuiverError, QuiverPresentation};

/// `l0 -> 1`, `x_i -> 2`, `v_j -> -1`: admissible, and every central element has value 4.
pub fn positive_functional(ctx: &GradingContext) -> Vec<i64> {
    let mut f = vec![0; ctx.rank()];
    f[0] = 1;
    for i in 1..=ctx.n {
        f[i] = 2;
    }
    for j in 1..=ctx.k {
        f[ctx.n + j] = -1;
    }
    f
}

/// `l0 -> 2n + 1`, `x_i -> 1`, `v_j -> 0`: every letter except `r_{k+1}`
/// has value at least 1, so the potential stays small.
pub fn length_functional(ctx: &GradingContext) -> Vec<i64> {
    let mut f = vec![0; ctx.rank()];
    f[0] = 2 * ctx.n as i64 + 1;
    for i in 1..=ctx.n {
        f[i] = 1;
    }
    f
}

/// A functional `f` with a vertex potential `p` such that every arrow
/// `a: s -> t` has `f(deg a) + p(t) - p(s) >= 1`.
///
/// Summing along a path of degree `d` from `v` to `w` bounds its length by
/// `f(d) + p(w) - p(v)`, so enumeration is finite.
#[derive(Debug, Clone, Default)]
pub struct Certificate {
    pub functional: Vec<i64>,
    pub potential: Vec<i64>,
}

impl Certificate {
    /// Solve for the potential by longest-path relaxation; fails iff some
    /// cycle has `f`-value below its length.
    pub fn new(q: &QuiverPresentation, functional: &[i64]) -> Result<Self, QuiverError> {
        let value = |e: &LatticeElement| -> i64 { functional.iter().zip(&e.coeffs).map(|(a, b)| a * b).sum() };
        let nv = q.vertices.len();
        let mut pot = vec![0i64; nv];
        for round in 0..=nv {
            let mut changed = false;
            for a in &q.arrows {
                let need = pot[a.source] + 1 - value(&a.degree);
                if pot[a.target] < need {
                    pot[a.target] = need;
                    changed = true;
                }
            }
            if !changed {
                return Ok(Certificate { functional: functional.to_vec(), potential: pot });
            }
            if round == nv {
                break;
            }
        }
        Err(QuiverError::NoCertificate)
    }

    pub fn value(&self, e: &LatticeElement) -> i64 {
        self.functional.iter().zip(&e.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn arrow_weight(&self, q: &QuiverPresentation, a: usize) -> i64 {
        let arrow = &q.arrows[a];
        self.value(&arrow.degree) + self.potential[arrow.target] - self.potential[arrow.source]
    }

    /// Upper bound on the length of a path of degree `d` from `v` to `w`.
    pub fn length_bound(&self, v: usize, w: usize, d: &LatticeElement) -> i64 {
        self.value(d) + self.potential[w] - self.potential[v]
    }
}

/// Strategy for a single graded piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Build `e_v A` piece by piece (see `LayeredModule`).
    #[default]
    Layered,
    /// Enumerate all paths of the degree and quotient by every relation
    /// instance, by union-find when the instances are monomials and binomials.
    Enumerate,
    /// As `Enumerate`, always with rational elimination.
    EnumerateEchelon,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomSpace {
    pub degree: LatticeElement,
    pub dim: usize,
    /// Surviving path normal forms, in traversal order.
    pub basis: Vec<Vec<usize>>,
    /// Paths of this degree avoiding every zero monomial.
    pub path_count: usize,
    pub relation_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomRow {
    pub degree: LatticeElement,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomTable {
    pub from: String,
    pub to: String,
    pub rows: Vec<HomRow>,
}

impl HomTable {
    pub fn dim_at(&self, d: &LatticeElement) -> usize {
        self.rows.iter().find(|r| &r.degree == d).map_or(0, |r| r.dim)
    }
}

/// Zero monomial relations indexed by their last arrow.
fn zero_words(q: &QuiverPresentation) -> HashMap<usize, Vec<Vec<usize>>> {
    let mut out: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for rel in &q.relations {
        if let [(_, p)] = rel.terms.as_slice() {
            out.entry(*p.last().expect("nonempty")).or_default().push(p.clone());
        }
    }
    out
}

/// Depth-first enumeration of paths from `v` to `w` whose weight sum stays
/// within `budget`; `accept` filters complete paths by degree.
///
/// Prefixes containing a zero monomial are dropped: every extension is zero
/// in the quotient as well.
fn enumerate(
    q: &QuiverPresentation,
    cert: &Certificate,
    v: usize,
    w: usize,
    budget: i64,
    max_l0: Option<i64>,
    mut accept: impl FnMut(&LatticeElement) -> bool,
) -> Vec<Vec<usize>> {
    let weights: Vec<i64> = (0..q.arrows.len()).map(|a| cert.arrow_weight(q, a)).collect();
    let zeros = zero_words(q);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut degree = q.ctx.zero();
    fn go(
        q: &QuiverPresentation,
        weights: &[i64],
        zeros: &HashMap<usize, Vec<Vec<usize>>>,
        cur: usize,
        w: usize,
        budget: i64,
        max_l0: Option<i64>,
        stack: &mut Vec<usize>,
        degree: &mut LatticeElement,
        out: &mut Vec<Vec<usize>>,
        accept: &mut dyn FnMut(&LatticeElement) -> bool,
    ) {
        if cur == w && accept(degree) {
            out.push(stack.clone());
        }
        for &a in q.outgoing(cur) {
            let wt = weights[a];
            if wt > budget {
                continue;
            }
            let arrow = &q.arrows[a];
            if let Some(m) = max_l0 {
                if degree.l0_coeff() + arrow.degree.l0_coeff() > m {
                    continue;
                }
            }
            stack.push(a);
            if zeros.get(&a).is_some_and(|ws| ws.iter().any(|z| stack.ends_with(z))) {
                stack.pop();
                continue;
            }
            *degree += &arrow.degree;
            go(q, weights, zeros, arrow.target, w, budget - wt, max_l0, stack, degree, out, accept);
            *degree -= &arrow.degree;
            stack.pop();
        }
    }
    // The suffix from the current vertex to `w` has nonnegative weight, so
    // pruning on the prefix is safe.
    go(q, &weights, &zeros, v, w, budget, max_l0, &mut stack, &mut degree, &mut out, &mut accept);
    out
}

struct UnionFind {
    parent: Vec<usize>,
    killed: Vec<bool>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), killed: vec![false; n] }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        self.killed[lo] |= self.killed[hi];
    }

    fn kill(&mut self, a: usize) {
        let r = self.find(a);
        self.killed[r] = true;
    }
}

/// All relation instances `p . rel . q` among `paths`, which must be every
/// path of one degree between two fixed vertices that avoids the zero
/// monomials. A term outside `paths` is zero and is dropped.
fn instances(q: &QuiverPresentation, paths: &[Vec<usize>]) -> Vec<Vec<(usize, i64)>> {
    let index: HashMap<&[usize], usize> = paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut by_first: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (r, rel) in q.relations.iter().enumerate() {
        for (t, (_, p)) in rel.terms.iter().enumerate() {
            by_first.entry(p[0]).or_default().push((r, t));
        }
    }
    let mut seen: BTreeSet<(usize, &[usize], &[usize])> = BTreeSet::new();
    let mut out = Vec::new();
    for p in paths {
        for pos in 0..p.len() {
            let Some(cands) = by_first.get(&p[pos]) else { continue };
            for &(r, t) in cands {
                let term = &q.relations[r].terms[t].1;
                if pos + term.len() > p.len() || &p[pos..pos + term.len()] != term.as_slice() {
                    continue;
                }
                if !seen.insert((r, &p[..pos], &p[pos + term.len()..])) {
                    continue;
                }
                let mut vec = Vec::new();
                for (c, other) in &q.relations[r].terms {
                    let mut full = p[..pos].to_vec();
                    full.extend_from_slice(other);
                    full.extend_from_slice(&p[pos + term.len()..]);
                    if let Some(&i) = index.get(full.as_slice()) {
                        vec.push((i, *c));
                    }
                }
                out.push(vec);
            }
        }
    }
    out
}

fn quotient(q: &QuiverPresentation, degree: LatticeElement, mut paths: Vec<Vec<usize>>, union_find: bool) -> HomSpace {
    paths.sort();
    paths.dedup();
    let inst = instances(q, &paths);
    let simple = inst.iter().all(|v| match v.as_slice() {
        [_] => true,
        [(_, a), (_, b)] => a + b == 0,
        _ => false,
    });
    let n = paths.len();
    let (survivors, rank) = if union_find && simple {
        let mut uf = UnionFind::new(n);
        for v in &inst {
            match v.as_slice() {
                [(i, _)] => uf.kill(*i),
                [(i, _), (j, _)] => uf.union(*i, *j),
                _ => unreachable!(),
            }
        }
        let mut survivors = Vec::new();
        for i in 0..n {
            if uf.find(i) == i && !uf.killed[i] {
                survivors.push(i);
            }
        }
        let rank = n - survivors.len();
        (survivors, rank)
    } else {
        let mut ech = SparseEchelon::new();
        for v in &inst {
            ech.insert(sparse_from_i64(v.iter().copied()));
        }
        let pivots: BTreeSet<usize> = ech.pivots().collect();
        ((0..n).filter(|i| !pivots.contains(i)).collect(), ech.rank())
    };
    HomSpace { degree, dim: survivors.len(), basis: survivors.into_iter().map(|i| paths[i].clone()).collect(), path_count: n, relation_rank: rank }
}

pub fn hom_dimension(q: &QuiverPresentation, v: usize, w: usize, d: &LatticeElement) -> HomSpace {
    hom_dimension_with(q, v, w, d, Method::Layered)
}

/// The degree-`d` piece of `Hom(v, w)`: paths of degree `d` modulo all
/// relation instances of that degree.
pub fn hom_dimension_with(q: &QuiverPresentation, v: usize, w: usize, d: &LatticeElement, method: Method) -> HomSpace {
    let cert = q.certificate();
    let budget = cert.length_bound(v, w, d);
    match method {
        Method::Layered => {
            let module = LayeredModule::compute(q, cert, v, budget.max(0));
            let (basis, path_count, relation_rank) = match module.piece(w, d) {
                Some(p) => (p.basis.clone(), p.column_count(), p.relation_rank),
                None => (Vec::new(), 0, 0),
            };
            HomSpace { degree: d.clone(), dim: basis.len(), basis, path_count, relation_rank }
        }
        Method::Enumerate | Method::EnumerateEchelon => {
            let paths = if budget < 0 { Vec::new() } else { enumerate(q, cert, v, w, budget, Some(d.l0_coeff()), |e| e == d) };
            let uf = method == Method::Enumerate;
            quotient(q, d.clone(), paths, uf)
        }
    }
}

/// Whether a combination of paths from `v` vanishes in the algebra.
pub fn combination_vanishes(q: &QuiverPresentation, v: usize, terms: &[(i64, Vec<usize>)]) -> bool {
    let cert = q.certificate();
    let weight = terms.iter().map(|(_, p)| p.iter().map(|&a| cert.arrow_weight(q, a)).sum::<i64>()).max().unwrap_or(0);
    LayeredModule::compute(q, cert, v, weight).combination_vanishes(q, terms)
}

fn table_from(q: &QuiverPresentation, module: &LayeredModule, w: usize, f: &CollapseMap, bound: i64) -> HomTable {
    let v = module.source;
    let mut rows: Vec<HomRow> = module
        .pieces_at(w)
        .into_iter()
        .filter(|p| (0..=bound).contains(&collapse(f, &p.degree)))
        .map(|p| HomRow { degree: p.degree.clone(), dim: p.dim(), basis: p.basis.iter().map(|b| q.render_path(v, b)).collect() })
        .collect();
    rows.sort_by(|a, b| (collapse(f, &a.degree), &a.degree.coeffs).cmp(&(collapse(f, &b.degree), &b.degree.coeffs)));
    HomTable { from: q.vertices[v].label.clone(), to: q.vertices[w].label.clone(), rows }
}

/// Every nonzero degree `d` of `Hom(v, w)` with `0 <= f(d) <= bound`.
///
/// Fails when `f` does not bound path length (for instance `f0`, under
/// which every central element has value 0).
pub fn dim_table(q: &QuiverPresentation, v: usize, w: usize, f: &CollapseMap, bound: i64) -> Result<HomTable, QuiverError> {
    let cert = Certificate::new(q, &f.values)?;
    let module = LayeredModule::compute(q, &cert, v, bound + cert.potential[w] - cert.potential[v]);
    Ok(table_from(q, &module, w, f, bound))
}

/// Tables for every target from one source, sharing one module computation.
pub fn dim_tables_from(q: &QuiverPresentation, v: usize, f: &CollapseMap, bound: i64) -> Result<Vec<HomTable>, QuiverError> {
    let cert = Certificate::new(q, &f.values)?;
    let top = cert.potential.iter().max().copied().unwrap_or(0);
    let module = LayeredModule::compute(q, &cert, v, bound + top - cert.potential[v]);
    Ok((0..q.vertices.len()).map(|w| table_from(q, &module, w, f, bound)).collect())
}

/// Tables for many vertex pairs, in input order.
pub fn dim_tables(
    q: &QuiverPresentation,
    pairs: &[(usize, usize)],
    f: &CollapseMap,
    bound: i64,
    exec: Execution,
) -> Result<Vec<HomTable>, QuiverError> {
    let sources: Vec<usize> = pairs.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
    let per_source = map_ordered(exec, &sources, |&v| dim_tables_from(q, v, f, bound));
    let mut by_source = HashMap::new();
    for (v, tables) in sources.into_iter().zip(per_source) {
        by_source.insert(v, tables?);
    }
    Ok(pairs.iter().map(|&(v, w)| by_source[&v][w].clone()).collect())
}
