//! The arc algebras as path algebras, and the resolutions of the stop arc.

use arc_quiver::{combination_vanishes, QuiverPresentation};
use grading_lattice::{GradingContext, LatticeElement};

use crate::{BuildError, PathAlgebra, TwistedComplex};

/// A quiver presentation read through arrow names.
#[derive(Debug, Clone, Copy)]
pub struct QuiverAlgebra<'a> {
    pub q: &'a QuiverPresentation,
}

impl<'a> QuiverAlgebra<'a> {
    pub fn new(q: &'a QuiverPresentation) -> Self {
        QuiverAlgebra { q }
    }

    /// Arrow indices of a word read from vertex `from`.
    pub fn path(&self, from: &str, letters: &[String]) -> Option<(usize, Vec<usize>)> {
        let v = self.q.vertex(from).ok()?;
        let mut at = v;
        let mut path = Vec::with_capacity(letters.len());
        for l in letters {
            let a = *self.q.outgoing(at).iter().find(|&&a| &self.q.arrows[a].name == l)?;
            path.push(a);
            at = self.q.arrows[a].target;
        }
        Some((v, path))
    }
}

impl PathAlgebra for QuiverAlgebra<'_> {
    fn ctx(&self) -> &GradingContext {
        &self.q.ctx
    }

    fn word(&self, from: &str, letters: &[String]) -> Option<(String, LatticeElement)> {
        let (v, path) = self.path(from, letters)?;
        let to = self.q.path_target(v, &path);
        Some((self.q.vertices[to].label.clone(), self.q.path_degree(&path)))
    }

    fn vanishes(&self, from: &str, terms: &[(i64, Vec<String>)]) -> bool {
        let mut paths = Vec::with_capacity(terms.len());
        let mut source = None;
        for (c, w) in terms {
            let Some((v, p)) = self.path(from, w) else { return false };
            source = Some(v);
            paths.push((*c, p));
        }
        source.is_none_or(|v| combination_vanishes(self.q, v, &paths))
    }
}

fn pair(a: usize, b: usize) -> String {
    format!("L_{}_{}", a.min(b), a.max(b))
}

fn l(m: usize) -> String {
    format!("l{m}")
}

fn r(m: usize) -> String {
    format!("r{m}")
}

fn build(alg: &QuiverAlgebra, name: &str, start: &str, shift: LatticeElement, steps: Vec<Vec<String>>) -> TwistedComplex {
    let steps: Vec<Vec<&str>> = steps.iter().map(|s| s.iter().map(String::as_str).collect()).collect();
    TwistedComplex::chain(alg, name, start, shift, &steps).unwrap_or_else(|e: BuildError| panic!("{name}: {e}"))
}

/// `L_0[1] -> .. -> L_k[1] -x1-> L_k -> .. -> L_0` over `A_{1,k}`.
pub fn build_T_resolution_n1(q: &QuiverPresentation) -> TwistedComplex {
    assert_eq!(q.n, 1, "needs the n = 1 arc algebra");
    let k = q.k;
    let mut steps: Vec<Vec<String>> = (1..=k).map(|m| vec![l(m)]).collect();
    steps.push(vec!["x1".to_string()]);
    steps.extend((1..=k).rev().map(|m| vec![r(m)]));
    build(&QuiverAlgebra::new(q), "T", "L_0", q.ctx.l0(), steps)
}

/// The resolution of `T x L_i`, `i <= k`, over `A_{2,k}`. The doubled
/// arrows are the two-letter paths `l_{i+1}` then `l_i` and `r_i` then
/// `r_{i+1}`, the only paths between their endpoints of that degree.
pub fn build_TxLi_resolution_n2(q: &QuiverPresentation, i: usize) -> TwistedComplex {
    assert_eq!(q.n, 2, "needs the n = 2 arc algebra");
    let k = q.k;
    assert!(i <= k, "i <= k");
    let ctx = q.ctx;
    let mut steps: Vec<Vec<String>> = Vec::new();
    let (start, shift) = if i == 0 { (pair(0, 1), ctx.l0().scale(2)) } else { (pair(0, i), ctx.l0()) };
    if i > 0 {
        steps.extend((1..i).map(|m| vec![l(m)]));
        steps.push(vec![l(i + 1), l(i)]);
    }
    steps.extend((i + 2..=k + 1).map(|m| vec![l(m)]));
    steps.push(vec!["x2".to_string()]);
    steps.extend((i + 2..=k + 1).rev().map(|m| vec![r(m)]));
    if i > 0 {
        steps.push(vec![r(i), r(i + 1)]);
        steps.extend((1..i).rev().map(|m| vec![r(m)]));
    }
    build(&QuiverAlgebra::new(q), &format!("T x L_{i}"), &start, shift, steps)
}

/// The resolution of `T x L_{k+1}` over `A_{2,k}`. The middle entry is
/// `x1 x2`: `x1` alone does not square to zero against `l_k`, since `x1`
/// is central and acts on `L_{k-1,k+1}`.
pub fn build_TxLk1_resolution_n2(q: &QuiverPresentation) -> TwistedComplex {
    bis(q, &["x1", "x2"])
}

/// The same chain with the middle entry `x1` alone. It fails `d^2 = 0`.
pub fn build_TxLk1_resolution_n2_x1_only(q: &QuiverPresentation) -> TwistedComplex {
    bis(q, &["x1"])
}

fn bis(q: &QuiverPresentation, middle: &[&str]) -> TwistedComplex {
    assert_eq!(q.n, 2, "needs the n = 2 arc algebra");
    let k = q.k;
    let mut steps: Vec<Vec<String>> = (1..=k).map(|m| vec![l(m)]).collect();
    steps.push(middle.iter().map(|s| s.to_string()).collect());
    steps.extend((1..=k).rev().map(|m| vec![r(m)]));
    build(&QuiverAlgebra::new(q), &format!("T x L_{}", k + 1), &pair(0, k + 1), q.ctx.l0(), steps)
}
