//! Lattice paths from `(1, k)` to `(n + 1, 1)`, the simplices they span in
//! `Delta_n x Delta_{k-1}`, and the check that these simplices are the
//! duals of the chart cones.

pub mod oracle;

use grading_lattice::exec::{map_ordered, Execution};
use grading_lattice::linalg;
use grading_lattice::{GradingContext, LatticeElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use toric_fan::{chart_basis, dual_cone_rays, enumerate_phis, NonincreasingMap};

/// `A(i)`: the i-th move right. `B(m)`: the m-th move down, from level
/// `k - m + 1` to `k - m` (columns of `Delta_{k-1}` are read in reverse).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A(usize),
    B(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePath {
    pub n: usize,
    pub k: usize,
    pub word: Vec<Letter>,
}

impl LatticePath {
    /// Validates that the word is a shuffle of `A1..An` and `B1..B_{k-1}`.
    pub fn new(n: usize, k: usize, word: Vec<Letter>) -> Option<Self> {
        let (mut a, mut b) = (0, 0);
        for l in &word {
            match *l {
                Letter::A(i) if i == a + 1 => a = i,
                Letter::B(m) if m == b + 1 => b = m,
                _ => return None,
            }
        }
        (a == n && b + 1 == k).then_some(LatticePath { n, k, word })
    }

    pub fn render(&self) -> String {
        self.word
            .iter()
            .map(|l| match l {
                Letter::A(i) => format!("A{i}"),
                Letter::B(m) => format!("B{m}"),
            })
            .collect()
    }

    /// Grid points `(column, level)` in visiting order.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut p = (1, self.k);
        let mut out = vec![p];
        for l in &self.word {
            match l {
                Letter::A(_) => p.0 += 1,
                Letter::B(_) => p.1 -= 1,
            }
            out.push(p);
        }
        out
    }
}

pub fn phi_to_path(phi: &NonincreasingMap, k: usize) -> LatticePath {
    let n = phi.n();
    let mut word = Vec::with_capacity(n + k - 1);
    let mut level = k;
    let mut b = 0;
    for i in 1..=n {
        while level > phi.at(i) {
            b += 1;
            word.push(Letter::B(b));
            level -= 1;
        }
        word.push(Letter::A(i));
    }
    while level > 1 {
        b += 1;
        word.push(Letter::B(b));
        level -= 1;
    }
    LatticePath { n, k, word }
}

/// `phi(i)` is the level of the i-th horizontal segment.
pub fn path_to_phi(path: &LatticePath) -> NonincreasingMap {
    let mut level = path.k;
    let mut values = Vec::with_capacity(path.n);
    for l in &path.word {
        match l {
            Letter::A(_) => values.push(level),
            Letter::B(_) => level -= 1,
        }
    }
    NonincreasingMap { values }
}

/// Vertex set `{omega_{ij}}` of the simplex of a path, as `(i, j)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StaircaseSimplex {
    pub vertices: Vec<(usize, usize)>,
}

impl StaircaseSimplex {
    /// Vertex coordinates on the H-basis `(x1..xn, v1..vk)` of functionals.
    pub fn matrix(&self, n: usize, k: usize) -> Vec<Vec<i64>> {
        self.vertices
            .iter()
            .map(|&(i, j)| {
                let mut row = vec![0; n + k];
                if i <= n {
                    row[i - 1] = 1;
                }
                row[n + j - 1] = 1;
                row
            })
            .collect()
    }

    pub fn normalized_volume(&self, n: usize, k: usize) -> BigInt {
        linalg::det(&self.matrix(n, k)).abs()
    }
}

pub fn simplex_of_path(path: &LatticePath) -> StaircaseSimplex {
    StaircaseSimplex { vertices: path.points() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    /// `alpha_1 + .. + alpha_i <= beta_k + .. + beta_level`
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub i: usize,
    /// lower end of the beta range, `2 <= level <= k`
    pub level: usize,
    /// letter index of the corresponding move down
    pub b: usize,
    pub sign: Sign,
}

impl Inequality {
    /// The class `c` with the inequality reading `<v, c> >= 0`.
    pub fn as_pairing(&self, ctx: &GradingContext) -> LatticeElement {
        let c = ctx.c(self.i, self.level - 1);
        match self.sign {
            Sign::Le => c,
            Sign::Ge => -c,
        }
    }

    /// Evaluate at `(alpha, beta)` (length n + 1 and k); returns `lhs op rhs`.
    pub fn holds(&self, alpha: &[BigRational], beta: &[BigRational]) -> bool {
        let lhs: BigRational = alpha[..self.i].iter().sum();
        let rhs: BigRational = beta[self.level - 1..].iter().sum();
        match self.sign {
            Sign::Le => lhs <= rhs,
            Sign::Ge => lhs >= rhs,
        }
    }
}

/// One inequality per pair `(A_i, B_m)`, signed by precedence in the word.
pub fn inequality_description(path: &LatticePath) -> Vec<Inequality> {
    let pos = |l: Letter| path.word.iter().position(|&w| w == l).expect("letter in word");
    let mut out = Vec::new();
    for i in 1..=path.n {
        for b in 1..path.k {
            let sign = if pos(Letter::A(i)) < pos(Letter::B(b)) { Sign::Le } else { Sign::Ge };
            out.push(Inequality { i, level: path.k - b + 1, b, sign });
        }
    }
    out
}

/// Strict sample point of the product of simplices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplePoint {
    pub alpha: Vec<(i64, i64)>,
    pub beta: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Counterexample {
    NotUnimodular { phi: Vec<usize>, volume: String },
    RoundTrip { phi: Vec<usize> },
    Duality { phi: Vec<usize>, simplex: Vec<(usize, usize)>, rays: Vec<Option<(usize, usize)>> },
    Coverage { point: SamplePoint, containing: usize },
    InequalityMismatch { point: SamplePoint, phi: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangulationReport {
    pub n: usize,
    pub k: usize,
    pub simplex_count: usize,
    pub expected_count: usize,
    pub volume_sum: String,
    pub samples_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl TriangulationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.simplex_count == self.expected_count && self.volume_sum == self.expected_count.to_string()
    }
}

pub fn binomial(n: usize, r: usize) -> usize {
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Deterministic strict sample points: compositions on two grids with
/// coprime denominators, strided down to at most `limit` points, keeping
/// those whose partial sums never tie.
pub fn sample_points(n: usize, k: usize, limit: usize) -> Vec<SamplePoint> {
    fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
        if parts == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for first in 1..=total - (parts as i64 - 1) {
            for mut rest in compositions(total - first, parts - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let na = 2 * (n as i64 + 1) + 1;
    let nb = 2 * k as i64 + 3;
    let (na, nb) = if gcd(na, nb) == 1 { (na, nb) } else { (na, nb + 2) };
    let ca = compositions(na, n + 1);
    let cb = compositions(nb, k);
    let total = ca.len() * cb.len();
    let stride = total.div_ceil(limit.max(1)).max(1);
    let mut out = Vec::new();
    let mut idx = 0;
    while idx < total {
        let a = &ca[idx % ca.len()];
        let b = &cb[(idx / ca.len() + idx) % cb.len()];
        idx += stride;
        let strict = (1..=n).all(|i| {
            let sa: i64 = a[..i].iter().sum();
            (2..=k).all(|l| {
                let sb: i64 = b[l - 1..].iter().sum();
                sa * nb != sb * na
            })
        });
        if strict {
            out.push(SamplePoint { alpha: a.iter().map(|&x| (x, na)).collect(), beta: b.iter().map(|&x| (x, nb)).collect() });
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn rat((p, q): (i64, i64)) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Barycentric coordinates of a point in a unimodular simplex.
pub fn barycentric(simplex: &StaircaseSimplex, n: usize, k: usize, p: &SamplePoint) -> Option<Vec<BigRational>> {
    let inv = linalg::inverse(&simplex.matrix(n, k))?;
    Some(apply_inverse(&inv, n, p))
}

fn apply_inverse(inv: &[Vec<BigRational>], n: usize, p: &SamplePoint) -> Vec<BigRational> {
    let coords: Vec<BigRational> = p.alpha[..n].iter().chain(&p.beta).map(|&x| rat(x)).collect();
    (0..inv.len())
        .map(|j| {
            let mut s = BigRational::zero();
            for (i, c) in coords.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    s += c * &inv[i][j];
                }
            }
            s
        })
        .collect()
}

struct PerPhi {
    phi: NonincreasingMap,
    path: LatticePath,
    volume: BigInt,
    inverse: Option<Vec<Vec<BigRational>>>,
    issues: Vec<Counterexample>,
}

fn check_phi(ctx: &GradingContext, phi: &NonincreasingMap) -> PerPhi {
    let mut issues = Vec::new();
    let path = phi_to_path(phi, ctx.k);
    if path_to_phi(&path) != *phi || LatticePath::new(ctx.n, ctx.k, path.word.clone()).is_none() {
        issues.push(Counterexample::RoundTrip { phi: phi.values.clone() });
    }
    let simplex = simplex_of_path(&path);
    let volume = simplex.normalized_volume(ctx.n, ctx.k);
    if volume != BigInt::from(1) {
        issues.push(Counterexample::NotUnimodular { phi: phi.values.clone(), volume: volume.to_string() });
    }
    let chart = chart_basis(ctx, phi);
    let rays: Vec<Option<(usize, usize)>> = match dual_cone_rays(ctx, &chart) {
        Ok(r) => r.iter().map(|v| v.as_omega()).collect(),
        Err(_) => vec![None],
    };
    let want: BTreeSet<(usize, usize)> = simplex.vertices.iter().copied().collect();
    let got: BTreeSet<(usize, usize)> = rays.iter().flatten().copied().collect();
    if rays.iter().any(|r| r.is_none()) || got != want || rays.len() != want.len() {
        issues.push(Counterexample::Duality { phi: phi.values.clone(), simplex: simplex.vertices.clone(), rays });
    }
    let inverse = linalg::inverse(&simplex.matrix(ctx.n, ctx.k));
    PerPhi { phi: phi.clone(), path, volume, inverse, issues }
}

/// Full check at `(n, k)` with at most `sample_limit` coverage points.
pub fn triangulation_check(n: usize, k: usize, sample_limit: usize, exec: Execution) -> TriangulationReport {
    let ctx = GradingContext::new(n, k);
    let phis = enumerate_phis(n, k);
    let per: Vec<PerPhi> = map_ordered(exec, &phis, |phi| check_phi(&ctx, phi));
    let mut counterexamples: Vec<Counterexample> = per.iter().flat_map(|p| p.issues.clone()).collect();
    let volume_sum: BigInt = per.iter().map(|p| p.volume.clone()).sum();
    let points = sample_points(n, k, sample_limit);
    let cover = map_ordered(exec, &points, |pt| {
        let mut containing = Vec::new();
        for (s, p) in per.iter().enumerate() {
            if let Some(inv) = &p.inverse {
                if apply_inverse(inv, n, pt).iter().all(|x| !x.is_negative()) {
                    containing.push(s);
                }
            }
        }
        let mut issues = Vec::new();
        if containing.len() != 1 {
            issues.push(Counterexample::Coverage { point: pt.clone(), containing: containing.len() });
        } else {
            let alpha: Vec<BigRational> = pt.alpha.iter().map(|&x| rat(x)).collect();
            let beta: Vec<BigRational> = pt.beta.iter().map(|&x| rat(x)).collect();
            let p = &per[containing[0]];
            if !inequality_description(&p.path).iter().all(|q| q.holds(&alpha, &beta)) {
                issues.push(Counterexample::InequalityMismatch { point: pt.clone(), phi: p.phi.values.clone() });
            }
        }
        issues
    });
    counterexamples.extend(cover.into_iter().flatten());
    TriangulationReport {
        n,
        k,
        simplex_count: per.len(),
        expected_count: binomial(n + k - 1, n),
        volume_sum: volume_sum.to_string(),
        samples_checked: points.len(),
        counterexamples,
    }
}
