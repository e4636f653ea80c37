//! Toric side of the construction: nonincreasing maps, the bases `S_phi`,
//! dual cones, monomial projections and the component model of the
//! special fiber for `n <= 2`.

mod components;

pub use components::*;

use grading_lattice::exec::{map_ordered, Execution};
use grading_lattice::linalg;
use grading_lattice::{GradingContext, LatticeElement};
use num_traits::{One, Signed};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("element is not in the cone; coefficients {0:?}")]
    NotInCone(Vec<i64>),
    #[error("chart basis is not unimodular")]
    NotUnimodular,
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

/// `phi: [1, n] -> [1, k]` with `phi(1) >= .. >= phi(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NonincreasingMap {
    pub values: Vec<usize>,
}

impl NonincreasingMap {
    pub fn new(values: Vec<usize>, k: usize) -> Option<Self> {
        let ok = !values.is_empty() && values.windows(2).all(|w| w[0] >= w[1]) && values.iter().all(|&v| (1..=k).contains(&v));
        ok.then_some(NonincreasingMap { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `phi(i)` with 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }
}

/// All nonincreasing maps, lexicographically sorted.
pub fn enumerate_phis(n: usize, k: usize) -> Vec<NonincreasingMap> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<NonincreasingMap>) {
        if cur.len() == n {
            out.push(NonincreasingMap { values: cur.clone() });
            return;
        }
        for v in 1..=max {
            cur.push(v);
            rec(n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Kind of a generator of `S_phi`, in the fixed ordering used by [`chart_basis`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisSymbol {
    V(usize),
    X(usize),
    MinusC(usize, usize),
    C(usize, usize),
}

impl BasisSymbol {
    /// Coordinate label on the chart; `C_{1k}^-1` reads `X1` and `C_{n0}` reads `X_{n+1}`.
    pub fn label(&self, ctx: &GradingContext) -> String {
        match *self {
            BasisSymbol::MinusC(1, j) if j == ctx.k => "X1".to_string(),
            BasisSymbol::C(i, 0) if i == ctx.n => format!("X{}", ctx.n + 1),
            BasisSymbol::V(j) => format!("V{j}"),
            BasisSymbol::X(i) => format!("X{i}"),
            BasisSymbol::MinusC(i, j) => format!("C{i}{j}^-1"),
            BasisSymbol::C(i, j) => format!("C{i}{j}"),
        }
    }

    pub fn class(&self, ctx: &GradingContext) -> LatticeElement {
        match *self {
            BasisSymbol::V(j) => ctx.v(j),
            BasisSymbol::X(i) => ctx.x(i),
            BasisSymbol::MinusC(i, j) => -ctx.c(i, j),
            BasisSymbol::C(i, j) => ctx.c(i, j),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub phi: NonincreasingMap,
    pub symbols: Vec<BasisSymbol>,
    pub basis: Vec<LatticeElement>,
    pub labels: Vec<String>,
}

/// `S_phi`: v's off the image, then `x_{i+1}` on level sets, then `-c_{i,phi(i)}`
/// at the start of a level set, then `c_{i,phi(i)-1}` at its end.
pub fn chart_basis(ctx: &GradingContext, phi: &NonincreasingMap) -> Chart {
    assert_eq!(phi.n(), ctx.n, "phi has wrong length");
    let n = ctx.n;
    let mut symbols = Vec::with_capacity(n + ctx.k);
    for j in 1..=ctx.k {
        if !phi.values.contains(&j) {
            symbols.push(BasisSymbol::V(j));
        }
    }
    for i in 1..n {
        if phi.at(i) == phi.at(i + 1) {
            symbols.push(BasisSymbol::X(i + 1));
        }
    }
    for i in 1..=n {
        if i == 1 || phi.at(i - 1) > phi.at(i) {
            symbols.push(BasisSymbol::MinusC(i, phi.at(i)));
        }
    }
    for i in 1..=n {
        if i == n || phi.at(i + 1) < phi.at(i) {
            symbols.push(BasisSymbol::C(i, phi.at(i) - 1));
        }
    }
    let basis = symbols.iter().map(|s| s.class(ctx)).collect();
    let labels = symbols.iter().map(|s| s.label(ctx)).collect();
    Chart { phi: phi.clone(), symbols, basis, labels }
}

/// H-coordinates `(x1..xn, v1..vk)` of each element, as matrix rows.
pub fn h_matrix(elems: &[LatticeElement]) -> Vec<Vec<i64>> {
    elems.iter().map(|e| e.coeffs[1..].to_vec()).collect()
}

/// Whether the elements form a lattice basis of `H`.
pub fn is_unimodular_set(ctx: &GradingContext, elems: &[LatticeElement]) -> bool {
    if elems.len() != ctx.n + ctx.k || elems.iter().any(|e| e.l0_coeff() != 0) {
        return false;
    }
    linalg::det(&h_matrix(elems)).abs().is_one()
}

pub fn is_unimodular(ctx: &GradingContext, chart: &Chart) -> bool {
    is_unimodular_set(ctx, &chart.basis)
}

/// Coefficients of `e` in the chart basis, when all are nonnegative.
pub fn express_nonneg(ctx: &GradingContext, chart: &Chart, e: &LatticeElement) -> Result<Vec<i64>, FanError> {
    if !is_unimodular(ctx, chart) {
        return Err(FanError::NotUnimodular);
    }
    let m = h_matrix(&chart.basis);
    let inv = linalg::inverse_integral(&m).ok_or(FanError::NotUnimodular)?;
    let target = &e.coeffs[1..];
    let coeffs: Vec<i64> = (0..m.len()).map(|j| target.iter().enumerate().map(|(i, t)| t * inv[i][j]).sum()).collect();
    if coeffs.iter().all(|&c| c >= 0) {
        Ok(coeffs)
    } else {
        Err(FanError::NotInCone(coeffs))
    }
}

/// A functional on `H` in hyperplane coordinates: `alpha` on `x1..x_{n+1}`,
/// `beta` on `v1..vk`, with `sum alpha = sum beta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DualVector {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

impl DualVector {
    /// `omega_{ij} = e_i + f_j`.
    pub fn omega(ctx: &GradingContext, i: usize, j: usize) -> Self {
        let mut alpha = vec![0; ctx.n + 1];
        let mut beta = vec![0; ctx.k];
        alpha[i - 1] = 1;
        beta[j - 1] = 1;
        DualVector { alpha, beta }
    }

    /// The `(i, j)` with `self = omega_{ij}`, if any.
    pub fn as_omega(&self) -> Option<(usize, usize)> {
        let unit = |v: &[i64]| {
            (v.iter().filter(|&&c| c == 1).count() == 1 && v.iter().all(|&c| c == 0 || c == 1)).then(|| v.iter().position(|&c| c == 1).unwrap() + 1)
        };
        Some((unit(&self.alpha)?, unit(&self.beta)?))
    }

    pub fn pair(&self, ctx: &GradingContext, e: &LatticeElement) -> i64 {
        let mut s = 0;
        for i in 1..=ctx.n {
            s += self.alpha[i - 1] * e.coeffs[i];
        }
        for j in 1..=ctx.k {
            s += self.beta[j - 1] * e.coeffs[ctx.n + j];
        }
        s
    }
}

/// The dual basis to `S_phi`, one ray per basis element, in basis order.
pub fn dual_cone_rays(ctx: &GradingContext, chart: &Chart) -> Result<Vec<DualVector>, FanError> {
    let m = h_matrix(&chart.basis);
    let inv = linalg::inverse_integral(&m).ok_or(FanError::NotUnimodular)?;
    // ray a has values inv[.][a] on the coordinate basis
    let d = m.len();
    Ok((0..d)
        .map(|a| {
            let vals: Vec<i64> = (0..d).map(|c| inv[c][a]).collect();
            let mut alpha = vals[..ctx.n].to_vec();
            let beta = vals[ctx.n..].to_vec();
            let last = beta.iter().sum::<i64>() - alpha.iter().sum::<i64>();
            alpha.push(last);
            DualVector { alpha, beta }
        })
        .collect())
}

/// Every chart for `(n, k)`, in `enumerate_phis` order.
pub fn all_charts(ctx: &GradingContext) -> Vec<Chart> {
    all_charts_with(ctx, Execution::default())
}

pub fn all_charts_with(ctx: &GradingContext, exec: Execution) -> Vec<Chart> {
    map_ordered(exec, &enumerate_phis(ctx.n, ctx.k), |p| chart_basis(ctx, p))
}

/// A monomial pullback between tori, recorded on coordinate names and on classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialMap {
    pub source: GradingContext,
    pub target: GradingContext,
    /// source coordinate label -> product of target coordinates with exponents
    pub images: Vec<(String, Vec<(String, i64)>)>,
    /// image of each source H-basis element (`x1..xn, v1..vk`) as a target class
    pub class_images: Vec<LatticeElement>,
}

impl MonomialMap {
    /// Class of the pullback of a monomial with class `e`.
    pub fn pull_class(&self, e: &LatticeElement) -> LatticeElement {
        let mut out = self.target.zero();
        out.coeffs[0] = e.coeffs[0];
        for (p, img) in self.class_images.iter().enumerate() {
            out += &img.scale(e.coeffs[p + 1]);
        }
        out
    }
}

/// `f_a: Y_{n,k} -> Y_{1,k}`: `V_i -> V_i`, `C_i -> C_{ai}`, `X_1 -> X_1..X_a`,
/// `X_2 -> X_{a+1}..X_{n+1}`.
pub fn projection_map(n: usize, k: usize, a: usize) -> Result<MonomialMap, FanError> {
    if !(1..=n).contains(&a) {
        return Err(FanError::Unsupported(format!("a={a} outside 1..={n}")));
    }
    let tgt = GradingContext::new(n, k);
    let src = GradingContext::new(1, k);
    let mut images = Vec::new();
    images.push(("X1".to_string(), (1..=a).map(|i| (format!("X{i}"), 1)).collect()));
    images.push(("X2".to_string(), (a + 1..=n + 1).map(|i| (format!("X{i}"), 1)).collect()));
    for i in 0..=k {
        images.push((format!("C{i}"), vec![(format!("C{a}{i}"), 1)]));
    }
    for i in 1..=k {
        images.push((format!("V{i}"), vec![(format!("V{i}"), 1)]));
    }
    let mut class_images = Vec::new();
    let mut xa = tgt.zero();
    for i in 1..=a {
        xa += &tgt.x(i);
    }
    class_images.push(xa);
    for j in 1..=k {
        class_images.push(tgt.v(j));
    }
    Ok(MonomialMap { source: src, target: tgt, images, class_images })
}
