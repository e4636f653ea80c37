//! Factorwise Koszul reduction and the cohomology of the resulting supports.
//!
//! On each chart meeting both supports the Hom complex of two factor lists
//! is the tensor product over positions of the Hom complexes of single
//! factors, each reduced by one of the rules
//!
//! - (i)    `Hom({a,b},{a,b}) = O/(a,b)`
//! - (ii)   `Hom({bc,a},{ca,b}) = O(a)/(a,b)[-1]`
//! - (iii)  `Hom({c,ab},{ca,b}) = O/(b,c)` and `Hom({ca,b},{c,ab}) = O(-a)/(b,c)`
//!
//! so the local Hom sheaf is cyclic, `O/I` times a generator of known
//! degree. Global sections are the equalizer of the local sections over
//! the pairwise chart overlaps.

use std::collections::{BTreeMap, BTreeSet};

use grading_lattice::{collapse, CollapseMap, LatticeElement};
use serde::Serialize;

use crate::catalogue::{local_factors, present_on, twist_weight, LocalFactor, MFObject, Mono};
use crate::geometry::{pair, Geometry};
use crate::{BHomRow, BHomTable, KoszulError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rule {
    #[serde(rename = "i")]
    Equal,
    #[serde(rename = "ii")]
    Shifted,
    #[serde(rename = "iii-a")]
    Projection,
    #[serde(rename = "iii-b")]
    Multiplication,
}

/// One rule application, for the audit log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleApplication {
    pub chart: String,
    pub position: usize,
    pub rule: Rule,
    pub source: [String; 2],
    pub target: [String; 2],
    pub output: Vec<String>,
    pub degree: String,
}

/// `O/I` times a generator of degree `degree` on one chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalHom {
    pub chart: usize,
    pub ideal: Vec<Mono>,
    pub degree: LatticeElement,
    pub shift: i64,
}

/// Factor of a support cell after pushing forward to the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SupportFactor {
    /// Polynomial direction, named `U{r}`, `X1` or `X2`.
    AffineLine(String),
    ProjLine(i64),
    Point,
}

/// An irreducible component of the support: a torus orbit closure of the
/// base times the affine space of the surviving `U`'s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SupportCell {
    /// Rays of the orbit's cone, sorted.
    pub face: Vec<Vec<i64>>,
    pub base_dim: usize,
    pub free_u: Vec<usize>,
    /// Base directions with polynomial sections (`X1`, `X2`).
    pub affine_x: Vec<usize>,
    pub factors: Vec<SupportFactor>,
}

impl SupportCell {
    /// Variables of the pushed-forward ring living on this cell:
    /// `1..=k` for `U_r`, `k + a` for `X_a`.
    pub fn facet(&self, k: usize) -> BTreeSet<usize> {
        self.free_u.iter().copied().chain(self.affine_x.iter().map(|a| k + a)).collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportModel {
    pub from: String,
    pub to: String,
    pub shift: i64,
    /// Generator degree on the first chart of the cover.
    pub generator: LatticeElement,
    pub locals: Vec<LocalHom>,
    pub cells: Vec<SupportCell>,
    /// Twist of the hom line bundle along each support curve joining two charts.
    pub curve_twists: Vec<i64>,
    pub pattern: String,
    pub audit: Vec<RuleApplication>,
    #[serde(skip)]
    overlaps: BTreeMap<(usize, usize), Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Serialize)]
pub enum HomResult {
    Vanishing { from: String, to: String, reason: String, audit: Vec<RuleApplication> },
    Support(Box<SupportModel>),
}

fn divides_on(rays: &[Vec<i64>], g: &Mono, m: &Mono) -> bool {
    let q = m.div(g);
    q.u.iter().all(|&x| x >= 0) && rays.iter().all(|r| pair(r, &q.ch) >= 0)
}

/// Variables (chart coordinates, then `U`'s) with positive exponent.
fn variables(geo: &Geometry, c: usize, m: &Mono) -> BTreeSet<usize> {
    let d = geo.ctx.n + geo.ctx.k;
    let mut s: BTreeSet<usize> = geo.charts[c].exponents(&m.ch).iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i).collect();
    s.extend(m.u.iter().enumerate().filter(|(_, e)| **e > 0).map(|(r, _)| d + r));
    s
}

struct Reduction {
    rule: Rule,
    gens: [Mono; 2],
    degree: LatticeElement,
    shift: i64,
}

/// Match one pair of factors against the rules.
fn reduce(geo: &Geometry, c: usize, e: &LocalFactor, f: &LocalFactor) -> Option<Reduction> {
    let ctx = &geo.ctx;
    let rays = &geo.charts[c].rays;
    let div = |g: &Mono, m: &Mono| divides_on(rays, g, m);
    if e == f {
        return Some(Reduction { rule: Rule::Equal, gens: [e.a.clone(), e.b.clone()], degree: ctx.zero(), shift: 0 });
    }
    // E = {c, ab}, F = {ca, b}
    if div(&f.b, &e.b) && div(&e.a, &f.a) {
        return Some(Reduction { rule: Rule::Projection, gens: [f.b.clone(), e.a.clone()], degree: ctx.zero(), shift: 0 });
    }
    // E = {ca, b}, F = {c, ab}
    if div(&e.b, &f.b) && div(&f.a, &e.a) {
        let a = f.b.div(&e.b);
        return Some(Reduction { rule: Rule::Multiplication, gens: [e.b.clone(), f.a.clone()], degree: a.weight(ctx).scale(2), shift: 0 });
    }
    // E = {bc, a}, F = {ca, b}
    if div(&f.b, &e.a) && div(&e.b, &f.a) {
        return Some(Reduction { rule: Rule::Shifted, gens: [e.b.clone(), f.b.clone()], degree: ctx.l0() - e.b.weight(ctx).scale(2), shift: 1 });
    }
    None
}

fn render_pair(geo: &Geometry, c: usize, f: &LocalFactor) -> [String; 2] {
    let ch = &geo.charts[c];
    [f.a.render(ch), f.b.render(ch)]
}

/// Minimal sets of variables meeting every generator's support.
fn minimal_primes(supports: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    fn rec(supports: &[BTreeSet<usize>], chosen: &mut BTreeSet<usize>, out: &mut Vec<BTreeSet<usize>>) {
        match supports.iter().find(|s| s.is_disjoint(chosen)) {
            None => out.push(chosen.clone()),
            Some(s) => {
                for &v in s {
                    chosen.insert(v);
                    rec(supports, chosen, out);
                    chosen.remove(&v);
                }
            }
        }
    }
    let mut all = Vec::new();
    rec(supports, &mut BTreeSet::new(), &mut all);
    all.sort();
    all.dedup();
    let minimal: Vec<BTreeSet<usize>> = all.iter().filter(|p| !all.iter().any(|q| q != *p && q.is_subset(p))).cloned().collect();
    minimal
}

/// The Koszul reduction of `Hom(E, F)`.
pub fn koszul_hom(geo: &Geometry, e: &MFObject, f: &MFObject) -> Result<HomResult, KoszulError> {
    let ctx = geo.ctx;
    let mut audit = Vec::new();
    let mut locals = Vec::new();
    for c in 0..geo.charts.len() {
        if !present_on(geo, e, c) || !present_on(geo, f, c) {
            continue;
        }
        let le = local_factors(geo, e, c)?;
        let lf = local_factors(geo, f, c)?;
        let mut ideal = Vec::new();
        let mut degree = (twist_weight(geo, e, c)? - twist_weight(geo, f, c)?).scale(2);
        let mut shift = 0;
        for (x, y) in le.iter().zip(&lf) {
            let red = reduce(geo, c, x, y).ok_or_else(|| KoszulError::UnmatchedPattern {
                from: e.name.clone(),
                to: f.name.clone(),
                detail: format!("position {} on {}: {:?} vs {:?}", x.position, geo.charts[c].name, render_pair(geo, c, x), render_pair(geo, c, y)),
            })?;
            audit.push(RuleApplication {
                chart: geo.charts[c].name.clone(),
                position: x.position,
                rule: red.rule,
                source: render_pair(geo, c, x),
                target: render_pair(geo, c, y),
                output: red.gens.iter().map(|g| g.render(&geo.charts[c])).collect(),
                degree: red.degree.render(&ctx),
            });
            degree += &red.degree;
            shift += red.shift;
            ideal.extend(red.gens);
        }
        if ideal.iter().any(Mono::is_one) {
            continue;
        }
        let supports: Vec<BTreeSet<usize>> = ideal.iter().map(|g| variables(geo, c, g)).collect();
        for (a, sa) in supports.iter().enumerate() {
            for sb in &supports[a + 1..] {
                if !sa.is_disjoint(sb) {
                    return Err(KoszulError::UnmatchedPattern {
                        from: e.name.clone(),
                        to: f.name.clone(),
                        detail: format!("quotient generators on {} do not form a regular sequence", geo.charts[c].name),
                    });
                }
            }
        }
        locals.push(LocalHom { chart: c, ideal, degree, shift });
    }
    if locals.is_empty() {
        return Ok(HomResult::Vanishing { from: e.name.clone(), to: f.name.clone(), reason: "supports do not meet".to_string(), audit });
    }
    let shift = locals[0].shift;
    if locals.iter().any(|l| l.shift != shift) {
        return Err(KoszulError::UnmatchedPattern {
            from: e.name.clone(),
            to: f.name.clone(),
            detail: "homological shift differs between charts".to_string(),
        });
    }
    let mut overlaps = BTreeMap::new();
    for (a, la) in locals.iter().enumerate() {
        for lb in &locals[a + 1..] {
            let rays = geo.common_rays(la.chart, lb.chart);
            let diff = (&la.degree - &lb.degree).h_part();
            if diff.coeffs.iter().any(|x| x % 2 != 0) || rays.iter().any(|r| pair(r, &half(&diff)) != 0) {
                return Err(KoszulError::UnmatchedPattern {
                    from: e.name.clone(),
                    to: f.name.clone(),
                    detail: format!("generators on {} and {} differ by a non-unit", geo.charts[la.chart].name, geo.charts[lb.chart].name),
                });
            }
            overlaps.insert((la.chart, lb.chart), rays);
        }
    }
    let (cells, curve_twists) = cells_and_twists(geo, &locals, &overlaps);
    if let Some(t) = curve_twists.iter().find(|t| t.abs() > 1) {
        return Err(KoszulError::UnmatchedPattern { from: e.name.clone(), to: f.name.clone(), detail: format!("support curve with twist {t}") });
    }
    let pattern = describe(&cells, ctx.k, shift);
    Ok(HomResult::Support(Box::new(SupportModel {
        from: e.name.clone(),
        to: f.name.clone(),
        shift,
        generator: locals[0].degree.clone(),
        locals,
        cells,
        curve_twists,
        pattern,
        audit,
        overlaps,
    })))
}

fn half(e: &LatticeElement) -> Vec<i64> {
    e.coeffs[1..].iter().map(|x| x / 2).collect()
}

fn cells_and_twists(geo: &Geometry, locals: &[LocalHom], overlaps: &BTreeMap<(usize, usize), Vec<Vec<i64>>>) -> (Vec<SupportCell>, Vec<i64>) {
    let ctx = geo.ctx;
    let d = ctx.n + ctx.k;
    let mut cells: BTreeSet<SupportCell> = BTreeSet::new();
    for l in locals {
        let chart = &geo.charts[l.chart];
        let supports: Vec<BTreeSet<usize>> = l.ideal.iter().map(|g| variables(geo, l.chart, g)).collect();
        for p in minimal_primes(&supports) {
            let mut face: Vec<Vec<i64>> = p.iter().filter(|&&v| v < d).map(|&v| chart.rays[v].clone()).collect();
            face.sort();
            let free_u: Vec<usize> = (1..=ctx.k).filter(|r| !p.contains(&(d + r - 1))).collect();
            let star: Vec<usize> = (0..geo.charts.len()).filter(|&c| face.iter().all(|r| geo.charts[c].rays.contains(r))).collect();
            let affine_x: Vec<usize> = (1..=ctx.n)
                .filter(|&a| {
                    let x = geo.character(&ctx.x(a));
                    face.iter().all(|r| pair(r, &x) == 0) && star.iter().all(|&c| geo.charts[c].is_regular(&x))
                })
                .collect();
            let base_dim = d - face.len();
            let mut factors: Vec<SupportFactor> = free_u.iter().map(|r| SupportFactor::AffineLine(format!("U{r}"))).collect();
            factors.extend(affine_x.iter().map(|a| SupportFactor::AffineLine(format!("X{a}"))));
            for _ in affine_x.len()..base_dim {
                factors.push(SupportFactor::ProjLine(0));
            }
            if base_dim == 0 {
                factors.push(SupportFactor::Point);
            }
            cells.insert(SupportCell { face, base_dim, free_u, affine_x, factors });
        }
    }
    // twists along support curves between two charts of the cover
    let mut twists = Vec::new();
    let by_chart: BTreeMap<usize, &LocalHom> = locals.iter().map(|l| (l.chart, l)).collect();
    let mut cells: Vec<SupportCell> = cells.into_iter().collect();
    for ((a, b), rays) in overlaps {
        if rays.len() + 1 != d {
            continue;
        }
        let on_support = cells.iter().any(|cell| cell.face.iter().all(|r| rays.contains(r)));
        if !on_support {
            continue;
        }
        let rb = geo.charts[*b].rays.iter().find(|r| !rays.contains(r)).expect("facet has one extra ray");
        let m = half(&(&by_chart[a].degree - &by_chart[b].degree).h_part());
        let t = pair(rb, &m);
        twists.push(t);
        for cell in cells.iter_mut() {
            if cell.face.iter().all(|r| rays.contains(r)) && cell.base_dim >= 1 && t != 0 {
                if let Some(slot) = cell.factors.iter_mut().find(|f| **f == SupportFactor::ProjLine(0)) {
                    *slot = SupportFactor::ProjLine(t);
                }
            }
        }
    }
    (cells, twists)
}

fn describe(cells: &[SupportCell], k: usize, shift: i64) -> String {
    let mut facets: Vec<String> = cells
        .iter()
        .map(|c| {
            let vars: Vec<String> = c.facet(k).iter().map(|&v| if v <= k { format!("U{v}") } else { format!("X{}", v - k) }).collect();
            format!("dim{}[{}]", c.base_dim, vars.join(","))
        })
        .collect();
    facets.sort();
    facets.dedup();
    format!("{} shift {shift}", facets.join(" + "))
}

impl SupportModel {
    /// Dimension of global sections in degree `d`.
    pub fn dim_at(&self, geo: &Geometry, d: &LatticeElement) -> usize {
        let ctx = geo.ctx;
        let total = self.locals.len();
        // split d - g into U-exponents and a character for every local frame
        let rel: Vec<LatticeElement> = self.locals.iter().map(|l| d - &l.degree).collect();
        let l = rel[0].l0_coeff();
        if l < 0 || l % 2 != 0 || rel[0].coeffs[1..].iter().any(|x| x % 2 != 0) {
            return 0;
        }
        let l = l / 2;
        let mut dim = 0;
        for beta in compositions(l as usize, ctx.k) {
            let monos: Vec<Mono> = rel
                .iter()
                .map(|r| {
                    let mut ch = half(r);
                    for (r, b) in beta.iter().enumerate() {
                        ch[ctx.n + r] += *b as i64;
                    }
                    Mono { ch, u: beta.iter().map(|&b| b as i64).collect() }
                })
                .collect();
            let local: Vec<bool> = (0..total)
                .map(|a| {
                    let lh = &self.locals[a];
                    let rays = &geo.charts[lh.chart].rays;
                    rays.iter().all(|r| pair(r, &monos[a].ch) >= 0) && !lh.ideal.iter().any(|g| divides_on(rays, g, &monos[a]))
                })
                .collect();
            // union-find over charts whose sections agree on a nonzero overlap
            let mut parent: Vec<usize> = (0..total).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut killed = vec![false; total];
            for a in 0..total {
                for b in a + 1..total {
                    let key = (self.locals[a].chart, self.locals[b].chart);
                    let rays = &self.overlaps[&key];
                    let nonzero = |x: usize| local[x] && !self.locals[x].ideal.iter().any(|g| divides_on(rays, g, &monos[x]));
                    match (nonzero(a), nonzero(b)) {
                        (true, true) => {
                            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                            parent[ra] = rb;
                        }
                        (true, false) if !local[b] => killed[a] = true,
                        (false, true) if !local[a] => killed[b] = true,
                        _ => {}
                    }
                }
            }
            let mut dead = BTreeSet::new();
            for a in 0..total {
                if killed[a] {
                    dead.insert(find(&mut parent, a));
                }
            }
            let roots: BTreeSet<usize> = (0..total).filter(|&a| local[a]).map(|a| find(&mut parent, a)).collect();
            dim += roots.iter().filter(|r| !dead.contains(r)).count();
        }
        dim
    }

    /// Degrees where sections can live: every local generator times a
    /// standard monomial of its chart. Directions of non-positive collapse
    /// are capped at power 2; the equalizer decides what extends.
    pub fn candidate_degrees(&self, geo: &Geometry, f: &CollapseMap, bound: i64) -> Result<BTreeSet<Vec<i64>>, KoszulError> {
        let ctx = geo.ctx;
        if (1..=ctx.k).any(|r| collapse(f, &ctx.u(r)) <= 0) || (1..=ctx.n).any(|a| collapse(f, &ctx.x(a)) <= 0) {
            return Err(KoszulError::Window("collapse must be positive on every ring variable".to_string()));
        }
        let mut out = BTreeSet::new();
        for l in &self.locals {
            let chart = &geo.charts[l.chart];
            let d = ctx.n + ctx.k;
            let mut vars: Vec<(Mono, LatticeElement)> = Vec::new();
            for b in &chart.basis {
                vars.push((Mono { ch: geo.character(b), u: vec![0; ctx.k] }, b.scale(2)));
            }
            for r in 1..=ctx.k {
                let mut u = vec![0; ctx.k];
                u[r - 1] = 1;
                vars.push((Mono { ch: vec![0; d], u }, ctx.u(r).scale(2)));
            }
            // non-positive directions first, so the running value only grows afterwards
            vars.sort_by_key(|(_, deg)| collapse(f, deg) > 0);
            let rays = &chart.rays;
            let killed = |m: &Mono| l.ideal.iter().any(|g| divides_on(rays, g, m));
            let mut stack = vec![(0usize, Mono { ch: vec![0; d], u: vec![0; ctx.k] }, l.degree.clone())];
            while let Some((pos, mono, deg)) = stack.pop() {
                if pos == vars.len() {
                    if collapse(f, &deg) <= bound {
                        out.insert(deg.coeffs);
                    }
                    continue;
                }
                let (var, step) = &vars[pos];
                let positive = collapse(f, step) > 0;
                let (mut m, mut e) = (mono, deg);
                for power in 0.. {
                    if killed(&m) || (positive && collapse(f, &e) > bound) || (!positive && power > 2) {
                        break;
                    }
                    stack.push((pos + 1, m.clone(), e.clone()));
                    m = m.mul(var);
                    e += step;
                }
            }
        }
        Ok(out)
    }
}

/// All `k`-tuples of naturals summing to `l`.
pub fn compositions(l: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(l: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == k {
            cur.push(l);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=l {
            cur.push(a);
            rec(l - a, k, cur, out);
            cur.pop();
        }
    }
    rec(l, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Graded dimensions of `Hom(E, F)` from its support model.
pub fn support_cohomology(geo: &Geometry, result: &HomResult, f: &CollapseMap, bound: i64) -> Result<BHomTable, KoszulError> {
    let (from, to, sm) = match result {
        HomResult::Vanishing { from, to, .. } => return Ok(BHomTable { from: from.clone(), to: to.clone(), rows: Vec::new() }),
        HomResult::Support(sm) => (sm.from.clone(), sm.to.clone(), sm),
    };
    let mut rows = Vec::new();
    for coeffs in sm.candidate_degrees(geo, f, bound)? {
        let d = LatticeElement { coeffs };
        let dim = sm.dim_at(geo, &d);
        if dim > 0 {
            rows.push(BHomRow { degree: d, dim, basis: Vec::new() });
        }
    }
    rows.sort_by(|a, b| (collapse(f, &a.degree), &a.degree.coeffs).cmp(&(collapse(f, &b.degree), &b.degree.coeffs)));
    Ok(BHomTable { from, to, rows })
}
