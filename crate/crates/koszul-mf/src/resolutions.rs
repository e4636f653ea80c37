//! The B-side graded algebra as a [`PathAlgebra`] and the resolutions of
//! the skyscraper and divisor sheaves as iterated cones.
//!
//! Letters are closed-form generator names (`a_2`, `alpha(2,1)`,
//! `alpha(1,0).gamma(1,1)`, ...) and ring variables `U1..Uk`, `X1`, `X2`.
//! Every graded piece has dimension at most one and a product of basis
//! elements is the basis element of its target degree whenever that is
//! nonzero, so a word is nonzero iff each of its prefixes is.

use std::collections::BTreeMap;

use grading_lattice::{GradingContext, LatticeElement};
use twisted_complex::{BuildError, PathAlgebra, TwistedComplex};

use crate::catalogue::ObjectId;
use crate::closed::{closed_form, var_degree, var_name, ClosedForm};
use crate::KoszulError;

pub struct BAlgebra {
    ctx: GradingContext,
    n: usize,
    k: usize,
    forms: BTreeMap<(String, String), ClosedForm>,
    /// `(from, generator) -> to`
    letters: BTreeMap<(String, String), String>,
    ring: BTreeMap<String, LatticeElement>,
}

impl BAlgebra {
    pub fn new(n: usize, k: usize) -> Result<Self, KoszulError> {
        let ctx = GradingContext::new(n, k);
        let ids = crate::object_ids(n, k)?;
        let mut forms = BTreeMap::new();
        let mut letters = BTreeMap::new();
        for &a in &ids {
            for &b in &ids {
                if let Some(cf) = closed_form(&ctx, n, k, a, b) {
                    if a != b {
                        letters.insert((cf.from.clone(), cf.generator.clone()), cf.to.clone());
                    }
                    forms.insert((cf.from.clone(), cf.to.clone()), cf);
                }
            }
        }
        let ring = (1..=k + n).map(|v| (var_name(k, v), var_degree(&ctx, v))).collect();
        Ok(BAlgebra { ctx, n, k, forms, letters, ring })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn closed(&self, from: &str, to: &str) -> Option<&ClosedForm> {
        self.forms.get(&(from.to_string(), to.to_string()))
    }

    /// Degree of a ring variable `U1..Uk`, `X1`, `X2`.
    pub fn ring_degree(&self, letter: &str) -> Option<LatticeElement> {
        self.ring.get(letter).cloned()
    }

    /// The named generator of `Hom(from, to)`.
    pub fn generator(&self, from: ObjectId, to: ObjectId) -> Option<String> {
        self.closed(&from.name(), &to.name()).map(|cf| cf.generator.clone())
    }

    fn step(&self, from: &str, letter: &str) -> Option<(String, LatticeElement)> {
        if let Some(d) = self.ring.get(letter) {
            return Some((from.to_string(), d.clone()));
        }
        let to = self.letters.get(&(from.to_string(), letter.to_string()))?;
        let cf = self.closed(from, to)?;
        Some((to.clone(), cf.degree.clone()))
    }

    fn nonzero(&self, from: &str, letters: &[String]) -> Option<(String, LatticeElement)> {
        let mut cur = from.to_string();
        let mut deg = self.ctx.zero();
        for l in letters {
            let (to, d) = self.step(&cur, l)?;
            deg += &d;
            cur = to;
            if self.closed(from, &cur).map_or(0, |cf| cf.dim_at(&self.ctx, &deg)) == 0 {
                return None;
            }
        }
        Some((cur, deg))
    }
}

impl PathAlgebra for BAlgebra {
    fn ctx(&self) -> &GradingContext {
        &self.ctx
    }

    fn word(&self, from: &str, letters: &[String]) -> Option<(String, LatticeElement)> {
        let mut cur = from.to_string();
        let mut deg = self.ctx.zero();
        for l in letters {
            let (to, d) = self.step(&cur, l)?;
            deg += &d;
            cur = to;
        }
        Some((cur, deg))
    }

    fn vanishes(&self, from: &str, terms: &[(i64, Vec<String>)]) -> bool {
        let mut sums: BTreeMap<(String, Vec<i64>), i64> = BTreeMap::new();
        for (c, w) in terms {
            if let Some((to, d)) = self.nonzero(from, w) {
                *sums.entry((to, d.coeffs)).or_default() += c;
            }
        }
        sums.values().all(|&c| c == 0)
    }
}

struct Builder<'a> {
    alg: &'a BAlgebra,
    k: usize,
}

impl Builder<'_> {
    fn obj(&self, a: usize, b: usize) -> ObjectId {
        if self.alg.n == 1 {
            ObjectId::P1(a)
        } else if a == self.k + 1 {
            ObjectId::Q(b)
        } else {
            ObjectId::P(a, b)
        }
    }

    fn single(&self, id: ObjectId) -> TwistedComplex {
        let name = id.name();
        TwistedComplex::single(&name, &name, self.alg.ctx.zero())
    }

    fn gen(&self, from: ObjectId, to: ObjectId) -> Result<String, BuildError> {
        self.alg.generator(from, to).ok_or_else(|| BuildError::NotComposable { from: from.name(), word: to.name() })
    }

    fn label(tc: &TwistedComplex, p: usize) -> String {
        tc.objects[p].label.clone()
    }

    fn id(&self, label: &str) -> ObjectId {
        let parts: Vec<usize> = label[2..].split('_').map(|x| x.parse().expect("numeric label")).collect();
        match (label.as_bytes()[0], parts.as_slice()) {
            (b'Q', [j]) => ObjectId::Q(*j),
            (b'P', [i]) => ObjectId::P1(*i),
            (b'P', [i, j]) => ObjectId::P(*i, *j),
            _ => unreachable!("catalogue label"),
        }
    }

    /// `cone(x -> y)` on the generator from the object at `p` to the one at `q`.
    fn sew(&self, name: &str, x: &TwistedComplex, y: &TwistedComplex, p: usize, q: usize) -> Result<TwistedComplex, BuildError> {
        let g = self.gen(self.id(&Self::label(x, p)), self.id(&Self::label(y, q)))?;
        TwistedComplex::cone(self.alg, name, x, y, p, q, &[g.as_str()])
    }

    /// The chain on `objs` in display order, built from the right.
    fn descending(&self, name: &str, objs: &[ObjectId]) -> Result<TwistedComplex, BuildError> {
        let (last, rest) = objs.split_last().expect("nonempty chain");
        let mut tc = self.single(*last);
        for &o in rest.iter().rev() {
            tc = self.sew(name, &self.single(o), &tc, 0, 0)?;
        }
        tc.name = name.to_string();
        Ok(tc)
    }

    /// The chain on `objs` in display order, built from the left.
    fn ascending(&self, name: &str, objs: &[ObjectId]) -> Result<TwistedComplex, BuildError> {
        let mut tc = self.single(objs[0]);
        for &o in &objs[1..] {
            let last = tc.len() - 1;
            tc = self.sew(name, &tc, &self.single(o), last, 0)?;
        }
        tc.name = name.to_string();
        Ok(tc)
    }

    fn end_cone(&self, name: &str, x: &TwistedComplex, y: &TwistedComplex, word: &[&str]) -> Result<TwistedComplex, BuildError> {
        TwistedComplex::cone(self.alg, name, x, y, x.len() - 1, 0, word)
    }
}

/// B-side counterparts of the stop resolutions, with their recursive pieces.
///
/// `n = 1`: `R_minus_i = [P_0 -> ... -> P_i]`, `R_plus_i = [P_i -> ... -> P_0]`
/// and `O_p = cone(R_minus_k -X1-> R_plus_k)`.
///
/// `n = 2`, for each `i`: `P_{i,<=j} = [P_ij -> ... -> P_i0]`,
/// `P_{<=r,i} = [Q_i -> P_ki -> ... -> P_{r+1,i}]`, their primed reverses, the
/// sewn `P_{i,<=i}`, `P'_{i,<=i}` and `O_D_i(-1) = cone(P' -X2-> P)`; and
/// `O_D = cone([Q_0 -> ... -> Q_k] -X1X2-> [Q_k -> ... -> Q_0])`.
pub fn b_side_resolutions(alg: &BAlgebra) -> Result<Vec<TwistedComplex>, BuildError> {
    let k = alg.k;
    let b = Builder { alg, k };
    let mut out = Vec::new();
    if alg.n == 1 {
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for i in 0..=k {
            let up: Vec<ObjectId> = (0..=i).map(|a| b.obj(a, 0)).collect();
            let down: Vec<ObjectId> = up.iter().rev().copied().collect();
            minus.push(b.ascending(&format!("R_minus_{i}"), &up)?);
            plus.push(b.descending(&format!("R_plus_{i}"), &down)?);
        }
        let op = b.end_cone("O_p", &minus[k], &plus[k], &["X1"])?;
        out.extend(plus);
        out.extend(minus);
        out.push(op);
        return Ok(out);
    }
    for i in 0..=k {
        // [P_{i,i-1} -> ... -> P_i0]
        let row: Vec<ObjectId> = (0..i).rev().map(|j| b.obj(i, j)).collect();
        // [Q_i -> P_ki -> ... -> P_{i+1,i}]
        let col: Vec<ObjectId> = (i + 1..=k + 1).rev().map(|a| b.obj(a, i)).collect();
        for j in 0..i {
            out.push(b.descending(&format!("P_{i}_le_{j}"), &row[i - 1 - j..])?);
            let rev: Vec<ObjectId> = row[i - 1 - j..].iter().rev().copied().collect();
            out.push(b.ascending(&format!("P'_{i}_le_{j}"), &rev)?);
        }
        for r in (i..=k).rev() {
            let part = &col[..=k - r];
            out.push(b.ascending(&format!("P_le_{r}_{i}"), part)?);
            let rev: Vec<ObjectId> = part.iter().rev().copied().collect();
            out.push(b.descending(&format!("P'_le_{r}_{i}"), &rev)?);
        }
        let colc = b.ascending("col", &col)?;
        let colr = {
            let rev: Vec<ObjectId> = col.iter().rev().copied().collect();
            b.descending("col'", &rev)?
        };
        let (p, pp) = if i == 0 {
            (colc, colr)
        } else {
            let rowc = b.descending("row", &row)?;
            let rev: Vec<ObjectId> = row.iter().rev().copied().collect();
            let rowr = b.ascending("row'", &rev)?;
            (b.sew("", &colc, &rowc, colc.len() - 1, 0)?, b.sew("", &rowr, &colr, rowr.len() - 1, 0)?)
        };
        let mut p = p;
        p.name = format!("P_{i}_le_{i}");
        let mut pp = pp;
        pp.name = format!("P'_{i}_le_{i}");
        let d = b.end_cone(&format!("O_D_{i}(-1)"), &pp, &p, &["X2"])?;
        out.push(p);
        out.push(pp);
        out.push(d);
    }
    let up: Vec<ObjectId> = (0..=k).map(|j| b.obj(k + 1, j)).collect();
    let down: Vec<ObjectId> = up.iter().rev().copied().collect();
    let qa = b.ascending("Q_up", &up)?;
    let qd = b.descending("Q_down", &down)?;
    out.push(b.end_cone("O_D", &qa, &qd, &["X1", "X2"])?);
    Ok(out)
}
