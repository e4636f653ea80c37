//! The generating matrix factorizations and their Koszul factor lists.
//!
//! Every object is a tensor product of rank-one factors `{a_r, b_r}`, one
//! per position `r = 1..k`, with `a_r b_r = U_r V_r`. Away from the
//! special positions of a component the factor is `{U_r, V_r}`. At a
//! special position `a_r = U_r * (product of pieces)`, where a piece is a
//! pulled-back homogeneous coordinate `z0(i)`, `z1(i)` of the map
//! `p_i: Y -> P^1` (with `p_i^* z = C_i`) or the coordinate `X1`.

use grading_lattice::{GradingContext, LatticeElement};
use serde::Serialize;

use crate::geometry::{Character, ChartData, Geometry, Interior};
use crate::KoszulError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ObjectId {
    /// `P_i` for `n = 1`.
    P1(usize),
    /// `P_ij`, `k >= i > j >= 0`.
    P(usize, usize),
    /// `Q_j`, `0 <= j <= k`.
    Q(usize),
}

impl ObjectId {
    pub fn name(&self) -> String {
        match *self {
            ObjectId::P1(i) => format!("P_{i}"),
            ObjectId::P(i, j) => format!("P_{i}_{j}"),
            ObjectId::Q(j) => format!("Q_{j}"),
        }
    }
}

/// A factor of `a_r`: `f_slot^* z0(i)`, `f_slot^* z1(i)` or `f_slot^* X1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Piece {
    Z0 { slot: usize, i: usize },
    Z1 { slot: usize, i: usize },
    X { slot: usize },
}

impl Piece {
    fn label(&self, n: usize) -> String {
        let f = |slot: usize| if n == 1 { String::new() } else { format!("f{slot}*") };
        match *self {
            Piece::Z0 { slot, i } => format!("{}z0({i})", f(slot)),
            Piece::Z1 { slot, i } => format!("{}z1({i})", f(slot)),
            Piece::X { slot: 1 } => "X1".to_string(),
            Piece::X { .. } => "X1X2".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulFactor {
    pub position: usize,
    pub pieces: Vec<Piece>,
    /// Display forms of the two entries.
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MFObject {
    pub id: ObjectId,
    pub name: String,
    pub factors: Vec<KoszulFactor>,
    /// `i` when the object is twisted by `f_1^* p_i^* O(-1)`.
    pub twist_index: Option<usize>,
    pub twist: Option<String>,
    pub shift: LatticeElement,
    pub support: String,
}

/// Special pieces of the `n = 1` component `R_i` pulled back along `f_slot`.
fn slot_pieces(k: usize, slot: usize, i: usize) -> Vec<(usize, Piece)> {
    if i == k {
        vec![(k, Piece::X { slot })]
    } else if i == 0 {
        vec![(1, Piece::Z1 { slot, i: 0 })]
    } else {
        vec![(i + 1, Piece::Z1 { slot, i }), (i, Piece::Z0 { slot, i })]
    }
}

fn factor_list(n: usize, k: usize, slots: &[(usize, usize)]) -> Vec<KoszulFactor> {
    let mut by_pos: Vec<Vec<Piece>> = vec![Vec::new(); k + 1];
    for &(slot, i) in slots {
        for (r, p) in slot_pieces(k, slot, i) {
            by_pos[r].push(p);
        }
    }
    let fs = |slot: usize| if n == 1 { String::new() } else { format!("f{slot}*") };
    (1..=k)
        .map(|r| {
            let pieces = by_pos[r].clone();
            let a = pieces.iter().map(|p| p.label(n)).chain([format!("U{r}")]).collect::<Vec<_>>().join("*");
            let b = match pieces.as_slice() {
                [] => format!("V{r}"),
                [Piece::Z1 { slot, i }] => format!("{}s1({i})", fs(*slot)),
                [Piece::Z0 { slot, i }] => format!("{}s2({i})", fs(*slot)),
                [Piece::X { slot }] if n == 1 => {
                    let _ = slot;
                    format!("C{}", k - 1)
                }
                [Piece::X { slot }] => format!("C{slot}{}", k - 1),
                _ => format!("s_{r}"),
            };
            KoszulFactor { position: r, pieces, a, b }
        })
        .collect()
}

/// The generating objects, `P_0..P_k` for `n = 1` and `P_ij`, `Q_j` for `n = 2`.
pub fn generators(ctx: &GradingContext, n: usize, k: usize) -> Result<Vec<MFObject>, KoszulError> {
    if !(1..=2).contains(&n) {
        return Err(KoszulError::Unsupported(format!("generators for n = {n}")));
    }
    let mut out = Vec::new();
    if n == 1 {
        for i in 0..=k {
            out.push(MFObject {
                id: ObjectId::P1(i),
                name: ObjectId::P1(i).name(),
                factors: factor_list(1, k, &[(1, i)]),
                twist_index: None,
                twist: None,
                shift: ctx.zero(),
                support: format!("R_{i}"),
            });
        }
        return Ok(out);
    }
    for i in 1..=k {
        for j in 0..i {
            let twist_index = (i < k).then_some(i);
            out.push(MFObject {
                id: ObjectId::P(i, j),
                name: ObjectId::P(i, j).name(),
                factors: factor_list(2, k, &[(1, i), (2, j)]),
                twist_index,
                twist: twist_index.map(|i| format!("f1*p{i}*O(-1)")),
                shift: ctx.zero(),
                support: format!("R_{i}_{j}"),
            });
        }
    }
    for j in 0..=k {
        out.push(MFObject {
            id: ObjectId::Q(j),
            name: ObjectId::Q(j).name(),
            factors: factor_list(2, k, &[(2, j)]),
            twist_index: None,
            twist: None,
            shift: ctx.zero(),
            support: format!("R_*_{j}"),
        });
    }
    Ok(out)
}

/// A monomial `chi * U^u` on a chart: a character of `H` and `U`-exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mono {
    pub ch: Character,
    pub u: Vec<i64>,
}

impl Mono {
    pub fn one(ctx: &GradingContext) -> Self {
        Mono { ch: vec![0; ctx.n + ctx.k], u: vec![0; ctx.k] }
    }

    pub fn is_one(&self) -> bool {
        self.ch.iter().all(|&c| c == 0) && self.u.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono { ch: self.ch.iter().zip(&o.ch).map(|(a, b)| a + b).collect(), u: self.u.iter().zip(&o.u).map(|(a, b)| a + b).collect() }
    }

    pub fn div(&self, o: &Mono) -> Mono {
        Mono { ch: self.ch.iter().zip(&o.ch).map(|(a, b)| a - b).collect(), u: self.u.iter().zip(&o.u).map(|(a, b)| a - b).collect() }
    }

    /// Weight in the ambient lattice; `U_r` has weight `u_r = l0 - v_r`.
    pub fn weight(&self, ctx: &GradingContext) -> LatticeElement {
        let mut e = ctx.zero();
        for (c, x) in self.ch.iter().enumerate() {
            e.coeffs[1 + c] += x;
        }
        for (r, x) in self.u.iter().enumerate() {
            e += &ctx.u(r + 1).scale(*x);
        }
        e
    }

    pub fn render(&self, chart: &ChartData) -> String {
        let mut parts = Vec::new();
        if self.ch.iter().any(|&c| c != 0) {
            parts.push(chart.render(&self.ch));
        }
        for (r, x) in self.u.iter().enumerate() {
            match *x {
                0 => {}
                1 => parts.push(format!("U{}", r + 1)),
                x => parts.push(format!("U{}^{x}", r + 1)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A factor written in the coordinates of one chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub position: usize,
    pub a: Mono,
    pub b: Mono,
}

/// Which homogeneous coordinate of `p_i` (slot `a`) trivializes `O(1)` on
/// a chart: `Some(0)` for `z0`, `Some(1)` for `z1`.
fn trivializer(geo: &Geometry, chart: &ChartData, slot: usize, i: usize) -> Option<usize> {
    let c = geo.character(&geo.ctx.c(slot, i));
    if chart.is_regular(&c) {
        Some(0)
    } else if chart.is_regular(&c.iter().map(|x| -x).collect::<Vec<_>>()) {
        Some(1)
    } else {
        None
    }
}

/// Character of a piece after trivializing by the nonvanishing coordinate.
fn piece_character(geo: &Geometry, chart: &ChartData, p: &Piece) -> Result<Character, KoszulError> {
    let ctx = &geo.ctx;
    let err = || KoszulError::Geometry(format!("p-map is not defined on chart {}", chart.name));
    Ok(match *p {
        Piece::X { slot } => {
            let mut e = ctx.x(1);
            if slot == 2 {
                e += &ctx.x(2);
            }
            geo.character(&e)
        }
        Piece::Z0 { slot, i } | Piece::Z1 { slot, i } => {
            let t = trivializer(geo, chart, slot, i).ok_or_else(err)?;
            let c = geo.character(&ctx.c(slot, i));
            match (p, t) {
                (Piece::Z0 { .. }, 0) | (Piece::Z1 { .. }, 1) => vec![0; c.len()],
                (Piece::Z1 { .. }, 0) => c,
                _ => c.iter().map(|x| -x).collect(),
            }
        }
    })
}

/// Components whose union is the support.
pub fn support_components(obj: &MFObject, k: usize) -> Vec<(usize, usize)> {
    match obj.id {
        ObjectId::P1(i) => vec![(i, 0)],
        ObjectId::P(i, j) => vec![(i, j)],
        ObjectId::Q(j) => (j..=k).map(|i| (i, j)).collect(),
    }
}

pub fn support_interiors(geo: &Geometry, obj: &MFObject) -> Vec<Interior> {
    support_components(obj, geo.ctx.k).into_iter().map(|(i, j)| geo.component(i, j)).collect()
}

/// Whether the support meets chart `c`.
pub fn present_on(geo: &Geometry, obj: &MFObject, c: usize) -> bool {
    support_interiors(geo, obj).iter().any(|w| geo.vanishing(c, w).is_some())
}

/// The factor list evaluated on chart `c`: these are the localization
/// substitutions, e.g. `f2*s1(j) -> C_{2,j+1}^{-1}` where `z0` trivializes.
pub fn local_factors(geo: &Geometry, obj: &MFObject, c: usize) -> Result<Vec<LocalFactor>, KoszulError> {
    let ctx = &geo.ctx;
    let chart = &geo.charts[c];
    let mut out = Vec::new();
    for f in &obj.factors {
        let mut a = Mono::one(ctx);
        a.u[f.position - 1] = 1;
        for p in &f.pieces {
            let ch = piece_character(geo, chart, p)?;
            a = a.mul(&Mono { ch, u: vec![0; ctx.k] });
        }
        let mut uv = Mono::one(ctx);
        uv.u[f.position - 1] = 1;
        uv.ch = geo.character(&ctx.v(f.position));
        let b = uv.div(&a);
        if !chart.is_regular(&a.ch) || !chart.is_regular(&b.ch) {
            return Err(KoszulError::Geometry(format!("factor {{{}, {}}} of {} is not regular on {}", f.a, f.b, obj.name, chart.name)));
        }
        out.push(LocalFactor { position: f.position, a, b });
    }
    Ok(out)
}

/// Weight of the section of `O(1)` trivializing the twist on a chart.
pub fn twist_weight(geo: &Geometry, obj: &MFObject, c: usize) -> Result<LatticeElement, KoszulError> {
    let ctx = &geo.ctx;
    let Some(i) = obj.twist_index else { return Ok(ctx.zero()) };
    match trivializer(geo, &geo.charts[c], 1, i) {
        Some(0) => Ok(ctx.zero()),
        Some(_) => Ok(ctx.c(1, i)),
        None => Err(KoszulError::Geometry(format!("twist of {} undefined on {}", obj.name, geo.charts[c].name))),
    }
}
