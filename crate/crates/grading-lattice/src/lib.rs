//! Grading lattices for the symmetric-power mirror workbench.
//!
//! One ambient lattice with basis `(l0, x1..xn, v1..vk)` hosts both the
//! A-side grading group (pairs `(m, h)`) and the B-side group
//! `Z l0 + 2H`. The class `x_{n+1}` is eliminated through
//! `x_{n+1} = v1 + .. + vk - x1 - .. - xn`.

pub mod exec;
pub mod linalg;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("index out of range: {0}")]
    IndexError(String),
    #[error("cannot parse curve name {0:?}")]
    ParseError(String),
    #[error("element has nonzero l0 coefficient; expected an H-part")]
    NotHPart,
    #[error("dimension mismatch: expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
}

/// Fixed `(n, k)`; determines the ambient rank `1 + n + k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GradingContext {
    pub n: usize,
    pub k: usize,
}

impl GradingContext {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k >= 1, "n and k must be positive");
        GradingContext { n, k }
    }

    pub fn rank(&self) -> usize {
        1 + self.n + self.k
    }

    pub fn zero(&self) -> LatticeElement {
        LatticeElement { coeffs: vec![0; self.rank()] }
    }

    fn unit(&self, pos: usize) -> LatticeElement {
        let mut e = self.zero();
        e.coeffs[pos] = 1;
        e
    }

    pub fn l0(&self) -> LatticeElement {
        self.unit(0)
    }

    /// `x_i` for `1 <= i <= n + 1`.
    pub fn x(&self, i: usize) -> LatticeElement {
        assert!(i >= 1 && i <= self.n + 1, "x index {i} out of range");
        if i <= self.n {
            return self.unit(i);
        }
        let mut e = self.zero();
        for a in 1..=self.n {
            e.coeffs[a] = -1;
        }
        for j in 1..=self.k {
            e.coeffs[self.n + j] = 1;
        }
        e
    }

    /// `v_j` for `1 <= j <= k`.
    pub fn v(&self, j: usize) -> LatticeElement {
        assert!(j >= 1 && j <= self.k, "v index {j} out of range");
        self.unit(self.n + j)
    }

    /// `u_j = l0 - v_j`.
    pub fn u(&self, j: usize) -> LatticeElement {
        self.l0() - self.v(j)
    }

    /// `c_{ij} = v_k + .. + v_{j+1} - x_1 - .. - x_i`, `1 <= i <= n`, `0 <= j <= k`.
    pub fn c(&self, i: usize, j: usize) -> LatticeElement {
        assert!(i >= 1 && i <= self.n && j <= self.k, "c index ({i},{j}) out of range");
        let mut e = self.zero();
        for a in 1..=i {
            e.coeffs[a] -= 1;
        }
        for r in (j + 1)..=self.k {
            e.coeffs[self.n + r] += 1;
        }
        e
    }

    pub fn from_coeffs(&self, coeffs: Vec<i64>) -> Result<LatticeElement, LatticeError> {
        if coeffs.len() != self.rank() {
            return Err(LatticeError::RankMismatch { expected: self.rank(), got: coeffs.len() });
        }
        Ok(LatticeElement { coeffs })
    }

    /// Symbolic labels of the ambient basis in order.
    pub fn basis_labels(&self) -> Vec<String> {
        let mut out = vec!["l0".to_string()];
        out.extend((1..=self.n).map(|i| format!("x{i}")));
        out.extend((1..=self.k).map(|j| format!("v{j}")));
        out
    }

    pub fn check(&self, e: &LatticeElement) -> Result<(), LatticeError> {
        if e.coeffs.len() == self.rank() {
            Ok(())
        } else {
            Err(LatticeError::RankMismatch { expected: self.rank(), got: e.coeffs.len() })
        }
    }
}

/// Element of the ambient lattice in canonical coordinates (no `x_{n+1}`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeElement {
    pub coeffs: Vec<i64>,
}

impl LatticeElement {
    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn l0_coeff(&self) -> i64 {
        self.coeffs[0]
    }

    /// The element with its `l0`-coefficient cleared.
    pub fn h_part(&self) -> LatticeElement {
        let mut e = self.clone();
        e.coeffs[0] = 0;
        e
    }

    pub fn scale(&self, s: i64) -> LatticeElement {
        LatticeElement { coeffs: self.coeffs.iter().map(|&c| c.checked_mul(s).expect("lattice overflow")).collect() }
    }

    fn zip(&self, other: &LatticeElement, f: impl Fn(i64, i64) -> Option<i64>) -> LatticeElement {
        assert_eq!(self.rank(), other.rank(), "lattice rank mismatch");
        LatticeElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b).expect("lattice overflow")).collect() }
    }

    /// Render relative to a context, e.g. `l0 + 2x1 - 2v3`.
    pub fn render(&self, ctx: &GradingContext) -> String {
        let labels = ctx.basis_labels();
        let mut s = String::new();
        for (c, lab) in self.coeffs.iter().zip(&labels) {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if s.is_empty() {
                if *c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if *c < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                s.push_str(&mag.to_string());
            }
            s.push_str(lab);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl Add for LatticeElement {
    type Output = LatticeElement;
    fn add(self, o: LatticeElement) -> LatticeElement {
        self.zip(&o, i64::checked_add)
    }
}
impl<'a> Add<&'a LatticeElement> for &'a LatticeElement {
    type Output = LatticeElement;
    fn add(self, o: &LatticeElement) -> LatticeElement {
        self.zip(o, i64::checked_add)
    }
}
impl Sub for LatticeElement {
    type Output = LatticeElement;
    fn sub(self, o: LatticeElement) -> LatticeElement {
        self.zip(&o, i64::checked_sub)
    }
}
impl<'a> Sub<&'a LatticeElement> for &'a LatticeElement {
    type Output = LatticeElement;
    fn sub(self, o: &LatticeElement) -> LatticeElement {
        self.zip(o, i64::checked_sub)
    }
}
impl AddAssign<&LatticeElement> for LatticeElement {
    fn add_assign(&mut self, o: &LatticeElement) {
        *self = self.zip(o, i64::checked_add);
    }
}
impl SubAssign<&LatticeElement> for LatticeElement {
    fn sub_assign(&mut self, o: &LatticeElement) {
        *self = self.zip(o, i64::checked_sub);
    }
}
impl Neg for LatticeElement {
    type Output = LatticeElement;
    fn neg(self) -> LatticeElement {
        self.scale(-1)
    }
}
impl Mul<LatticeElement> for i64 {
    type Output = LatticeElement;
    fn mul(self, e: LatticeElement) -> LatticeElement {
        e.scale(self)
    }
}

/// Symbolic curve and weight names: `l0`, `x<i>`, `v<j>`, `u<j>`, `c_<i>_<j>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveName {
    L0,
    X(usize),
    V(usize),
    U(usize),
    C(usize, usize),
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveName::L0 => write!(f, "l0"),
            CurveName::X(i) => write!(f, "x{i}"),
            CurveName::V(j) => write!(f, "v{j}"),
            CurveName::U(j) => write!(f, "u{j}"),
            CurveName::C(i, j) => write!(f, "c_{i}_{j}"),
        }
    }
}

impl FromStr for CurveName {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::ParseError(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if s == "l0" {
            return Ok(CurveName::L0);
        }
        if let Some(rest) = s.strip_prefix("c_") {
            let (a, b) = rest.split_once('_').ok_or_else(bad)?;
            return Ok(CurveName::C(num(a)?, num(b)?));
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        match head {
            "x" => Ok(CurveName::X(num(tail)?)),
            "v" => Ok(CurveName::V(num(tail)?)),
            "u" => Ok(CurveName::U(num(tail)?)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CurveName {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CurveName {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Class of a named curve in canonical form.
pub fn curve_class(ctx: &GradingContext, name: CurveName) -> Result<LatticeElement, LatticeError> {
    let err = || LatticeError::IndexError(format!("{name} with n={}, k={}", ctx.n, ctx.k));
    match name {
        CurveName::L0 => Ok(ctx.l0()),
        CurveName::X(i) if (1..=ctx.n + 1).contains(&i) => Ok(ctx.x(i)),
        CurveName::V(j) if (1..=ctx.k).contains(&j) => Ok(ctx.v(j)),
        CurveName::U(j) if (1..=ctx.k).contains(&j) => Ok(ctx.u(j)),
        CurveName::C(i, j) if (1..=ctx.n).contains(&i) && j <= ctx.k => Ok(ctx.c(i, j)),
        _ => Err(err()),
    }
}

/// Parity homomorphism to `Z/2`: `l0 -> 1`, `x_i, u_j -> 0`, hence `v_j -> 1`.
pub fn parity(ctx: &GradingContext, e: &LatticeElement) -> u8 {
    let mut s = e.coeffs[0];
    for j in 1..=ctx.k {
        s += e.coeffs[ctx.n + j];
    }
    s.rem_euclid(2) as u8
}

/// Homomorphism from the ambient lattice to `Z`, given by basis values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseMap {
    pub values: Vec<i64>,
    pub admissible: bool,
}

impl CollapseMap {
    pub fn new(ctx: &GradingContext, values: Vec<i64>) -> Result<Self, LatticeError> {
        if values.len() != ctx.rank() {
            return Err(LatticeError::RankMismatch { expected: ctx.rank(), got: values.len() });
        }
        let admissible = values[0] == 1
            && (0..ctx.rank()).all(|p| {
                let e = ctx.unit(p);
                values[p].rem_euclid(2) as u8 == parity(ctx, &e)
            });
        Ok(CollapseMap { values, admissible })
    }

    /// The computational collapse: `l0 -> 1`, `x_i -> 0`, `u_j -> 0`, so `v_j -> 1`.
    pub fn f0(ctx: &GradingContext) -> Self {
        let mut values = vec![0; ctx.rank()];
        values[0] = 1;
        for j in 1..=ctx.k {
            values[ctx.n + j] = 1;
        }
        CollapseMap::new(ctx, values).expect("rank is consistent")
    }

    /// The ambient `l0`-coefficient. Sends every `h` in `H` to zero; this is
    /// the A-side grading in which `l_m, r_m` have degree 1 and `x`-loops 0.
    /// Not admissible (`v_j -> 0`).
    pub fn l0_coefficient(ctx: &GradingContext) -> Self {
        let mut values = vec![0; ctx.rank()];
        values[0] = 1;
        CollapseMap::new(ctx, values).expect("rank is consistent")
    }
}

pub fn collapse(f: &CollapseMap, e: &LatticeElement) -> i64 {
    f.values.iter().zip(&e.coeffs).map(|(a, b)| a * b).sum()
}

/// `(m, h) -> m l0 + 2h`.
pub fn grading_iso_a_to_b(ctx: &GradingContext, m: i64, h: &LatticeElement) -> Result<LatticeElement, LatticeError> {
    ctx.check(h)?;
    if h.l0_coeff() != 0 {
        return Err(LatticeError::NotHPart);
    }
    Ok(ctx.l0().scale(m) + h.scale(2))
}

/// Inverse of [`grading_iso_a_to_b`] on `Z l0 + 2H`.
pub fn grading_iso_b_to_a(e: &LatticeElement) -> Option<(i64, LatticeElement)> {
    if !in_lb(e) {
        return None;
    }
    let mut h = e.h_part();
    for c in h.coeffs.iter_mut() {
        *c /= 2;
    }
    Some((e.l0_coeff(), h))
}

/// Membership in `Z l0 + 2H`: all H-coordinates even.
pub fn in_lb(e: &LatticeElement) -> bool {
    e.coeffs[1..].iter().all(|c| c % 2 == 0)
}
