//! Toric charts of the compactified total space, as lattice bases of `H`.
//!
//! Characters are H-coordinate vectors `(x1..xn, v1..vk)`. A chart with
//! basis `S` has coordinates `y_m` of class `S_m`; its rays are the dual
//! basis, so the exponent of `y_m` in a character `chi` is `<chi, ray_m>`.

use grading_lattice::linalg;
use grading_lattice::{GradingContext, LatticeElement};
use toric_fan::{chart_basis, enumerate_phis};

use crate::KoszulError;

pub type Character = Vec<i64>;

#[derive(Debug, Clone)]
pub struct ChartData {
    pub name: String,
    pub basis: Vec<LatticeElement>,
    pub labels: Vec<String>,
    /// `rays[m][c]`: value of ray `m` on H-coordinate `c`.
    pub rays: Vec<Vec<i64>>,
}

pub fn pair(ray: &[i64], chi: &[i64]) -> i64 {
    ray.iter().zip(chi).map(|(a, b)| a * b).sum()
}

impl ChartData {
    fn new(ctx: &GradingContext, name: String, basis: Vec<LatticeElement>, labels: Vec<String>) -> Result<Self, KoszulError> {
        let m: Vec<Vec<i64>> = basis.iter().map(|e| e.coeffs[1..].to_vec()).collect();
        if m.len() != ctx.n + ctx.k {
            return Err(KoszulError::Geometry(format!("chart {name} has {} coordinates", m.len())));
        }
        let inv = linalg::inverse_integral(&m).ok_or_else(|| KoszulError::Geometry(format!("chart {name} is not unimodular")))?;
        let d = m.len();
        let rays = (0..d).map(|a| (0..d).map(|c| inv[c][a]).collect()).collect();
        Ok(ChartData { name, basis, labels, rays })
    }

    /// Exponents of `chi` in the chart coordinates.
    pub fn exponents(&self, chi: &[i64]) -> Vec<i64> {
        self.rays.iter().map(|r| pair(r, chi)).collect()
    }

    pub fn is_regular(&self, chi: &[i64]) -> bool {
        self.rays.iter().all(|r| pair(r, chi) >= 0)
    }

    /// Render a character as a Laurent monomial in the coordinates.
    pub fn render(&self, chi: &[i64]) -> String {
        let parts: Vec<String> = self
            .exponents(chi)
            .iter()
            .zip(&self.labels)
            .filter(|(e, _)| **e != 0)
            .map(|(e, l)| if *e == 1 { l.clone() } else { format!("({l})^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Interior vector of a torus-invariant subvariety: positive exactly on
/// the characters vanishing on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interior(pub Vec<i64>);

#[derive(Debug, Clone)]
pub struct Geometry {
    pub ctx: GradingContext,
    pub charts: Vec<ChartData>,
}

fn char_of(e: &LatticeElement) -> Character {
    e.coeffs[1..].to_vec()
}

impl Geometry {
    /// Charts of the compactification: the charts `U_phi` of the toric
    /// resolution plus the boundary charts `U_0` (n = 1) or `U_{i0}` (n = 2).
    pub fn new(n: usize, k: usize) -> Result<Self, KoszulError> {
        if !(1..=2).contains(&n) {
            return Err(KoszulError::Unsupported(format!("n = {n}")));
        }
        let ctx = GradingContext::new(n, k);
        let mut charts = Vec::new();
        let vs = |skip: Option<usize>| -> Vec<(LatticeElement, String)> {
            (1..=k).rev().filter(|&r| Some(r) != skip).map(|r| (ctx.v(r), format!("V{r}"))).collect()
        };
        let push = |charts: &mut Vec<ChartData>, name: String, items: Vec<(LatticeElement, String)>| -> Result<(), KoszulError> {
            let (basis, labels) = items.into_iter().unzip();
            charts.push(ChartData::new(&ctx, name, basis, labels)?);
            Ok(())
        };
        if n == 1 {
            let mut items = vs(None);
            items.push((-ctx.x(2), "X2^-1".to_string()));
            push(&mut charts, "U_0".to_string(), items)?;
            for phi in enumerate_phis(1, k) {
                let c = chart_basis(&ctx, &phi);
                push(&mut charts, format!("U_{}", phi.at(1)), c.basis.into_iter().zip(c.labels).collect())?;
            }
        } else {
            let mut items = vs(None);
            items.push((-(ctx.x(2) + ctx.x(3)), "(X2X3)^-1".to_string()));
            items.push((ctx.x(2), "X2".to_string()));
            push(&mut charts, "U_0_0".to_string(), items)?;
            for i in 1..=k {
                let mut items = vs(Some(i));
                let minus = if i == k { "X1".to_string() } else { format!("C1{i}^-1") };
                items.push((-ctx.c(1, i), minus));
                let plus = if i == 1 { "X2X3".to_string() } else { format!("C1{}", i - 1) };
                items.push((ctx.c(1, i - 1), plus));
                items.push((-ctx.x(3), "X3^-1".to_string()));
                push(&mut charts, format!("U_{i}_0"), items)?;
            }
            for phi in enumerate_phis(2, k) {
                let c = chart_basis(&ctx, &phi);
                push(&mut charts, format!("U_{}_{}", phi.at(1), phi.at(2)), c.basis.into_iter().zip(c.labels).collect())?;
            }
        }
        Ok(Geometry { ctx, charts })
    }

    pub fn character(&self, e: &LatticeElement) -> Character {
        char_of(e)
    }

    /// Interior vector of the component `R_i` (n = 1) or `R_ij` (n = 2).
    pub fn component(&self, i: usize, j: usize) -> Interior {
        let k = self.ctx.k as i64;
        let mut w = vec![k - i as i64];
        if self.ctx.n == 2 {
            w.push(i as i64 - j as i64);
        }
        w.extend(std::iter::repeat(1).take(self.ctx.k));
        Interior(w)
    }

    /// Coordinates of chart `c` vanishing on the subvariety, or `None` when
    /// it misses the chart.
    pub fn vanishing(&self, c: usize, w: &Interior) -> Option<Vec<usize>> {
        let chart = &self.charts[c];
        let vals: Vec<i64> = chart.basis.iter().map(|b| pair(&w.0, &char_of(b))).collect();
        if vals.iter().any(|&v| v < 0) {
            return None;
        }
        Some((0..vals.len()).filter(|&m| vals[m] > 0).collect())
    }

    /// Rays shared by two charts, i.e. the rays of their common face.
    pub fn common_rays(&self, a: usize, b: usize) -> Vec<Vec<i64>> {
        let rb = &self.charts[b].rays;
        self.charts[a].rays.iter().filter(|r| rb.contains(r)).cloned().collect()
    }

    /// The face of a subvariety: rays of the vanishing coordinates.
    pub fn face(&self, w: &Interior) -> Option<Vec<Vec<i64>>> {
        (0..self.charts.len()).find_map(|c| {
            self.vanishing(c, w).map(|m| {
                let mut rays: Vec<Vec<i64>> = m.iter().map(|&i| self.charts[c].rays[i].clone()).collect();
                rays.sort();
                rays
            })
        })
    }
}
