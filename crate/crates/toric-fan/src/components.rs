//! Irreducible components of the special fiber and their adjacency strata.

use crate::FanError;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ComponentType {
    AffinePlane,
    AffineLineTimesProj,
    ProjTimesProj,
    BlowUp,
    AffineLine,
    ProjLine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentModel {
    /// `(i, 0)` for n = 1, `(i, j)` with `i >= j` for n = 2.
    pub index: (usize, usize),
    pub kind: ComponentType,
    /// Local complete-intersection equations, where catalogued.
    pub equations: Vec<String>,
    pub compactified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StratumKind {
    /// `R_{i,j-1} cap R_{ij}`
    Horizontal,
    /// `R_{i,j-1} cap R_{i-1,j-1}`
    Vertical,
    /// `R_{i-1,i-1} cap R_{ii}`
    Diagonal,
    /// `L^h_{ij} cap L^v_{ij}`
    Point,
    /// node of the n = 1 chain, `R_{i-1} cap R_i`
    Node,
    /// node of the compactified boundary chain
    BoundaryNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub kind: StratumKind,
    pub index: (usize, usize),
    pub components: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryPiece {
    pub name: String,
    pub kind: ComponentType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialFiber {
    pub n: usize,
    pub k: usize,
    pub compactified: bool,
    pub components: Vec<ComponentModel>,
    pub strata: Vec<Stratum>,
    pub boundary: Vec<BoundaryPiece>,
}

impl SpecialFiber {
    pub fn count(&self, kind: ComponentType) -> usize {
        self.components.iter().filter(|c| c.kind == kind).count()
    }

    pub fn component(&self, index: (usize, usize)) -> Option<&ComponentModel> {
        self.components.iter().find(|c| c.index == index)
    }

    /// Strata reference existing, grid-adjacent components, and each point
    /// stratum lies on every component of its two defining curves.
    pub fn check_consistency(&self) -> Result<(), String> {
        for s in &self.strata {
            for c in &s.components {
                if self.component(*c).is_none() {
                    return Err(format!("{:?} {:?} references missing component {:?}", s.kind, s.index, c));
                }
            }
            for a in &s.components {
                for b in &s.components {
                    if a.0.abs_diff(b.0) > 1 || a.1.abs_diff(b.1) > 1 {
                        return Err(format!("{:?} {:?} joins distant components", s.kind, s.index));
                    }
                }
            }
        }
        for p in self.strata.iter().filter(|s| s.kind == StratumKind::Point) {
            let find = |kind| self.strata.iter().find(|s| s.kind == kind && s.index == p.index);
            let (Some(h), Some(v)) = (find(StratumKind::Horizontal), find(StratumKind::Vertical)) else {
                return Err(format!("point {:?} lacks its curves", p.index));
            };
            for c in h.components.iter().chain(&v.components) {
                if !p.components.contains(c) {
                    return Err(format!("point {:?} misses component {:?}", p.index, c));
                }
            }
        }
        Ok(())
    }
}

fn vs(from: usize, to: usize) -> impl Iterator<Item = String> {
    // descending V_from .. V_to, empty when from < to
    (to..=from).rev().filter(|&r| r >= 1).map(|r| format!("V{r}"))
}

/// Local equations of `R_{ij}`, `k >= i > j >= 0`, `k >= 2`.
fn equations_n2(k: usize, i: usize, j: usize) -> Vec<String> {
    let mut e: Vec<String> = Vec::new();
    let f1 = |t: usize, i: usize| format!("f1*s{t}({i})");
    let f2 = |t: usize, j: usize| format!("f2*s{t}({j})");
    if i < k && j > 0 && i - j > 1 {
        e.extend(vs(k, i + 2));
        e.push(f1(1, i));
        e.push(f1(2, i));
        e.extend(vs(i - 1, j + 2));
        e.push(f2(1, j));
        e.push(f2(2, j));
        e.extend(vs(j - 1, 1));
    } else if i < k && i > 1 && j == i - 1 {
        e.extend(vs(k, i + 2));
        e.push(f1(1, i));
        e.push(format!("s{i}"));
        e.push(f2(2, i - 1));
        e.extend(vs(i - 2, 1));
    } else if i == 1 && j == 0 && k > 1 {
        e.extend(vs(k, 3));
        e.push(f1(1, 1));
        e.push("s1".to_string());
    } else if i == k && j == k - 1 {
        e.push(format!("s{k}"));
        e.push(f2(2, k - 1));
        e.extend(vs(k - 2, 1));
    } else if i == k && j > 0 {
        e.push(format!("C1{}", k - 1));
        e.extend(vs(k - 1, j + 2));
        e.push(f2(1, j));
        e.push(f2(2, j));
        e.extend(vs(j - 1, 1));
    } else if i < k && j == 0 {
        e.extend(vs(k, i + 2));
        e.push(f1(1, i));
        e.push(f1(2, i));
        e.extend(vs(i - 1, 2));
        e.push(f2(1, 0));
    } else if i == k && j == 0 {
        e.push(format!("C1{}", k - 1));
        e.extend(vs(k - 1, 2));
        e.push(f2(1, 0));
    }
    e
}

/// Component model of the special fiber for `n in {1, 2}`.
pub fn special_fiber_model(n: usize, k: usize, compactified: bool) -> Result<SpecialFiber, FanError> {
    match n {
        1 => Ok(fiber_n1(k, compactified)),
        2 => Ok(fiber_n2(k, compactified)),
        _ => Err(FanError::Unsupported(format!("special fiber model for n={n}"))),
    }
}

fn fiber_n1(k: usize, compactified: bool) -> SpecialFiber {
    let mut components = Vec::new();
    for i in 0..=k {
        let kind = if i == k || (i == 0 && !compactified) { ComponentType::AffineLine } else { ComponentType::ProjLine };
        components.push(ComponentModel { index: (i, 0), kind, equations: Vec::new(), compactified });
    }
    let strata = (1..=k).map(|i| Stratum { kind: StratumKind::Node, index: (i, 0), components: vec![(i - 1, 0), (i, 0)] }).collect();
    let boundary = if compactified { vec![BoundaryPiece { name: "p".into(), kind: ComponentType::AffineLine }] } else { Vec::new() };
    SpecialFiber { n: 1, k, compactified, components, strata, boundary }
}

fn fiber_n2(k: usize, compactified: bool) -> SpecialFiber {
    use ComponentType::*;
    let mut components = Vec::new();
    for i in 0..=k {
        for j in 0..=i {
            let kind = match (i, j) {
                (i, j) if i == k && j == k => AffinePlane,
                (i, 0) if i == k => {
                    if compactified {
                        AffineLineTimesProj
                    } else {
                        AffinePlane
                    }
                }
                (0, 0) => {
                    if compactified {
                        BlowUp
                    } else {
                        AffinePlane
                    }
                }
                (i, _) if i == k => AffineLineTimesProj,
                (_, 0) => {
                    if compactified {
                        ProjTimesProj
                    } else {
                        AffineLineTimesProj
                    }
                }
                (i, j) if i == j => BlowUp,
                _ => ProjTimesProj,
            };
            let equations = if i > j && k >= 2 { equations_n2(k, i, j) } else { Vec::new() };
            components.push(ComponentModel { index: (i, j), kind, equations, compactified });
        }
    }
    let mut strata = Vec::new();
    for i in 1..=k {
        for j in 1..=i {
            strata.push(Stratum { kind: StratumKind::Horizontal, index: (i, j), components: vec![(i, j - 1), (i, j)] });
            strata.push(Stratum { kind: StratumKind::Vertical, index: (i, j), components: vec![(i, j - 1), (i - 1, j - 1)] });
        }
        strata.push(Stratum { kind: StratumKind::Diagonal, index: (i, i), components: vec![(i - 1, i - 1), (i, i)] });
    }
    for i in 1..=k {
        for j in 1..i {
            let mut comps = vec![(i, j - 1), (i, j), (i - 1, j - 1)];
            if i - 1 >= j {
                comps.push((i - 1, j));
            }
            comps.sort();
            strata.push(Stratum { kind: StratumKind::Point, index: (i, j), components: comps });
        }
    }
    let mut boundary = Vec::new();
    if compactified {
        boundary.push(BoundaryPiece { name: "D'0".into(), kind: AffineLine });
        for i in 0..=k {
            boundary.push(BoundaryPiece { name: format!("D{i}"), kind: if i == k { AffineLine } else { ProjLine } });
        }
    }
    SpecialFiber { n: 2, k, compactified, components, strata, boundary }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equation_counts_equal_codimension() {
        for k in 2..=7 {
            for i in 1..=k {
                for j in 0..i {
                    assert_eq!(equations_n2(k, i, j).len(), k, "R_{i}{j} at k={k}");
                }
            }
        }
    }
}
