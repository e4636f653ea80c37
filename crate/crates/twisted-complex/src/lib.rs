//! Twisted complexes over a graded path algebra.
//!
//! An object is a vertex label with a lattice shift; the differential is a
//! strictly upper-triangular matrix of algebra elements, each an integer
//! combination of words (letters in traversal order). A complex is valid
//! when every entry from `p` to `q` has degree `l0 + shift(q) - shift(p)`
//! and the square of the differential vanishes.

#[allow(non_snake_case)]
mod quiver;

use std::collections::BTreeMap;

use grading_lattice::exec::{map_ordered, Execution};
use grading_lattice::{GradingContext, LatticeElement};
use serde::Serialize;
use thiserror::Error;

pub use quiver::{build_T_resolution_n1, build_TxLi_resolution_n2, build_TxLk1_resolution_n2, build_TxLk1_resolution_n2_x1_only, QuiverAlgebra};

/// A graded algebra presented by letters between labelled objects.
pub trait PathAlgebra: Sync {
    fn ctx(&self) -> &GradingContext;

    /// Target and degree of a word read from `from`, or `None` when a
    /// letter is not available at the current object.
    fn word(&self, from: &str, letters: &[String]) -> Option<(String, LatticeElement)>;

    /// Whether an integer combination of composable words from `from`
    /// (all with one target and one degree) vanishes.
    fn vanishes(&self, from: &str, terms: &[(i64, Vec<String>)]) -> bool;
}

/// An integer combination of words.
pub type Element = Vec<(i64, Vec<String>)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TcObject {
    pub label: String,
    pub shift: LatticeElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedComplex {
    pub name: String,
    pub objects: Vec<TcObject>,
    /// Nonzero entries keyed by `(p, q)`, `p < q`.
    pub differential: BTreeMap<(usize, usize), Element>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("word {word} is not available at {from}")]
    NotComposable { from: String, word: String },
    #[error("object index {0} out of range")]
    Index(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Entry at or below the diagonal.
    NotUpperTriangular {
        p: usize,
        q: usize,
    },
    /// A word that does not run from object `p` to object `q`.
    Endpoints {
        p: usize,
        q: usize,
        word: String,
    },
    Degree {
        p: usize,
        q: usize,
        word: String,
        expected: String,
        found: String,
    },
    /// Nonzero entry of the square of the differential.
    SquareNonzero {
        p: usize,
        r: usize,
        terms: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub complex: String,
    pub valid: bool,
    pub entries: usize,
    pub products: usize,
    pub violations: Vec<Violation>,
}

pub fn render_word(letters: &[String]) -> String {
    if letters.is_empty() {
        return "id".to_string();
    }
    letters.iter().rev().cloned().collect::<Vec<_>>().join(".")
}

pub fn render_element(e: &Element) -> String {
    let mut out = String::new();
    for (i, (c, w)) in e.iter().enumerate() {
        let word = render_word(w);
        match (*c, i) {
            (1, 0) => out.push_str(&word),
            (-1, 0) => out.push_str(&format!("-{word}")),
            (1, _) => out.push_str(&format!(" + {word}")),
            (-1, _) => out.push_str(&format!(" - {word}")),
            (c, 0) => out.push_str(&format!("{c}*{word}")),
            (c, _) if c < 0 => out.push_str(&format!(" - {}*{word}", -c)),
            (c, _) => out.push_str(&format!(" + {c}*{word}")),
        }
    }
    out
}

/// Merge equal words and drop zero coefficients, keeping a stable order.
pub fn normalize(mut e: Element) -> Element {
    e.sort_by(|a, b| a.1.cmp(&b.1));
    let mut out: Element = Vec::new();
    for (c, w) in e {
        match out.last_mut() {
            Some(last) if last.1 == w => last.0 += c,
            _ => out.push((c, w)),
        }
    }
    out.retain(|t| t.0 != 0);
    out
}

fn letters(word: &[&str]) -> Vec<String> {
    word.iter().map(|s| s.to_string()).collect()
}

impl TwistedComplex {
    pub fn single(name: &str, label: &str, shift: LatticeElement) -> Self {
        TwistedComplex { name: name.to_string(), objects: vec![TcObject { label: label.to_string(), shift }], differential: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// The complex shifted by `s` (added to every object).
    pub fn shifted(&self, s: &LatticeElement) -> Self {
        let mut out = self.clone();
        for o in &mut out.objects {
            o.shift += s;
        }
        out
    }

    pub fn entry(&self, p: usize, q: usize) -> Option<&Element> {
        self.differential.get(&(p, q))
    }

    /// A chain `start -> ... ` whose `m`-th arrow is the word `steps[m]`;
    /// shifts follow from the degree condition.
    pub fn chain<A: PathAlgebra>(alg: &A, name: &str, start: &str, shift: LatticeElement, steps: &[Vec<&str>]) -> Result<Self, BuildError> {
        let l0 = alg.ctx().l0();
        let mut tc = TwistedComplex::single(name, start, shift);
        for (m, step) in steps.iter().enumerate() {
            let from = tc.objects[m].clone();
            let w = letters(step);
            let (to, deg) = alg.word(&from.label, &w).ok_or_else(|| BuildError::NotComposable { from: from.label.clone(), word: render_word(&w) })?;
            tc.objects.push(TcObject { label: to, shift: &from.shift + &deg - l0.clone() });
            tc.differential.insert((m, m + 1), vec![(1, w)]);
        }
        Ok(tc)
    }

    /// Cone of the one-entry map from object `p` of `x` to object `q` of
    /// `y` given by `word`: `x[1]` followed by `y`, with `y` twisted by the
    /// weight that makes the map of degree 0.
    pub fn cone<A: PathAlgebra>(
        alg: &A,
        name: &str,
        x: &TwistedComplex,
        y: &TwistedComplex,
        p: usize,
        q: usize,
        word: &[&str],
    ) -> Result<Self, BuildError> {
        let l0 = alg.ctx().l0();
        let src = x.objects.get(p).ok_or(BuildError::Index(p))?;
        let dst = y.objects.get(q).ok_or(BuildError::Index(q))?;
        let w = letters(word);
        let (_, deg) = alg.word(&src.label, &w).ok_or_else(|| BuildError::NotComposable { from: src.label.clone(), word: render_word(&w) })?;
        let twist = &src.shift + &deg - dst.shift.clone();
        let mut objects: Vec<TcObject> = x.shifted(&l0).objects;
        objects.extend(y.shifted(&twist).objects);
        let off = x.len();
        let mut differential = x.differential.clone();
        for ((a, b), e) in &y.differential {
            differential.insert((a + off, b + off), e.clone());
        }
        differential.insert((p, q + off), vec![(1, w)]);
        Ok(TwistedComplex { name: name.to_string(), objects, differential })
    }

    pub fn labels(&self) -> Vec<&str> {
        self.objects.iter().map(|o| o.label.as_str()).collect()
    }

    /// Arrow notation for chains (`A[s] -w-> B[t]`), an object and entry
    /// list otherwise. Shifts are written in lattice coordinates.
    pub fn render(&self, ctx: &GradingContext) -> String {
        let obj = |o: &TcObject| {
            if o.shift.is_zero() {
                o.label.clone()
            } else {
                format!("{}[{}]", o.label, o.shift.render(ctx))
            }
        };
        let is_chain = self.differential.keys().all(|(p, q)| q == &(p + 1)) && self.differential.len() + 1 == self.len();
        if is_chain {
            let mut out = obj(&self.objects[0]);
            for m in 1..self.len() {
                out.push_str(&format!(" -{}-> {}", render_element(&self.differential[&(m - 1, m)]), obj(&self.objects[m])));
            }
            return out;
        }
        let mut lines: Vec<String> = self.objects.iter().enumerate().map(|(i, o)| format!("{i}: {}", obj(o))).collect();
        for ((p, q), e) in &self.differential {
            lines.push(format!("{p} -> {q}: {}", render_element(e)));
        }
        lines.join("\n")
    }
}

fn check_entry<A: PathAlgebra>(alg: &A, tc: &TwistedComplex, p: usize, q: usize, e: &Element) -> Vec<Violation> {
    let ctx = alg.ctx();
    if p >= q || q >= tc.len() {
        return vec![Violation::NotUpperTriangular { p, q }];
    }
    let (src, dst) = (&tc.objects[p], &tc.objects[q]);
    let expected = ctx.l0() + dst.shift.clone() - src.shift.clone();
    let mut out = Vec::new();
    for (_, w) in e {
        match alg.word(&src.label, w) {
            Some((to, _)) if to != dst.label => out.push(Violation::Endpoints { p, q, word: render_word(w) }),
            None => out.push(Violation::Endpoints { p, q, word: render_word(w) }),
            Some((_, deg)) if deg != expected => {
                out.push(Violation::Degree { p, q, word: render_word(w), expected: expected.render(ctx), found: deg.render(ctx) })
            }
            Some(_) => {}
        }
    }
    out
}

/// Homogeneity of every entry and vanishing of every entry of `d^2`.
pub fn validate<A: PathAlgebra>(alg: &A, tc: &TwistedComplex) -> ValidationReport {
    validate_with(alg, tc, Execution::default())
}

pub fn validate_with<A: PathAlgebra>(alg: &A, tc: &TwistedComplex, exec: Execution) -> ValidationReport {
    let entries: Vec<(&(usize, usize), &Element)> = tc.differential.iter().collect();
    let mut violations: Vec<Violation> = map_ordered(exec, &entries, |&(&(p, q), e)| check_entry(alg, tc, p, q, e)).into_iter().flatten().collect();
    // d^2 is only meaningful on well-formed entries
    let mut products: BTreeMap<(usize, usize), Element> = BTreeMap::new();
    if violations.is_empty() {
        for (&(p, q), e1) in &tc.differential {
            for (&(q2, r), e2) in tc.differential.range((q, 0)..(q + 1, 0)) {
                debug_assert_eq!(q, q2);
                let acc = products.entry((p, r)).or_default();
                for (c1, w1) in e1 {
                    for (c2, w2) in e2 {
                        let mut w = w1.clone();
                        w.extend(w2.iter().cloned());
                        acc.push((c1 * c2, w));
                    }
                }
            }
        }
    }
    let items: Vec<((usize, usize), Element)> = products.into_iter().map(|(k, v)| (k, normalize(v))).collect();
    let square = map_ordered(exec, &items, |((p, r), terms)| {
        if terms.is_empty() || square_vanishes(alg, &tc.objects[*p].label, terms) {
            None
        } else {
            Some(Violation::SquareNonzero { p: *p, r: *r, terms: render_element(terms) })
        }
    });
    violations.extend(square.into_iter().flatten());
    ValidationReport { complex: tc.name.clone(), valid: violations.is_empty(), entries: entries.len(), products: items.len(), violations }
}

/// Terms of one product entry split by degree; each part must vanish.
fn square_vanishes<A: PathAlgebra>(alg: &A, from: &str, terms: &Element) -> bool {
    let mut by_degree: BTreeMap<Vec<i64>, Element> = BTreeMap::new();
    for t in terms {
        let Some((_, d)) = alg.word(from, &t.1) else { return false };
        by_degree.entry(d.coeffs).or_default().push(t.clone());
    }
    by_degree.values().all(|part| alg.vanishes(from, part))
}
