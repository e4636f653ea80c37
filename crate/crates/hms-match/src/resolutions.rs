//! B-side resolutions against their quiver-side counterparts.

use arc_quiver::{hom_dimension, QuiverPresentation};
use grading_lattice::LatticeElement;
use koszul_mf::{b_side_resolutions, BAlgebra};
use serde::Serialize;
use twisted_complex::{
    build_T_resolution_n1, build_TxLi_resolution_n2, build_TxLk1_resolution_n2, render_element, validate, PathAlgebra, QuiverAlgebra, TwistedComplex,
};

use crate::correspondence::Correspondence;
use crate::MatchError;

fn pair(a: usize, b: usize) -> String {
    format!("L_{}_{}", a.min(b), a.max(b))
}

fn chain(q: &QuiverPresentation, name: &str, start: &str, steps: Vec<Vec<String>>) -> TwistedComplex {
    let steps: Vec<Vec<&str>> = steps.iter().map(|s| s.iter().map(String::as_str).collect()).collect();
    TwistedComplex::chain(&QuiverAlgebra::new(q), name, start, q.ctx.zero(), &steps).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn letters(prefix: char, ms: impl Iterator<Item = usize>) -> Vec<Vec<String>> {
    ms.map(|m| vec![format!("{prefix}{m}")]).collect()
}

/// The quiver-side complex of each B-side resolution, under the same name.
pub fn a_side_counterparts(q: &QuiverPresentation) -> Vec<TwistedComplex> {
    let k = q.k;
    let mut out = Vec::new();
    if q.n == 1 {
        for i in 0..=k {
            out.push(chain(q, &format!("R_plus_{i}"), &format!("L_{i}"), letters('r', (1..=i).rev())));
            out.push(chain(q, &format!("R_minus_{i}"), "L_0", letters('l', 1..=i)));
        }
        let mut t = build_T_resolution_n1(q);
        t.name = "O_p".to_string();
        out.push(t);
        return out;
    }
    for i in 0..=k {
        for j in 0..i {
            out.push(chain(q, &format!("P_{i}_le_{j}"), &pair(j, i), letters('r', (1..=j).rev())));
            out.push(chain(q, &format!("P'_{i}_le_{j}"), &pair(0, i), letters('l', 1..=j)));
        }
        for r in (i..=k).rev() {
            out.push(chain(q, &format!("P_le_{r}_{i}"), &pair(i, k + 1), letters('r', (r + 2..=k + 1).rev())));
            out.push(chain(q, &format!("P'_le_{r}_{i}"), &pair(i, r + 1), letters('l', r + 2..=k + 1)));
        }
        let mut down = letters('r', (i + 2..=k + 1).rev());
        let mut up = Vec::new();
        if i > 0 {
            down.push(vec![format!("r{i}"), format!("r{}", i + 1)]);
            down.extend(letters('r', (1..i).rev()));
            up.extend(letters('l', 1..i));
            up.push(vec![format!("l{}", i + 1), format!("l{i}")]);
        }
        up.extend(letters('l', i + 2..=k + 1));
        out.push(chain(q, &format!("P_{i}_le_{i}"), &pair(i, k + 1), down));
        out.push(chain(q, &format!("P'_{i}_le_{i}"), &pair(0, if i == 0 { 1 } else { i }), up));
        let mut t = build_TxLi_resolution_n2(q, i);
        t.name = format!("O_D_{i}(-1)");
        out.push(t);
    }
    let mut t = build_TxLk1_resolution_n2(q);
    t.name = "O_D".to_string();
    out.push(t);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionMatch {
    pub name: String,
    pub objects: usize,
    pub a_valid: bool,
    pub b_valid: bool,
    pub a_render: String,
    pub b_render: String,
    /// `s_A - s_B - o`, constant along the complex when it matches.
    pub global_shift: Option<String>,
    pub problems: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    pub n: usize,
    pub k: usize,
    pub matches: Vec<ResolutionMatch>,
    pub passed: bool,
}

fn compare(q: &QuiverPresentation, corr: &Correspondence, alg: &BAlgebra, a: &TwistedComplex, b: &TwistedComplex) -> ResolutionMatch {
    let ctx = q.ctx;
    let qa = QuiverAlgebra::new(q);
    let mut problems = Vec::new();
    let a_valid = validate(&qa, a).valid;
    let b_valid = validate(alg, b).valid;
    let mapped: Vec<Option<&str>> = b.objects.iter().map(|o| corr.vertex(&o.label)).collect();
    let labels_ok = a.len() == b.len() && mapped.iter().zip(&a.objects).all(|(m, o)| *m == Some(o.label.as_str()));
    if !labels_ok {
        problems.push(format!("objects {:?} against {:?}", b.labels(), a.labels()));
    }
    let mut global: Option<LatticeElement> = None;
    if labels_ok {
        for (oa, ob) in a.objects.iter().zip(&b.objects) {
            let g = &(&oa.shift - &ob.shift) - corr.offset(&oa.label);
            match &global {
                None => global = Some(g),
                Some(h) if *h != g => problems.push(format!("shift at {} is off by {}", oa.label, (&g - h).render(&ctx))),
                _ => {}
            }
        }
        if a.differential.keys().ne(b.differential.keys()) {
            problems.push("differentials have different shapes".to_string());
        }
        for ((p, r), eb) in &b.differential {
            let Some(ea) = a.entry(*p, *r) else { continue };
            let (from, to) = (&a.objects[*p].label, &a.objects[*r].label);
            let Some((_, db)) = alg.word(&b.objects[*p].label, &eb[0].1) else {
                problems.push(format!("B entry {} does not compose", render_element(eb)));
                continue;
            };
            let da = &(&db + corr.offset(to)) - corr.offset(from);
            let (v, w) = (q.vertex(from).expect("label"), q.vertex(to).expect("label"));
            let piece = hom_dimension(q, v, w, &da);
            let (_, aw) = qa.word(from, &ea[0].1).expect("valid A entry");
            if piece.dim != 1 || aw != da || qa.vanishes(from, ea) {
                problems.push(format!(
                    "entry ({p},{r}): {} against {} in a piece of dimension {}",
                    render_element(eb),
                    render_element(ea),
                    piece.dim
                ));
            }
        }
    }
    let passed = a_valid && b_valid && problems.is_empty();
    ResolutionMatch {
        name: b.name.clone(),
        objects: b.len(),
        a_valid,
        b_valid,
        a_render: a.render(&ctx),
        b_render: b.render(&ctx),
        global_shift: global.filter(|_| passed).map(|g| g.render(&ctx)),
        problems,
        passed,
    }
}

/// Each B-side resolution, with objects and entries read through the
/// correspondence, against its quiver-side complex. Entries are compared
/// up to a unit: both must be nonzero in a one-dimensional graded piece.
pub fn match_resolutions(q: &QuiverPresentation, corr: &Correspondence, alg: &BAlgebra) -> Result<ResolutionReport, MatchError> {
    let bs = b_side_resolutions(alg).map_err(|e| MatchError::Unsupported(e.to_string()))?;
    let as_ = a_side_counterparts(q);
    let mut matches = Vec::new();
    for b in &bs {
        let a = as_.iter().find(|a| a.name == b.name).ok_or_else(|| MatchError::Unmatched(b.name.clone()))?;
        matches.push(compare(q, corr, alg, a, b));
    }
    let passed = matches.iter().all(|m| m.passed);
    Ok(ResolutionReport { n: q.n, k: q.k, matches, passed })
}
