//! Quiver relations pushed through the generator map.

use arc_quiver::QuiverPresentation;
use koszul_mf::BAlgebra;
use serde::Serialize;
use twisted_complex::PathAlgebra;

use crate::correspondence::Correspondence;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relations: usize,
    /// Relations whose transport is not zero on the B side, rendered.
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Every relation, with each arrow replaced by its matched letter, must
/// vanish in the B-side algebra.
pub fn transport_relations(q: &QuiverPresentation, corr: &Correspondence, alg: &BAlgebra) -> RelationReport {
    let mut failures = Vec::new();
    for rel in &q.relations {
        let Some((_, first)) = rel.terms.first() else { continue };
        let from = &corr.generators[first[0]].from;
        let terms: Vec<(i64, Vec<String>)> =
            rel.terms.iter().map(|(c, p)| (*c, p.iter().map(|&a| corr.generators[a].generator.clone()).collect())).collect();
        if !alg.vanishes(from, &terms) {
            failures.push(q.render_relation(rel));
        }
    }
    RelationReport { relations: q.relations.len(), passed: failures.is_empty(), failures }
}
