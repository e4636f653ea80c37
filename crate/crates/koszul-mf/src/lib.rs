//! The B-side: generating matrix factorizations as tensor products of
//! Koszul factors, their Hom sheaves by factorwise reduction, and the
//! resulting graded Hom tables next to the closed forms.

pub mod catalogue;
pub mod closed;
pub mod engine;
pub mod formality;
pub mod geometry;
pub mod oracle;
pub mod resolutions;

use grading_lattice::LatticeElement;
use serde::Serialize;
use thiserror::Error;

pub use catalogue::{generators, KoszulFactor, LocalFactor, MFObject, Mono, ObjectId, Piece};
pub use closed::{closed_form, closed_form_tables, end_ring, ClosedForm};
pub use engine::{koszul_hom, support_cohomology, HomResult, Rule, RuleApplication, SupportCell, SupportFactor, SupportModel};
pub use formality::{
    formality_check, formality_check_with, shifted_degree, shifted_generators, shifted_generators_literal, window_functional, FormalityReport,
    FormalityViolation, Shifts,
};
pub use geometry::Geometry;
pub use oracle::{oracle_check, OracleReport, PairCheck};
pub use resolutions::{b_side_resolutions, BAlgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("unmatched pattern in Hom({from}, {to}): {detail}")]
    UnmatchedPattern { from: String, to: String, detail: String },
    #[error("degree window: {0}")]
    Window(String),
}

/// Same schema as the A-side Hom tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BHomRow {
    pub degree: LatticeElement,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BHomTable {
    pub from: String,
    pub to: String,
    pub rows: Vec<BHomRow>,
}

impl BHomTable {
    pub fn dim_at(&self, d: &LatticeElement) -> usize {
        self.rows.iter().find(|r| &r.degree == d).map_or(0, |r| r.dim)
    }
}

/// Object identifiers in catalogue order.
pub fn object_ids(n: usize, k: usize) -> Result<Vec<ObjectId>, KoszulError> {
    match n {
        1 => Ok((0..=k).map(ObjectId::P1).collect()),
        2 => {
            let mut out = Vec::new();
            for i in 1..=k {
                for j in 0..i {
                    out.push(ObjectId::P(i, j));
                }
            }
            out.extend((0..=k).map(ObjectId::Q));
            Ok(out)
        }
        _ => Err(KoszulError::Unsupported(format!("n = {n}"))),
    }
}
