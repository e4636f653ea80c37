//! Comparison of the quiver algebras with the matrix-factorization side:
//! object and generator correspondence, graded dimensions, transported
//! relations and resolutions.

pub mod compare;
pub mod correspondence;
pub mod relations;
pub mod report;
pub mod resolutions;

use thiserror::Error;

pub use compare::{compare_dim_tables, DimMismatch, DimReport, PairSummary};
pub use correspondence::{build_correspondence, object_for, Correspondence, GeneratorMatch};
pub use relations::{transport_relations, RelationReport};
pub use report::{full_match, presentation, MatchReport};
pub use resolutions::{a_side_counterparts, match_resolutions, ResolutionMatch, ResolutionReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchError {
    #[error("no solution for the shift offsets: {0}")]
    InconsistentShifts(String),
    #[error("no B-side generator for {0}")]
    Unmatched(String),
    #[error("degree {0} is off the image of the grading isomorphism")]
    Grading(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
