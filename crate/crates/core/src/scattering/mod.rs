//! Graded Lie algebras, BCH, the rank-2 oracle and joint-consistency checks.

mod joints;
mod lie;
mod rank2;

pub use joints::{check_joint_consistency, check_joint_consistency_with, Corruption, Joint, JointError, JointReport};
pub use lie::{Grade, GradedLieElt, LieAlgebra, Truncation};
pub use rank2::{
    dt_from_rank2, initial_from_table, reconstruct_rank2, reconstruct_rank2_shuffled, Dir, Rank2Diagram, Ray,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScatteringError {
    #[error("class {gamma} exceeds the degree bound {bound}")]
    DegreeExceeded { gamma: String, bound: i64 },
    #[error("{0}")]
    NotOnWall(String),
    #[error("rank-2 diagrams need 2-dimensional classes and covectors")]
    DimensionMismatch,
}
