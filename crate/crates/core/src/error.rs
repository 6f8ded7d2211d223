use thiserror::Error;

use crate::surfaces::SurfaceModel;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("divisor has {got} coefficients but {surface} has Picard rank {expected}")]
    Dimension {
        surface: SurfaceModel,
        expected: usize,
        got: usize,
    },

    #[error("divisor lives on {found}, expected {expected}")]
    SurfaceMismatch {
        expected: SurfaceModel,
        found: SurfaceModel,
    },

    #[error("pushforward degrees need a >= 0 (got a = {a}); dualize first")]
    NegativeSectionCoefficient { a: i64 },

    #[error("Cech totals unstable under box growth: {small_box} at B = {small_bound}, {large_box} at B = {large_bound}")]
    Truncation {
        small_bound: i64,
        small_box: String,
        large_bound: i64,
        large_box: String,
    },

    #[error("Cech complex has nonzero degree-3 cohomology ({rank}) in degree m = ({m0}, {m1})")]
    TopDegree { rank: u64, m0: i64, m1: i64 },

    #[error("inconsistent cohomology constraints: {relation}")]
    Inconsistent { relation: String },

    #[error("inconsistent constraints in sequence `{sequence}`: {relation}")]
    SequenceInconsistent { sequence: String, relation: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
