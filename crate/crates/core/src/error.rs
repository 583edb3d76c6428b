use thiserror::Error;

use crate::field::FieldViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex `{0}` declared twice")]
    DuplicateVertexName(String),

    #[error("vertex `{vertex}` appears twice in simplex {simplex:?}")]
    DuplicateVertexInSimplex {
        vertex: String,
        simplex: Vec<String>,
    },

    #[error("empty simplex")]
    EmptySimplex,

    #[error("`{0}` is not a simplex of the complex")]
    NotASimplex(String),

    #[error("could not parse `{input}`: {reason}")]
    Syntax { input: String, reason: String },

    #[error("invalid vector field: {}", format_violations(.0))]
    InvalidField(Vec<FieldViolation>),

    #[error("set is not an isolated invariant set: {0}")]
    NotIsolated(String),

    #[error("{what} is not closed: {witness} is missing its face {face}")]
    NotClosed {
        what: &'static str,
        witness: String,
        face: String,
    },

    #[error("second set is not contained in the first: {0} is missing")]
    NotNested(String),

    #[error("sets {0} and {1} overlap")]
    Overlap(usize, usize),

    #[error("order is not a strict partial order: {0}")]
    NotAPartialOrder(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("sequence is not a solution: {0}")]
    NotASolution(String),

    #[error("sequence has no periodic tail on the {0} side")]
    NotPeriodic(&'static str),

    #[error("orbit step {step} leaves F: {detail}")]
    NotAnOrbit { step: usize, detail: String },

    #[error("no witness found for lift step {step} on grids up to denominator {denominator}")]
    WitnessNotFound { step: usize, denominator: i64 },

    #[error("lift step {step} asks for a point in an empty region (counterexample): {dump}")]
    EmptyLiftRegion { step: usize, dump: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations(v: &[FieldViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
