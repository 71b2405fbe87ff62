//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("closure has {components} components; a knot (single component) is required")]
    MultiComponent { components: usize },

    #[error("crossing {crossing} is reducible: only {distinct} distinct incident faces (need 4)")]
    ReducibleCrossing { crossing: usize, distinct: usize },

    #[error("no valid base point on this diagram; simplify the diagram and retry ({0})")]
    NoBasePoint(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("cost budget exceeded: {0}")]
    Budget(String),

    #[error("singular potential term at census entry ({nu}, {mu}): ratio = {ratio}")]
    SingularTerm { nu: usize, mu: usize, ratio: String },

    #[error("no geometric solution found after {restarts} restarts (best Im V = {best_im_v})")]
    NoGeometricSolution { restarts: usize, best_im_v: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
