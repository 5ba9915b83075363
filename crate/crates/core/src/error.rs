use thiserror::Error;

/// Errors produced by construction, evaluation, and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("a design must contain at least one point")]
    EmptyDesign,

    #[error("points fall {min_dist:.3e} rad apart, below the separation threshold {required:.3e}")]
    Degenerate { min_dist: f64, required: f64 },

    #[error("product points collide: {min_dist:.3e} rad apart, below the separation threshold {required:.3e}")]
    Collision { min_dist: f64, required: f64 },

    #[error("separation is undefined for a single-point set")]
    Singleton,

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("no parameter for degree {degree} cleared the margin threshold in {attempts} attempts")]
    SearchExhausted { degree: u32, attempts: u32 },

    #[error("degree bound {k_max} is below the largest claimed degree {max_claimed}")]
    Bound { k_max: u32, max_claimed: u32 },

    #[error("construction trace unusable: {0}")]
    Trace(String),

    #[error("invalid strength set: {0}")]
    InvalidStrength(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed design file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
