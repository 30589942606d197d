use thiserror::Error;

/// Errors raised by the geometry, bound and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("curvature scale mismatch: {0} vs {1}")]
    ScaleMismatch(f64, f64),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point is off the hyperboloid sheet (residual {0:e})")]
    OffSheet(f64),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("radius {rho} cannot span {} of length {length}", side_label(.side))]
    Span {
        side: Option<usize>,
        length: f64,
        rho: f64,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("numeric failure after {iterations} iterations: {reason} (best value {best})")]
    NumericFailure {
        reason: String,
        iterations: usize,
        best: f64,
    },

    #[error("integration failed: {0}")]
    Integration(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

fn side_label(side: &Option<usize>) -> String {
    match side {
        Some(i) => format!("side {i}"),
        None => "a side".to_string(),
    }
}
