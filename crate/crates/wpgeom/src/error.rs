//! Error types shared across the crate.

use thiserror::Error;

/// Errors from half-plane primitives.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum HplaneError {
    #[error("point ({x}, {y}) is not in the upper half-plane")]
    NotInUpperHalfPlane { x: f64, y: f64 },
    #[error("matrix [[{a}, {b}], [{c}, {d}]] has non-positive determinant")]
    NotOrientationPreserving { a: f64, b: f64, c: f64, d: f64 },
    #[error("geodesic endpoints coincide")]
    DegenerateLine,
    #[error("geodesic lines share an ideal endpoint")]
    SharedEndpoint,
    #[error("map is not hyperbolic (|tr| = {abs_trace:.6} <= 2 + tol)")]
    NotHyperbolic { abs_trace: f64 },
    #[error("lines cross; no common perpendicular")]
    LinesCross,
    #[error("lines are disjoint; no intersection point")]
    LinesDoNotCross,
}

/// Errors from surface-group construction.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum BuildError {
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),
    #[error("pants curve {index} has non-positive length {length}")]
    NonPositiveLength { index: usize, length: f64 },
    #[error("relation residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    RelationResidualTooLarge { residual: f64, tol: f64 },
    #[error("invalid pants graph: {0}")]
    InvalidPantsGraph(String),
    #[error("domain radius certification failed: {0}")]
    DomainRadius(String),
}

/// Errors from orbit/class enumeration.
#[derive(Debug, Clone, Error)]
pub enum EnumError {
    #[error("element budget {budget} exhausted before certification (explored {explored})")]
    BudgetExceeded { budget: usize, explored: usize },
}

/// Errors from Riera pairing evaluation.
#[derive(Debug, Clone, Error)]
pub enum RieraError {
    #[error("f_term domain: u = {0} is not > 1")]
    DomainError(f64),
    #[error("tail estimate {tail:.3e} still exceeds tolerance {tol:.3e} at R = {radius}")]
    TailNotConvergent { tail: f64, tol: f64, radius: f64 },
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("curve is not hyperbolic")]
    NotHyperbolic,
}

/// Errors from the WP metric layer.
#[derive(Debug, Clone, Error)]
pub enum MetricError {
    #[error("Gram matrix not positive-definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),
    #[error("curve basis degenerate (independence score {0:.3e})")]
    DegenerateBasis(f64),
    #[error("path refinement did not converge (last relative change {0:.3e})")]
    NonConvergentRefinement(f64),
    #[error("flow step too large: length function increased after {0} bisections")]
    StepTooLarge(usize),
    #[error("flow left the thick part: curve {word} reached length {length:.4}")]
    LeftThickPart { word: String, length: f64 },
    #[error(transparent)]
    Riera(#[from] RieraError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

/// Errors from closed-form bound evaluators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum BoundsError {
    #[error("domain error: {0}")]
    DomainError(String),
}

/// Crate-wide error.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Hplane(#[from] HplaneError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error(transparent)]
    Riera(#[from] RieraError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
