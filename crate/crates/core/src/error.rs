use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("axis index {0} out of range 1..=3")]
    AxisIndex(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not a group element (deviation {deviation:.3e})")]
    NotInGroup { deviation: f64 },

    /// The element has no W·L·R coordinates. `scalar` and `vector_norm2` are the
    /// scalar part and Minkowski square of the vector part of Mγ⁵M⁻¹γ⁵; the chart
    /// misses exactly the elements with scalar < 0 and a spacelike vector part.
    #[error("element lies outside the W·L·R chart (invariant scalar {scalar:.6}, vector square {vector_norm2:.6})")]
    OutsideChart { scalar: f64, vector_norm2: f64 },

    #[error("factorization did not converge after {iterations} iterations (best residual {best_residual:.3e})")]
    NoConvergence { best_residual: f64, iterations: usize },

    #[error("conjugated generator left the algebra span (residual {0:.3e})")]
    ExpansionResidual(f64),

    #[error("ill-conditioned structure matrix (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("structure constants disagree between derivative and commutator paths ({0:.3e})")]
    StructureMismatch(f64),
}
