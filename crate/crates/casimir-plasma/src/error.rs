//! Error type shared by all numerical routines.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input lies outside the domain of the requested operation.
    #[error("invalid `{field}`: {reason}")]
    Domain { field: &'static str, reason: String },

    /// The Matsubara sum could not be certified within the configured term budget.
    /// Carries the partial sum and the a-priori bound on the dropped tail.
    #[error("Matsubara sum not converged after {terms} terms (partial = {partial:e} J/m^2, tail bound = {bound:e} J/m^2)")]
    Convergence {
        terms: usize,
        partial: f64,
        bound: f64,
    },

    /// Adaptive quadrature ran out of subdivisions; reports the worst subinterval.
    #[error("quadrature did not converge: worst subinterval [{a:e}, {b:e}] with error {err:e}")]
    Quadrature { a: f64, b: f64, err: f64 },

    /// A dielectric table failed validation; `line` is 1-based.
    #[error("dielectric table, line {line}: {reason}")]
    Table { line: usize, reason: String },
}

impl Error {
    pub(crate) fn domain(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            field,
            reason: reason.into(),
        }
    }
}

/// Rejects non-finite or out-of-range values with an error naming the field.
pub(crate) fn check_finite(field: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(field, format!("must be finite, got {value}")))
    }
}

pub(crate) fn check_nonnegative(field: &'static str, value: f64) -> Result<f64> {
    check_finite(field, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, format!("must be >= 0, got {value}")))
    }
}

pub(crate) fn check_positive(field: &'static str, value: f64) -> Result<f64> {
    check_finite(field, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(field, format!("must be > 0, got {value}")))
    }
}
