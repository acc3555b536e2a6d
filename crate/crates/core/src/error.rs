use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// A fitted material model produced an unphysical value.
    #[error("material model invalid: {0}")]
    ModelValidity(String),

    /// A closed-form expression hit a degenerate point.
    #[error("evaluation failed at k = {k:e} cm^-1, xi = {xi:e} rad/s: {detail}")]
    Evaluation { k: f64, xi: f64, detail: String },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e}")]
    Integration { estimate: f64, error: f64 },

    /// The Matsubara sum was not converged when the term cap was hit.
    #[error("matsubara sum not converged after {terms} terms (partial value {partial:e}): {hint}")]
    Convergence {
        terms: usize,
        partial: f64,
        hint: String,
    },

    /// The boundary-condition system was singular.
    #[error("boundary-condition oracle singular at k = {k:e}, xi = {xi:e}")]
    Oracle { k: f64, xi: f64 },

    /// H = -1 in the H-function to amplitude map.
    #[error("reflection amplitude pole: H = -1")]
    Pole,

    /// Normalisation by a vanishing reference free energy.
    #[error("normalisation failed: reference free energy {0:e} below floor")]
    Normalization(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}
