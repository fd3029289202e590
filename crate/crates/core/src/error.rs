use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation (k <= 0, x < 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A potential description failed validation. `field` names the offending field.
    #[error("invalid potential field `{field}`: {reason}")]
    Potential { field: &'static str, reason: String },

    /// A tolerance or sweep parameter is out of range.
    #[error("configuration error: {0}")]
    Config(String),

    /// A precondition of the operation does not hold for these inputs.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed input data (ordering, counts, unknown descriptors).
    #[error("input error: {0}")]
    Input(String),

    /// The ODE integrator gave up.
    #[error("integration failed at x = {x}: {reason}")]
    Integration { x: f64, reason: String },

    /// The initial bracket could not be expanded to enclose a sign change.
    #[error("bracket [{lo}, {hi}] has no sign change after {doublings} doublings: monotonicity violated, integrator tolerance too loose")]
    Bracket { lo: f64, hi: f64, doublings: u32 },

    /// The bracketed root iteration ran out of iterations.
    #[error("root iteration did not converge: bracket [{lo}, {hi}] after {iterations} iterations")]
    RootNotConverged { lo: f64, hi: f64, iterations: usize },

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge on [{lo}, {hi}]: estimated error {error:e} after {intervals} intervals")]
    Quadrature {
        lo: f64,
        hi: f64,
        error: f64,
        intervals: usize,
    },
}

impl Error {
    /// True for failures of a numerical method (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Integration { .. }
                | Error::Bracket { .. }
                | Error::RootNotConverged { .. }
                | Error::Quadrature { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
