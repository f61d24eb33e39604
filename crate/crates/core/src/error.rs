use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-invertible series: constant term {0} is not a nonzero rational")]
    NonInvertible(String),

    #[error("series composition requires a zero constant term in the inner series")]
    NonZeroConstant,

    #[error("series reversion requires f(0) = 0 and an invertible linear coefficient")]
    NotRevertible,

    #[error("series variables differ: `{0}` vs `{1}`")]
    VariableMismatch(String, String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("requested order {requested} exceeds the derivation budget {budget}")]
    OrderBudget { requested: usize, budget: usize },

    #[error("derivation consistency check failed: {0}")]
    Consistency(String),

    #[error("iteration did not converge after {iterations} steps: {what}")]
    Convergence { what: String, iterations: usize },

    #[error("accuracy target not met: best value {best:e}, estimated error {est_error:e}")]
    Accuracy { best: f64, est_error: f64 },

    #[error("no sign change around nu = {seed}: f({lo}) = {f_lo:e}, f({hi}) = {f_hi:e}")]
    Bracketing {
        seed: f64,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
}

impl Error {
    /// True for failures of a numerical computation, as opposed to bad input.
    pub fn is_computational(&self) -> bool {
        matches!(
            self,
            Error::Consistency(_)
                | Error::Convergence { .. }
                | Error::Accuracy { .. }
                | Error::Bracketing { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
