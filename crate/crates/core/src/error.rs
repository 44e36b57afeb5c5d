use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive Gauss-Legendre integration could not meet its tolerance.
    #[error(
        "quadrature did not converge: value {value:.6e}, error estimate {error_estimate:.3e} \
         exceeds tolerance {tolerance:.3e} ({panels} panels of {nodes} nodes)"
    )]
    Quadrature {
        value: f64,
        error_estimate: f64,
        tolerance: f64,
        nodes: usize,
        panels: usize,
    },

    /// No sign change of `F(y) - target` was found within `|y| <= limit`.
    #[error("could not bracket the quantile for probability {target} within |y| <= {limit}")]
    Bracket { target: f64, limit: f64 },

    /// The Vasicek law collapses to a point mass when the correlation is zero.
    #[error("degenerate distribution: point mass at {at}")]
    Degenerate { at: f64 },

    /// Invalid portfolio definition.
    #[error("invalid portfolio: {0}")]
    Portfolio(String),

    /// A numeric failure while estimating one grade of a portfolio.
    #[error("grade {grade}: {source}")]
    Grade {
        grade: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors caused by invalid inputs rather than numerical trouble.
    pub fn is_domain(&self) -> bool {
        match self {
            Error::Domain(_) | Error::Portfolio(_) => true,
            Error::Grade { source, .. } => source.is_domain(),
            _ => false,
        }
    }
}
