//! Upper confidence bounds for the probability of default in low-default
//! portfolios.
//!
//! Two models are covered. With independent obligors the number of defaults
//! is binomial and the bound inverts an incomplete beta function
//! ([`binomial_bound`]). With a single systematic factor the default count
//! is a Vasicek mixture of binomials and the bound inverts the auxiliary
//! distribution `F_{n-k,k+1,rho}` ([`vasicek`]). Rating grades are combined by
//! the method of conservatism ([`conservatism`]). Monte Carlo estimators in
//! [`mc`] serve as independent oracles.
//!
//! ```
//! use lowpd::{pd_upper_bound, BoundQuery, NumericConfig};
//!
//! let q = NumericConfig::default().integrator().unwrap();
//! let independent = pd_upper_bound(&BoundQuery::new(800, 3, 0.9, None).unwrap(), &q).unwrap();
//! let correlated = pd_upper_bound(&BoundQuery::new(800, 3, 0.9, Some(0.12)).unwrap(), &q).unwrap();
//! assert_eq!(lowpd::round_percent(independent.p_upper.get()), 0.83);
//! assert_eq!(lowpd::round_percent(correlated.p_upper.get()), 2.49);
//! ```

pub mod binomial_bound;
pub mod config;
pub mod conservatism;
pub mod error;
pub mod mc;
mod par;
pub mod quadrature;
pub mod specfun;
pub mod tables;
pub mod vasicek;

pub use binomial_bound::{
    binomial_cdf, pd_upper_bound_independent, pd_upper_bound_zero_defaults, BoundQuery,
    BoundResult,
};
pub use config::NumericConfig;
pub use conservatism::{
    allocate, estimate_grades, remediate_reversal, reversals_in, Allocation, Grade, GradeBound,
    GradeBoundReport, Portfolio, Reversal,
};
pub use error::{Error, Result};
pub use mc::{McConfig, McEstimate, Prop3Form};
pub use quadrature::{Integrator, QuadratureSpec};
pub use specfun::{
    beta_cdf, beta_pdf, beta_quantile, ln_gamma, log_beta, std_normal_cdf, std_normal_pdf,
    std_normal_quantile, Probability, ShapeParams,
};
pub use tables::round_percent;
pub use vasicek::{
    conditional_pd, copula_diagonal, equicorr_density, f_cdf, f_quantile, mixture_mgf,
    mixture_pmf, mixture_tail_prob, pd_upper_bound_correlated, tilde_f_cdf, vasicek_cdf,
    FactorModelParams, MixtureShape,
};

/// Bound for either model, selected by the presence of a correlation.
pub fn pd_upper_bound(query: &BoundQuery, q: &Integrator) -> Result<BoundResult> {
    match query.rho {
        None => pd_upper_bound_independent(query),
        Some(_) => pd_upper_bound_correlated(query, q),
    }
}
