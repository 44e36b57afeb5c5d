//! Upper confidence bound for the default probability of `n` independent
//! obligors of which at most `k` default with probability at least `1 - gamma`:
//!
//! `p <= 1 - B^-1_{n-k, k+1}(1 - gamma)`
//!
//! The binomial CDF is evaluated through the incomplete beta identity
//! `P(Bin(n, p) <= k) = I_{1-p}(n-k, k+1) = 1 - I_p(k+1, n-k)`.

use crate::error::{Error, Result};
use crate::specfun::{beta_quantile_raw, inc_beta, Probability};

/// Request for a single PD upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    pub n: u64,
    pub k: u64,
    pub gamma: Probability,
    /// Asset correlation. `None` selects the independent-obligor model.
    pub rho: Option<f64>,
}

impl BoundQuery {
    pub fn new(n: u64, k: u64, gamma: f64, rho: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("obligor count must be at least 1"));
        }
        if k > n {
            return Err(Error::domain(format!(
                "defaults k={k} exceed obligors n={n}"
            )));
        }
        let gamma = Probability::open(gamma)?;
        if let Some(r) = rho {
            check_rho(r)?;
        }
        Ok(BoundQuery { n, k, gamma, rho })
    }

    pub fn is_vacuous(&self) -> bool {
        self.k == self.n
    }
}

pub(crate) fn check_rho(rho: f64) -> Result<()> {
    if (0.0..1.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::domain(format!("asset correlation must lie in [0, 1), got {rho}")))
    }
}

/// PD upper bound with solver diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub p_upper: Probability,
    /// Defining equation at `p_upper` minus its target `1 - gamma`.
    pub residual: f64,
    pub iterations: u32,
    /// The inner quantile: `B^-1_{n-k,k+1}(1-gamma)` for the independent
    /// model, `F^-1_{n-k,k+1,rho}(1-gamma)` for the correlated one.
    pub quantile: f64,
    /// Set when `k = n`: every `p` satisfies the inequality and the bound is 1.
    pub vacuous: bool,
}

impl BoundResult {
    pub(crate) fn vacuous() -> Self {
        BoundResult {
            p_upper: Probability::saturating(1.0),
            residual: 0.0,
            iterations: 0,
            quantile: f64::NAN,
            vacuous: true,
        }
    }
}

/// `P(Bin(n, p) <= k)`.
pub fn binomial_cdf(n: u64, k: u64, p: Probability) -> Result<Probability> {
    if k > n {
        return Err(Error::domain(format!("k={k} exceeds n={n}")));
    }
    Ok(Probability::saturating(binomial_cdf_raw(n, k, p.get())))
}

pub(crate) fn binomial_cdf_raw(n: u64, k: u64, p: f64) -> f64 {
    if k >= n {
        return 1.0;
    }
    // 1 - I_p(k+1, n-k), with x = p and 1 - x = 1 - p passed separately.
    inc_beta(p, 1.0 - p, (k + 1) as f64, (n - k) as f64).1
}

/// Bound for independent obligors. Any correlation on the query is rejected.
pub fn pd_upper_bound_independent(q: &BoundQuery) -> Result<BoundResult> {
    if q.rho.is_some() {
        return Err(Error::domain(
            "query carries an asset correlation; use the correlated bound",
        ));
    }
    if q.is_vacuous() {
        return Ok(BoundResult::vacuous());
    }
    let gamma = q.gamma.get();
    // 1 - B^-1_{n-k,k+1}(1-gamma) = B^-1_{k+1,n-k}(gamma); the mirrored form
    // keeps relative precision for small bounds.
    let (p_upper, iterations) = beta_quantile_raw(gamma, (q.k + 1) as f64, (q.n - q.k) as f64);
    let residual = binomial_cdf_raw(q.n, q.k, p_upper) - (1.0 - gamma);
    Ok(BoundResult {
        p_upper: Probability::saturating(p_upper),
        residual,
        iterations,
        quantile: 1.0 - p_upper,
        vacuous: false,
    })
}

/// Closed form for `k = 0`: `p <= 1 - (1 - gamma)^(1/n)`.
pub fn pd_upper_bound_zero_defaults(n: u64, gamma: Probability) -> Result<Probability> {
    if n == 0 {
        return Err(Error::domain("obligor count must be at least 1"));
    }
    let g = gamma.get();
    if g <= 0.0 || g >= 1.0 {
        return Err(Error::domain(format!("gamma must lie in (0, 1), got {g}")));
    }
    Ok(Probability::saturating(-((-g).ln_1p() / n as f64).exp_m1()))
}
