use lowpd::{
    f_cdf, pd_upper_bound, vasicek_cdf, BoundQuery, Error, FactorModelParams, MixtureShape,
    NumericConfig, Probability, Result,
};
use wasm_bindgen::prelude::wasm_bindgen;

/// Central-difference step for densities.
const STEP: f64 = 1e-4;

#[wasm_bindgen]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    /// Bound as a probability.
    pub p_upper: f64,
    /// Bound in percent, rounded to two decimals.
    pub percent: f64,
    pub residual: f64,
    /// `k = n`: the bound is 1.
    pub vacuous: bool,
}

pub fn pd_bound(n: u64, k: u64, gamma: f64, rho: Option<f64>) -> Result<Bound> {
    let q = NumericConfig::default().integrator()?;
    let r = pd_upper_bound(&BoundQuery::new(n, k, gamma, rho)?, &q)?;
    let p = r.p_upper.get();
    Ok(Bound {
        p_upper: p,
        percent: lowpd::round_percent(p),
        residual: r.residual,
        vacuous: r.vacuous,
    })
}

pub fn f_quantile(prob: f64, a: f64, b: f64, rho: f64) -> Result<f64> {
    let q = NumericConfig::default().integrator()?;
    lowpd::f_quantile(Probability::open(prob)?, &MixtureShape::new(a, b, rho)?, &q)
}

/// `points` equally spaced nodes from `from` to `to` inclusive.
pub fn grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && from < to) || points < 2 {
        return Err(Error::Domain(format!(
            "grid needs finite from < to and at least 2 points, got [{from}, {to}] with {points}"
        )));
    }
    let h = (to - from) / (points - 1) as f64;
    Ok((0..points).map(|i| if i + 1 == points { to } else { from + i as f64 * h }).collect())
}

pub fn f_density(a: f64, b: f64, rho: f64, xs: &[f64]) -> Result<Vec<f64>> {
    let q = NumericConfig::default().integrator()?;
    let s = MixtureShape::new(a, b, rho)?;
    xs.iter()
        .map(|&x| {
            let hi = f_cdf(x + STEP, &s, &q)?.get();
            let lo = f_cdf(x - STEP, &s, &q)?.get();
            Ok(((hi - lo) / (2.0 * STEP)).max(0.0))
        })
        .collect()
}

/// Density on `[0, 1]`; the difference stencil is clamped to the interval.
pub fn vasicek_density(p: f64, rho: f64, xs: &[f64]) -> Result<Vec<f64>> {
    if rho == 0.0 {
        return Err(Error::Domain("the distribution is a point mass when rho = 0".into()));
    }
    let m = FactorModelParams::new(p, rho)?;
    let cdf = |v: f64| -> Result<f64> {
        if v <= 0.0 {
            Ok(0.0)
        } else if v >= 1.0 {
            Ok(1.0)
        } else {
            Ok(vasicek_cdf(Probability::new(v)?, &m)?.get())
        }
    };
    xs.iter()
        .map(|&x| {
            let (lo, hi) = ((x - STEP).max(0.0), (x + STEP).min(1.0));
            Ok(((cdf(hi)? - cdf(lo)?) / (hi - lo)).max(0.0))
        })
        .collect()
}
