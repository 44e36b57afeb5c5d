//! One-factor (Vasicek) model of correlated defaults.
//!
//! Obligor `i` defaults when `sqrt(rho) S + sqrt(1 - rho) xi_i < Phi^-1(p)`
//! with independent standard normal `S` (systematic) and `xi_i`
//! (idiosyncratic). Given `S = x` the default probability is
//!
//! `g(x) = Phi((Phi^-1(p) - sqrt(rho) x) / sqrt(1 - rho))`
//!
//! and the default count is `Bin(n, g(x))`. Integrating over `S` gives the
//! mixture CDF `P(D <= k)`, which equals `F_{n-k,k+1,rho}(-Phi^-1(p) / sqrt(1-rho))`
//! where
//!
//! `F_{a,b,rho}(y) = E I_{Phi(sqrt(rho/(1-rho)) X + y)}(a, b)`, `X ~ N(0, 1)`.
//!
//! Inverting `F` at `1 - gamma` gives the correlated PD bound.

use crate::binomial_bound::{check_rho, BoundQuery, BoundResult};
use crate::error::{Error, Result};
use crate::quadrature::{tanh_sinh_unit, Integrator};
use crate::specfun::{inc_beta, ln_choose, norm_cdf, norm_quantile, Probability};

/// Unconditional PD and asset correlation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorModelParams {
    p: Probability,
    rho: f64,
}

impl FactorModelParams {
    pub fn new(p: f64, rho: f64) -> Result<Self> {
        let p = Probability::open(p)?;
        check_rho(rho)?;
        Ok(FactorModelParams { p, rho })
    }

    pub fn p(&self) -> Probability {
        self.p
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Default threshold `Phi^-1(p)`.
    pub fn threshold(&self) -> f64 {
        norm_quantile(self.p.get())
    }

    fn kernel(&self) -> ConditionalKernel {
        ConditionalKernel::new(self.threshold(), self.rho)
    }
}

/// Precomputed pieces of `g(x)`.
#[derive(Debug, Clone, Copy)]
struct ConditionalKernel {
    threshold: f64,
    sqrt_rho: f64,
    sqrt_idio: f64,
}

impl ConditionalKernel {
    fn new(threshold: f64, rho: f64) -> Self {
        ConditionalKernel {
            threshold,
            sqrt_rho: rho.sqrt(),
            sqrt_idio: (1.0 - rho).sqrt(),
        }
    }

    /// `(g(x), 1 - g(x))`, both without cancellation.
    #[inline]
    fn probs(&self, x: f64) -> (f64, f64) {
        let t = (self.threshold - self.sqrt_rho * x) / self.sqrt_idio;
        (norm_cdf(t), norm_cdf(-t))
    }
}

/// Shapes `(a, b)` and correlation of `F_{a,b,rho}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureShape {
    a: f64,
    b: f64,
    rho: f64,
}

impl MixtureShape {
    /// General shapes, e.g. for plotting densities. Bound computations use
    /// [`MixtureShape::from_counts`].
    pub fn new(a: f64, b: f64, rho: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::domain(format!(
                "mixture shapes must be positive, got ({a}, {b})"
            )));
        }
        check_rho(rho)?;
        Ok(MixtureShape { a, b, rho })
    }

    /// `(n - k, k + 1)` for `k < n`.
    pub fn from_counts(n: u64, k: u64, rho: f64) -> Result<Self> {
        if k >= n {
            return Err(Error::domain(format!("need k < n, got n={n}, k={k}")));
        }
        Self::new((n - k) as f64, (k + 1) as f64, rho)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    fn slope(&self) -> f64 {
        (self.rho / (1.0 - self.rho)).sqrt()
    }
}

/// `P(default | S = x)`.
pub fn conditional_pd(m: &FactorModelParams, x: f64) -> Probability {
    Probability::saturating(m.kernel().probs(x).0)
}

/// CDF of the Vasicek law of `g(S)`:
/// `Phi((sqrt(1-rho) Phi^-1(v) - Phi^-1(p)) / sqrt(rho))`.
///
/// With `rho = 0` the law is a point mass at `p` and
/// [`Error::Degenerate`] is returned.
pub fn vasicek_cdf(v: Probability, m: &FactorModelParams) -> Result<Probability> {
    let v = v.get();
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::domain(format!("Vasicek CDF needs 0 < v < 1, got {v}")));
    }
    if m.rho == 0.0 {
        return Err(Error::Degenerate { at: m.p.get() });
    }
    let z = ((1.0 - m.rho).sqrt() * norm_quantile(v) - m.threshold()) / m.rho.sqrt();
    Ok(Probability::saturating(norm_cdf(z)))
}

/// `P(D <= k)` under the one-factor model, integrating the conditional
/// binomial CDF `sum_{i<=k} C(n,i) g^i (1-g)^(n-i)` against the normal density.
pub fn mixture_tail_prob(
    n: u64,
    k: u64,
    m: &FactorModelParams,
    q: &Integrator,
) -> Result<Probability> {
    if k > n {
        return Err(Error::domain(format!("k={k} exceeds n={n}")));
    }
    if k == n {
        return Ok(Probability::saturating(1.0));
    }
    let kernel = m.kernel();
    let log_coeffs: Vec<f64> = (0..=k).map(|i| ln_choose(n, i)).collect();
    let value = q.expect(|x| {
        let (g, h) = kernel.probs(x);
        conditional_binomial_cdf(n, &log_coeffs, g, h)
    })?;
    Ok(Probability::saturating(value))
}

/// `sum_{i <= k} C(n, i) g^i h^(n-i)` with `h = 1 - g`, in log space.
fn conditional_binomial_cdf(n: u64, log_coeffs: &[f64], g: f64, h: f64) -> f64 {
    if g <= 0.0 {
        return 1.0;
    }
    if h <= 0.0 {
        return 0.0;
    }
    let (lg, lh) = (g.ln(), h.ln());
    log_coeffs
        .iter()
        .enumerate()
        .map(|(i, lc)| (lc + i as f64 * lg + (n - i as u64) as f64 * lh).exp())
        .sum::<f64>()
        .min(1.0)
}

/// The same probability as [`mixture_tail_prob`] via the beta identity:
/// `E I_{Phi(sqrt(rho/(1-rho)) X - Phi^-1(p)/sqrt(1-rho))}(n-k, k+1)`.
pub fn mixture_tail_prob_beta_form(
    n: u64,
    k: u64,
    m: &FactorModelParams,
    q: &Integrator,
) -> Result<Probability> {
    if k > n {
        return Err(Error::domain(format!("k={k} exceeds n={n}")));
    }
    if k == n {
        return Ok(Probability::saturating(1.0));
    }
    let kernel = m.kernel();
    let (a, b) = ((n - k) as f64, (k + 1) as f64);
    // The beta argument Phi(c x - d) is 1 - g(x).
    let value = q.expect(|x| {
        let (g, h) = kernel.probs(x);
        inc_beta(h, g, a, b).0
    })?;
    Ok(Probability::saturating(value))
}

/// The unit-interval form
/// `int_0^1 I_{Phi(sqrt(rho/(1-rho)) Phi^-1(u) - Phi^-1(p)/sqrt(1-rho))}(n-k, k+1) du`,
/// integrated directly on `(0, 1)` with the tanh-sinh rule. It shares no
/// quadrature nodes with the Gaussian-weight forms.
pub fn mixture_tail_prob_unit_interval(
    n: u64,
    k: u64,
    m: &FactorModelParams,
    tol: f64,
) -> Result<Probability> {
    if k > n {
        return Err(Error::domain(format!("k={k} exceeds n={n}")));
    }
    if k == n {
        return Ok(Probability::saturating(1.0));
    }
    let kernel = m.kernel();
    let (a, b) = ((n - k) as f64, (k + 1) as f64);
    let value = tanh_sinh_unit(
        |u, v| {
            let x = if u < 0.5 {
                norm_quantile(u)
            } else {
                -norm_quantile(v)
            };
            let (g, h) = kernel.probs(x);
            inc_beta(h, g, a, b).0
        },
        tol,
    )?;
    Ok(Probability::saturating(value))
}

/// `F_{a,b,rho}(y) = E I_{Phi(sqrt(rho/(1-rho)) X + y)}(a, b)`.
pub fn f_cdf(y: f64, s: &MixtureShape, q: &Integrator) -> Result<Probability> {
    if y.is_nan() {
        return Err(Error::domain("F argument is NaN"));
    }
    if y == f64::INFINITY {
        return Ok(Probability::saturating(1.0));
    }
    if y == f64::NEG_INFINITY {
        return Ok(Probability::saturating(0.0));
    }
    let c = s.slope();
    let value = q.expect(|x| {
        let z = c * x + y;
        inc_beta(norm_cdf(z), norm_cdf(-z), s.a, s.b).0
    })?;
    Ok(Probability::saturating(value))
}

const BRACKET_LIMIT: f64 = 40.0;

/// Solves `F(y) = prob` by bracketing outward from `[-2, 2]` and bisecting
/// to the integrator's root width. Returns `(y, iterations)`.
pub(crate) fn solve_f_quantile(
    prob: f64,
    s: &MixtureShape,
    q: &Integrator,
) -> Result<(f64, u32)> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::domain(format!("F quantile needs 0 < prob < 1, got {prob}")));
    }
    let f = |y: f64| f_cdf(y, s, q).map(|v| v.get() - prob);
    let mut iterations = 0u32;

    let mut lo = -2.0_f64;
    while f(lo)? > 0.0 {
        iterations += 1;
        if lo <= -BRACKET_LIMIT {
            return Err(Error::Bracket { target: prob, limit: BRACKET_LIMIT });
        }
        lo = (2.0 * lo).max(-BRACKET_LIMIT);
    }
    let mut hi = 2.0_f64;
    while f(hi)? < 0.0 {
        iterations += 1;
        if hi >= BRACKET_LIMIT {
            return Err(Error::Bracket { target: prob, limit: BRACKET_LIMIT });
        }
        hi = (2.0 * hi).min(BRACKET_LIMIT);
    }
    while hi - lo > q.root_width() {
        iterations += 1;
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), iterations))
}

/// `F^-1_{a,b,rho}(prob)`.
pub fn f_quantile(prob: Probability, s: &MixtureShape, q: &Integrator) -> Result<f64> {
    solve_f_quantile(prob.get(), s, q).map(|(y, _)| y)
}

/// Correlated bound `p <= 1 - Phi(sqrt(1-rho) F^-1_{n-k,k+1,rho}(1 - gamma))`.
pub fn pd_upper_bound_correlated(qy: &BoundQuery, q: &Integrator) -> Result<BoundResult> {
    let rho = qy
        .rho
        .ok_or_else(|| Error::domain("correlated bound needs an asset correlation"))?;
    check_rho(rho)?;
    if qy.is_vacuous() {
        return Ok(BoundResult::vacuous());
    }
    let target = 1.0 - qy.gamma.get();
    let shape = MixtureShape::from_counts(qy.n, qy.k, rho)?;
    let (y, iterations) = solve_f_quantile(target, &shape, q)?;
    let p_upper = norm_cdf(-(1.0 - rho).sqrt() * y);
    let params = FactorModelParams::new(p_upper, rho).map_err(|_| {
        Error::domain(format!("bound {p_upper:e} is not an interior probability"))
    })?;
    let residual = mixture_tail_prob(qy.n, qy.k, &params, q)?.get() - target;
    Ok(BoundResult {
        p_upper: Probability::saturating(p_upper),
        residual,
        iterations,
        quantile: y,
        vacuous: false,
    })
}

/// `F~(p) = 1 - F_{a,b,rho}(-Phi^-1(p) / sqrt(1 - rho))`, a CDF in `p`.
/// The bound condition is `F~(p) <= gamma`.
pub fn tilde_f_cdf(p: Probability, s: &MixtureShape, q: &Integrator) -> Result<Probability> {
    let p = p.get();
    let y = -norm_quantile(p) / (1.0 - s.rho).sqrt();
    Ok(f_cdf(y, s, q)?.complement())
}

/// Mixed binomial pmf `P(D = i) = C(n,i) E g(X)^i (1 - g(X))^(n-i)`.
pub fn mixture_pmf(n: u64, i: u64, m: &FactorModelParams, q: &Integrator) -> Result<Probability> {
    if i > n {
        return Err(Error::domain(format!("i={i} exceeds n={n}")));
    }
    let kernel = m.kernel();
    let lc = ln_choose(n, i);
    let value = q.expect(|x| {
        let (g, h) = kernel.probs(x);
        binomial_term(lc, i, n - i, g, h)
    })?;
    Ok(Probability::saturating(value))
}

#[inline]
fn binomial_term(log_coeff: f64, successes: u64, failures: u64, g: f64, h: f64) -> f64 {
    let mut l = log_coeff;
    if successes > 0 {
        l += successes as f64 * g.ln();
    }
    if failures > 0 {
        l += failures as f64 * h.ln();
    }
    l.exp()
}

/// Moment-generating function of the mixed binomial law,
/// `M(t) = E (1 - g(X) + g(X) e^t)^n`.
///
/// For `t > 0` the factor `e^(n t)` is taken outside the integral so the
/// quadrature tolerance applies relative to `M(t)`.
pub fn mixture_mgf(t: f64, n: u64, m: &FactorModelParams, q: &Integrator) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::domain(format!("MGF argument {t} is not finite")));
    }
    let kernel = m.kernel();
    let shift = t.max(0.0);
    let (wh, wg) = ((-shift).exp(), (t - shift).exp());
    let nf = n as f64;
    let scaled = q.expect(|x| {
        let (g, h) = kernel.probs(x);
        (h * wh + g * wg).powf(nf)
    })?;
    Ok(scaled * (nf * shift).exp())
}

/// `E Phi^n(sqrt(rho/(1-rho)) X - Phi^-1(p)/sqrt(1-rho))`, the probability
/// of no default among `n` obligors. Equals the equicorrelated Gaussian
/// orthant probability `Phi_R(-Phi^-1(p), ..., -Phi^-1(p))`.
pub fn copula_diagonal(n: u64, m: &FactorModelParams, q: &Integrator) -> Result<Probability> {
    if n == 0 {
        return Err(Error::domain("copula dimension must be at least 1"));
    }
    let kernel = m.kernel();
    let nf = n as f64;
    let value = q.expect(|x| {
        let (_, h) = kernel.probs(x);
        if h <= 0.0 {
            0.0
        } else {
            (nf * h.ln()).exp()
        }
    })?;
    Ok(Probability::saturating(value))
}

/// Density of `N(0, R)` with `R` the `n x n` equicorrelation matrix
/// (ones on the diagonal, `rho` elsewhere), using
/// `|R| = (1-rho)^(n-1) (1+(n-1) rho)` and the closed-form inverse.
pub fn equicorr_density(point: &[f64], rho: f64) -> Result<f64> {
    let n = point.len();
    if n == 0 {
        return Err(Error::domain("density needs at least one coordinate"));
    }
    if rho >= 1.0 {
        return Err(Error::domain(format!(
            "correlation {rho} makes the equicorrelation matrix singular"
        )));
    }
    if !(rho >= 0.0) {
        return Err(Error::domain(format!("correlation must lie in [0, 1), got {rho}")));
    }
    let nf = n as f64;
    let sum: f64 = point.iter().sum();
    let sum_sq: f64 = point.iter().map(|x| x * x).sum();
    let cross = 0.5 * (sum * sum - sum_sq);
    let spread = 1.0 + (nf - 1.0) * rho;
    let quad = ((1.0 + (nf - 2.0) * rho) * sum_sq - 2.0 * rho * cross) / ((1.0 - rho) * spread);
    let log_det = (nf - 1.0) * (-rho).ln_1p() + spread.ln();
    let log_norm = 0.5 * (nf * (2.0 * std::f64::consts::PI).ln() + log_det);
    Ok((-0.5 * quad - log_norm).exp())
}
