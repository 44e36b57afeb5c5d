//! Monte Carlo estimators used as independent checks of the quadrature.
//!
//! Trials are split into chunks of `chunk_size`. Chunk `c` of an estimator
//! with stream key `s` draws from a ChaCha8 generator seeded with `seed` on
//! stream `(s << 32) | c`, so results depend only on `(seed, trials,
//! chunk_size)` and not on how chunks are scheduled. Hit counts are integers
//! and are summed in chunk order.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::par;
use crate::specfun::{norm_cdf, norm_quantile};
use crate::vasicek::FactorModelParams;

const DEFAULT_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig::new(1_000_000, 20_240_601)
    }
}

impl McConfig {
    /// Uses the default chunk size, reduced to `trials` for short runs.
    pub fn new(trials: u64, seed: u64) -> Self {
        McConfig {
            trials,
            seed,
            chunk_size: DEFAULT_CHUNK.min(trials.max(1)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::domain("Monte Carlo needs at least one trial"));
        }
        if self.chunk_size == 0 || self.chunk_size > self.trials {
            return Err(Error::domain(format!(
                "chunk size must lie in [1, {}], got {}",
                self.trials, self.chunk_size
            )));
        }
        Ok(())
    }

    fn chunks(&self) -> Vec<(u64, u64)> {
        let count = self.trials.div_ceil(self.chunk_size);
        (0..count)
            .map(|c| {
                let start = c * self.chunk_size;
                (c, self.chunk_size.min(self.trials - start))
            })
            .collect()
    }
}

/// Proportion estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl McEstimate {
    pub fn from_hits(hits: u64, trials: u64) -> Self {
        let mean = hits as f64 / trials as f64;
        McEstimate {
            mean,
            std_error: (mean * (1.0 - mean) / trials as f64).sqrt(),
            trials,
        }
    }

    /// `(mean - value) / std_error`.
    pub fn z_score(&self, value: f64) -> f64 {
        z(self.mean - value, self.std_error)
    }

    /// Two-sample z statistic for independent estimates.
    pub fn z_between(&self, other: &McEstimate) -> f64 {
        z(self.mean - other.mean, self.std_error.hypot(other.std_error))
    }
}

fn z(diff: f64, se: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff == 0.0 {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

mod stream {
    pub const DEFAULT_COUNT: u64 = 1;
    pub const COPULA: u64 = 2;
    pub const NORMAL_BETANORMAL: u64 = 3;
    pub const UNIFORM_BETANORMAL: u64 = 4;
    pub const UNIFORM_BETA: u64 = 5;
    pub const CONDITIONAL: u64 = 6;
    pub const VASICEK: u64 = 7;
    #[cfg(test)]
    pub const TEST: u64 = 99;
}

fn chunk_rng(seed: u64, key: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((key << 32) | chunk);
    rng
}

/// Runs `trial` `cfg.trials` times and counts `true` outcomes.
fn run<F>(cfg: &McConfig, key: u64, trial: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync + Send,
{
    cfg.validate()?;
    let seed = cfg.seed;
    let hits: u64 = par::map(cfg.chunks(), |(c, len)| {
        let mut rng = chunk_rng(seed, key, c);
        (0..len).filter(|_| trial(&mut rng)).count() as u64
    })
    .into_iter()
    .sum();
    Ok(McEstimate::from_hits(hits, cfg.trials))
}

/// Standard normal by inversion of an open-interval uniform.
#[inline]
fn normal_inv<R: Rng>(rng: &mut R) -> f64 {
    norm_quantile(rng.sample(Open01))
}

/// `Beta(a, b)` as `G_a / (G_a + G_b)` from two gamma variates, returning the
/// variate and its complement separately.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GammaPairBeta {
    ga: Gamma<f64>,
    gb: Gamma<f64>,
}

impl GammaPairBeta {
    pub(crate) fn new(a: f64, b: f64) -> Result<Self> {
        let gamma = |s: f64| {
            Gamma::new(s, 1.0).map_err(|e| Error::domain(format!("gamma shape {s}: {e}")))
        };
        Ok(GammaPairBeta { ga: gamma(a)?, gb: gamma(b)? })
    }

    #[inline]
    pub(crate) fn sample<R: Rng>(&self, rng: &mut R) -> (f64, f64) {
        let x = self.ga.sample(rng);
        let y = self.gb.sample(rng);
        let s = x + y;
        (x / s, y / s)
    }
}

/// `Phi^-1(w)` where `w` and `1 - w` are both known.
#[inline]
fn quantile_pair(w: f64, w_c: f64) -> f64 {
    if w < 0.5 {
        norm_quantile(w)
    } else {
        -norm_quantile(w_c)
    }
}

#[derive(Debug, Clone, Copy)]
enum CountEvent {
    AtMost(u64),
    Exactly(u64),
}

fn simulate_default_count(
    n: u64,
    event: CountEvent,
    m: &FactorModelParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::domain("obligor count must be at least 1"));
    }
    let threshold = m.threshold();
    let (sqrt_rho, sqrt_idio) = (m.rho().sqrt(), (1.0 - m.rho()).sqrt());
    let stop = match event {
        CountEvent::AtMost(k) | CountEvent::Exactly(k) => k,
    };
    run(cfg, stream::DEFAULT_COUNT, |rng| {
        let s = normal_inv(rng);
        // sqrt(rho) s + sqrt(1-rho) xi < x_p  <=>  xi < t  <=>  U < Phi(t)
        // for xi = Phi^-1(U).
        let cutoff = norm_cdf((threshold - sqrt_rho * s) / sqrt_idio);
        let mut defaults = 0;
        for _ in 0..n {
            let u: f64 = rng.sample(Open01);
            if u < cutoff {
                defaults += 1;
                if defaults > stop {
                    return false;
                }
            }
        }
        match event {
            CountEvent::AtMost(_) => true,
            CountEvent::Exactly(i) => defaults == i,
        }
    })
}

/// `P(D <= k)` by simulating the systematic factor and `n` idiosyncratic
/// shocks per trial.
pub fn simulate_default_count_tail(
    n: u64,
    k: u64,
    m: &FactorModelParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if k > n {
        return Err(Error::domain(format!("k={k} exceeds n={n}")));
    }
    simulate_default_count(n, CountEvent::AtMost(k), m, cfg)
}

/// `P(D = i)` with the same simulation as [`simulate_default_count_tail`].
pub fn simulate_default_count_pmf(
    n: u64,
    i: u64,
    m: &FactorModelParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if i > n {
        return Err(Error::domain(format!("i={i} exceeds n={n}")));
    }
    simulate_default_count(n, CountEvent::Exactly(i), m, cfg)
}

/// `P(Z_1 < -Phi^-1(p), ..., Z_n < -Phi^-1(p))` for
/// `Z_i = sqrt(1-rho) Y_i - sqrt(rho) X` with independent standard normals.
pub fn simulate_copula_diagonal(
    n: u64,
    m: &FactorModelParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::domain("copula dimension must be at least 1"));
    }
    let level = -m.threshold();
    let (sqrt_rho, sqrt_idio) = (m.rho().sqrt(), (1.0 - m.rho()).sqrt());
    run(cfg, stream::COPULA, |rng| {
        let x = normal_inv(rng);
        (0..n).all(|_| sqrt_idio * normal_inv(rng) - sqrt_rho * x < level)
    })
}

/// Sampling route for `P(Phi(sqrt(rho) X - sqrt(1-rho) Y) > p)` with
/// `Y = Phi^-1(W)`, `W ~ Beta(n-k, k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prop3Form {
    /// `X` standard normal (ziggurat), `W` from a gamma pair.
    NormalBetaNormal,
    /// `X = Phi^-1(Z)` with `Z` uniform, `W` from Cheng's beta sampler.
    UniformBetaNormal,
    /// `X = Phi^-1(Z)`, `W` from a gamma pair, evaluated as
    /// `Phi(sqrt(rho) Phi^-1(Z) - sqrt(1-rho) Phi^-1(W)) > p`.
    UniformBeta,
}

impl Prop3Form {
    pub const ALL: [Prop3Form; 3] = [
        Prop3Form::NormalBetaNormal,
        Prop3Form::UniformBetaNormal,
        Prop3Form::UniformBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Prop3Form::NormalBetaNormal => "normal-betanormal",
            Prop3Form::UniformBetaNormal => "uniform-betanormal",
            Prop3Form::UniformBeta => "uniform-beta",
        }
    }
}

/// Estimates the probability through the chosen joint distribution; every
/// route targets `P(D <= k)` of the one-factor model.
pub fn simulate_prop3_form(
    form: Prop3Form,
    n: u64,
    k: u64,
    m: &FactorModelParams,
    cfg: &McConfig,
) -> Result<McEstimate> {
    if k >= n {
        return Err(Error::domain(format!("need k < n, got n={n}, k={k}")));
    }
    let (a, b) = ((n - k) as f64, (k + 1) as f64);
    let p = m.p().get();
    let threshold = m.threshold();
    let (sqrt_rho, sqrt_idio) = (m.rho().sqrt(), (1.0 - m.rho()).sqrt());
    match form {
        Prop3Form::NormalBetaNormal => {
            let beta = GammaPairBeta::new(a, b)?;
            run(cfg, stream::NORMAL_BETANORMAL, |rng| {
                let x: f64 = rng.sample(StandardNormal);
                let (w, w_c) = beta.sample(rng);
                // Phi is increasing, so Phi(z) > p  <=>  z > Phi^-1(p).
                sqrt_rho * x - sqrt_idio * quantile_pair(w, w_c) > threshold
            })
        }
        Prop3Form::UniformBetaNormal => {
            let beta = Beta::new(a, b).map_err(|e| Error::domain(format!("beta({a}, {b}): {e}")))?;
            run(cfg, stream::UNIFORM_BETANORMAL, |rng| {
                let x = normal_inv(rng);
                let w: f64 = beta.sample(rng);
                sqrt_rho * x - sqrt_idio * quantile_pair(w, 1.0 - w) > threshold
            })
        }
        Prop3Form::UniformBeta => {
            let beta = GammaPairBeta::new(a, b)?;
            run(cfg, stream::UNIFORM_BETA, |rng| {
                let z: f64 = rng.sample(Open01);
                let (w, w_c) = beta.sample(rng);
                norm_cdf(sqrt_rho * norm_quantile(z) - sqrt_idio * quantile_pair(w, w_c)) > p
            })
        }
    }
}

/// Default frequency of one obligor with the systematic factor fixed at `x`.
pub fn simulate_conditional_default(
    m: &FactorModelParams,
    x: f64,
    cfg: &McConfig,
) -> Result<McEstimate> {
    let threshold = m.threshold();
    let (sqrt_rho, sqrt_idio) = (m.rho().sqrt(), (1.0 - m.rho()).sqrt());
    run(cfg, stream::CONDITIONAL, |rng| {
        sqrt_rho * x + sqrt_idio * normal_inv(rng) < threshold
    })
}

/// Empirical Vasicek CDF `P(g(S) <= v)` from sampled systematic factors.
pub fn simulate_vasicek_cdf(v: f64, m: &FactorModelParams, cfg: &McConfig) -> Result<McEstimate> {
    let threshold = m.threshold();
    let (sqrt_rho, sqrt_idio) = (m.rho().sqrt(), (1.0 - m.rho()).sqrt());
    run(cfg, stream::VASICEK, |rng| {
        let s = normal_inv(rng);
        norm_cdf((threshold - sqrt_rho * s) / sqrt_idio) <= v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::inc_beta;

    fn model(p: f64, rho: f64) -> FactorModelParams {
        FactorModelParams::new(p, rho).unwrap()
    }

    #[test]
    fn config_chunks_cover_trials() {
        let cfg = McConfig { trials: 10, seed: 1, chunk_size: 4 };
        assert_eq!(cfg.chunks(), vec![(0, 4), (1, 4), (2, 2)]);
        assert_eq!(McConfig::new(1000, 0).chunk_size, 1000);
        assert!(McConfig { trials: 5, seed: 0, chunk_size: 6 }.validate().is_err());
        assert!(McConfig { trials: 0, seed: 0, chunk_size: 0 }.validate().is_err());
    }

    #[test]
    fn estimate_statistics() {
        let e = McEstimate::from_hits(25, 100);
        assert_eq!(e.mean, 0.25);
        assert!((e.std_error - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
        assert!((e.z_score(0.2) - 0.05 / e.std_error).abs() < 1e-12);
        let zero = McEstimate::from_hits(0, 10);
        assert_eq!(zero.z_score(0.0), 0.0);
        assert_eq!(zero.z_score(0.5), f64::NEG_INFINITY);
    }

    #[test]
    fn single_obligor_and_independent_copula() {
        let cfg = McConfig::new(200_000, 7);
        let m = model(0.1, 0.3);
        let e = simulate_default_count_tail(1, 0, &m, &cfg).unwrap();
        assert!(e.z_score(0.9).abs() < 3.0);
        let e = simulate_copula_diagonal(1, &m, &cfg).unwrap();
        assert!(e.z_score(0.9).abs() < 3.0);
        let e = simulate_copula_diagonal(4, &model(0.1, 0.0), &cfg).unwrap();
        assert!(e.z_score(0.9f64.powi(4)).abs() < 3.0);
    }

    #[test]
    fn prop3_forms_without_correlation() {
        let cfg = McConfig::new(200_000, 11);
        let (n, k, p) = (20, 2, 0.08);
        let want = inc_beta(1.0 - p, p, (n - k) as f64, (k + 1) as f64).0;
        for form in Prop3Form::ALL {
            let e = simulate_prop3_form(form, n, k, &model(p, 0.0), &cfg).unwrap();
            assert!(e.z_score(want).abs() < 3.0, "{} {}", form.name(), e.z_score(want));
        }
    }

    #[test]
    fn conditional_default_frequency() {
        let m = model(0.1, 0.12);
        let cfg = McConfig::new(200_000, 3);
        let e = simulate_conditional_default(&m, -2.09, &cfg).unwrap();
        let want = crate::vasicek::conditional_pd(&m, -2.09).get();
        assert!(e.z_score(want).abs() < 3.0);
    }

    #[test]
    fn seed_determinism() {
        let m = model(0.1, 0.5);
        let cfg = McConfig { trials: 50_000, seed: 42, chunk_size: 5_000 };
        let a = simulate_default_count_tail(6, 1, &m, &cfg).unwrap();
        let b = simulate_default_count_tail(6, 1, &m, &cfg).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        let c = simulate_default_count_tail(6, 1, &m, &McConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn thread_count_does_not_change_results() {
        let m = model(0.1, 0.5);
        let cfg = McConfig { trials: 40_000, seed: 9, chunk_size: 3_000 };
        let with_threads = |t| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .unwrap()
                .install(|| {
                    (
                        simulate_default_count_tail(6, 1, &m, &cfg).unwrap(),
                        simulate_copula_diagonal(5, &m, &cfg).unwrap(),
                        simulate_prop3_form(Prop3Form::UniformBetaNormal, 6, 1, &m, &cfg).unwrap(),
                    )
                })
        };
        assert_eq!(with_threads(1), with_threads(4));
    }

    #[test]
    fn gamma_pair_beta_passes_ks() {
        // Kolmogorov-Smirnov at the 1% level: D < 1.628 / sqrt(N).
        let n_samples = 100_000usize;
        for (a, b) in [(5.0, 2.0), (149.0, 2.0), (797.0, 4.0)] {
            let beta = GammaPairBeta::new(a, b).unwrap();
            let mut rng = chunk_rng(5, stream::TEST, 0);
            let mut xs: Vec<(f64, f64)> = (0..n_samples).map(|_| beta.sample(&mut rng)).collect();
            xs.sort_by(|l, r| l.0.total_cmp(&r.0));
            let nf = n_samples as f64;
            let d = xs
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| {
                    let cdf = inc_beta(x, y, a, b).0;
                    (cdf - i as f64 / nf).abs().max(((i + 1) as f64 / nf - cdf).abs())
                })
                .fold(0.0, f64::max);
            assert!(d < 1.628 / nf.sqrt(), "({a}, {b}): D = {d}");
        }
    }
}
