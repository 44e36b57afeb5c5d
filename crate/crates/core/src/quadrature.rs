//! Numerical integration.
//!
//! Expectations under the standard normal are computed with Gauss-Legendre
//! rules on `[-T, T]`. Each panel is evaluated with `N` and `N / 2` nodes;
//! when the two disagree by more than the panel's share of the tolerance the
//! panel is split in half, up to a fixed depth.
//!
//! Integrals over the open unit interval with endpoint singularities in the
//! integrand's argument (such as `Phi^-1(u)`) use the tanh-sinh rule.

use crate::error::{Error, Result};
use crate::specfun::norm_pdf;

const MAX_SPLIT_DEPTH: u32 = 6;

/// Settings for the Gaussian-weight integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes per panel.
    pub node_count: usize,
    /// Integration limits are `[-truncation, truncation]`.
    pub truncation: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            node_count: 256,
            truncation: 12.0,
            abs_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::domain(format!(
                "quadrature needs at least 2 nodes, got {}",
                self.node_count
            )));
        }
        if !(self.truncation > 0.0 && self.truncation.is_finite()) {
            return Err(Error::domain(format!(
                "quadrature truncation must be positive, got {}",
                self.truncation
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain(format!(
                "quadrature tolerance must be positive, got {}",
                self.abs_tol
            )));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule by Newton iteration on `P_n` from the
    /// Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        if n == 1 {
            return GaussLegendre {
                nodes: vec![0.0],
                weights: vec![2.0],
            };
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Three-term recurrence for P_n(x) and its derivative.
                let mut p0 = 1.0;
                let mut p1 = x;
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = nf * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int_a^b f(x) dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(mid + half * t))
            .sum::<f64>()
            * half
    }
}

/// Gaussian-weight integrator built from a [`QuadratureSpec`], plus the
/// bracket width used by the quantile solvers that sit on top of it.
#[derive(Debug, Clone)]
pub struct Integrator {
    spec: QuadratureSpec,
    fine: GaussLegendre,
    coarse: GaussLegendre,
    root_width: f64,
}

/// Default final bracket width of the bisection solvers.
pub const DEFAULT_ROOT_WIDTH: f64 = 1e-10;

impl Integrator {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Integrator {
            spec,
            fine: GaussLegendre::new(spec.node_count),
            coarse: GaussLegendre::new((spec.node_count / 2).max(1)),
            root_width: DEFAULT_ROOT_WIDTH,
        })
    }

    pub fn with_root_width(mut self, width: f64) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::domain(format!("root width must be positive, got {width}")));
        }
        self.root_width = width;
        Ok(self)
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn root_width(&self) -> f64 {
        self.root_width
    }

    /// `E f(X)` for `X ~ N(0, 1)`, i.e. `int phi(x) f(x) dx` over `[-T, T]`.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let t = self.spec.truncation;
        let g = |x: f64| norm_pdf(x) * f(x);
        let mut value = 0.0;
        let mut error = 0.0;
        let mut panels = 0;
        self.panel(-t, t, &g, 0, &mut value, &mut error, &mut panels);
        if error > self.spec.abs_tol || !value.is_finite() {
            return Err(Error::Quadrature {
                value,
                error_estimate: error,
                tolerance: self.spec.abs_tol,
                nodes: self.spec.node_count,
                panels,
            });
        }
        Ok(value)
    }

    #[allow(clippy::too_many_arguments)]
    fn panel<G: Fn(f64) -> f64>(
        &self,
        a: f64,
        b: f64,
        g: &G,
        depth: u32,
        value: &mut f64,
        error: &mut f64,
        panels: &mut usize,
    ) {
        let fine = self.fine.integrate(a, b, g);
        let coarse = self.coarse.integrate(a, b, g);
        let est = (fine - coarse).abs();
        let share = self.spec.abs_tol * (b - a) / (2.0 * self.spec.truncation);
        if est <= share || depth >= MAX_SPLIT_DEPTH || !est.is_finite() {
            *value += fine;
            *error += est;
            *panels += 1;
            return;
        }
        let mid = 0.5 * (a + b);
        self.panel(a, mid, g, depth + 1, value, error, panels);
        self.panel(mid, b, g, depth + 1, value, error, panels);
    }
}

/// `int_0^1 f(u) du` by the tanh-sinh rule. The integrand receives both
/// `u` and `1 - u`, each computed without cancellation.
pub fn tanh_sinh_unit<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    const T_MAX: f64 = 3.5;
    const MAX_LEVEL: u32 = 10;

    let point = |t: f64| -> f64 {
        let s = std::f64::consts::PI * t.sinh();
        let u = 1.0 / (1.0 + (-s).exp());
        let v = 1.0 / (1.0 + s.exp());
        // du/dt = pi cosh(t) u (1 - u)
        let w = std::f64::consts::PI * t.cosh() * u * v;
        if w == 0.0 || u <= 0.0 || v <= 0.0 {
            0.0
        } else {
            w * f(u, v)
        }
    };

    let mut h = 0.5;
    let mut sum = point(0.0);
    let mut j = 1;
    while j as f64 * h <= T_MAX {
        let t = j as f64 * h;
        sum += point(t) + point(-t);
        j += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        // Only the odd multiples of the new step are new points.
        let mut j = 1;
        while j as f64 * h <= T_MAX {
            let t = j as f64 * h;
            sum += point(t) + point(-t);
            j += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= tol {
            return Ok(estimate);
        }
    }
    Err(Error::Quadrature {
        value: estimate,
        error_estimate: f64::NAN,
        tolerance: tol,
        nodes: 0,
        panels: 0,
    })
}
