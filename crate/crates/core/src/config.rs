use crate::error::Result;
use crate::mc::McConfig;
use crate::quadrature::{Integrator, QuadratureSpec, DEFAULT_ROOT_WIDTH};

/// Everything numeric a computation may need: quadrature settings, the
/// quantile solver's bracket width, and Monte Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    pub quadrature: QuadratureSpec,
    pub root_width: f64,
    pub mc: McConfig,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            quadrature: QuadratureSpec::default(),
            root_width: DEFAULT_ROOT_WIDTH,
            mc: McConfig::default(),
        }
    }
}

impl NumericConfig {
    pub fn integrator(&self) -> Result<Integrator> {
        Integrator::new(self.quadrature)?.with_root_width(self.root_width)
    }
}
