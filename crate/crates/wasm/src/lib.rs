//! Browser bindings for the demo page in `www/`.
//!
//! The exported functions are thin wrappers over [`demo`], which holds the
//! computations and is tested natively.

use wasm_bindgen::prelude::*;

pub mod demo;

fn js(e: lowpd::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Upper PD bound at confidence `gamma`; independent obligors when `rho` is
/// absent.
#[wasm_bindgen(js_name = pdBound)]
pub fn pd_bound(n: u32, k: u32, gamma: f64, rho: Option<f64>) -> Result<demo::Bound, JsError> {
    demo::pd_bound(n.into(), k.into(), gamma, rho).map_err(js)
}

/// Quantile of `F_{a,b,rho}`.
#[wasm_bindgen(js_name = fQuantile)]
pub fn f_quantile(prob: f64, a: f64, b: f64, rho: f64) -> Result<f64, JsError> {
    demo::f_quantile(prob, a, b, rho).map_err(js)
}

/// Density of `F_{a,b,rho}` at `points` equally spaced nodes of `[from, to]`.
#[wasm_bindgen(js_name = fDensity)]
pub fn f_density(a: f64, b: f64, rho: f64, from: f64, to: f64, points: usize) -> Result<Vec<f64>, JsError> {
    demo::f_density(a, b, rho, &demo::grid(from, to, points).map_err(js)?).map_err(js)
}

/// Density of the Vasicek distribution at `points` equally spaced nodes of
/// `[0, 1]`.
#[wasm_bindgen(js_name = vasicekDensity)]
pub fn vasicek_density(p: f64, rho: f64, points: usize) -> Result<Vec<f64>, JsError> {
    demo::vasicek_density(p, rho, &demo::grid(0.0, 1.0, points).map_err(js)?).map_err(js)
}
