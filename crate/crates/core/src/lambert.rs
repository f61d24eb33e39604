//! Principal branch of the Lambert W function on `z >= 0`, and its
//! large-argument log-log series.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

const MAX_ITER: usize = 50;
const STEP_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WResult {
    pub w: f64,
    pub iterations: usize,
    /// `|w e^w - z| / max(z, 1)`
    pub residual: f64,
}

fn residual(w: f64, z: f64) -> f64 {
    (w * w.exp() - z).abs() / z.max(1.0)
}

/// `W(z)` for `z >= 0` by Halley iteration on `w e^w - z`.
pub fn w_principal(z: f64) -> Result<WResult> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "principal Lambert W is only provided for finite z >= 0, got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(WResult { w: 0.0, iterations: 0, residual: 0.0 });
    }
    let mut w = if z <= E {
        z.ln_1p()
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for it in 1..=MAX_ITER {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        let res = residual(w, z);
        if step.abs() <= STEP_TOL * w.abs() || res <= STEP_TOL {
            return Ok(WResult { w, iterations: it, residual: res });
        }
    }
    Err(Error::Convergence { what: format!("Lambert W at z = {z}"), iterations: MAX_ITER })
}

fn log_pair(z: f64) -> Result<(f64, f64)> {
    if !(z > E) {
        return Err(Error::Domain(format!("log-log series needs z > e, got {z}")));
    }
    let l1 = z.ln();
    Ok((l1, l1.ln()))
}

/// Partial sum of the large-`z` series of `W(z)` in `L1 = log z`,
/// `L2 = log log z`, with `terms` in `1..=6`.
pub fn w_asymptotic(z: f64, terms: usize) -> Result<f64> {
    if !(1..=6).contains(&terms) {
        return Err(Error::InvalidArgument(format!("terms must be in 1..=6, got {terms}")));
    }
    let (l1, l2) = log_pair(z)?;
    let series = [
        l1,
        -l2,
        l2 / l1,
        (l2 * l2 - 2.0 * l2) / (2.0 * l1.powi(2)),
        (6.0 - 9.0 * l2 + 2.0 * l2 * l2) * l2 / (6.0 * l1.powi(3)),
        (-12.0 + 36.0 * l2 - 22.0 * l2 * l2 + 3.0 * l2.powi(3)) * l2 / (12.0 * l1.powi(4)),
    ];
    Ok(series[..terms].iter().sum())
}

/// Partial sum of the large-`z` series of `1/W(z)`, `terms` in `1..=5`.
pub fn inv_w_asymptotic(z: f64, terms: usize) -> Result<f64> {
    if !(1..=5).contains(&terms) {
        return Err(Error::InvalidArgument(format!("terms must be in 1..=5, got {terms}")));
    }
    let (l1, l2) = log_pair(z)?;
    let bracket = [
        1.0,
        l2 / l1,
        l2 * (l2 - 1.0) / l1.powi(2),
        (1.0 - 5.0 * l2 + 2.0 * l2 * l2) * l2 / (2.0 * l1.powi(3)),
        (-6.0 + 21.0 * l2 - 26.0 * l2 * l2 + 6.0 * l2.powi(3)) * l2 / (6.0 * l1.powi(4)),
    ];
    Ok(bracket[..terms].iter().sum::<f64>() / l1)
}
