//! Browser bindings: a sweep of `f(nu) = e^{pi nu/2} K_{i nu}(x)`, a table of
//! zeros, and a Lambert W check. Each call returns a JSON string.
//!
//! The `*_json` functions hold the logic and run natively as well; the
//! `#[wasm_bindgen]` wrappers only convert errors.

use kiv_zeros::lambert::{inv_w_asymptotic, w_asymptotic, w_principal};
use kiv_zeros::macdonald::{eval_scaled, eval_scaled_asymptotic, EvalConfig, ASYMPTOTIC_MARGIN};
use kiv_zeros::zeros::{estimate_zero, refine_zero, xi_base};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 2000;
const MAX_ROWS: u32 = 200;
/// Refinement costs grow with `nu`; keep the page responsive.
const MAX_REFINE_N: u32 = 60;

fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

/// `points` samples of `f` on `[nu_min, nu_max]`. `method` is `"quad"` or
/// `"asym"`; the expansion is skipped (null) where it does not apply.
pub fn curve_json(x: f64, nu_min: f64, nu_max: f64, points: usize, method: &str, digits: u32) -> Result<String, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be in 2..={MAX_POINTS}"));
    }
    if !(nu_max > nu_min && nu_min >= 0.0) {
        return Err("need 0 <= nu_min < nu_max".into());
    }
    let cfg = EvalConfig::with_digits(digits.clamp(1, 30));
    let step = (nu_max - nu_min) / (points - 1) as f64;
    let mut nu = Vec::with_capacity(points);
    let mut value = Vec::with_capacity(points);
    for i in 0..points {
        let v = nu_min + i as f64 * step;
        let f = match method {
            "quad" => Some(eval_scaled(v, x, &cfg).map_err(|e| e.to_string())?.value),
            "asym" if v >= x + ASYMPTOTIC_MARGIN => {
                Some(eval_scaled_asymptotic(v, x, 5).map_err(|e| e.to_string())?.value)
            }
            "asym" => None,
            other => return Err(format!("unknown method `{other}`")),
        };
        nu.push(num(v));
        value.push(f.map_or(Value::Null, num));
    }
    Ok(json!({ "x": x, "method": method, "nu": nu, "value": value }).to_string())
}

/// Zeros `n_min..=n_max`: base solution, order-3 estimate and, if asked,
/// the refined zero.
pub fn zeros_json(x: f64, n_min: u32, n_max: u32, refine: bool) -> Result<String, String> {
    if n_min < 1 || n_max < n_min || n_max - n_min >= MAX_ROWS {
        return Err(format!("need 1 <= n_min <= n_max with at most {MAX_ROWS} rows"));
    }
    if refine && n_max > MAX_REFINE_N {
        return Err(format!("refinement is limited to n <= {MAX_REFINE_N} here"));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let xi = xi_base(n, x).map_err(|e| e.to_string())?;
        let estimate = estimate_zero(n, x, 3).map_err(|e| e.to_string())?;
        let mut row = json!({ "n": n, "xi": num(xi), "estimate": num(estimate) });
        if refine {
            let r = refine_zero(n, x, 1e-10).map_err(|e| e.to_string())?;
            row["refined"] = num(r.nu);
            row["diff"] = num(estimate - r.nu);
        }
        rows.push(row);
    }
    Ok(json!({ "x": x, "rows": rows }).to_string())
}

/// `W(z)` by Halley iteration next to the six-term log-log series.
pub fn lambert_json(z: f64) -> Result<String, String> {
    let r = w_principal(z).map_err(|e| e.to_string())?;
    let (series, inv_series) = if z > std::f64::consts::E {
        (num(w_asymptotic(z, 6).map_err(|e| e.to_string())?), num(inv_w_asymptotic(z, 5).map_err(|e| e.to_string())?))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(json!({
        "z": num(z),
        "w": num(r.w),
        "iterations": r.iterations,
        "residual": num(r.residual),
        "w_series": series,
        "inv_w_series": inv_series,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn curve(x: f64, nu_min: f64, nu_max: f64, points: usize, method: &str, digits: u32) -> Result<String, JsError> {
    curve_json(x, nu_min, nu_max, points, method, digits).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn zeros(x: f64, n_min: u32, n_max: u32, refine: bool) -> Result<String, JsError> {
    zeros_json(x, n_min, n_max, refine).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lambert(z: f64) -> Result<String, JsError> {
    lambert_json(z).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn curve_changes_sign_across_first_zero() {
        let v = parse(curve_json(1.0, 4.0, 5.0, 3, "quad", 8).unwrap());
        let f: Vec<f64> = v["value"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        assert!(f[0] < 0.0 && f[2] > 0.0, "{f:?}");
    }

    #[test]
    fn asymptotic_curve_leaves_gaps() {
        let v = parse(curve_json(1.0, 0.0, 3.0, 4, "asym", 8).unwrap());
        assert!(v["value"][0].is_null());
        assert!(v["value"][3].is_number());
        assert!(curve_json(1.0, 0.0, 3.0, 4, "spline", 8).is_err());
    }

    #[test]
    fn zeros_rows() {
        let v = parse(zeros_json(1.0, 1, 2, true).unwrap());
        assert!((v["rows"][0]["refined"].as_f64().unwrap() - 4.5344907181).abs() < 1e-9);
        assert!(zeros_json(1.0, 0, 2, false).is_err());
        assert!(zeros_json(1.0, 1, 100, true).is_err());
    }

    #[test]
    fn lambert_point() {
        let v = parse(lambert_json(1e8).unwrap());
        assert!((v["w"].as_f64().unwrap() - 15.668996715450962).abs() < 1e-13);
        assert!(parse(lambert_json(1.0).unwrap())["w_series"].is_null());
        assert!(lambert_json(-1.0).is_err());
    }
}
