use serde::Serialize;

use super::tables;
use crate::error::{Error, Result};

/// Relative tolerance on `1 + log(lambda xi) = (1 + chi)/chi`.
pub const LOGTERM_TOL: f64 = 1e-13;

/// Per-zero coefficients of the correction terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuntimeCoeffs {
    pub xi: f64,
    pub m: f64,
    /// `xi / m`
    pub chi: f64,
    /// `1 + log(lambda xi)`
    pub logterm: f64,
    pub c: [f64; 3],
    pub b: [f64; 3],
}

/// `lambda = 2/(e x)`.
pub fn lambda(x: f64) -> f64 {
    2.0 / (std::f64::consts::E * x)
}

/// Computes `c_0..c_2` and `B_0..B_2` for a base solution `xi` of
/// `xi log(lambda xi) = m`.
pub fn eval_runtime_coeffs(xi: f64, m: f64, x: f64) -> Result<RuntimeCoeffs> {
    if !(xi > 0.0 && m > 0.0 && x > 0.0) || !(xi.is_finite() && m.is_finite() && x.is_finite()) {
        return Err(Error::Domain(format!(
            "xi, m and x must be positive and finite (xi = {xi}, m = {m}, x = {x})"
        )));
    }
    let t = tables();
    let (a0, a1, a2) = (t.a_at(0, x), t.a_at(1, x), t.a_at(2, x));

    let chi = xi / m;
    let logterm = 1.0 + (lambda(x) * xi).ln();
    let from_chi = (1.0 + chi) / chi;
    if (logterm - from_chi).abs() > LOGTERM_TOL * logterm.abs() {
        return Err(Error::Consistency(format!(
            "xi = {xi} does not solve xi log(lambda xi) = m: 1 + log(lambda xi) = {logterm}, (1 + chi)/chi = {from_chi}"
        )));
    }

    let c0 = a0 / logterm;
    let n1 = a1 - a0 * c0 - 0.5 * c0 * c0;
    let c1 = n1 / logterm;
    let n2 = a2 - 3.0 * a1 * c0 + a0 * (c0 * c0 - c1) - c0 * c1 + c0.powi(3) / 6.0;
    let c2 = n2 / logterm;

    let b0 = a0 / (1.0 + chi);
    let b1 = n1 / (chi.powi(2) * (1.0 + chi));
    let b2 = n2 / (chi.powi(4) * (1.0 + chi));

    Ok(RuntimeCoeffs { xi, m, chi, logterm, c: [c0, c1, c2], b: [b0, b1, b2] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambert::w_principal;

    fn base(n: u32, x: f64) -> (f64, f64) {
        let m = (n as f64 + 0.75) * std::f64::consts::PI;
        let xi = m / w_principal(lambda(x) * m).unwrap().w;
        (xi, m)
    }

    #[test]
    fn c_over_xi_powers_match_b_over_m_powers() {
        for &(n, x) in &[(1, 1.0), (7, 0.3), (30, 2.0)] {
            let (xi, m) = base(n, x);
            let r = eval_runtime_coeffs(xi, m, x).unwrap();
            for k in 0..3 {
                let lhs = r.c[k] / xi.powi(2 * k as i32 + 1);
                let rhs = r.b[k] / m.powi(2 * k as i32 + 1);
                assert!((lhs - rhs).abs() <= 1e-14 * rhs.abs(), "k = {k}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn b0_at_n1_x1() {
        // chi from xi = m / W(lambda m); B_0 = (1/12 - 1/4)/(1 + chi). Value
        // from independent 40-digit arithmetic.
        let (xi, m) = base(1, 1.0);
        let r = eval_runtime_coeffs(xi, m, 1.0).unwrap();
        assert!((r.b[0] - (-0.0911934261846)).abs() < 1e-15);
        assert!((r.b[0] - (-1.0 / 6.0) / (1.0 + r.chi)).abs() < 1e-16);
    }

    #[test]
    fn small_x_limit() {
        let x = 1e-9;
        let (xi, m) = base(3, x);
        let r = eval_runtime_coeffs(xi, m, x).unwrap();
        assert!((r.b[0] - (1.0 / 12.0) / (1.0 + r.chi)).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_solution() {
        let (xi, m) = base(2, 1.0);
        assert!(matches!(eval_runtime_coeffs(xi * 1.001, m, 1.0), Err(Error::Consistency(_))));
        assert!(matches!(eval_runtime_coeffs(xi, m, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn finite_over_wide_range() {
        for n in [1u32, 10, 100, 10_000] {
            for x in [0.01, 1.0, 5.0] {
                let (xi, m) = base(n, x);
                let r = eval_runtime_coeffs(xi, m, x).unwrap();
                assert!(r.c.iter().chain(r.b.iter()).all(|v| v.is_finite()));
            }
        }
    }
}
