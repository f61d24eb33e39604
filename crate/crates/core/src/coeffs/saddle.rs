//! Saddle-point coefficients `C_k` as polynomials in `s = coth(mu)`.
//!
//! About the dominant saddle `t0 = mu + i*pi/2` of `cosh t - i t cosh(mu)`
//! the phase expands as `(i sinh(mu) / 2) * delta^2 * h(delta)` with
//! `delta = t - t0` and
//!
//! ```text
//! h(delta) = 1 + sum_{k>=1} 2/(k+2)! * p_k * delta^k,   p_k = s (k odd), 1 (k even)
//! ```
//!
//! because the even derivatives at `t0` equal `i sinh(mu)` and the odd ones
//! `i cosh(mu)`. Pulling the factor `i sinh(mu) / 2` into the new variable
//! leaves the purely real problem `tau = delta * sqrt(h(delta))`. Reverting
//! gives `delta(tau) = sum d_j tau^j`, and the even part of `d delta / d tau`
//! yields `C_k = (2k + 1) d_{2k+1}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::series::{series_elementary, Elementary, FormalSeries, ParamPoly, Rational};

/// Number of series terms carried through the derivation.
pub const DERIVATION_ORDER: usize = 14;

/// Largest `k` whose `C_k` fits in the derivation budget.
pub const MAX_SADDLE_K: usize = (DERIVATION_ORDER - 2) / 2;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `h(delta)` truncated to `order` terms.
fn phase_ratio(order: usize) -> Result<FormalSeries> {
    let coeffs = (0..order)
        .map(|k| {
            if k == 0 {
                return ParamPoly::one();
            }
            let w = BigRational::new(BigInt::from(2), factorial(k + 2));
            if k % 2 == 1 {
                ParamPoly::monomial(w, 1)
            } else {
                ParamPoly::constant(w)
            }
        })
        .collect();
    FormalSeries::new("delta", order, coeffs)
}

/// `tau(delta) = delta * sqrt(h(delta))`, the normalised steepest-descent
/// variable.
pub fn steepest_descent_variable(order: usize) -> Result<FormalSeries> {
    let h = phase_ratio(order)?;
    let one = FormalSeries::constant("delta", order, ParamPoly::one())?;
    let root = series_elementary(Elementary::Sqrt1p, order)?
        .with_var("delta")
        .compose(&h.sub(&one)?)?;
    Ok(root.shift_up(1))
}

/// `C_0 .. C_kmax`, each a polynomial in `s = coth(mu)`.
pub fn derive_saddle_coeffs(kmax: usize) -> Result<Vec<ParamPoly>> {
    if kmax > MAX_SADDLE_K {
        return Err(Error::OrderBudget { requested: kmax, budget: MAX_SADDLE_K });
    }
    let tau = steepest_descent_variable(DERIVATION_ORDER)?;
    let delta = tau.revert()?.with_var("tau");
    Ok((0..=kmax)
        .map(|k| delta.coeff(2 * k + 1).scale(&Rational::from_integer(BigInt::from(2 * k + 1))))
        .collect())
}
