//! Template series for a few elementary functions, with exact coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::formal::FormalSeries;
use super::poly::{rat, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    /// `sqrt(1 + u)`
    Sqrt1p,
    /// `log(1 + u)`
    Log1p,
    /// `arctan(u)`
    Atan,
    /// `1 / (1 - u)`
    Geom,
    /// `exp(u) - 1`
    Expm1,
}

/// Generalised binomial coefficients `binom(alpha, k)` for `k < order`.
pub fn binomial_coeffs(alpha: &Rational, order: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order);
    let mut c = Rational::one();
    for k in 0..order {
        out.push(c.clone());
        c = c * (alpha - Rational::from_integer(BigInt::from(k))) / Rational::from_integer(BigInt::from(k + 1));
    }
    out
}

/// The series of `kind` in the variable `u`, truncated to `order` terms.
pub fn series_elementary(kind: Elementary, order: usize) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("series order must be at least 1".into()));
    }
    let coeffs: Vec<Rational> = match kind {
        Elementary::Sqrt1p => binomial_coeffs(&rat(1, 2), order),
        Elementary::Geom => vec![Rational::one(); order],
        Elementary::Log1p => (0..order)
            .map(|k| match k {
                0 => Rational::zero(),
                _ => rat(if k % 2 == 1 { 1 } else { -1 }, k as i64),
            })
            .collect(),
        Elementary::Atan => (0..order)
            .map(|k| match k % 4 {
                1 => rat(1, k as i64),
                3 => rat(-1, k as i64),
                _ => Rational::zero(),
            })
            .collect(),
        Elementary::Expm1 => {
            let mut fact = BigInt::one();
            (0..order)
                .map(|k| {
                    if k > 0 {
                        fact *= BigInt::from(k);
                    }
                    match k {
                        0 => Rational::zero(),
                        _ => Rational::new(BigInt::one(), fact.clone()),
                    }
                })
                .collect()
        }
    };
    FormalSeries::from_rationals("u", order, coeffs)
}
