//! Exact truncated power series over a one-parameter rational polynomial
//! ring.
//!
//! Everything here is exact: coefficients are arbitrary-size rationals and no
//! floating point enters any operation except the explicit `eval_f64`
//! helpers on [`ParamPoly`].

pub mod elementary;
pub mod formal;
pub mod poly;

pub use elementary::{binomial_coeffs, series_elementary, Elementary};
pub use formal::{poly_of_series, series_arith, ArithOp, FormalSeries};
pub use poly::{rat, rational_to_f64, ParamPoly, Rational};
