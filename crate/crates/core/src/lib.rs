//! Real zeros `nu_n` of the Macdonald function `K_{i nu}(x)` of imaginary
//! order, for fixed `x > 0`.
//!
//! * [`series`]: exact truncated power series over `Q[p]`.
//! * [`coeffs`]: exact derivation of the saddle coefficients `C_k`, the phase
//!   correction and the zero-equation coefficients `A_k`; per-zero `c_k`, `B_k`.
//! * [`lambert`]: principal Lambert W and its log-log series.
//! * [`macdonald`]: extended-precision quadrature of `e^{pi nu/2} K_{i nu}(x)`
//!   and its large-`nu` expansion.
//! * [`reference`]: the published table of zeros at `x = 1`.
//! * [`zeros`]: zero estimates `nu_n ~ m/W(lambda m) + B_0/m + B_1/m^3 + B_2/m^5`,
//!   bracketed refinement and table assembly.
//!
//! ```
//! use kiv_zeros::zeros::estimate_zero;
//!
//! let nu = estimate_zero(2, 1.0, 3).unwrap();
//! assert!((nu - 5.879_868_98).abs() < 1e-8);
//! ```

// `!(a > b)` is how domain checks here reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coeffs;
pub mod error;
pub mod lambert;
pub mod macdonald;
pub mod reference;
pub mod series;
pub mod zeros;

pub use error::{Error, Result};
