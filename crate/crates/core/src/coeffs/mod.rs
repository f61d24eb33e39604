//! Exact derivation of every coefficient family used by the zero expansion,
//! plus the floating-point coefficients evaluated per zero.
//!
//! The chain is
//!
//! 1. saddle coefficients `C_k(mu)` in `s = coth(mu)` ([`saddle`]),
//! 2. the phase shift `epsilon` in `1/(nu tanh mu)`, the `a_k(mu)` in
//!    `r^2 = x^2/nu^2`, and `epsilon` in `1/nu` ([`phase`]),
//! 3. the expansion of `mu - tanh(mu)` about `log(2 nu/(e x))`,
//! 4. the zero equation coefficients `A_k` in `u = x^2`,
//! 5. per zero: `c_k` and `B_k` ([`runtime`]).
//!
//! None of the published values are stored here; the tests compare against
//! them.

pub mod phase;
pub mod runtime;
pub mod saddle;

use std::sync::OnceLock;

pub use phase::{derive_a, derive_mu_expansion, derive_phase_correction, PhaseCorrection};
pub use runtime::{eval_runtime_coeffs, RuntimeCoeffs};
pub use saddle::{derive_saddle_coeffs, DERIVATION_ORDER, MAX_SADDLE_K};

use crate::error::Result;
use crate::series::{FormalSeries, ParamPoly};

/// Default number of saddle coefficients `C_0 .. C_5`.
pub const DEFAULT_KMAX: usize = 5;

/// Terms kept in each `a_k(r^2)` expansion.
const A_ORDER: usize = 4;

/// Terms kept in the `mu - tanh(mu)` expansion (through `r^8`).
const MU_ORDER: usize = 5;

/// All derived coefficient families.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTables {
    /// `C_0 .. C_kmax` in `s = coth(mu)`.
    pub c: Vec<ParamPoly>,
    /// `epsilon` in `v = 1/(nu tanh mu)` (odd powers only).
    pub phase_eps: FormalSeries,
    /// `a_0, a_1, ...` in `r^2`.
    pub a_expansions: Vec<FormalSeries>,
    /// `epsilon` in `1/nu`, coefficients in `u = x^2`.
    pub eps_series: FormalSeries,
    /// `mu - tanh(mu) - log(2/(e r))` in `r^2`.
    pub mu_minus_tanh: FormalSeries,
    /// `A_0, A_1, ...` in `u = x^2`.
    pub a: Vec<ParamPoly>,
}

impl CoeffTables {
    pub fn derive(kmax: usize) -> Result<Self> {
        let c = derive_saddle_coeffs(kmax)?;
        let phase = derive_phase_correction(&c, A_ORDER.max(kmax))?;
        let mu_minus_tanh = derive_mu_expansion(MU_ORDER.max(kmax))?;
        let a = derive_a(&phase, &mu_minus_tanh)?;
        let PhaseCorrection { phase_eps, a_expansions, eps_series } = phase;
        Ok(CoeffTables { c, phase_eps, a_expansions, eps_series, mu_minus_tanh, a })
    }

    /// `C_k` evaluated at `s = coth(mu)`.
    pub fn c_at(&self, k: usize, coth_mu: f64) -> f64 {
        self.c[k].eval_f64(coth_mu)
    }

    /// The phase shift `epsilon` from its `1/nu` series, at `(nu, x)`.
    pub fn epsilon_at(&self, nu: f64, x: f64) -> f64 {
        let u = x * x;
        self.eps_series
            .coeffs()
            .iter()
            .enumerate()
            .map(|(p, c)| c.eval_f64(u) * nu.powi(-(p as i32)))
            .sum()
    }

    /// `A_k` evaluated at `u = x^2`.
    pub fn a_at(&self, k: usize, x: f64) -> f64 {
        self.a[k].eval_f64(x * x)
    }
}

/// The default tables (`kmax = 5`), derived once on first use.
pub fn tables() -> &'static CoeffTables {
    static TABLES: OnceLock<CoeffTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        CoeffTables::derive(DEFAULT_KMAX).expect("derivation at the default order is well posed")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_shapes() {
        let t = tables();
        assert_eq!(t.c.len(), 6);
        assert_eq!(t.a_expansions.len(), 3);
        assert_eq!(t.a.len(), 3);
        assert_eq!(t.eps_series.order(), 6);
        for (k, ck) in t.c.iter().enumerate() {
            assert!(ck.is_even(), "C_{k} has odd powers");
            assert_eq!(ck.degree(), 2 * k as isize);
        }
    }

    #[test]
    fn kmax_six_extends() {
        let t = CoeffTables::derive(6).unwrap();
        assert_eq!(t.c.len(), 7);
        assert!(t.c[6].is_even());
        assert_eq!(&t.c[..6], &tables().c[..]);
        // A_0 .. A_2 are unaffected by the extra saddle coefficient
        assert_eq!(&t.a[..3], &tables().a[..]);
    }
}
