//! From the saddle coefficients to the zero equation
//! `nu log(lambda nu) = m + A_0/nu + A_1/nu^3 + ...`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::{
    poly_of_series, rat, series_elementary, Elementary, FormalSeries, ParamPoly, Rational,
};

/// The phase correction `epsilon` in its three successive forms.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCorrection {
    /// `epsilon` as an odd series in `v = 1/(nu tanh mu)`, coefficients in `s`.
    pub phase_eps: FormalSeries,
    /// `a_k(mu)` as series in `r^2 = x^2/nu^2`, one per odd power of `v`.
    pub a_expansions: Vec<FormalSeries>,
    /// `epsilon` as a series in `1/nu` with coefficients polynomial in `u = x^2`.
    pub eps_series: FormalSeries,
}

/// Signed weight of `C_k / T^k` in the real part of
/// `exp(i Phi) * sum (1/2)_k C_k / (i T / 2)^k`, split into its
/// `cos(Phi)` and `sin(Phi)` multipliers.
///
/// `(1/2)_k 2^k = (2k - 1)!!`, and `i^{-k}` contributes `cos(k pi/2)` to the
/// cosine part and `sin(k pi/2)` to the sine part.
pub fn re_im_weights(k: usize) -> (Rational, Rational) {
    let dfact = (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(2 * j - 1));
    let w = Rational::from_integer(dfact);
    let zero = Rational::zero();
    match k % 4 {
        0 => (w, zero),
        1 => (zero, w),
        2 => (-w, zero),
        _ => (zero, -w),
    }
}

/// `(even, odd)` sums multiplying `cos(Phi)` and `sin(Phi)`, as series in
/// `v = 1/T` of order `c.len()`.
pub fn zero_condition_sums(c: &[ParamPoly]) -> Result<(FormalSeries, FormalSeries)> {
    let order = c.len();
    let mut even = Vec::with_capacity(order);
    let mut odd = Vec::with_capacity(order);
    for (k, ck) in c.iter().enumerate() {
        let (wc, ws) = re_im_weights(k);
        even.push(ck.scale(&wc));
        odd.push(ck.scale(&ws));
    }
    Ok((FormalSeries::new("v", order, even)?, FormalSeries::new("v", order, odd)?))
}

/// `epsilon(v) = arctan(odd / even)` with coefficients in `s`.
fn phase_eps_series(c: &[ParamPoly]) -> Result<FormalSeries> {
    let (even, odd) = zero_condition_sums(c)?;
    // even(0) = C_0 = 1, so the quotient always exists; recip still guards it
    let tan_eps = odd.div(&even)?;
    let atan = series_elementary(Elementary::Atan, tan_eps.order())?.with_var("v");
    atan.compose(&tan_eps)
}

/// Substitutes `s^2 = 1/(1 - r^2)` into an even polynomial in `s`.
fn even_s_poly_in_r2(p: &ParamPoly, order: usize) -> Result<FormalSeries> {
    if !p.is_even() {
        return Err(Error::Consistency(format!(
            "expected only even powers of s, got {}",
            p.display_with("s")
        )));
    }
    let halved = ParamPoly::new(p.coeffs().iter().step_by(2).cloned().collect());
    let s2 = series_elementary(Elementary::Geom, order)?.with_var("r^2");
    Ok(poly_of_series(&halved, &s2))
}

/// `(1 - r^2)^{-1/2}` built from `sqrt(1 + u)` composed with `u = -r^2`.
fn inv_sqrt_one_minus(order: usize) -> Result<FormalSeries> {
    let minus_r2 = FormalSeries::from_rationals("r^2", order, vec![Rational::zero(), -Rational::one()])?;
    let root = series_elementary(Elementary::Sqrt1p, order)?
        .with_var("r^2")
        .compose(&minus_r2)?;
    root.recip()
}

/// Derives `epsilon` in `v`, the `a_k` expansions and `epsilon` in `1/nu`.
///
/// `c` must hold `C_0 .. C_kmax`; `a_order` is the number of `r^2` terms kept
/// in each `a_k` (every such term is exact).
pub fn derive_phase_correction(c: &[ParamPoly], a_order: usize) -> Result<PhaseCorrection> {
    if c.len() < 2 {
        return Err(Error::InvalidArgument("need at least C_0 and C_1".into()));
    }
    if a_order == 0 {
        return Err(Error::InvalidArgument("a_order must be positive".into()));
    }
    let phase_eps = phase_eps_series(c)?;
    if !phase_eps.is_odd() {
        return Err(Error::Consistency("epsilon(v) has even powers".into()));
    }

    // a_k = e_{2k+1}(s) / tanh^{2k+1}(mu), tanh^{-2} = s^2 = 1/(1 - r^2)
    let geom = series_elementary(Elementary::Geom, a_order)?.with_var("r^2");
    let inv_sqrt = inv_sqrt_one_minus(a_order)?;
    let count = phase_eps.order() / 2;
    if a_order < count {
        return Err(Error::InvalidArgument(format!(
            "a_order {a_order} too small to assemble epsilon through nu^-{}",
            2 * count - 1
        )));
    }
    let mut a_expansions = Vec::with_capacity(count);
    for k in 0..count {
        let e = phase_eps.coeff(2 * k + 1);
        let a = even_s_poly_in_r2(&e, a_order)?
            .mul(&geom.pow(k as u32))?
            .mul(&inv_sqrt)?;
        a_expansions.push(a);
    }

    // epsilon = sum_k sum_j a_{k,j} x^{2j} nu^{-(2k+1+2j)}; keep powers of 1/nu
    // below 2 * count, the first one that would need C_{kmax+1}
    let eps_order = 2 * count;
    let mut eps = vec![ParamPoly::zero(); eps_order];
    for (k, a) in a_expansions.iter().enumerate() {
        for j in 0..a_order {
            let p = 2 * k + 1 + 2 * j;
            if p >= eps_order {
                break;
            }
            let term = ParamPoly::monomial(a.coeff(j).constant_term(), j);
            eps[p] = &eps[p] + &term;
        }
    }
    let eps_series = FormalSeries::new("1/nu", eps_order, eps)?;
    Ok(PhaseCorrection { phase_eps, a_expansions, eps_series })
}

/// `mu - tanh(mu) - log(2/(e r))` as a series in `r^2`, `r = x/nu`.
///
/// Uses `arccosh(1/r) = log(2/r) - sum_j (2j-1)!!/((2j)!! 2j) r^{2j}` and
/// `tanh(mu) = sqrt(1 - r^2)`.
pub fn derive_mu_expansion(order: usize) -> Result<FormalSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    let minus_r2 = FormalSeries::from_rationals("r^2", order, vec![Rational::zero(), -Rational::one()])?;
    let tanh = series_elementary(Elementary::Sqrt1p, order)?
        .with_var("r^2")
        .compose(&minus_r2)?;
    let mut acosh_tail = vec![Rational::zero(); order];
    let mut ratio = Rational::one();
    for (j, slot) in acosh_tail.iter_mut().enumerate().skip(1) {
        // (2j-1)!!/(2j)!! built incrementally
        ratio *= rat(2 * j as i64 - 1, 2 * j as i64);
        *slot = &ratio / Rational::from_integer(BigInt::from(2 * j));
    }
    let acosh_tail = FormalSeries::from_rationals("r^2", order, acosh_tail)?;
    let one = FormalSeries::constant("r^2", order, ParamPoly::one())?;
    // log(2/r) - log(2/(e r)) = 1
    one.sub(&tanh)?.sub(&acosh_tail)
}

/// `A_k` as polynomials in `u = x^2`, from `nu (mu - tanh mu) = m + epsilon`.
///
/// Only structural checks run here: the combined series must be odd in
/// `1/nu` and `A_k` has degree at most `k + 1` in `u`.
pub fn derive_a(phase: &PhaseCorrection, mu: &FormalSeries) -> Result<Vec<ParamPoly>> {
    let order = phase.eps_series.order();
    // nu * M(x^2/nu^2) = sum_j M_j u^j nu^{1-2j}
    let mut shift = vec![ParamPoly::zero(); order];
    for (j, mj) in mu.coeffs().iter().enumerate().skip(1) {
        let p = 2 * j - 1;
        if p >= order {
            break;
        }
        shift[p] = ParamPoly::monomial(mj.constant_term(), j);
    }
    if mu.order() < order / 2 + 1 {
        return Err(Error::InvalidArgument("mu expansion too short for the epsilon series".into()));
    }
    let shift = FormalSeries::new("1/nu", order, shift)?;
    let rhs = phase.eps_series.sub(&shift)?;
    if !rhs.is_odd() {
        return Err(Error::Consistency("zero equation has even powers of 1/nu".into()));
    }
    let a: Vec<ParamPoly> = (0..order / 2).map(|k| rhs.coeff(2 * k + 1)).collect();
    for (k, ak) in a.iter().enumerate() {
        if ak.degree() > k as isize + 1 {
            return Err(Error::Consistency(format!(
                "A_{k} has degree {} in x^2, expected at most {}",
                ak.degree(),
                k + 1
            )));
        }
    }
    Ok(a)
}
