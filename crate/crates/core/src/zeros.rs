//! Zeros `nu_n` of `K_{i nu}(x)`: asymptotic estimates, refinement against
//! the quadrature, and table assembly.
//!
//! Zeros are labelled from `n = 1` with `m = (n + 3/4) pi` and
//! `lambda = 2/(e x)`. The base solution `xi` solves `xi log(lambda xi) = m`,
//! i.e. `xi = m / W(lambda m)`, and the estimate of order `k` adds
//! `B_0/m + ... + B_{k-1}/m^{2k-1}`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::coeffs::{eval_runtime_coeffs, runtime::lambda, tables};
use crate::error::{Error, Result};
use crate::lambert::w_principal;
use crate::macdonald::{amplitude, eval_scaled, EvalConfig};

/// Default refinement tolerance on `nu`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Digits requested from the quadrature for bracketing sign tests.
pub const SIGN_DIGITS: u32 = 6;

/// Highest estimate order (`xi` plus three correction terms).
pub const MAX_ORDER: usize = 3;

fn check_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::Domain(format!("n must be at least 1, got {n}")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    Ok(())
}

/// `m = (n + 3/4) pi`.
pub fn m_of(n: u32) -> f64 {
    (n as f64 + 0.75) * PI
}

/// Base solution `xi = m / W(lambda m)`.
pub fn xi_base(n: u32, x: f64) -> Result<f64> {
    check_n(n)?;
    check_x(x)?;
    let m = m_of(n);
    Ok(m / w_principal(lambda(x) * m)?.w)
}

/// `xi` from the log-log series in `log(lambda m)`, `terms` in `1..=3`.
///
/// Converges on the scale `1/log(lambda m)`, so only for very large `n`.
pub fn xi_loglog(n: u32, x: f64, terms: usize) -> Result<f64> {
    check_n(n)?;
    check_x(x)?;
    if !(1..=3).contains(&terms) {
        return Err(Error::InvalidArgument(format!("terms must be in 1..=3, got {terms}")));
    }
    let m = m_of(n);
    let z = lambda(x) * m;
    if !(z > std::f64::consts::E) {
        return Err(Error::Domain(format!("log-log series needs lambda m > e, got {z}")));
    }
    let l1 = z.ln();
    let l2 = l1.ln();
    let bracket = [1.0, l2 / l1, l2 * (l2 - 1.0) / (l1 * l1)];
    Ok(m / l1 * bracket[..terms].iter().sum::<f64>())
}

/// Asymptotic estimate of `nu_n`. `order = 0` gives `xi`; each further order
/// adds the next `B_k / m^{2k+1}` term.
pub fn estimate_zero(n: u32, x: f64, order: usize) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!("order must be in 0..={MAX_ORDER}, got {order}")));
    }
    let xi = xi_base(n, x)?;
    if order == 0 {
        return Ok(xi);
    }
    let m = m_of(n);
    let rc = eval_runtime_coeffs(xi, m, x)?;
    Ok(xi + (0..order).map(|k| rc.b[k] / m.powi(2 * k as i32 + 1)).sum::<f64>())
}

/// Leading law `pi n / log n`.
pub fn leading_order(n: u32) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("leading law needs n >= 2, got {n}")));
    }
    let n = n as f64;
    Ok(PI * n / n.ln())
}

/// Defect of `nu` in `nu log(lambda nu) = m + A_0/nu + A_1/nu^3 + A_2/nu^5`.
pub fn zero_equation_defect(n: u32, x: f64, nu: f64) -> f64 {
    let t = tables();
    let rhs = m_of(n) + t.a_at(0, x) / nu + t.a_at(1, x) / nu.powi(3) + t.a_at(2, x) / nu.powi(5);
    nu * (lambda(x) * nu).ln() - rhs
}

/// Result of [`refine_zero`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RefinedZero {
    pub nu: f64,
    /// `f(nu)` from the last polishing evaluation.
    pub f_value: f64,
    pub bracket: (f64, f64),
    pub evaluations: usize,
}

/// Digits asked of the quadrature while polishing to `tol`.
fn polish_digits(tol: f64) -> u32 {
    ((-tol.log10()).ceil() as i64 + 4).clamp(SIGN_DIGITS as i64, 17) as u32
}

struct Counted<'a> {
    x: f64,
    cfg: EvalConfig,
    count: &'a mut usize,
}

impl Counted<'_> {
    fn eval(&mut self, nu: f64) -> Result<f64> {
        *self.count += 1;
        Ok(eval_scaled(nu, self.x, &self.cfg)?.value)
    }
}

/// Finds `nu_n` to within `tol` by bracketing the order-3 estimate and
/// polishing with Brent's method on the quadrature.
pub fn refine_zero(n: u32, x: f64, tol: f64) -> Result<RefinedZero> {
    let seed = estimate_zero(n, x, MAX_ORDER)?;
    if !(tol > 0.0) || tol < 8.0 * f64::EPSILON * seed {
        return Err(Error::InvalidArgument(format!(
            "tol = {tol} is below what double precision resolves at nu = {seed}"
        )));
    }
    let xi = xi_base(n, x)?;
    // zeros are spaced by about pi / log(lambda xi); start at a quarter of that
    let mut delta = (PI / (4.0 * (lambda(x) * xi).ln())).min(0.25 * seed);

    let mut evaluations = 0;
    let mut coarse = Counted { x, cfg: EvalConfig::with_digits(SIGN_DIGITS), count: &mut evaluations };
    let (mut lo, mut hi, mut f_lo, mut f_hi);
    let mut widenings = 0;
    loop {
        lo = (seed - delta).max(0.0);
        hi = seed + delta;
        f_lo = coarse.eval(lo)?;
        f_hi = coarse.eval(hi)?;
        if f_lo * f_hi < 0.0 {
            break;
        }
        if widenings == 2 {
            return Err(Error::Bracketing { seed, lo, hi, f_lo, f_hi });
        }
        widenings += 1;
        delta *= 2.0;
    }
    let outer = (lo, hi);

    // coarse bisection; stop early once |f| is near the sign-test resolution
    let resolution = 1e-4 * amplitude(seed, x);
    while hi - lo > 1e-3 {
        let mid = 0.5 * (lo + hi);
        let f_mid = coarse.eval(mid)?;
        if f_mid.abs() < resolution {
            break;
        }
        if f_mid * f_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }

    let mut fine = Counted { x, cfg: EvalConfig::with_digits(polish_digits(tol)), count: &mut evaluations };
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (fine.eval(a)?, fine.eval(b)?);
    if fa * fb > 0.0 {
        // the coarse pass misjudged a sign close to the root
        (a, b) = outer;
        fa = fine.eval(a)?;
        fb = fine.eval(b)?;
        if fa * fb > 0.0 {
            return Err(Error::Bracketing { seed, lo: a, hi: b, f_lo: fa, f_hi: fb });
        }
    }
    let (nu, f_value) = brent(|v| fine.eval(v), a, b, fa, fb, tol)?;
    Ok(RefinedZero { nu, f_value, bracket: (a, b), evaluations })
}

/// Brent's method on a bracket with `fa * fb <= 0`; returns the root and the
/// function value there.
pub fn brent<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const MAX_ITER: usize = 100;
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    if fa == 0.0 {
        return Ok((a, fa));
    }
    if fb == 0.0 {
        return Ok((b, fb));
    }
    if fa * fb > 0.0 {
        return Err(Error::Bracketing { seed: 0.5 * (a + b), lo: a, hi: b, f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..MAX_ITER {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok((b, fb));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::Convergence { what: "Brent root polishing".into(), iterations: MAX_ITER })
}

/// Everything computed for one zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub n: u32,
    pub x: f64,
    pub m: f64,
    pub lambda: f64,
    pub xi: f64,
    pub chi: f64,
    /// Order-3 asymptotic estimate.
    pub estimate: f64,
    pub refined: f64,
    pub est_minus_refined: f64,
    /// Defect of `estimate` in the zero equation.
    pub estimate_defect: f64,
    pub f_at_refined: f64,
}

/// Builds the full record for zero `n`.
pub fn zero_record(n: u32, x: f64, tol: f64) -> Result<ZeroRecord> {
    let xi = xi_base(n, x)?;
    let m = m_of(n);
    let estimate = estimate_zero(n, x, MAX_ORDER)?;
    let refined = refine_zero(n, x, tol)?;
    Ok(ZeroRecord {
        n,
        x,
        m,
        lambda: lambda(x),
        xi,
        chi: xi / m,
        estimate,
        refined: refined.nu,
        est_minus_refined: estimate - refined.nu,
        estimate_defect: zero_equation_defect(n, x, estimate),
        f_at_refined: refined.f_value,
    })
}

/// One record per requested `n`, in input order. A failing row does not stop
/// the others.
pub fn build_table(n_list: &[u32], x: f64, tol: f64) -> Result<Vec<Result<ZeroRecord>>> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("n_list must not be empty".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("n_list must be strictly ascending".into()));
    }
    check_x(x)?;
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(n_list.par_iter().map(|&n| zero_record(n, x, tol)).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(n_list.iter().map(|&n| zero_record(n, x, tol)).collect())
    }
}

/// Sign changes of `f` on a uniform grid over `[lo, hi]`, as brackets.
pub fn scan_sign_changes(x: f64, lo: f64, hi: f64, step: f64, digits: u32) -> Result<Vec<(f64, f64)>> {
    check_x(x)?;
    if !(step > 0.0) || !(hi > lo) || lo < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "scan needs 0 <= lo < hi and step > 0 (lo = {lo}, hi = {hi}, step = {step})"
        )));
    }
    let cfg = EvalConfig::with_digits(digits);
    let steps = ((hi - lo) / step).ceil() as usize;
    let mut out = Vec::new();
    let mut prev = (lo, eval_scaled(lo, x, &cfg)?.value);
    for i in 1..=steps {
        let nu = (lo + i as f64 * step).min(hi);
        let f = eval_scaled(nu, x, &cfg)?.value;
        if prev.1 * f < 0.0 || f == 0.0 {
            out.push((prev.0, nu));
        }
        prev = (nu, f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_matches_table_column() {
        assert!((xi_base(1, 1.0).unwrap() - 4.550063).abs() < 5e-7);
        assert!((xi_base(30, 1.0).unwrap() - 30.918273).abs() < 5e-7);
    }

    #[test]
    fn xi_solves_transcendental_equation() {
        for n in [1, 5, 50, 5000] {
            for x in [0.1, 1.0, 3.0] {
                let xi = xi_base(n, x).unwrap();
                let m = m_of(n);
                assert!((xi * (lambda(x) * xi).ln() - m).abs() <= 1e-13 * m);
            }
        }
    }

    #[test]
    fn loglog_leading_form() {
        let m = m_of(30);
        let z = lambda(1.0) * m;
        assert_eq!(xi_loglog(30, 1.0, 1).unwrap(), m / z.ln());
    }

    #[test]
    fn loglog_slow_convergence() {
        let gap = |n| {
            let a = xi_loglog(n, 1.0, 3).unwrap();
            let b = xi_base(n, 1.0).unwrap();
            ((a - b) / b).abs()
        };
        assert!(gap(30) > 1e-3);
        assert!(gap(1_000_000) < gap(30));
    }

    #[test]
    fn loglog_domain() {
        // lambda m = 2/(e x) * 1.75 pi < e for large x
        assert!(matches!(xi_loglog(1, 10.0, 2), Err(Error::Domain(_))));
        assert!(xi_loglog(1, 1.0, 4).is_err());
    }

    #[test]
    fn estimates_match_table() {
        assert!((estimate_zero(2, 1.0, 3).unwrap() - 5.879_868_980_0).abs() < 6e-11);
        assert!((estimate_zero(10, 1.0, 3).unwrap() - 14.331_852_919_8).abs() < 6e-11);
        assert_eq!(estimate_zero(7, 0.4, 0).unwrap(), xi_base(7, 0.4).unwrap());
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(xi_base(0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(xi_base(1, 0.0), Err(Error::Domain(_))));
        assert!(estimate_zero(1, 1.0, 4).is_err());
        assert!(leading_order(1).is_err());
        assert!(refine_zero(1, 1.0, 1e-17).is_err());
        assert!(build_table(&[], 1.0, 1e-10).is_err());
        assert!(build_table(&[2, 1], 1.0, 1e-10).is_err());
    }

    #[test]
    fn leading_law_arithmetic() {
        assert!((leading_order(7).unwrap() - 11.301).abs() < 1e-3);
    }

    #[test]
    fn refine_first_zero() {
        let r = refine_zero(1, 1.0, 1e-12).unwrap();
        assert!((r.nu - 4.534_490_718_1).abs() < 5e-10, "{r:?}");
        assert!(r.bracket.0 < r.nu && r.nu < r.bracket.1);
    }

    #[test]
    fn refined_residual_consistent_with_slope() {
        let tol = 1e-10;
        let r = refine_zero(4, 1.0, tol).unwrap();
        assert!((r.nu - 8.258_936_409_2).abs() < 5e-10);
        let cfg = EvalConfig::with_digits(14);
        let h = 1e-5;
        let slope = (eval_scaled(r.nu + h, 1.0, &cfg).unwrap().value
            - eval_scaled(r.nu - h, 1.0, &cfg).unwrap().value)
            / (2.0 * h);
        let f = eval_scaled(r.nu, 1.0, &cfg).unwrap().value;
        assert!(f.abs() <= tol * slope.abs(), "f = {f}, slope = {slope}");
    }

    #[test]
    fn brent_on_cosine() {
        let (root, _) = brent(|t: f64| Ok(t.cos()), 1.0, 2.0, 1f64.cos(), 2f64.cos(), 1e-14).unwrap();
        assert!((root - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        assert!(brent(|t: f64| Ok(t), 1.0, 2.0, 1.0, 2.0, 1e-10).is_err());
    }

    #[test]
    fn scan_finds_first_zero() {
        let found = scan_sign_changes(1.0, 4.0, 5.0, 0.25, 6).unwrap();
        assert_eq!(found.len(), 1);
        assert!(found[0].0 < 4.5345 && 4.5345 < found[0].1);
    }
}
