//! Evaluation of the scaled Macdonald function `f(nu) = e^{pi nu/2} K_{i nu}(x)`.
//!
//! The ground truth integrates `K_{i nu}(x) = int_0^inf e^{-x cosh t} cos(nu t) dt`
//! in extended precision. The integral is of size `e^{-pi nu/2}` while the
//! integrand is `O(1)`, so about `0.6822 nu` decimal digits cancel; the working
//! precision grows with `nu` to absorb that.
//!
//! The rule is the composite trapezoidal rule. The integrand is even and
//! analytic in the strip `|Im t| < pi/2`, so on the full line the rule
//! converges like `exp(pi nu/2 - pi^2/h)`; nested halving of the step reuses
//! every earlier node and gives the running error estimate.

use astro_float::{BigFloat, Consts, RoundingMode};
use serde::Serialize;

use crate::coeffs::{tables, DEFAULT_KMAX};
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// `log10(e) * pi / 2`: decimal digits lost to cancellation per unit of `nu`.
pub const CANCELLATION_DIGITS_PER_NU: f64 = 0.6822;

/// Precision and truncation policy for [`eval_scaled`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvalConfig {
    /// Target correct significant digits, relative to the local amplitude of `f`.
    pub requested_digits: u32,
    /// Cap on the number of trapezoid intervals covering `[0, T]`.
    pub max_panels: usize,
    /// Trapezoid intervals per base panel on the first pass.
    pub nodes_per_panel: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { requested_digits: 12, max_panels: 1 << 16, nodes_per_panel: 1 }
    }
}

impl EvalConfig {
    pub fn with_digits(requested_digits: u32) -> Self {
        EvalConfig { requested_digits, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.requested_digits == 0 {
            return Err(Error::InvalidArgument("requested_digits must be at least 1".into()));
        }
        if self.max_panels == 0 || self.nodes_per_panel == 0 {
            return Err(Error::InvalidArgument(
                "max_panels and nodes_per_panel must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quadrature,
    Asymptotic,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
        })
    }
}

/// A value of `f(nu)` with its running error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledEval {
    pub value: f64,
    pub est_error: f64,
    pub working_digits: u32,
    pub method: Method,
}

/// Decimal working precision for `nu` and a digit target.
pub fn working_digits(nu: f64, requested_digits: u32) -> u32 {
    (CANCELLATION_DIGITS_PER_NU * nu).ceil() as u32 + requested_digits + 10
}

/// Rough size of `f` near `nu`: `sqrt(2 pi) (nu^2 + x^2)^{-1/4}`, damped by
/// `e^{-(x - nu)}` in the monotone region `nu < x`. Digit targets are
/// relative to `max(|f|, amplitude)` so that they stay meaningful at zeros.
pub fn amplitude(nu: f64, x: f64) -> f64 {
    let base = (2.0 * std::f64::consts::PI).sqrt() / (nu * nu + x * x).sqrt().sqrt();
    base * (-(x - nu).max(0.0)).exp()
}

fn to_f64(v: &BigFloat) -> f64 {
    // astro-float has no direct conversion; its decimal rendering round-trips
    v.to_string().parse().unwrap_or(f64::NAN)
}

fn validate_point(nu: f64, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!(
            "nu must be finite and nonnegative (K_{{i nu}} is even in nu), got {nu}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Form {
    /// `int_0^inf e^{-x cosh t} cos(nu t) dt`
    HalfLine,
    /// `Re (1/2) int_{-inf}^{inf} e^{-x cosh t + i nu t} dt`, each half summed
    /// on its own
    FullLine,
}

struct Integrand {
    bits: usize,
    x: BigFloat,
    nu: BigFloat,
    half: BigFloat,
    cc: Consts,
}

impl Integrand {
    fn new(nu: f64, x: f64, bits: usize) -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::InvalidArgument(format!("astro-float: {e:?}")))?;
        Ok(Integrand {
            bits,
            x: BigFloat::from_f64(x, bits),
            nu: BigFloat::from_f64(nu, bits),
            half: BigFloat::from_f64(0.5, bits),
            cc,
        })
    }

    /// `e^{-x cosh t}` and `nu t` at the node `t`.
    fn envelope_and_phase(&mut self, t: &BigFloat) -> (BigFloat, BigFloat) {
        let p = self.bits;
        let et = t.exp(p, RM, &mut self.cc);
        let inv = BigFloat::from_f64(1.0, p).div(&et, p, RM);
        let cosh = et.add(&inv, p, RM).mul(&self.half, p, RM);
        let env = self.x.mul(&cosh, p, RM).neg().exp(p, RM, &mut self.cc);
        (env, self.nu.mul(t, p, RM))
    }

    /// Sum of the integrand over the given nodes, in the requested form.
    fn sum_nodes(&mut self, form: Form, nodes: impl Iterator<Item = BigFloat>) -> BigFloat {
        let p = self.bits;
        let mut acc = BigFloat::from_f64(0.0, p);
        for t in nodes {
            match form {
                Form::HalfLine => {
                    let (env, phase) = self.envelope_and_phase(&t);
                    let c = phase.cos(p, RM, &mut self.cc);
                    acc = acc.add(&env.mul(&c, p, RM), p, RM);
                }
                Form::FullLine => {
                    // the mirror nodes are evaluated independently; the sine
                    // parts cancel in the real part and are not formed
                    let mut re = BigFloat::from_f64(0.0, p);
                    for node in [t.clone(), t.neg()] {
                        let (env, phase) = self.envelope_and_phase(&node);
                        let c = phase.cos(p, RM, &mut self.cc);
                        re = re.add(&env.mul(&c, p, RM), p, RM);
                    }
                    acc = acc.add(&re.mul(&self.half, p, RM), p, RM);
                }
            }
        }
        acc
    }
}

fn eval_quadrature(nu: f64, x: f64, cfg: &EvalConfig, form: Form) -> Result<ScaledEval> {
    validate_point(nu, x)?;
    cfg.validate()?;
    let digits = working_digits(nu, cfg.requested_digits);
    let bits = ((digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32).div_ceil(64) * 64;

    // x cosh(T) > (P + 5) ln 10 makes the truncated tail negligible
    let tail_arg = (digits as f64 + 5.0) * std::f64::consts::LN_10 / x;
    let upper = tail_arg.max(1.0).acosh().max(1.0);
    let panel = (std::f64::consts::PI / (4.0 * nu.max(1.0))).min(1.0);
    let mut h = panel / cfg.nodes_per_panel as f64;
    let mut intervals = (upper / h).ceil() as usize;
    if intervals > cfg.max_panels {
        return Err(Error::InvalidArgument(format!(
            "first pass needs {intervals} intervals, above max_panels = {}",
            cfg.max_panels
        )));
    }

    let mut f = Integrand::new(nu, x, bits)?;
    let p = bits;
    let bh = |h: f64| BigFloat::from_f64(h, p);
    let scale = {
        let pi_half_nu = BigFloat::from_f64(nu, p)
            .mul(&f.cc.pi(p, RM), p, RM)
            .mul(&f.half, p, RM);
        pi_half_nu.exp(p, RM, &mut f.cc)
    };

    // raw trapezoid sum without the step factor; the node at 0 has weight 1/2
    // (on the full line each interior node already averages its mirror pair)
    let g0 = f
        .sum_nodes(form, std::iter::once(BigFloat::from_f64(0.0, p)))
        .mul(&f.half, p, RM);
    let interior = {
        let step = bh(h);
        let nodes = (1..=intervals).map(|j| BigFloat::from_u64(j as u64, p).mul(&step, p, RM));
        f.sum_nodes(form, nodes)
    };
    let mut raw = g0.add(&interior, p, RM);
    let mut current = raw.mul(&bh(h), p, RM).mul(&scale, p, RM);

    let tol_scale = |v: f64| v.abs().max(amplitude(nu, x));
    let tol = 10f64.powi(-(cfg.requested_digits as i32));
    let mut last_diff = f64::INFINITY;
    loop {
        if intervals * 2 > cfg.max_panels {
            return Err(Error::Accuracy { best: to_f64(&current), est_error: last_diff });
        }
        // halve the step: the new nodes sit at odd multiples of h/2
        h /= 2.0;
        let step = bh(h);
        let nodes = (0..intervals).map(|j| BigFloat::from_u64(2 * j as u64 + 1, p).mul(&step, p, RM));
        raw = raw.add(&f.sum_nodes(form, nodes), p, RM);
        intervals *= 2;
        let next = raw.mul(&step, p, RM).mul(&scale, p, RM);
        last_diff = to_f64(&next.sub(&current, p, RM)).abs();
        current = next;
        let value = to_f64(&current);
        if last_diff <= tol * tol_scale(value) {
            return Ok(ScaledEval {
                value,
                est_error: last_diff,
                working_digits: digits,
                method: Method::Quadrature,
            });
        }
    }
}

/// `e^{pi nu/2} K_{i nu}(x)` from the half-line integral, to
/// `cfg.requested_digits` relative to the local amplitude.
pub fn eval_scaled(nu: f64, x: f64, cfg: &EvalConfig) -> Result<ScaledEval> {
    eval_quadrature(nu, x, cfg, Form::HalfLine)
}

/// Same quantity from the full-line form `Re (1/2) int e^{-x cosh t + i nu t} dt`,
/// with the two half-lines integrated independently. Used as a parity check.
pub fn eval_scaled_full_line(nu: f64, x: f64, cfg: &EvalConfig) -> Result<ScaledEval> {
    eval_quadrature(nu, x, cfg, Form::FullLine)
}

/// `mu`, `tanh(mu)` and the phase `Phi` for `cosh(mu) = nu/x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseMu {
    pub mu: f64,
    pub tanh_mu: f64,
    pub phi: f64,
}

/// `mu = arccosh(nu/x)`, `tanh(mu) = sqrt(1 - x^2/nu^2)`,
/// `Phi = nu (mu - tanh mu) - pi/4`.
pub fn phase_mu(nu: f64, x: f64) -> Result<PhaseMu> {
    validate_point(nu, x)?;
    if !(nu > x) {
        return Err(Error::Domain(format!("need nu > x for a real mu (nu = {nu}, x = {x})")));
    }
    let r = nu / x;
    let mu = (r + ((r - 1.0) * (r + 1.0)).sqrt()).ln();
    let tanh_mu = ((nu - x) * (nu + x)).sqrt() / nu;
    let phi = nu * (mu - tanh_mu) - std::f64::consts::FRAC_PI_4;
    Ok(PhaseMu { mu, tanh_mu, phi })
}

/// Distance above `x` below which the large-`nu` expansion is refused.
pub const ASYMPTOTIC_MARGIN: f64 = 0.5;

/// Large-`nu` expansion of `f(nu)` from the two dominant saddles, truncated
/// after `C_kmax`.
pub fn eval_scaled_asymptotic(nu: f64, x: f64, kmax: usize) -> Result<ScaledEval> {
    validate_point(nu, x)?;
    if nu < x + ASYMPTOTIC_MARGIN {
        return Err(Error::Domain(format!(
            "large-nu expansion needs nu >= x + {ASYMPTOTIC_MARGIN} (nu = {nu}, x = {x})"
        )));
    }
    if kmax > DEFAULT_KMAX {
        return Err(Error::InvalidArgument(format!("kmax must be at most {DEFAULT_KMAX}, got {kmax}")));
    }
    let PhaseMu { tanh_mu, phi, .. } = phase_mu(nu, x)?;
    let t = nu * tanh_mu;
    let coth = 1.0 / tanh_mu;
    let (sin_phi, cos_phi) = phi.sin_cos();
    let tabs = tables();
    let mut sum = 0.0;
    let mut last = 0.0;
    let mut weight = 1.0; // (2k - 1)!! / T^k
    for k in 0..=kmax {
        if k > 0 {
            weight *= (2 * k - 1) as f64 / t;
        }
        let ck = tabs.c_at(k, coth);
        let trig = match k % 4 {
            0 => cos_phi,
            1 => sin_phi,
            2 => -cos_phi,
            _ => -sin_phi,
        };
        last = weight * ck * trig;
        sum += last;
    }
    let prefactor = (2.0 * std::f64::consts::PI / t).sqrt();
    Ok(ScaledEval {
        value: prefactor * sum,
        est_error: prefactor * last.abs(),
        working_digits: f64::DIGITS,
        method: Method::Asymptotic,
    })
}
