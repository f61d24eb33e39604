//! Truncated power series with [`ParamPoly`] coefficients.

use std::fmt;

use num_traits::One;

use super::poly::{rat, ParamPoly, Rational};
use crate::error::{Error, Result};

/// Arithmetic operation selector for [`series_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Truncated power series `sum_{k < order} a_k u^k`.
///
/// `order` is the number of retained coefficients; every binary operation
/// truncates to the smaller operand order. The variable tag only records
/// what `u` stands for and is checked for agreement in binary operations.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSeries {
    var: String,
    coeffs: Vec<ParamPoly>,
}

impl FormalSeries {
    /// Builds a series of the given order, padding or truncating `coeffs`.
    pub fn new(var: impl Into<String>, order: usize, mut coeffs: Vec<ParamPoly>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("series order must be positive".into()));
        }
        coeffs.resize(order, ParamPoly::zero());
        Ok(FormalSeries { var: var.into(), coeffs })
    }

    /// Series with plain rational coefficients.
    pub fn from_rationals(var: impl Into<String>, order: usize, coeffs: Vec<Rational>) -> Result<Self> {
        Self::new(var, order, coeffs.into_iter().map(ParamPoly::constant).collect())
    }

    pub fn zero(var: impl Into<String>, order: usize) -> Result<Self> {
        Self::new(var, order, Vec::new())
    }

    pub fn constant(var: impl Into<String>, order: usize, c: ParamPoly) -> Result<Self> {
        Self::new(var, order, vec![c])
    }

    /// The series `u` itself.
    pub fn variable(var: impl Into<String>, order: usize) -> Result<Self> {
        Self::new(var, order, vec![ParamPoly::zero(), ParamPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Same coefficients, relabelled variable.
    pub fn with_var(mut self, var: impl Into<String>) -> Self {
        self.var = var.into();
        self
    }

    pub fn coeffs(&self) -> &[ParamPoly] {
        &self.coeffs
    }

    /// Coefficient of `u^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> ParamPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Drops terms from `order` on (no-op if already shorter).
    pub fn truncate(&self, order: usize) -> Result<Self> {
        Self::new(self.var.clone(), order.min(self.order()), self.coeffs.clone())
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var.clone(), other.var.clone()));
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(&ParamPoly) -> ParamPoly) -> Self {
        FormalSeries {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn scale_poly(&self, p: &ParamPoly) -> Self {
        self.map(|q| q * p)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let n = self.order().min(other.order());
        Self::new(
            self.var.clone(),
            n,
            (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![ParamPoly::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        FormalSeries { var: self.var.clone(), coeffs: out }
    }

    /// Multiplicative inverse. The constant term must be a nonzero
    /// rational constant.
    pub fn recip(&self) -> Result<Self> {
        let b0 = &self.coeffs[0];
        if !b0.is_constant() || b0.is_zero() {
            return Err(Error::NonInvertible(b0.display_with("p").to_string()));
        }
        let inv0 = Rational::one() / b0.constant_term();
        let n = self.order();
        let mut q: Vec<ParamPoly> = Vec::with_capacity(n);
        q.push(ParamPoly::constant(inv0.clone()));
        for k in 1..n {
            let mut acc = ParamPoly::zero();
            for j in 1..=k {
                acc = &acc + &(&self.coeffs[j] * &q[k - j]);
            }
            q.push(acc.scale(&-inv0.clone()));
        }
        Self::new(self.var.clone(), n, q)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        self.mul(&other.recip()?)
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = FormalSeries {
            var: self.var.clone(),
            coeffs: {
                let mut c = vec![ParamPoly::zero(); self.order()];
                c[0] = ParamPoly::one();
                c
            },
        };
        for _ in 0..e {
            out = out.mul_unchecked(self);
        }
        out
    }

    /// Multiplies by `u^shift`, dropping terms past the truncation order.
    pub fn shift_up(&self, shift: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![ParamPoly::zero(); shift.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(shift)).cloned());
        FormalSeries { var: self.var.clone(), coeffs }
    }

    /// `self(inner(u))`. The inner series must vanish at zero. The result
    /// carries the inner series' variable and the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n)?;
        // Horner in the inner series
        let mut acc = Self::constant(inner.var.clone(), n, self.coeffs[n - 1].clone())?;
        for k in (0..n - 1).rev() {
            acc = acc.mul_unchecked(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(u)) = u` to truncation order.
    ///
    /// Requires `self(0) = 0` and a linear coefficient that is a nonzero
    /// rational constant.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n < 2 || !self.coeffs[0].is_zero() {
            return Err(Error::NotRevertible);
        }
        let f1 = &self.coeffs[1];
        if !f1.is_constant() || f1.is_zero() {
            return Err(Error::NotRevertible);
        }
        let inv1 = Rational::one() / f1.constant_term();
        let mut g = Self::zero(self.var.clone(), n)?;
        g.coeffs[1] = ParamPoly::constant(inv1.clone());
        // coefficient k of f(g) is f1 * g_k + (terms in g_1..g_{k-1}), so each
        // new g_k is fixed by cancelling what the lower terms leave behind
        for k in 2..n {
            let defect = self.compose(&g)?.coeffs[k].clone();
            g.coeffs[k] = defect.scale(&-inv1.clone());
        }
        Ok(g)
    }

    /// Term-by-term derivative; the order drops by one.
    pub fn differentiate(&self) -> Result<Self> {
        if self.order() < 2 {
            return Err(Error::InvalidArgument(
                "differentiating an order-1 series leaves no retained terms".into(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&rat(k as i64, 1)))
            .collect();
        Self::new(self.var.clone(), self.order() - 1, coeffs)
    }

    /// Substitutes the formal parameter with `value` in every coefficient.
    pub fn eval_param(&self, value: &Rational) -> Self {
        self.map(|c| ParamPoly::constant(c.eval_rational(value)))
    }

    /// True if the coefficients of all odd powers vanish.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(ParamPoly::is_zero)
    }

    /// True if the coefficients of all even powers vanish.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(ParamPoly::is_zero)
    }

    /// Renders the series, e.g. `1 + (2*s)*u + (s^2)*u^2 + O(u^3)`.
    pub fn display_with<'a>(&'a self, param: &'a str) -> impl fmt::Display + 'a {
        SeriesDisplay { series: self, param }
    }
}

struct SeriesDisplay<'a> {
    series: &'a FormalSeries,
    param: &'a str,
}

impl fmt::Display for SeriesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = &self.series.var;
        let mut first = true;
        for (k, c) in self.series.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = c.display_with(self.param);
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{var}")?,
                _ => write!(f, "({c})*{var}^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({var}^{})", self.series.order())
    }
}

impl fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSeries[{}]", self.display_with("p"))
    }
}

/// Dispatches one of the four field operations.
pub fn series_arith(a: &FormalSeries, b: &FormalSeries, op: ArithOp) -> Result<FormalSeries> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
    }
}

/// Horner evaluation of a polynomial whose argument is itself a series,
/// i.e. `sum_i poly_i * x^i` with `x` a [`FormalSeries`] of the given order.
pub fn poly_of_series(poly: &ParamPoly, x: &FormalSeries) -> FormalSeries {
    let n = x.order();
    let mut acc = FormalSeries {
        var: x.var.clone(),
        coeffs: vec![ParamPoly::zero(); n],
    };
    for c in poly.coeffs().iter().rev() {
        acc = acc.mul_unchecked(x);
        acc.coeffs[0] = &acc.coeffs[0] + &ParamPoly::constant(c.clone());
    }
    acc
}
