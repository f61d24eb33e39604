//! Polynomials with exact rational coefficients in a single formal parameter.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64` to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        // numer/denom individually overflow f64; fall back to the scaled quotient
        _ => {
            let n = r.numer().to_f64().unwrap_or(f64::NAN);
            let d = r.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Polynomial in one formal parameter with [`Rational`] coefficients.
///
/// Coefficient `i` multiplies the `i`-th power of the parameter. Trailing
/// zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    coeffs: Vec<Rational>,
}

impl ParamPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = ParamPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        ParamPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * p^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::new(coeffs)
    }

    /// The parameter itself.
    pub fn param() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Degree in the parameter; `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Coefficient of `p^power` (zero past the degree).
    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// True if every odd power has a zero coefficient.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Substitutes `p = value` exactly.
    pub fn eval_rational(&self, value: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * value + c)
    }

    /// Substitutes `p = value` in floating point (Horner with `f64`
    /// coefficients).
    pub fn eval_f64(&self, value: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * value + rational_to_f64(c))
    }

    /// Renders the polynomial using `name` for the parameter, e.g.
    /// `-1/8 + 5/24*s^2`.
    pub fn display_with<'a>(&'a self, name: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, name }
    }
}

struct PolyDisplay<'a> {
    poly: &'a ParamPoly,
    name: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.poly.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match power {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*{}", self.name)?,
                _ => write!(f, "{mag}*{}^{power}", self.name)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({})", self.display_with("p"))
    }
}

impl From<Rational> for ParamPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ParamPoly {
    fn from(c: i64) -> Self {
        Self::constant(rat(c, 1))
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;

    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;

    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ParamPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;

    fn neg(self) -> ParamPoly {
        ParamPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;

    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ParamPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
