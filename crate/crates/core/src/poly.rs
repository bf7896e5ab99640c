//! Dense univariate polynomials over arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A polynomial in `t` with `BigInt` coefficients, stored densely by
/// exponent. The coefficient vector never carries trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficient of `t^n` (zero beyond the degree).
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of all coefficients.
    pub fn value_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Sum of `n * coeff(n)`, the derivative evaluated at 1.
    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * BigInt::from(n))
            .sum()
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

/// Ascending-exponent rendering with explicit `*` and `^`, e.g.
/// `1 - 2*t + t^3`. The output is stable enough to reparse mechanically.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &BigInt::zero();
            let magnitude = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = magnitude.is_one() && exp > 0;
            if !unit_coeff {
                write!(f, "{magnitude}")?;
            }
            match exp {
                0 => {}
                _ if unit_coeff => write!(f, "t")?,
                _ => write!(f, "*t")?,
            }
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}
