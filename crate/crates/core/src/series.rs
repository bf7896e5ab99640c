//! Formal power-series inversion of the skew-growth polynomial.
//!
//! When the source polynomial counts a monoid's skew growth, the inverted
//! series is the spherical growth series: its `n`-th coefficient counts the
//! monoid elements of degree `n`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Default truncation degree for CLI and report output.
pub const DEFAULT_TRUNCATION: usize = 20;

/// A truncated prefix of `1 / p(t)` with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    source: IntPolynomial,
    coeffs: Vec<BigInt>,
}

impl GrowthSeries {
    /// Coefficient of `t^n`; panics beyond the truncation degree.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    /// All retained coefficients `c_0 ..= c_d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The polynomial that was inverted.
    pub fn source(&self) -> &IntPolynomial {
        &self.source
    }
}

/// Inverts `p` as a formal power series, truncated at degree `d`.
///
/// Requires constant term exactly 1, which makes every coefficient an
/// integer via the convolution recurrence
/// `c_n = -sum_{i=1}^{min(n, deg p)} p_i * c_{n-i}`.
pub fn invert_series(p: &IntPolynomial, d: usize) -> Result<GrowthSeries> {
    if !p.coeff(0).is_one() {
        return Err(Error::NonUnitConstantTerm(p.coeff(0).to_string()));
    }
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(BigInt::one());
    for n in 1..=d {
        let reach = n.min(p.degree().unwrap_or(0));
        let mut sum = BigInt::ZERO;
        for i in 1..=reach {
            sum += p.coeff(i) * &coeffs[n - i];
        }
        coeffs.push(-sum);
    }
    Ok(GrowthSeries {
        source: p.clone(),
        coeffs,
    })
}
