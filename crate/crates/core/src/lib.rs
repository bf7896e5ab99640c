//! Exact computation of skew-growth polynomials for finite-type Artin
//! monoids.
//!
//! For a Coxeter matrix `M` over the vertex set `I = {1, ..., l}`, the
//! skew-growth polynomial is `N(t) = sum_{J subset I} (-1)^#J t^deg(Delta_J)`,
//! where `Delta_J` is the fundamental element generated by `J` and `deg` is
//! word length. `N(t)` is the formal inverse of the monoid's spherical growth
//! series, vanishes at `t = 1`, and has a nonzero derivative there with a
//! known closed form per irreducible type.
//!
//! The crate computes everything by exact arithmetic and validates each layer
//! with an independent brute-force route:
//!
//! - [`coxeter`]: Coxeter matrices, induced-subgraph decomposition, and
//!   classification against the finite-type catalogue.
//! - [`degrees`]: degrees of fundamental elements, cross-checked by counting
//!   positive roots via reflection closure.
//! - [`skewgrowth`]: the polynomial itself, degree statistics by subset size
//!   and component count, and brute-force verification of their identities.
//! - [`series`]: formal inversion of `N(t)` into growth coefficients.
//! - [`oracle`]: element counting by closing braid rewrites over raw words,
//!   confirming that the inverted series really counts monoid elements.

#![forbid(unsafe_code)]

pub mod coxeter;
pub mod degrees;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod series;
pub mod skewgrowth;

pub use coxeter::{
    build_product, format_type_spec, parse_type_spec, CoxeterMatrix, Family, IrreducibleType,
    SubsetSelection,
};
pub use degrees::{count_positive_roots, deg_delta, fundamental_degree, DEFAULT_ROOT_CAP};
pub use error::{Error, Result};
pub use oracle::{
    count_elements, verify_inversion, EquivalenceClassing, InversionReport, DEFAULT_WORK_BUDGET,
};
pub use poly::IntPolynomial;
pub use series::{invert_series, GrowthSeries, DEFAULT_TRUNCATION};
pub use skewgrowth::{
    binomial, closed_form_derivative, count_families, derivative_table, size_statistics,
    skew_growth_poly, verify_identities, DerivativeTable, IdentityReport, SizeStatistics,
    DEFAULT_RANK_CAP,
};
