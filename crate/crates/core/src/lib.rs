//! Exact computations for complex reflection groups.
//!
//! The crate builds a finite complex reflection group as an explicit matrix
//! group over a cyclotomic field, then computes its invariant theory (Molien
//! series, degrees, fake degrees), the Koszul-type graded characters, Dunkl
//! operators with the associated contravariant-form ranks, and a brute-force
//! bigraded Hilbert series of the diagonal coinvariant ring.
//!
//! Group elements act on polynomial functions by `(w.f)(v) = f(w^{-1} v)`.
//! The degree-one component of the polynomial ring is therefore the dual
//! representation V*, with matrices the inverse transposes of the group
//! matrices.

pub mod cherednik;
pub mod diag_oracle;
pub mod error;
pub mod exactnum;
pub mod group;
pub mod series_invariants;

pub use error::{Error, Result};
pub use exactnum::{CycNumber, Field, Matrix, Rational, Series};
pub use group::{build_group, GroupSpec, ReflectionGroup};

/// Square or rectangular matrix over a cyclotomic field.
pub type CycMatrix = Matrix<CycNumber>;
/// Truncated power series with rational coefficients.
pub type RationalSeries = Series<Rational>;
/// Truncated power series with cyclotomic coefficients.
pub type CycSeries = Series<CycNumber>;
/// Multivariate polynomial with cyclotomic coefficients.
pub type MultiPoly = cherednik::Poly<CycNumber>;
